"""Samplers for the diminishing segment process.

Three representations of the same process live here:

* the direct chain, where a centre point is drawn uniformly on the current
  segment and the segment is intersected with the unit-radius interval around
  it;
* the thinned chain, which keeps only the shrinking steps and is driven by
  i.i.d. uniforms ``U`` and signs ``xi``;
* the stick-breaking (GEM(1)) series for the limiting centre.

Each random sampler has a deterministic twin that takes the draws as
arguments, so that hand-computed trajectories can be checked exactly.
Batch versions vectorise over replications and are what the statistics
module uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .rng import RngStream, map_blocks

SERIES_TERM_CAP = 100_000


class DegenerateRngError(RuntimeError):
    """The stick-breaking residual failed to drop below the tolerance within the term cap."""


@dataclass(frozen=True)
class Segment:
    """Closed interval ``[lo, hi]``.  Endpoints are stored so nesting checks are exact."""

    lo: float
    hi: float

    @classmethod
    def from_centre(cls, centre: float, radius: float) -> "Segment":
        return cls(centre - radius, centre + radius)

    @property
    def centre(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def radius(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def contains(self, other: "Segment") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class ProcessState:
    segment: Segment = Segment(-1.0, 1.0)
    step: int = 0

    @property
    def s(self) -> float:
        """Accumulated shrinkage ``1 - radius``."""
        return 1.0 - self.segment.radius


@dataclass(frozen=True)
class ThinnedState:
    z: float = 0.0
    r: float = 1.0


@dataclass(frozen=True)
class GemVector:
    weights: np.ndarray
    residual: float
    uniforms: np.ndarray = field(default=None, repr=False)

    def defect(self) -> float:
        """``|1 - residual - sum(weights)|``, zero up to rounding."""
        return abs(1.0 - self.residual - float(np.sum(self.weights)))


# -- direct process ---------------------------------------------------------

def step_direct_at(state: ProcessState, a: float) -> ProcessState:
    """Intersect the segment with ``[a - 1, a + 1]``."""
    seg = state.segment
    new = Segment(max(seg.lo, a - 1.0), min(seg.hi, a + 1.0))
    return ProcessState(new, state.step + 1)


def step_direct(state: ProcessState, rng: RngStream) -> ProcessState:
    seg = state.segment
    a = seg.lo + (seg.hi - seg.lo) * rng.uniform()
    return step_direct_at(state, a)


def run_direct(n_steps: int, rng: RngStream) -> list[ProcessState]:
    """Trajectory of ``n_steps + 1`` states starting from ``[-1, 1]``."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    states = [ProcessState()]
    for _ in range(n_steps):
        states.append(step_direct(states[-1], rng))
    return states


def _direct_block(n_steps, size, rng, trajectory=False):
    lo = np.full(size, -1.0)
    hi = np.full(size, 1.0)
    if trajectory:
        los, his = [lo.copy()], [hi.copy()]
    a = np.empty(size)
    for _ in range(n_steps):
        # a = lo + (hi - lo) * u, in place
        np.subtract(hi, lo, out=a)
        a *= rng.uniform(size)
        a += lo
        np.maximum(lo, a - 1.0, out=lo)
        np.minimum(hi, a + 1.0, out=hi)
        if trajectory:
            los.append(lo.copy())
            his.append(hi.copy())
    if trajectory:
        return np.array(los), np.array(his)
    return lo, hi


def simulate_direct(n_steps: int, replications: int, rng: RngStream, trajectory=False):
    """Run independent copies of the direct chain.

    Returns ``(lo, hi)`` endpoint arrays of shape ``(replications,)`` or, with
    ``trajectory=True``, of shape ``(n_steps + 1, replications)``.
    """
    if n_steps < 1 or replications < 1:
        raise ValueError("n_steps and replications must be >= 1")
    parts = map_blocks(lambda size, s: _direct_block(n_steps, size, s, trajectory),
                       replications, rng)
    axis = 1 if trajectory else 0
    lo = np.concatenate([p[0] for p in parts], axis=axis)
    hi = np.concatenate([p[1] for p in parts], axis=axis)
    return lo, hi


# -- thinned process --------------------------------------------------------

def step_thinned_with(state: ThinnedState, u: float, xi: float) -> ThinnedState:
    return ThinnedState(state.z + 0.5 * xi * (1.0 - u) * state.r, u * state.r)


def step_thinned(state: ThinnedState, rng: RngStream) -> ThinnedState:
    if not state.r > 0:
        raise ValueError("thinned state needs r > 0")
    return step_thinned_with(state, rng.uniform(), rng.sign())


def run_thinned_with(uniforms, signs, state: ThinnedState = ThinnedState()) -> list[ThinnedState]:
    states = [state]
    for u, xi in zip(uniforms, signs):
        states.append(step_thinned_with(states[-1], u, xi))
    return states


def _thinned_block(size, eps, rng):
    z = np.zeros(size)
    r = np.ones(size)
    for _ in range(SERIES_TERM_CAP):
        live = r >= eps
        if not live.any():
            return z
        u = rng.uniform(size)
        xi = rng.sign(size)
        z = np.where(live, z + 0.5 * xi * (1.0 - u) * r, z)
        r = np.where(live, u * r, r)
    raise DegenerateRngError(f"thinned chain did not reach r < {eps} in {SERIES_TERM_CAP} steps")


def sample_centers_thinned(size: int, eps: float, rng: RngStream) -> np.ndarray:
    """Limiting centres from the thinned chain, stopped once ``r < eps``."""
    _check_eps(eps)
    return np.concatenate(map_blocks(lambda n, s: _thinned_block(n, eps, s), size, rng))


# -- stick-breaking series --------------------------------------------------

def _check_eps(eps):
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def center_series_with(uniforms, signs, eps: float) -> float:
    """Half the signed GEM sum, truncated at the first residual below ``eps``.

    Raises ``ValueError`` if the supplied draws run out first.
    """
    _check_eps(eps)
    total = 0.0
    residual = 1.0
    for u, xi in zip(uniforms, signs):
        total += xi * residual * (1.0 - u)
        residual *= u
        if residual < eps:
            return 0.5 * total
    raise ValueError("draws exhausted before the residual dropped below eps")


def sample_center_series(rng: RngStream, eps: float) -> float:
    _check_eps(eps)
    total = 0.0
    residual = 1.0
    for _ in range(SERIES_TERM_CAP):
        u = rng.uniform()
        xi = rng.sign()
        total += xi * residual * (1.0 - u)
        residual *= u
        if residual < eps:
            return 0.5 * total
    raise DegenerateRngError(f"residual stayed >= {eps} after {SERIES_TERM_CAP} terms")


def _series_block(size, eps, rng):
    total = np.zeros(size)
    residual = np.ones(size)
    for _ in range(SERIES_TERM_CAP):
        live = residual >= eps
        if not live.any():
            return 0.5 * total
        # full-width draws keep each replication's sequence independent of eps
        u = rng.uniform(size)
        xi = rng.sign(size)
        total = np.where(live, total + xi * residual * (1.0 - u), total)
        residual = np.where(live, residual * u, residual)
    raise DegenerateRngError(f"residual stayed >= {eps} after {SERIES_TERM_CAP} terms")


def sample_centers_series(size: int, eps: float, rng: RngStream) -> np.ndarray:
    _check_eps(eps)
    return np.concatenate(map_blocks(lambda n, s: _series_block(n, eps, s), size, rng))


def gem_from_uniforms(uniforms) -> GemVector:
    """Stick-breaking weights ``v_i = U_1 ... U_i (1 - U_{i+1})``."""
    u = np.asarray(uniforms, dtype=float)
    if u.ndim != 1 or u.size < 1:
        raise ValueError("need a nonempty 1-d sequence of uniforms")
    weights = np.empty_like(u)
    residual = 1.0
    for i, ui in enumerate(u):
        weights[i] = residual * (1.0 - ui)
        residual *= ui
    return GemVector(weights, residual, u)


def sample_gem(m: int, rng: RngStream) -> GemVector:
    if m < 1:
        raise ValueError("m must be >= 1")
    return gem_from_uniforms(rng.uniform(m))


def sample_gem_batch(m: int, size: int, rng: RngStream):
    """Return ``(weights, residuals, uniforms)`` for ``size`` GEM vectors of length ``m``."""
    if m < 1 or size < 1:
        raise ValueError("m and size must be >= 1")
    u = rng.uniform((size, m))
    prefix = np.cumprod(u, axis=1)
    before = np.hstack([np.ones((size, 1)), prefix[:, :-1]])
    return before * (1.0 - u), prefix[:, -1], u


def to_poisson_dirichlet(g: GemVector) -> GemVector:
    """Weights in nonincreasing order; residual unchanged."""
    order = np.argsort(-np.asarray(g.weights), kind="stable")
    return replace(g, weights=np.asarray(g.weights)[order])


# -- comparison device for the radius limit --------------------------------

def max_uniform_interval(alpha: float) -> tuple[float, float]:
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha must lie in [0, 1/2], got {alpha}")
    return 0.25 - 0.5 * alpha, 0.5


def max_uniform_with(draws) -> float:
    """Maximum of already-scaled draws on ``[1/4 - alpha/2, 1/2]``."""
    return float(np.max(draws))


def sample_max_uniform(n: int, alpha: float, rng: RngStream) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = max_uniform_interval(alpha)
    return max_uniform_with(lo + (hi - lo) * rng.uniform(n))


def sample_max_uniform_batch(n: int, alpha: float, size: int, rng: RngStream) -> np.ndarray:
    if n < 1 or size < 1:
        raise ValueError("n and size must be >= 1")
    lo, hi = max_uniform_interval(alpha)

    def block(k, s):
        return lo + (hi - lo) * s.uniform((k, n)).max(axis=1)

    return np.concatenate(map_blocks(block, size, rng, block_size=max(1, (1 << 20) // n)))
