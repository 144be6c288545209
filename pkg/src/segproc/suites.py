"""Named verification suites with the default sizes used by ``segproc verify``.

Each suite draws from its own stream id, so a suite's numbers do not depend
on which other suites run alongside it.  Suites sharing a sample (the radius
suites and the direct side of method equivalence) share the stream too, and
the sample is computed once per run.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import stats
from .rng import RngStream
from .stats import THRESHOLDS, TestReport


@dataclass(frozen=True)
class SuiteConfig:
    radius_n_steps: int = 10_000
    radius_replications: int = 20_000
    center_samples: int = 100_000
    center_eps: float = 1e-12
    fixed_point_samples: int = 100_000
    gem_samples: int = 10_000
    gem_m: int = 50
    domination_n: int = 100
    domination_samples: int = 100_000
    maxconv_ns: tuple = (10, 100, 1000)
    maxconv_alphas: tuple = (0.0, 0.25)
    maxconv_points: int = 10_000


STREAMS = {"radius": 1, "center": 2, "fixed-point": 3, "gem": 4, "domination": 5}

SUITE_NAMES = (
    "radius-exp", "radius-moments", "center-arcsine", "method-equivalence",
    "fixed-point", "gem-identity", "domination", "maxuniform-exact",
)


class Runner:
    def __init__(self, seed: int, config: SuiteConfig = SuiteConfig()):
        self.seed = seed
        self.config = config
        self._cache = {}

    def stream(self, name):
        return RngStream(self.seed, STREAMS[name])

    def _radius_endpoints(self):
        if "radius" not in self._cache:
            c = self.config
            self._cache["radius"] = stats.radius_endpoints(
                c.radius_n_steps, c.radius_replications, self.stream("radius"))
        return self._cache["radius"]

    def _series_centers(self):
        if "center" not in self._cache:
            c = self.config
            self._cache["center"] = stats.center_sample(
                c.center_samples, c.center_eps, self.stream("center"), "series")
        return self._cache["center"]

    def scaled_radius(self):
        c = self.config
        return stats.scaled_radius_sample(c.radius_n_steps, c.radius_replications,
                                          self.stream("radius"), self._radius_endpoints())

    def radius_exp(self):
        with stats._timer() as t:
            sample = self.scaled_radius()
            d = stats.ks_distance(sample, stats.Exponential(4.0))
        return [TestReport("radius-exp", f"ks n={sample.meta['n']}", len(sample), d,
                           THRESHOLDS.radius_ks, runtime=t.elapsed)]

    def radius_moments(self):
        sample = self.scaled_radius()
        return [stats.moment_check(sample, k) for k in (1, 2, 3)]

    def center_arcsine(self):
        with stats._timer() as t:
            sample = self._series_centers()
            d = stats.ks_distance(sample, stats.TranslatedArcsine())
        return [
            TestReport("center-arcsine", "ks series", len(sample), d, THRESHOLDS.center_ks,
                       runtime=t.elapsed),
            TestReport("center-arcsine", "abs mean", len(sample), abs(sample.mean()),
                       THRESHOLDS.center_mean),
        ]

    def method_equivalence(self):
        c = self.config
        with stats._timer() as t:
            series = self._series_centers()
            direct = stats.center_sample(c.radius_replications, c.center_eps, self.stream("radius"),
                                         "direct", n=c.radius_n_steps,
                                         endpoints=self._radius_endpoints())
            d = stats.ks_distance(series, direct)
        return [TestReport("method-equivalence", f"series vs direct n={c.radius_n_steps}",
                           len(direct), d, THRESHOLDS.method_ks, runtime=t.elapsed)]

    def fixed_point(self):
        c = self.config
        rng = self.stream("fixed-point")
        return [
            stats.fixed_point_check(c.fixed_point_samples, rng, c.center_eps),
            stats.fixed_point_check(c.fixed_point_samples, rng, c.center_eps, control=True),
        ]

    def gem_identity(self):
        c = self.config
        return stats.gem_identity_check(c.gem_samples, c.gem_m, self.stream("gem"))

    def domination(self):
        c = self.config
        rng = self.stream("domination")
        forward, reverse = stats.domination_closed_form_n1()
        return [
            stats.domination_check(c.domination_n, c.domination_samples, rng),
            TestReport("domination", "n=1 closed form", 0, 0.0 if forward else 1.0, 0.0),
            TestReport("domination", "n=1 closed form swapped", 0, 0.0 if reverse else 1.0, 0.0,
                       expect_pass=False),
            stats.domination_check(1, c.domination_samples, rng.spawn(7), swapped=True),
        ]

    def maxuniform_exact(self):
        c = self.config
        reports = []
        for alpha in c.maxconv_alphas:
            dists = [stats.maxconv_distance(n, alpha, c.maxconv_points) for n in c.maxconv_ns]
            reports.append(TestReport("maxuniform-exact", f"sup alpha={alpha} n={c.maxconv_ns[-1]}",
                                      c.maxconv_points, dists[-1], THRESHOLDS.maxconv_sup))
            growth = max(b - a for a, b in zip(dists, dists[1:]))
            reports.append(TestReport("maxuniform-exact", f"decreasing alpha={alpha}",
                                      c.maxconv_points, growth, 0.0))
        return reports

    def run(self, name: str) -> list[TestReport]:
        if name == "all":
            return [r for suite in SUITE_NAMES for r in self.run(suite)]
        if name not in SUITE_NAMES:
            raise ValueError(f"unknown suite {name!r}")
        return getattr(self, name.replace("-", "_"))()
