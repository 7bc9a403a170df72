"""Deterministic random-instance generation for the inequality registry.

Every check derives its own generator from (seed, check id), so the stream
a check sees is independent of which other checks run and identical across
reruns with the same seed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..distributions import DiscreteDistribution
from ..bayes import BayesProblem
from ..skewing import SkewScheme


def _labels(k: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(k))


@dataclass(frozen=True)
class InstanceGenerator:
    """Seeded instance factory.

    ``count`` is the number of instances per configuration (per support
    size, for most checks).  ``mass_floor`` is the minimum raw atom weight;
    zero allows boundary cases which individual samplers introduce by
    explicitly zeroing atoms where a check's domination requirements allow.
    """

    seed: int
    support_sizes: tuple[int, ...] = (2, 4, 8, 16)
    n_hypotheses: tuple[int, ...] = (2, 3, 4)
    mass_floor: float = 0.0
    count: int = 200

    def __post_init__(self) -> None:
        object.__setattr__(self, "support_sizes", tuple(int(k) for k in self.support_sizes))
        object.__setattr__(self, "n_hypotheses", tuple(int(n) for n in self.n_hypotheses))
        if not 0.0 <= self.mass_floor < 1.0:
            raise ValueError(f"mass_floor {self.mass_floor!r} outside [0, 1)")
        if self.count < 1:
            raise ValueError("count must be positive")

    def rng_for(self, stream: str) -> np.random.Generator:
        digest = hashlib.sha256(stream.encode("utf-8")).digest()
        words = [int.from_bytes(digest[i:i + 4], "big") for i in range(0, 16, 4)]
        return np.random.default_rng([int(self.seed) & 0xFFFFFFFFFFFFFFFF, *words])

    # -- samplers ----------------------------------------------------------

    def masses(self, rng: np.random.Generator, k: int) -> tuple[float, ...]:
        raw = rng.uniform(self.mass_floor, 1.0, size=k)
        while raw.sum() <= 0.0:
            raw = rng.uniform(self.mass_floor, 1.0, size=k)
        total = float(raw.sum())
        return tuple(float(x) / total for x in raw)

    def distribution(self, rng: np.random.Generator, k: int) -> DiscreteDistribution:
        return DiscreteDistribution(_labels(k), self.masses(rng, k))

    def pair(
        self,
        rng: np.random.Generator,
        k: int,
        zero_p: float = 0.0,
        zero_q: float = 0.0,
        dominated: bool = False,
    ) -> tuple[DiscreteDistribution, DiscreteDistribution]:
        """A pair (P, Q) on a shared support.

        ``zero_p``/``zero_q`` are per-atom probabilities of zeroing a raw
        weight before normalisation; ``dominated`` keeps Q positive wherever
        P is (and forbids zeroing Q), so KL-type checks stay finite.
        """
        labels = _labels(k)
        while True:
            p_raw = np.asarray(rng.uniform(self.mass_floor, 1.0, size=k))
            q_raw = np.asarray(rng.uniform(self.mass_floor, 1.0, size=k))
            if zero_p > 0.0:
                p_raw[rng.uniform(size=k) < zero_p] = 0.0
            if zero_q > 0.0 and not dominated:
                q_raw[rng.uniform(size=k) < zero_q] = 0.0
            if p_raw.sum() <= 0.0 or q_raw.sum() <= 0.0:
                continue
            if dominated and np.any((p_raw > 0.0) & (q_raw <= 0.0)):
                continue
            p = DiscreteDistribution(labels, tuple(float(x) / float(p_raw.sum()) for x in p_raw))
            q = DiscreteDistribution(labels, tuple(float(x) / float(q_raw.sum()) for x in q_raw))
            return p, q

    def bayes_problem(
        self, rng: np.random.Generator, n: int, k: int
    ) -> BayesProblem:
        hyps = tuple(self.distribution(rng, k) for _ in range(n))
        prior_raw = rng.uniform(0.05, 1.0, size=n)
        total = float(prior_raw.sum())
        prior = tuple(float(x) / total for x in prior_raw)
        return BayesProblem(hyps, prior)

    def scheme(self, rng: np.random.Generator, n: int, boundary: float = 0.15) -> SkewScheme:
        """Random skew scheme; with probability ``boundary`` an alpha snaps to 0 or 1."""
        alphas = []
        for _ in range(n):
            a = float(rng.uniform())
            snap = rng.uniform()
            if snap < boundary / 2:
                a = 0.0
            elif snap < boundary:
                a = 1.0
            alphas.append(a)
        w_raw = rng.uniform(0.05, 1.0, size=n)
        total = float(w_raw.sum())
        weights = tuple(float(x) / total for x in w_raw)
        return SkewScheme(tuple(alphas), weights)

    def partition(self, rng: np.random.Generator, labels: tuple[str, ...]) -> list[list[str]]:
        """Random partition of the support into at least two groups when possible."""
        k = len(labels)
        groups = max(2, int(rng.integers(2, max(3, k // 2 + 1)))) if k > 1 else 1
        groups = min(groups, k)
        assignment = [int(rng.integers(0, groups)) for _ in range(k)]
        # keep every group nonempty
        for gidx in range(groups):
            if gidx not in assignment:
                assignment[int(rng.integers(0, k))] = gidx
        out: dict[int, list[str]] = {}
        for label, gidx in zip(labels, assignment):
            out.setdefault(gidx, []).append(label)
        return [out[g] for g in sorted(out)]
