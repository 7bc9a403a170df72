"""Finite discrete probability distributions.

A distribution is a tuple of atom labels with aligned nonnegative masses
summing to one.  Values are immutable after construction and safe to share
between threads.  JSON (``{"support": [...], "mass": [...]}``) and CSV
(``label,mass`` header) files parse to the same object.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

MASS_SUM_TOLERANCE = 1e-9


class DistributionError(ValueError):
    """Invalid support, masses, or distribution file."""


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite support with nonnegative masses.

    Masses whose sum is within ``MASS_SUM_TOLERANCE`` of one are renormalised
    exactly to one; a larger discrepancy is rejected rather than silently
    rescaled.
    """

    support: tuple[str, ...]
    mass: tuple[float, ...]

    def __post_init__(self) -> None:
        support = tuple(str(s) for s in self.support)
        mass = tuple(float(m) for m in self.mass)
        if len(support) == 0:
            raise DistributionError("support: must contain at least one atom")
        if len(support) != len(mass):
            raise DistributionError(
                f"mass: got {len(mass)} masses for {len(support)} support atoms"
            )
        if len(set(support)) != len(support):
            raise DistributionError("support: atom labels must be unique")
        for label, m in zip(support, mass):
            if not math.isfinite(m):
                raise DistributionError(f"mass: non-finite mass {m!r} at atom {label!r}")
            if m < 0.0:
                raise DistributionError(f"mass: negative mass {m!r} at atom {label!r}")
        total = math.fsum(mass)
        if abs(total - 1.0) > MASS_SUM_TOLERANCE:
            raise DistributionError(
                f"mass: masses sum to {total!r}, not 1 (tolerance {MASS_SUM_TOLERANCE})"
            )
        if total != 1.0:
            mass = tuple(m / total for m in mass)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)

    def __len__(self) -> int:
        return len(self.support)

    def items(self) -> Iterable[tuple[str, float]]:
        return zip(self.support, self.mass)

    def mass_of(self, label: str) -> float:
        try:
            return self.mass[self.support.index(label)]
        except ValueError:
            return 0.0

    def as_dict(self) -> dict[str, list]:
        return {"support": list(self.support), "mass": list(self.mass)}


def from_masses(masses: Sequence[float], labels: Sequence[str] | None = None) -> DiscreteDistribution:
    """Build a distribution from masses, autogenerating labels a0, a1, ..."""
    if labels is None:
        labels = tuple(f"a{i}" for i in range(len(masses)))
    return DiscreteDistribution(tuple(labels), tuple(masses))


def uniform(n: int) -> DiscreteDistribution:
    return from_masses([1.0 / n] * n)


def align(p: DiscreteDistribution, q: DiscreteDistribution) -> tuple[tuple[str, ...], tuple[float, ...], tuple[float, ...]]:
    """Align two distributions over the union of their supports.

    The union keeps ``p``'s atom order first, then ``q``'s new atoms in their
    original order; missing atoms get mass zero.
    """
    support = list(p.support)
    seen = set(support)
    for label in q.support:
        if label not in seen:
            support.append(label)
            seen.add(label)
    p_map = dict(p.items())
    q_map = dict(q.items())
    pm = tuple(p_map.get(label, 0.0) for label in support)
    qm = tuple(q_map.get(label, 0.0) for label in support)
    return tuple(support), pm, qm


def align_many(dists: Sequence[DiscreteDistribution]) -> tuple[tuple[str, ...], list[tuple[float, ...]]]:
    """Union-align any number of distributions."""
    support: list[str] = []
    seen: set[str] = set()
    for d in dists:
        for label in d.support:
            if label not in seen:
                support.append(label)
                seen.add(label)
    rows = []
    for d in dists:
        m = dict(d.items())
        rows.append(tuple(m.get(label, 0.0) for label in support))
    return tuple(support), rows


def mixture(components: Sequence[DiscreteDistribution], weights: Sequence[float]) -> DiscreteDistribution:
    """Convex mixture of distributions over the union support."""
    if len(components) != len(weights):
        raise DistributionError("mixture: components and weights differ in length")
    support, rows = align_many(components)
    masses = tuple(
        math.fsum(w * row[i] for w, row in zip(weights, rows))
        for i in range(len(support))
    )
    return DiscreteDistribution(support, masses)


def mix_toward(p: DiscreteDistribution, q: DiscreteDistribution, weight_on_q: float) -> DiscreteDistribution:
    """(1 - w) * P + w * Q over the union support."""
    support, pm, qm = align(p, q)
    w = float(weight_on_q)
    masses = tuple((1.0 - w) * a + w * b for a, b in zip(pm, qm))
    return DiscreteDistribution(support, masses)


def coarsen(dist: DiscreteDistribution, partition: Sequence[Sequence[str]]) -> DiscreteDistribution:
    """Merge atoms along a partition of the support, summing masses per group.

    The partition must cover every support atom exactly once.  Group labels
    join the constituent labels with ``+``.
    """
    flat: list[str] = []
    for group in partition:
        flat.extend(str(g) for g in group)
    if sorted(flat) != sorted(dist.support):
        raise DistributionError("partition: must cover the support exactly once")
    mass_map = dict(dist.items())
    labels = []
    masses = []
    for group in partition:
        labels.append("+".join(str(g) for g in group))
        masses.append(math.fsum(mass_map[str(g)] for g in group))
    return DiscreteDistribution(tuple(labels), tuple(masses))


def parse_distribution_json(obj: dict) -> DiscreteDistribution:
    if not isinstance(obj, dict):
        raise DistributionError("distribution: expected a JSON object")
    if "support" not in obj:
        raise DistributionError("support: field missing")
    if "mass" not in obj:
        raise DistributionError("mass: field missing")
    return DiscreteDistribution(tuple(obj["support"]), tuple(obj["mass"]))


def parse_distribution_csv(text: str) -> DiscreteDistribution:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise DistributionError("csv: empty file")
    header = [cell.strip().lower() for cell in rows[0]]
    if header[:2] != ["label", "mass"]:
        raise DistributionError("csv: expected 'label,mass' header")
    labels = []
    masses = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) < 2:
            raise DistributionError(f"csv: row {i} needs label and mass")
        labels.append(row[0].strip())
        try:
            masses.append(float(row[1]))
        except ValueError as exc:
            raise DistributionError(f"mass: row {i} has non-numeric mass {row[1]!r}") from exc
    return DiscreteDistribution(tuple(labels), tuple(masses))


def load_distribution(path: str | Path) -> DiscreteDistribution:
    """Load a distribution from a .json or .csv file (sniffed by content)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DistributionError(f"file: cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if path.suffix.lower() == ".json" or stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DistributionError(f"file: {path} is not valid JSON: {exc}") from exc
        return parse_distribution_json(obj)
    return parse_distribution_csv(text)
