"""Core f-divergence evaluator and fast paths.

The evaluator splits the sum into three parts: the core over atoms where
both masses are positive, an f(0)-weighted term over the mass of Q where
p = 0, and an (lim f(t)/t)-weighted term over the mass of P where q = 0.
The conventions 0*f(0/0) = 0 and 0*f(a/0) = a*lim f(t)/t are applied here
and nowhere else; infinities otherwise propagate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import DiscreteDistribution, align
from .generators import ConvexGenerator, GeneratorDomainError

INF = math.inf

# Values this close to zero are floating-point residue of P ~ Q cancellation.
VALUE_CLAMP = 1e-15


@dataclass(frozen=True)
class DivergenceValue:
    """An f-divergence value with its three-term breakdown."""

    value: float
    core_sum: float
    zero_p_term: float  # f(0) * Q({p = 0})
    zero_q_term: float  # lim f(t)/t * P({q = 0})

    def __float__(self) -> float:
        return self.value


def _eval_ratio(g: ConvexGenerator, t: float) -> float:
    """g at a strictly positive ratio, raising if a restricted domain is violated."""
    a, b = g.domain
    if t < a or t > b:
        raise GeneratorDomainError(
            f"{g.name}: ratio {t!r} outside generator domain ({a}, {b})"
        )
    return g.fn(t)


def convention_term(g: ConvexGenerator, num_mass: float, den_mass: float) -> float:
    """den * f(num/den) under the zero-mass conventions.

    den > 0, num = 0 uses f(0); den = 0, num > 0 uses num * lim f(t)/t;
    den = num = 0 contributes nothing.
    """
    if den_mass > 0.0:
        if num_mass == 0.0:
            f0 = g.f_at_zero
            return den_mass * f0 if math.isfinite(f0) else f0
        return den_mass * _eval_ratio(g, num_mass / den_mass)
    if num_mass == 0.0:
        return 0.0
    fs = g.f_star_at_zero
    return num_mass * fs if math.isfinite(fs) else fs


def _extended_sum(terms: list[float]) -> float:
    if any(math.isinf(t) and t > 0 for t in terms):
        return INF
    return math.fsum(terms)


def f_divergence(
    g: ConvexGenerator, p: DiscreteDistribution, q: DiscreteDistribution
) -> DivergenceValue:
    """D(P||Q) for generator g, with supports union-aligned internally."""
    _, pm, qm = align(p, q)
    core_terms = []
    q_where_p_zero = 0.0
    p_where_q_zero = 0.0
    for pi, qi in zip(pm, qm):
        if qi > 0.0:
            if pi > 0.0:
                core_terms.append(qi * _eval_ratio(g, pi / qi))
            else:
                q_where_p_zero += qi
        elif pi > 0.0:
            p_where_q_zero += pi

    core = math.fsum(core_terms)
    zero_p = 0.0
    if q_where_p_zero > 0.0:
        f0 = g.f_at_zero
        zero_p = q_where_p_zero * f0 if math.isfinite(f0) else f0
    zero_q = 0.0
    if p_where_q_zero > 0.0:
        fs = g.f_star_at_zero
        zero_q = p_where_q_zero * fs if math.isfinite(fs) else fs

    value = _extended_sum([core, zero_p, zero_q])
    if math.isfinite(value) and abs(value) < VALUE_CLAMP:
        value = 0.0
    return DivergenceValue(value, core, zero_p, zero_q)


def binary_divergence(g: ConvexGenerator, t: float, s: float) -> float:
    """Divergence between Bernoulli(t) and Bernoulli(s) masses.

    Equals s*f(t/s) + (1-s)*f((1-t)/(1-s)) under the zero-mass conventions,
    and agrees with the full evaluator on the two-point distributions
    (t, 1-t) and (s, 1-s).
    """
    for name, v in (("t", t), ("s", s)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"binary_divergence: {name} = {v!r} outside [0, 1]")
    return _extended_sum(
        [convention_term(g, t, s), convention_term(g, 1.0 - t, 1.0 - s)]
    )


def total_variation(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Half the L1 distance; equals sup_A |P(A) - Q(A)|, at most 1."""
    _, pm, qm = align(p, q)
    return 0.5 * math.fsum(abs(a - b) for a, b in zip(pm, qm))


def chi_square(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Pearson chi-square divergence, +inf when P puts mass where Q does not."""
    _, pm, qm = align(p, q)
    terms = []
    for pi, qi in zip(pm, qm):
        if qi > 0.0:
            d = pi - qi
            terms.append(d * d / qi)
        elif pi > 0.0:
            return INF
    value = math.fsum(terms)
    return 0.0 if abs(value) < VALUE_CLAMP else value


def kl(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Relative entropy in nats, +inf when P is not dominated by Q."""
    _, pm, qm = align(p, q)
    terms = []
    for pi, qi in zip(pm, qm):
        if pi > 0.0:
            if qi <= 0.0:
                return INF
            terms.append(pi * math.log(pi / qi))
    value = math.fsum(terms)
    return 0.0 if abs(value) < VALUE_CLAMP else value


def jsd(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Jensen-Shannon divergence in nats: average relative entropy to the midpoint.

    Always finite and at most ln 2.
    """
    _, pm, qm = align(p, q)
    terms = []
    for pi, qi in zip(pm, qm):
        m = 0.5 * (pi + qi)
        if pi > 0.0:
            terms.append(0.5 * pi * math.log(pi / m))
        if qi > 0.0:
            terms.append(0.5 * qi * math.log(qi / m))
    value = math.fsum(terms)
    return 0.0 if abs(value) < VALUE_CLAMP else value


def ratio_range(p: DiscreteDistribution, q: DiscreteDistribution) -> tuple[float, float]:
    """(min, max) of p_i/q_i over the union support.

    The maximum is +inf when P has mass where Q does not; the minimum is 0
    when Q has mass where P does not.
    """
    _, pm, qm = align(p, q)
    lo = INF
    hi = 0.0
    for pi, qi in zip(pm, qm):
        if qi > 0.0:
            r = pi / qi
            lo = min(lo, r)
            hi = max(hi, r)
        elif pi > 0.0:
            hi = INF
    if math.isinf(lo) and hi == 0.0:
        raise ValueError("ratio_range: empty effective support")
    return lo, hi


def tv_ratio_cap(g: ConvexGenerator) -> float:
    """f(0) + lim f(t)/t: the supremum of D(P||Q) / TV(P, Q) when finite."""
    return _extended_sum([g.f_at_zero, g.f_star_at_zero])
