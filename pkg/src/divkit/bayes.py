"""Bayes risk, estimator-induced convex decompositions, and risk bounds.

Given hypothesis densities p_i with prior lambda over a common finite
support, the optimal 0-1-loss estimator T picks argmax_i lambda_i p_i(x)
per atom (ties to the smallest index).  T splits any reference density q
and the barycenter p into two-component convex decompositions whose
chi-square terms sharpen divergence lower bounds on the risk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import DiscreteDistribution, align_many, mixture
from .engine import binary_divergence, chi_square, f_divergence, kl, total_variation
from .generators import ConvexGenerator, kappa_on
from .reports import CheckReport

INF = math.inf

# Snap tolerance for degenerate decomposition masses.
_SNAP = 1e-15


class BayesProblemError(ValueError):
    """Invalid hypotheses or prior."""


@dataclass(frozen=True)
class BayesProblem:
    """Hypotheses over a common support with a strictly positive prior."""

    hypotheses: tuple[DiscreteDistribution, ...]
    prior: tuple[float, ...]

    def __post_init__(self) -> None:
        hyps = tuple(self.hypotheses)
        prior = tuple(float(w) for w in self.prior)
        if len(hyps) < 1:
            raise BayesProblemError("need at least one hypothesis")
        if len(hyps) != len(prior):
            raise BayesProblemError("prior length must match the number of hypotheses")
        for w in prior:
            if not w > 0.0:
                raise BayesProblemError(f"prior weight {w!r} must be strictly positive")
        total = math.fsum(prior)
        if abs(total - 1.0) > 1e-9:
            raise BayesProblemError(f"prior sums to {total!r}, not 1")
        if total != 1.0:
            prior = tuple(w / total for w in prior)
        support, rows = align_many(hyps)
        aligned = tuple(DiscreteDistribution(support, row) for row in rows)
        object.__setattr__(self, "hypotheses", aligned)
        object.__setattr__(self, "prior", prior)

    @property
    def support(self) -> tuple[str, ...]:
        return self.hypotheses[0].support

    @property
    def n(self) -> int:
        return len(self.hypotheses)

    def barycenter(self) -> DiscreteDistribution:
        return mixture(self.hypotheses, self.prior)


@dataclass(frozen=True)
class WTerms:
    """Chi-square sharpening terms of the risk bound."""

    w0: float
    w1: float
    w2: float

    @property
    def total(self) -> float:
        if any(math.isinf(w) for w in (self.w0, self.w1, self.w2)):
            return INF
        return self.w0 + self.w1 + self.w2


@dataclass(frozen=True)
class Decomposition:
    """Estimator-induced convex splits of a reference q and the barycenter.

    q = (1 - q_mass) * q1 + q_mass * q2 and p = (1 - risk) * rho1 + risk * rho2
    hold atomwise; a component is None when its mass vanishes, and the
    corresponding tags appear in ``degenerate``.
    """

    estimator: tuple[int, ...]
    risk: float
    q_mass: float
    q1: DiscreteDistribution | None
    q2: DiscreteDistribution | None
    rho1: DiscreteDistribution | None
    rho2: DiscreteDistribution | None
    degenerate: frozenset[str]


def _align_reference(prob: BayesProblem, q: DiscreteDistribution) -> tuple[BayesProblem, DiscreteDistribution]:
    """Extend problem and reference to the union support."""
    support, rows = align_many(list(prob.hypotheses) + [q])
    if support == prob.support and support == q.support:
        return prob, q
    hyps = tuple(DiscreteDistribution(support, row) for row in rows[:-1])
    aligned_q = DiscreteDistribution(support, rows[-1])
    return BayesProblem(hyps, prob.prior), aligned_q


def bayes_estimator(prob: BayesProblem) -> tuple[tuple[int, ...], float]:
    """Optimal estimator (atom -> hypothesis index, 0-based) and its risk.

    Risk is 1 minus the integral of max_i lambda_i p_i; it equals the
    minimal misclassification probability over all estimators.
    """
    t_map = []
    best_terms = []
    for x in range(len(prob.support)):
        best_i = 0
        best_v = -1.0
        for i, (lam, hyp) in enumerate(zip(prob.prior, prob.hypotheses)):
            v = lam * hyp.mass[x]
            if v > best_v:
                best_i, best_v = i, v
        t_map.append(best_i)
        best_terms.append(best_v)
    risk = 1.0 - math.fsum(best_terms)
    risk = min(1.0, max(0.0, risk))
    if risk < _SNAP:
        risk = 0.0
    if 1.0 - risk < _SNAP:
        risk = 1.0
    return tuple(t_map), risk


def _normalized_or_none(support, masses, total):
    if total <= 0.0:
        return None
    exact = math.fsum(masses)
    return DiscreteDistribution(support, tuple(m / exact for m in masses))


def decompose(prob: BayesProblem, q: DiscreteDistribution) -> Decomposition:
    """Split q and the barycenter along the optimal estimator.

    q1 carries lambda_T q (correct-classification tilt), q2 the remainder;
    rho1 carries lambda_T p_T, rho2 the remaining barycenter mass.
    """
    prob, q = _align_reference(prob, q)
    support = prob.support
    t_map, risk = bayes_estimator(prob)

    lam_t = [prob.prior[t_map[x]] for x in range(len(support))]
    q_correct = [lam_t[x] * q.mass[x] for x in range(len(support))]
    q_mass = 1.0 - math.fsum(q_correct)
    q_mass = min(1.0, max(0.0, q_mass))
    if q_mass < _SNAP:
        q_mass = 0.0
    if 1.0 - q_mass < _SNAP:
        q_mass = 1.0

    bary = prob.barycenter()
    rho1_raw = [lam_t[x] * prob.hypotheses[t_map[x]].mass[x] for x in range(len(support))]
    rho2_raw = [max(bary.mass[x] - rho1_raw[x], 0.0) for x in range(len(support))]
    q2_raw = [(1.0 - lam_t[x]) * q.mass[x] for x in range(len(support))]

    tags = set()
    if risk == 0.0:
        tags.add("risk_zero")
    if risk == 1.0:
        tags.add("risk_one")
    if q_mass == 0.0:
        tags.add("q_mass_zero")
    if q_mass == 1.0:
        tags.add("q_mass_one")

    return Decomposition(
        estimator=t_map,
        risk=risk,
        q_mass=q_mass,
        q1=_normalized_or_none(support, q_correct, 1.0 - q_mass),
        q2=_normalized_or_none(support, q2_raw, q_mass),
        rho1=_normalized_or_none(support, rho1_raw, 1.0 - risk),
        rho2=_normalized_or_none(support, rho2_raw, risk),
        degenerate=frozenset(tags),
    )


def w_terms(prob: BayesProblem, q: DiscreteDistribution) -> WTerms:
    """Chi-square terms of the sharpened risk bound.

    w1 and w2 weight the decomposition components; w0 is the per-atom
    conditional variance of p_i/q over the non-selected hypotheses,
    integrated against q.  w0 vanishes when there are two hypotheses.
    Degenerate components contribute zero.
    """
    prob, q = _align_reference(prob, q)
    dec = decompose(prob, q)
    risk, q_mass = dec.risk, dec.q_mass

    w1 = 0.0
    if dec.rho1 is not None and dec.q1 is not None and q_mass < 1.0:
        w1_chi = chi_square(dec.rho1, dec.q1)
        w1 = INF if math.isinf(w1_chi) else (1.0 - risk) ** 2 / (1.0 - q_mass) * w1_chi
    w2 = 0.0
    if dec.rho2 is not None and dec.q2 is not None and q_mass > 0.0 and risk > 0.0:
        w2_chi = chi_square(dec.rho2, dec.q2)
        w2 = INF if math.isinf(w2_chi) else risk ** 2 / q_mass * w2_chi

    w0 = 0.0
    if prob.n > 2:
        terms = []
        for x in range(len(prob.support)):
            t_x = dec.estimator[x]
            lam_rest = 1.0 - prob.prior[t_x]
            if lam_rest <= 0.0:
                continue
            qx = q.mass[x]
            others = [
                (prob.prior[i], prob.hypotheses[i].mass[x])
                for i in range(prob.n)
                if i != t_x
            ]
            if qx <= 0.0:
                if any(p_x > 0.0 for _, p_x in others):
                    return WTerms(INF, w1, w2)
                continue
            mean = math.fsum(lam * p_x for lam, p_x in others) / lam_rest
            terms.append(math.fsum(lam * (p_x - mean) ** 2 for lam, p_x in others) / qx)
        w0 = math.fsum(terms)
    return WTerms(w0, w1, w2)


def joint_ratio_range(prob: BayesProblem, q: DiscreteDistribution) -> tuple[float, float]:
    """(min, max) of p_i/q over all hypotheses and atoms with q > 0."""
    prob, q = _align_reference(prob, q)
    lo, hi = INF, 0.0
    for x in range(len(prob.support)):
        qx = q.mass[x]
        for hyp in prob.hypotheses:
            px = hyp.mass[x]
            if qx > 0.0:
                r = px / qx
                lo = min(lo, r)
                hi = max(hi, r)
            elif px > 0.0:
                hi = INF
    if math.isinf(lo) and hi == 0.0:
        raise BayesProblemError("empty effective support")
    return lo, hi


def guntuboyina_bound(
    prob: BayesProblem,
    q: DiscreteDistribution,
    g: ConvexGenerator,
    tolerance: float = 1e-10,
    kappa: float | None = None,
) -> CheckReport:
    """Sharpened mixture-divergence lower bound against the binary risk divergence.

    Checks sum_i lambda_i D(p_i||q) >= D(R||Q) + kappa * W / 2 with kappa a
    certified convexity modulus of g over the joint ratio range (or an
    explicit override).  A zero modulus drops the W term, recovering the
    unsharpened bound; an infinite left side passes trivially.
    """
    prob, q = _align_reference(prob, q)
    if kappa is None:
        lo, hi = joint_ratio_range(prob, q)
        if hi - lo < 1e-15:
            kappa = 0.0
        else:
            kappa = kappa_on(g, (lo, hi)).kappa

    dec = decompose(prob, q)
    wt = w_terms(prob, q)
    lhs_terms = []
    for lam, hyp in zip(prob.prior, prob.hypotheses):
        v = f_divergence(g, hyp, q).value
        if math.isinf(v):
            lhs_terms = [INF]
            break
        lhs_terms.append(lam * v)
    lhs = INF if any(math.isinf(v) for v in lhs_terms) else math.fsum(lhs_terms)

    base = binary_divergence(g, dec.risk, dec.q_mass)
    if kappa > 0.0 and math.isinf(wt.total):
        sharpening = INF
    else:
        sharpening = kappa * wt.total / 2.0 if kappa > 0.0 else 0.0
    rhs = INF if (math.isinf(base) or math.isinf(sharpening)) else base + sharpening

    instance = {
        "hypotheses": prob.n,
        "support": len(prob.support),
        "generator": g.name,
        "kappa": kappa,
    }
    if math.isinf(lhs):
        return CheckReport.from_margin(
            "guntuboyina_bound", instance, lhs, rhs, INF, tolerance,
            detail="infinite lhs; bound trivial",
        )
    margin = lhs - rhs
    detail = ""
    if dec.degenerate:
        detail = "degenerate: " + ",".join(sorted(dec.degenerate))
    return CheckReport.from_margin(
        "guntuboyina_bound", instance, lhs, rhs, margin, tolerance, detail
    )


def compensation_identity_check(
    prob: BayesProblem, q: DiscreteDistribution, tolerance: float = 1e-10
) -> CheckReport:
    """Mixture relative entropies split exactly through the barycenter:
    sum_i t_i D(P_i||Q) = D(P||Q) + sum_i t_i D(P_i||P)."""
    prob, q = _align_reference(prob, q)
    bary = prob.barycenter()
    instance = {"hypotheses": prob.n, "support": len(prob.support)}
    to_q = [kl(hyp, q) for hyp in prob.hypotheses]
    to_bary = [kl(hyp, bary) for hyp in prob.hypotheses]
    mix_term = kl(bary, q)
    if any(math.isinf(v) for v in to_q + to_bary + [mix_term]):
        return CheckReport.skipped(
            "compensation_identity", instance, "infinite relative entropy", tolerance
        )
    lhs = math.fsum(t * v for t, v in zip(prob.prior, to_q))
    rhs = mix_term + math.fsum(t * v for t, v in zip(prob.prior, to_bary))
    return CheckReport.from_margin(
        "compensation_identity", instance, lhs, rhs, -abs(lhs - rhs), tolerance
    )


@dataclass(frozen=True)
class PinskerSeries:
    """Dyadic mixture series for the relative entropy and its lower bounds.

    ``partial_sums[k]`` accumulates 2^(j+1) * JSD(M_j || P2) for j <= k with
    M_j the 2^-j mixture of P1 toward P2; the sums increase to KL(P1||P2).
    ``lower_bound_terms`` are the unweighted chi-square correction terms;
    ``weighted_lower_bound_terms`` carry the (1 +/- V_k)^2 weights under
    which the sharpened bound is established.  ``diverges`` flags P1 not
    dominated by P2.
    """

    partial_sums: tuple[float, ...]
    lower_bound_terms: tuple[float, ...]
    weighted_lower_bound_terms: tuple[float, ...]
    kl_value: float
    total_variation: float
    diverges: bool

    @property
    def sharpened_bound(self) -> float:
        """2*TV^2 plus the unweighted correction series."""
        return 2.0 * self.total_variation ** 2 + math.fsum(self.lower_bound_terms)

    @property
    def proven_bound(self) -> float:
        """2*TV^2 plus the weighted correction series."""
        return 2.0 * self.total_variation ** 2 + math.fsum(self.weighted_lower_bound_terms)

    @property
    def plain_pinsker(self) -> float:
        return 2.0 * self.total_variation ** 2


def pinsker_series(
    p1: DiscreteDistribution,
    p2: DiscreteDistribution,
    max_terms: int = 60,
    increment_floor: float = 1e-12,
) -> PinskerSeries:
    """Expand KL(P1||P2) as 2 * sum_k 2^k JSD(M_k||P2), M_k = 2^-k P1 + (1-2^-k) P2.

    Terms are evaluated with mixture weights factored symbolically (log1p
    forms), so late terms keep absolute accuracy and the truncated series
    matches the relative entropy to ~1e-12.  Also returns the chi-square
    correction terms of the sharpened Pinsker lower bound, both unweighted
    and with their derivation weights.
    """
    from .distributions import align

    _, pm, qm = align(p1, p2)
    if any(a > 0.0 and b <= 0.0 for a, b in zip(pm, qm)):
        return PinskerSeries((), (), (), INF, total_variation(p1, p2), True)

    d = [a - b for a, b in zip(pm, qm)]
    v = 0.5 * math.fsum(abs(x) for x in d)
    kl_value = kl(p1, p2)

    partial: list[float] = []
    lower: list[float] = []
    weighted: list[float] = []
    acc = 0.0
    for k in range(max_terms):
        w = 0.5 ** k
        term = 2.0 ** (k + 1) * _jsd_of_mixture(qm, d, w)
        acc += term
        partial.append(acc)
        lower.append(_correction_term(qm, d, v, k, weighted_scale=False))
        weighted.append(_correction_term(qm, d, v, k, weighted_scale=True))
        if term < increment_floor:
            break
    return PinskerSeries(tuple(partial), tuple(lower), tuple(weighted), kl_value, v, False)


def _jsd_of_mixture(qm, d, w) -> float:
    """JSD(Q + w*d || Q) for signed perturbation d, accurate for tiny w."""
    terms = []
    for base, di in zip(qm, d):
        a = base + w * di
        mid = base + 0.5 * w * di
        if mid <= 0.0:
            continue
        if a <= 0.0:
            terms.append(0.5 * base * math.log(base / mid))
            continue
        if base <= 0.0:
            terms.append(0.5 * a * math.log(a / mid))
            continue
        u = (0.5 * w * di) / mid
        terms.append(0.5 * (a * math.log1p(u) + base * math.log1p(-u)))
    return math.fsum(terms)


def _correction_term(qm, d, v, k, weighted_scale: bool) -> float:
    """2^k-scaled chi-square correction at level k, with weights factored.

    The conditional distributions of M_k and P2 on the sign split of d are
    compared to M_{k+1}; both chi-squares carry an exact w^2 factor that
    cancels against 2^k, keeping late terms accurate.
    """
    w = 0.5 ** k
    wv = w * v
    chi_plus_terms = []
    chi_minus_terms = []
    for base, di in zip(qm, d):
        y = base + 0.5 * w * di
        if y <= 0.0:
            continue
        if di > 0.0:
            c1 = 0.5 * di - v * base - 0.5 * wv * di
            c2 = v * base - 0.5 * di + 0.5 * wv * di
        else:
            c1 = v * base + 0.5 * di + 0.5 * wv * di
            c2 = 0.5 * di + v * base + 0.5 * wv * di
        chi_plus_terms.append(c1 * c1 / y)
        chi_minus_terms.append(c2 * c2 / y)
    chi_plus = math.fsum(chi_plus_terms) / (1.0 + wv) ** 2
    chi_minus = math.fsum(chi_minus_terms) / (1.0 - wv) ** 2
    vk = wv
    if weighted_scale:
        return 0.5 ** k * ((1.0 + vk) ** 2 * chi_plus + (1.0 - vk) ** 2 * chi_minus) / 4.0
    return 0.5 ** k * (chi_plus + chi_minus) / 2.0


def conditional_split(
    p1: DiscreteDistribution, p2: DiscreteDistribution, k: int
) -> tuple[DiscreteDistribution | None, DiscreteDistribution | None, DiscreteDistribution]:
    """The two sign-split conditionals of (M_k, P2) and the midpoint M_{k+1}.

    These coincide with the barycenter decomposition components of the pair
    (M_k, P2) under a uniform prior.
    """
    from .distributions import align

    support, pm, qm = align(p1, p2)
    w = 0.5 ** k
    mk = [b + w * (a - b) for a, b in zip(pm, qm)]
    mid = [b + 0.5 * w * (a - b) for a, b in zip(pm, qm)]
    up = [m if a > b else q2 for a, b, m, q2 in zip(pm, qm, mk, qm)]
    down = [q2 if a > b else m for a, b, m, q2 in zip(pm, qm, mk, qm)]
    n_up = math.fsum(up)
    n_down = math.fsum(down)
    first = DiscreteDistribution(support, tuple(x / n_up for x in up)) if n_up > 0 else None
    second = DiscreteDistribution(support, tuple(x / n_down for x in down)) if n_down > 0 else None
    return first, second, DiscreteDistribution(support, tuple(mid))
