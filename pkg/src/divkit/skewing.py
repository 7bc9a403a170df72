"""Skewed divergences and mixture skew families.

Two conventions are used and pinned by oracle tests against each other:

* ``skew_divergence(g, P, Q, t, s)`` evaluates D((1-t)P + tQ || (1-s)P + sQ),
  weights on Q, so (t, s) = (0, 1) recovers D(P||Q).
* ``GeneratorSkewParams(num_weight=r, den_weight=t)`` skews the generator
  itself, with r and t the weights on the first argument in the numerator
  and denominator mixtures, so D of the skewed generator from P to Q equals
  D(rP + (1-r)Q || tP + (1-t)Q).  The mapping between the two is
  r = 1 - t_mix, t = 1 - s_mix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import DiscreteDistribution, mix_toward
from .engine import convention_term, f_divergence
from .generators import ConvexGenerator

INF = math.inf

WEIGHT_SUM_TOLERANCE = 1e-12


class SkewSchemeError(ValueError):
    """Invalid skew coefficients or weights."""


class DegenerateSchemeError(ValueError):
    """Mean skew coefficient at 0 or 1 with heterogeneous coefficients."""


@dataclass(frozen=True)
class SkewScheme:
    """Skew coefficients alpha_i in [0, 1] with positive weights summing to one."""

    alphas: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        alphas = tuple(float(a) for a in self.alphas)
        weights = tuple(float(w) for w in self.weights)
        if len(alphas) == 0 or len(alphas) != len(weights):
            raise SkewSchemeError("alphas and weights must be nonempty and equal length")
        for a in alphas:
            if not 0.0 <= a <= 1.0:
                raise SkewSchemeError(f"alpha {a!r} outside [0, 1]")
        for w in weights:
            if not w > 0.0:
                raise SkewSchemeError(f"weight {w!r} must be strictly positive")
        total = math.fsum(weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise SkewSchemeError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "weights", weights)

    @property
    def alpha_bar(self) -> float:
        ab = math.fsum(w * a for w, a in zip(self.weights, self.alphas))
        return min(1.0, max(0.0, ab))

    def __len__(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class GeneratorSkewParams:
    """Mixture weights on the first argument for generator skewing."""

    num_weight: float
    den_weight: float

    def __post_init__(self) -> None:
        for name, v in (("num_weight", self.num_weight), ("den_weight", self.den_weight)):
            if not 0.0 <= float(v) <= 1.0:
                raise SkewSchemeError(f"{name} = {v!r} outside [0, 1]")
        object.__setattr__(self, "num_weight", float(self.num_weight))
        object.__setattr__(self, "den_weight", float(self.den_weight))


def skew_generator(g: ConvexGenerator, params: GeneratorSkewParams) -> ConvexGenerator:
    """Skewed generator x -> (tx + 1 - t) f((rx + 1 - r)/(tx + 1 - t)).

    Convexity and the normalisation at 1 are preserved; boundary limits are
    the appropriate convention terms and may be infinite.  The divergence of
    the result from P to Q equals D(rP + (1-r)Q || tP + (1-t)Q).
    """
    r, t = params.num_weight, params.den_weight

    def fn(x: float, _g=g.fn, _r=r, _t=t) -> float:
        den = _t * x + (1.0 - _t)
        num = _r * x + (1.0 - _r)
        return den * _g(num / den)

    fpp = g.second_derivative
    skew_fpp = None
    if fpp is not None:
        j2 = (r - t) ** 2

        def skew_fpp(x: float, _f=fpp, _r=r, _t=t, _j2=j2) -> float:
            den = _t * x + (1.0 - _t)
            return _j2 * _f((_r * x + (1.0 - _r)) / den) / den ** 3

    return ConvexGenerator(
        name=f"skew({g.name},{r:g},{t:g})",
        fn=fn,
        f_at_zero=convention_term(g, 1.0 - r, 1.0 - t),
        f_star_at_zero=convention_term(g, r, t),
        second_derivative=skew_fpp,
        params={**g.params, "num_weight": r, "den_weight": t},
    )


def skew_divergence(
    g: ConvexGenerator,
    p: DiscreteDistribution,
    q: DiscreteDistribution,
    t: float,
    s: float,
) -> float:
    """D((1-t)P + tQ || (1-s)P + sQ), evaluated on the mixtures directly."""
    for name, v in (("t", t), ("s", s)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"skew_divergence: {name} = {v!r} outside [0, 1]")
    return f_divergence(g, mix_toward(p, q, t), mix_toward(p, q, s)).value


def skew_symmetrization(g: ConvexGenerator) -> ConvexGenerator:
    """Generator of the symmetrised divergence (D(P||M) + D(Q||M)) / 2, M the midpoint.

    Applied to the relative entropy this yields the Jensen-Shannon
    divergence; applied to the Pearson chi-square it yields half the
    Vincze-Le Cam divergence.
    """
    def fn(x: float, _g=g.fn) -> float:
        u = 1.0 + x
        return 0.25 * u * (_g(2.0 * x / u) + _g(2.0 / u))

    boundary = g.f_at_zero
    if math.isfinite(boundary):
        boundary = 0.25 * (boundary + g.fn(2.0))

    fpp = g.second_derivative
    sym_fpp = None
    if fpp is not None:

        def sym_fpp(x: float, _f=fpp) -> float:
            u = 1.0 + x
            return (_f(2.0 * x / u) + _f(2.0 / u)) / u ** 3

    return ConvexGenerator(
        name=f"symmetrized({g.name})",
        fn=fn,
        f_at_zero=boundary,
        f_star_at_zero=boundary,
        second_derivative=sym_fpp,
        params=dict(g.params),
    )


def symmetrized_divergence(
    g: ConvexGenerator, p: DiscreteDistribution, q: DiscreteDistribution
) -> float:
    """(D(P||M) + D(Q||M)) / 2 with M the even mixture of P and Q."""
    m = mix_toward(p, q, 0.5)
    a = f_divergence(g, p, m).value
    b = f_divergence(g, q, m).value
    if math.isinf(a) or math.isinf(b):
        return INF
    return 0.5 * (a + b)


def generalized_skew_divergence(
    g: ConvexGenerator,
    p: DiscreteDistribution,
    q: DiscreteDistribution,
    scheme: SkewScheme,
) -> float:
    """Weighted sum of divergences from the alpha_i-mixtures to the mean mixture."""
    bar = mix_toward(p, q, scheme.alpha_bar)
    terms = []
    for a, w in zip(scheme.alphas, scheme.weights):
        v = f_divergence(g, mix_toward(p, q, a), bar).value
        if math.isinf(v):
            return INF
        terms.append(w * v)
    return math.fsum(terms)


def d_infinity_binary(a: float, b: float) -> float:
    """Worst-case log likelihood ratio between Bernoulli(a) and Bernoulli(b).

    ln max(a/b, (1-a)/(1-b)) with the conventions 0/0 = 1 and x/0 = +inf.
    """
    for name, v in (("a", a), ("b", b)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"d_infinity_binary: {name} = {v!r} outside [0, 1]")
    r = _ratio_conv(a, b)
    r2 = _ratio_conv(1.0 - a, 1.0 - b)
    m = max(r, r2)
    return INF if math.isinf(m) else math.log(m)


def _ratio_conv(x: float, y: float) -> float:
    if y > 0.0:
        return x / y
    return 1.0 if x == 0.0 else INF


def n_infinity(scheme: SkewScheme) -> float:
    """Likelihood-ratio cap of the scheme: max over i of the ratio bound
    between the alpha_i-mixture and the mean mixture.

    Equals max_i max(alpha_i/mean, (1-alpha_i)/(1-mean)); 1 when all
    coefficients coincide.
    """
    bar = scheme.alpha_bar
    if all(a == scheme.alphas[0] for a in scheme.alphas):
        return 1.0
    if bar in (0.0, 1.0):
        raise DegenerateSchemeError(
            f"mean coefficient {bar!r} at the boundary with heterogeneous alphas"
        )
    return max(
        max(a / bar, (1.0 - a) / (1.0 - bar)) for a in scheme.alphas
    )


def a_coefficient(scheme: SkewScheme) -> float:
    """max_i |alpha_i - leave-one-out weighted mean of the others|; at most 1."""
    n = len(scheme)
    if n == 1:
        return 0.0
    out = 0.0
    for i, (a_i, w_i) in enumerate(zip(scheme.alphas, scheme.weights)):
        rest = math.fsum(
            w_j * a_j
            for j, (a_j, w_j) in enumerate(zip(scheme.alphas, scheme.weights))
            if j != i
        )
        out = max(out, abs(a_i - rest / (1.0 - w_i)))
    return out


def variance_of_alphas(scheme: SkewScheme) -> float:
    bar = scheme.alpha_bar
    return math.fsum(w * (a - bar) ** 2 for a, w in zip(scheme.alphas, scheme.weights))


def entropy_of_weights(scheme: SkewScheme) -> float:
    """Shannon entropy of the weights in nats."""
    return -math.fsum(w * math.log(w) for w in scheme.weights)


def params_for_mixture_weights(t: float, s: float) -> GeneratorSkewParams:
    """Generator-skew parameters matching skew_divergence's (t, s) mixtures."""
    return GeneratorSkewParams(num_weight=1.0 - t, den_weight=1.0 - s)
