"""f-divergences between finite discrete distributions.

Convex generators with curvature certificates, an exact three-term
divergence evaluator, skew-divergence constructions, Bayes-risk
decompositions and bounds, and a seeded harness that numerically checks
every inequality the library implements.
"""

from .distributions import (
    DiscreteDistribution,
    DistributionError,
    coarsen,
    from_masses,
    load_distribution,
    mix_toward,
    mixture,
    uniform,
)
from .generators import (
    ConvexGenerator,
    GeneratorDomainError,
    GeneratorParameterError,
    IntervalError,
    KappaCertificate,
    UnknownGeneratorError,
    affine_shift,
    builtin_certificate_interval,
    certificate_holds,
    certificate_margin,
    convexity_margin,
    dual,
    kappa_on,
    kappa_table,
    make_builtin,
    parse_generator_spec,
)
from .engine import (
    DivergenceValue,
    binary_divergence,
    chi_square,
    f_divergence,
    jsd,
    kl,
    ratio_range,
    total_variation,
    tv_ratio_cap,
)
from .skewing import (
    DegenerateSchemeError,
    GeneratorSkewParams,
    SkewScheme,
    SkewSchemeError,
    a_coefficient,
    d_infinity_binary,
    entropy_of_weights,
    generalized_skew_divergence,
    n_infinity,
    params_for_mixture_weights,
    skew_divergence,
    skew_generator,
    skew_symmetrization,
    symmetrized_divergence,
    variance_of_alphas,
)
from .bayes import (
    BayesProblem,
    BayesProblemError,
    Decomposition,
    PinskerSeries,
    WTerms,
    bayes_estimator,
    compensation_identity_check,
    decompose,
    guntuboyina_bound,
    joint_ratio_range,
    pinsker_series,
    w_terms,
)
from .reports import CheckReport, summarize
from .harness import CHECK_IDS, InstanceGenerator, run_registry

__version__ = "0.1.0"

__all__ = [
    "DiscreteDistribution", "DistributionError", "coarsen", "from_masses",
    "load_distribution", "mix_toward", "mixture", "uniform",
    "ConvexGenerator", "GeneratorDomainError", "GeneratorParameterError",
    "IntervalError", "KappaCertificate", "UnknownGeneratorError",
    "affine_shift", "builtin_certificate_interval", "certificate_holds",
    "certificate_margin", "convexity_margin", "dual", "kappa_on",
    "kappa_table", "make_builtin", "parse_generator_spec",
    "DivergenceValue", "binary_divergence", "chi_square", "f_divergence",
    "jsd", "kl", "ratio_range", "total_variation", "tv_ratio_cap",
    "DegenerateSchemeError", "GeneratorSkewParams", "SkewScheme",
    "SkewSchemeError", "a_coefficient", "d_infinity_binary",
    "entropy_of_weights", "generalized_skew_divergence", "n_infinity",
    "params_for_mixture_weights", "skew_divergence", "skew_generator",
    "skew_symmetrization", "symmetrized_divergence", "variance_of_alphas",
    "BayesProblem", "BayesProblemError", "Decomposition", "PinskerSeries",
    "WTerms", "bayes_estimator", "compensation_identity_check", "decompose",
    "guntuboyina_bound", "joint_ratio_range", "pinsker_series", "w_terms",
    "CheckReport", "summarize",
    "CHECK_IDS", "InstanceGenerator", "run_registry",
]
