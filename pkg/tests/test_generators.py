import math

import pytest

from divkit import (
    GeneratorParameterError,
    IntervalError,
    UnknownGeneratorError,
    affine_shift,
    builtin_certificate_interval,
    certificate_margin,
    convexity_margin,
    dual,
    kappa_on,
    kappa_table,
    make_builtin,
    parse_generator_spec,
)
from divkit.generators import KappaCertificate, log_grid

INF = math.inf
LN2 = math.log(2.0)

# Independent oracle: curvature lower bounds kappa(M) per built-in, written
# directly from the defining formulas (not via the library's derivatives).
KAPPA_ORACLE = {
    "kl": lambda m, p: 1.0 / m,
    "total_variation": lambda m, p: 0.0,
    "pearson_chi2": lambda m, p: 2.0,
    "squared_hellinger": lambda m, p: m ** -1.5 / 2.0,
    "reverse_kl": lambda m, p: 1.0 / m ** 2,
    "vincze_le_cam": lambda m, p: 8.0 / (m + 1.0) ** 3,
    "jensen_shannon": lambda m, p: 1.0 / (m * (m + 1.0)),
    "neyman_chi2": lambda m, p: 2.0 / m ** 3,
    "sason_s": lambda m, p: 2.0 * math.log(p + m) + 3.0,
    "alpha_divergence": lambda m, p: m ** ((p - 3.0) / 2.0),
}

PARAM_FREE = ("kl", "total_variation", "pearson_chi2", "squared_hellinger",
              "reverse_kl", "vincze_le_cam", "jensen_shannon", "neyman_chi2")


def all_variants():
    gens = [(name, None) for name in PARAM_FREE]
    gens += [("sason_s", s) for s in (0.3, 1.0, 2.0)]
    gens += [("alpha_divergence", a) for a in (-3.0, 0.0, 2.5, 3.5)]
    return [(make_builtin(name, p), p) for name, p in gens]


class TestBuiltins:
    def test_normalization_at_one_is_exact(self):
        for g, _ in all_variants():
            assert g(1.0) == 0.0, g.name

    def test_pearson_row(self):
        g = make_builtin("pearson_chi2")
        for t in (0.25, 1.0, 3.0):
            assert g(t) == (t - 1.0) ** 2
        assert g.f_at_zero == 1.0
        assert g.f_star_at_zero == INF

    def test_vincze_at_three(self):
        assert make_builtin("vincze_le_cam")(3.0) == 1.0

    def test_total_variation_row(self):
        g = make_builtin("total_variation")
        assert g(3.0) == 1.0
        assert g.f_at_zero == 0.5 and g.f_star_at_zero == 0.5

    def test_boundary_limits_match_numeric_limits(self):
        # algebraic-tail rows (alpha family) converge like t^(-1/4) and are
        # probed further out; everything else is sampled at 1e-6 / 1e6
        for g, _ in all_variants():
            t_lo, t_hi = (1e-6, 1e6)
            if g.name == "alpha_divergence":
                t_lo, t_hi = (1e-12, 1e12)
            if math.isfinite(g.f_at_zero):
                allowance = max(1e-4 * (1.0 + abs(g.f_at_zero)), 5.0 * math.sqrt(t_lo))
                assert abs(g(t_lo) - g.f_at_zero) <= allowance, g.name
            if math.isfinite(g.f_star_at_zero):
                allowance = max(1e-4 * (1.0 + abs(g.f_star_at_zero)), 5.0 * t_hi ** -0.25)
                assert abs(g(t_hi) / t_hi - g.f_star_at_zero) <= allowance, g.name
            else:
                assert g(t_hi) / t_hi > 10.0, g.name

    def test_unknown_name(self):
        with pytest.raises(UnknownGeneratorError):
            make_builtin("hellinger_cubed")

    def test_sason_parameter_range(self):
        with pytest.raises(GeneratorParameterError):
            make_builtin("sason_s", math.exp(-1.5))
        with pytest.raises(GeneratorParameterError):
            make_builtin("sason_s")

    def test_alpha_parameter_range(self):
        for bad in (-1.0, 1.0, None):
            with pytest.raises(GeneratorParameterError):
                make_builtin("alpha_divergence", bad)

    def test_parse_spec(self):
        assert parse_generator_spec("kl").name == "kl"
        g = parse_generator_spec("alpha:0.5")
        assert g.name == "alpha_divergence" and g.params["alpha"] == 0.5
        g = parse_generator_spec("sason:1.0")
        assert g.name == "sason_s" and g.params["s"] == 1.0
        with pytest.raises(GeneratorParameterError):
            parse_generator_spec("alpha:x")

    def test_params_are_frozen(self):
        g = make_builtin("alpha_divergence", 0.5)
        with pytest.raises(TypeError):
            g.params["alpha"] = 2.0  # type: ignore[index]


class TestKappaOn:
    def test_closed_forms_match_oracle(self):
        for g, p in all_variants():
            for m in (0.25, 0.5, 1.0, 2.0, 8.0):
                cert = kappa_on(g, builtin_certificate_interval(g, m))
                expected = KAPPA_ORACLE[g.name](m, p)
                assert cert.method == "closed_form"
                assert math.isclose(cert.kappa, expected, rel_tol=1e-14), (g.name, m)

    def test_kl_examples(self):
        g = make_builtin("kl")
        assert kappa_on(g, (0.0, 2.0)).kappa == 0.5
        assert kappa_on(make_builtin("pearson_chi2"), (0.0, INF)).kappa == 2.0
        assert math.isclose(kappa_on(make_builtin("jensen_shannon"), (0.0, 2.0)).kappa,
                            1.0 / 6.0, rel_tol=1e-15)

    def test_interval_validation(self):
        g = make_builtin("kl")
        with pytest.raises(IntervalError):
            kappa_on(g, (2.0, 2.0))
        with pytest.raises(IntervalError):
            kappa_on(g, (-1.0, 2.0))

    def test_finite_difference_fallback(self):
        # dual of kl has second derivative 1/t^2 with infimum 1/4 on (0.5, 2)
        cert = kappa_on(dual(make_builtin("kl")), (0.5, 2.0))
        assert cert.method == "finite_difference"
        assert abs(cert.kappa - 0.25) < 1e-4
        assert cert.kappa <= 0.25  # safety margin keeps it a valid lower bound

    def test_kappa_never_negative(self):
        with pytest.raises(IntervalError):
            KappaCertificate((0.0, 1.0), -0.5, "closed_form")


class TestCertificates:
    def test_table_rows_certified_on_m_grid(self):
        for g, _ in all_variants():
            for m in (0.25, 2.0):
                cert = kappa_on(g, builtin_certificate_interval(g, m))
                margin = certificate_margin(g, cert)
                assert margin >= -1e-6 * max(1.0, cert.kappa), (g.name, m, margin)

    def test_inflated_kappa_fails_certificate(self):
        g = make_builtin("kl")
        bogus = KappaCertificate((0.0, 2.0), 0.75, "closed_form")  # true infimum is 0.5
        assert certificate_margin(g, bogus) < -1e-6 * max(1.0, bogus.kappa)

    def test_kappa_table_helper(self):
        rows = kappa_table(2.0, alpha=0.5, s=1.0)
        by_name = {r["name"]: r for r in rows}
        assert len(rows) == 10
        assert by_name["kl"]["kappa"] == 0.5
        assert all(r["certified"] for r in rows)


class TestDual:
    def test_pearson_dual_matches_neyman_up_to_affine(self):
        d = dual(make_builtin("pearson_chi2"))
        neyman = make_builtin("neyman_chi2")
        for t in log_grid(1e-3, 1e3, 41):
            assert math.isclose(d(t), (1.0 - t) ** 2 / t, rel_tol=1e-12)
            # differs from 1/t - 1 by exactly (t - 1)
            assert math.isclose(d(t) - neyman(t), t - 1.0,
                                rel_tol=1e-9, abs_tol=1e-12)

    def test_total_variation_self_dual(self):
        g = make_builtin("total_variation")
        d = dual(g)
        for t in log_grid(1e-3, 1e3, 41):
            assert math.isclose(d(t), g(t), rel_tol=1e-12, abs_tol=1e-15)

    def test_involution_on_log_grid(self):
        for g, _ in all_variants():
            dd = dual(dual(g))
            for t in log_grid(1e-3, 1e3, 101):
                assert abs(dd(t) - g(t)) <= 1e-12 * max(1.0, abs(g(t))), (g.name, t)

    def test_boundary_limits_swap(self):
        g = make_builtin("kl")
        d = dual(g)
        assert d.f_at_zero == g.f_star_at_zero
        assert d.f_star_at_zero == g.f_at_zero

    def test_dual_curvature_scaling(self):
        # modulus kappa on [a, b] implies kappa * a^3 for the dual on [1/b, 1/a]
        a, b = 0.5, 2.0
        for g, _ in all_variants():
            kappa = kappa_on(g, (a, b)).kappa
            dual_kappa = kappa_on(dual(g), (1.0 / b, 1.0 / a)).kappa
            assert dual_kappa >= kappa * a ** 3 - 1e-5 * max(1.0, kappa * a ** 3), g.name


class TestAffineShift:
    def test_zero_shift_is_pointwise_identity(self):
        g = make_builtin("kl")
        s = affine_shift(g, 0.0)
        for t in log_grid(1e-3, 1e3, 41):
            assert s(t) == g(t)

    def test_normalized_kl_is_nonnegative(self):
        s = affine_shift(make_builtin("kl"), -1.0)
        assert min(s(t) for t in log_grid(1e-6, 1e6, 513)) >= -1e-15

    def test_boundary_limits_shift(self):
        g = make_builtin("pearson_chi2")
        s = affine_shift(g, 3.0)
        assert s.f_at_zero == g.f_at_zero - 3.0
        assert s.f_star_at_zero == INF


class TestConvexity:
    def test_three_point_check_across_generator_algebra(self, rng):
        from divkit import GeneratorSkewParams, skew_generator, skew_symmetrization

        base = [g for g, _ in all_variants()]
        derived = [dual(make_builtin("kl")), affine_shift(make_builtin("pearson_chi2"), -2.0),
                   skew_generator(make_builtin("kl"), GeneratorSkewParams(0.3, 0.8)),
                   skew_symmetrization(make_builtin("squared_hellinger"))]
        for g in base + derived:
            assert g(1.0) == 0.0, g.name  # every operation preserves normalization
            assert convexity_margin(g, rng, n_triples=1000) >= -1e-12, g.name


class TestJensenGap:
    def test_gap_dominates_half_kappa_variance(self, rng):
        for g, _ in all_variants():
            for _ in range(50):
                k = int(rng.integers(2, 8))
                atoms = [math.exp(float(u)) for u in rng.uniform(math.log(0.25), math.log(4.0), size=k)]
                raw = rng.uniform(0.05, 1.0, size=k)
                probs = [float(x) / float(raw.sum()) for x in raw]
                lo, hi = min(atoms), max(atoms)
                if hi - lo < 1e-9:
                    continue
                kappa = kappa_on(g, (lo, hi)).kappa
                mean = math.fsum(p * x for p, x in zip(probs, atoms))
                gap = math.fsum(p * g(x) for p, x in zip(probs, atoms)) - g(mean)
                var = math.fsum(p * (x - mean) ** 2 for p, x in zip(probs, atoms))
                assert gap >= 0.5 * kappa * var - 1e-10, g.name
