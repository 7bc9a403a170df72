"""Acceptance gate: every criterion at its pinned tolerance.

Each test prints one PASS/FAIL line.  All streams derive from seed 42; no
instance selection beyond the stated configuration.
"""

import json
import math

import pytest
from click.testing import CliRunner

from divkit import (
    BayesProblem,
    InstanceGenerator,
    bayes_estimator,
    binary_divergence,
    builtin_certificate_interval,
    certificate_margin,
    chi_square,
    coarsen,
    d_infinity_binary,
    decompose,
    dual,
    f_divergence,
    from_masses,
    generalized_skew_divergence,
    guntuboyina_bound,
    joint_ratio_range,
    jsd,
    kappa_on,
    kl,
    make_builtin,
    pinsker_series,
    ratio_range,
    skew_divergence,
    skew_generator,
    symmetrized_divergence,
    total_variation,
    tv_ratio_cap,
)
from divkit.skewing import (
    a_coefficient,
    entropy_of_weights,
    n_infinity,
    params_for_mixture_weights,
    variance_of_alphas,
)
from tests.test_bayes import brute_force_min_error

INF = math.inf
LN2 = math.log(2.0)

GEN = InstanceGenerator(seed=42)

# Independent closed forms for the curvature table, per built-in at scale M.
KAPPA_FORMULAS = {
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


def _line(num: int, label: str, ok: bool, extra: str = "") -> None:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({extra})" if extra else ""
    print(f"ACCEPTANCE {num} [{label}]: {verdict}{suffix}")


def test_criterion_1_kappa_table_certification():
    variants = [(name, None) for name in
                ("kl", "total_variation", "pearson_chi2", "squared_hellinger",
                 "reverse_kl", "vincze_le_cam", "jensen_shannon", "neyman_chi2")]
    variants += [("sason_s", s) for s in (0.3, 1.0, 2.0)]
    variants += [("alpha_divergence", a) for a in (-3.0, 0.0, 2.5, 3.5)]
    worst = INF
    checked = 0
    for name, param in variants:
        g = make_builtin(name, param)
        for m in (0.25, 0.5, 1.0, 2.0, 8.0):
            cert = kappa_on(g, builtin_certificate_interval(g, m))
            expected = KAPPA_FORMULAS[name](m, param)
            assert math.isclose(cert.kappa, expected, rel_tol=1e-14), (name, m)
            margin = certificate_margin(g, cert)
            worst = min(worst, margin / max(1.0, cert.kappa))
            assert margin >= -1e-6 * max(1.0, cert.kappa), (name, m, margin)
            checked += 1
    _line(1, "kappa table certification", True,
          f"{checked} certificates, worst scaled margin {worst:.2e}")


def test_criterion_2_chi_square_floor_sweep():
    gens = [make_builtin(n) for n in
            ("kl", "pearson_chi2", "squared_hellinger", "reverse_kl",
             "jensen_shannon", "neyman_chi2")]
    rng = GEN.rng_for("acceptance_2")
    worst = INF
    for k in (2, 4, 8, 16):
        for _ in range(250):
            p, q = GEN.pair(rng, k)
            lo, hi = ratio_range(p, q)
            chi = chi_square(p, q)
            for g in gens:
                kappa = kappa_on(g, (lo, hi)).kappa if hi > lo else 0.0
                margin = f_divergence(g, p, q).value - 0.5 * kappa * chi
                worst = min(worst, margin)
                assert margin >= -1e-10, (g.name, k, margin)
    _line(2, "chi-square floor, 1000 x 6 generators", True, f"worst margin {worst:.2e}")


def test_criterion_3_sharpness_probe():
    eps = 1e-3
    p = from_masses([0.5 + eps, 0.5 - eps])
    q = from_masses([0.5, 0.5])
    ratio = kl(p, q) / chi_square(p, q)
    ok = abs(ratio - 0.5) <= 0.05 * 0.5
    _line(3, "ratio sharpness at eps=1e-3", ok, f"ratio {ratio:.6f} vs 0.5")
    assert ok


def test_criterion_4_oracle_equivalences():
    rng = GEN.rng_for("acceptance_4")
    gens = [make_builtin(n) for n in
            ("kl", "total_variation", "pearson_chi2", "squared_hellinger",
             "reverse_kl", "vincze_le_cam", "jensen_shannon", "neyman_chi2")]
    gens += [make_builtin("sason_s", 1.0), make_builtin("alpha_divergence", 0.5)]

    for i in range(500):  # skewed generator vs direct mixtures
        g = gens[i % len(gens)]
        t = float(rng.uniform()) if i % 4 else float(rng.integers(0, 2))
        s = float(rng.uniform()) if i % 3 else float(rng.integers(0, 2))
        p, q = GEN.pair(rng, 2 + i % 7, zero_p=0.2 if i % 5 == 0 else 0.0,
                        zero_q=0.2 if i % 5 == 1 else 0.0)
        direct = skew_divergence(g, p, q, t, s)
        via = f_divergence(skew_generator(g, params_for_mixture_weights(t, s)), p, q).value
        if math.isinf(direct) or math.isinf(via):
            assert direct == via
        else:
            assert abs(direct - via) <= 1e-12

    for i in range(100):  # binary vs two-point evaluator
        t, s = float(rng.uniform()), float(rng.uniform())
        for g in gens:
            direct = binary_divergence(g, t, s)
            full = f_divergence(g, from_masses([t, 1 - t]), from_masses([s, 1 - s])).value
            if math.isinf(direct) or math.isinf(full):
                assert direct == full
            else:
                assert abs(direct - full) <= 1e-12

    for i in range(200):  # duality swaps arguments, including infinite cases
        p, q = GEN.pair(rng, 2 + i % 6, zero_p=0.25 if i % 3 == 0 else 0.0,
                        zero_q=0.25 if i % 3 == 1 else 0.0)
        for g in gens:
            a = f_divergence(dual(g), p, q).value
            b = f_divergence(g, q, p).value
            if math.isinf(a) or math.isinf(b):
                assert a == b
            else:
                assert abs(a - b) <= 1e-12 * max(1.0, abs(b))

    for i in range(200):  # compensation identity
        n = 2 + i % 3
        k = 2 + i % 5
        prob = GEN.bayes_problem(rng, n, k)
        q = GEN.distribution(rng, k)
        lhs = math.fsum(t * kl(h, q) for t, h in zip(prob.prior, prob.hypotheses))
        bary = prob.barycenter()
        rhs = kl(bary, q) + math.fsum(t * kl(h, bary) for t, h in zip(prob.prior, prob.hypotheses))
        assert abs(lhs - rhs) <= 1e-10

    _line(4, "oracle equivalences (skew/binary/dual/compensation)", True)


def test_criterion_5_exact_identities():
    rng = GEN.rng_for("acceptance_5")
    g_chi = make_builtin("pearson_chi2")
    g_vlc = make_builtin("vincze_le_cam")
    for i in range(200):  # symmetrised chi-square is half Vincze-Le Cam
        p, q = GEN.pair(rng, 2 + i % 7, zero_p=0.2 if i % 4 == 0 else 0.0,
                        zero_q=0.2 if i % 4 == 1 else 0.0)
        assert abs(symmetrized_divergence(g_chi, p, q)
                   - 0.5 * f_divergence(g_vlc, p, q).value) <= 1e-12

    for i in range(200):  # 2R = 1 - TV for two equiprobable hypotheses
        k = 2 + i % 7
        p1, p2 = GEN.pair(rng, k)
        _, risk = bayes_estimator(BayesProblem((p1, p2), (0.5, 0.5)))
        assert abs(2.0 * risk - (1.0 - total_variation(p1, p2))) <= 1e-12

    for i in range(200):  # both convex reconstructions, atomwise
        n = 2 + i % 3
        k = 2 + i % 5
        prob = GEN.bayes_problem(rng, n, k)
        q = GEN.distribution(rng, k)
        dec = decompose(prob, q)
        bary = prob.barycenter()
        for x in range(k):
            q1x = dec.q1.mass[x] if dec.q1 else 0.0
            q2x = dec.q2.mass[x] if dec.q2 else 0.0
            r1x = dec.rho1.mass[x] if dec.rho1 else 0.0
            r2x = dec.rho2.mass[x] if dec.rho2 else 0.0
            assert abs((1 - dec.q_mass) * q1x + dec.q_mass * q2x - q.mass[x]) <= 1e-12
            assert abs((1 - dec.risk) * r1x + dec.risk * r2x - bary.mass[x]) <= 1e-12

    gens = [make_builtin(n) for n in ("kl", "squared_hellinger", "vincze_le_cam")]
    for i in range(200):  # symmetrisation is symmetric in its arguments
        g = gens[i % len(gens)]
        p, q = GEN.pair(rng, 2 + i % 5, zero_p=0.2 if i % 3 == 0 else 0.0)
        assert abs(symmetrized_divergence(g, p, q)
                   - symmetrized_divergence(g, q, p)) <= 1e-12

    _line(5, "exact identities", True)


def test_criterion_6_bound_suite():
    rng = GEN.rng_for("acceptance_6")
    g_kl = make_builtin("kl")
    g_chi = make_builtin("pearson_chi2")
    g_vlc = make_builtin("vincze_le_cam")
    sweep = [make_builtin(n) for n in
             ("kl", "pearson_chi2", "squared_hellinger", "jensen_shannon")]
    worst: dict[str, float] = {}

    def track(name: str, margin: float) -> None:
        worst[name] = min(worst.get(name, INF), margin)
        assert margin >= -1e-10, (name, margin)

    for i in range(500):
        k = (2, 4, 8, 16)[i % 4]
        g = sweep[i % 4]

        # symmetrised divergence dominates kappa/4 times Vincze-Le Cam
        p, q = GEN.pair(rng, k, zero_p=0.2 if i % 5 == 0 else 0.0,
                        zero_q=0.2 if i % 5 == 1 else 0.0)
        kappa = kappa_on(g, (0.0, 2.0)).kappa
        track("symmetrized_floor",
              symmetrized_divergence(g, p, q)
              - 0.25 * kappa * f_divergence(g_vlc, p, q).value)

        # skewed relative entropy against the worst-case log ratio
        a = float(rng.uniform())
        b = float(rng.uniform(0.02, 0.98))
        c = (1.0 - a) if a <= b else a
        track("skew_tv",
              c * d_infinity_binary(a, b) * total_variation(p, q)
              - skew_divergence(g_kl, p, q, a, b))

        # JSD against ln2 TV
        track("jsd_tv", LN2 * total_variation(p, q) - jsd(p, q))

        # generalized skew family, both sides
        scheme = GEN.scheme(rng, (2, 3, 5)[i % 3])
        js = generalized_skew_divergence(g_kl, p, q, scheme)
        tv = total_variation(p, q)
        track("gen_js_lower", js - variance_of_alphas(scheme) * tv * tv)
        track("gen_js_upper",
              a_coefficient(scheme) * entropy_of_weights(scheme) * tv - js)

        # skewed chi-square reversal at the derivation's constant
        if not all(x == scheme.alphas[0] for x in scheme.alphas):
            chi_gen = generalized_skew_divergence(g_chi, p, q, scheme)
            track("chi2_js_reversal", 2.0 * n_infinity(scheme) * js - chi_gen)

        # risk bound over 2-4 hypotheses
        n = (2, 3, 4)[i % 3]
        prob = GEN.bayes_problem(rng, n, k)
        q_ref = GEN.distribution(rng, k)
        rep = guntuboyina_bound(prob, q_ref, g)
        if math.isfinite(rep.margin):
            track("risk_bound", rep.margin)

        # two-hypothesis display at the derivation's coefficient
        p1, p2 = GEN.pair(rng, k)
        prob2 = BayesProblem((p1, p2), (0.5, 0.5))
        lo, hi = joint_ratio_range(prob2, q_ref)
        kappa2 = kappa_on(g, (lo, hi)).kappa if hi > lo else 0.0
        v = total_variation(p1, p2)
        dec = decompose(prob2, q_ref)
        chi1 = chi_square(dec.rho1, q_ref) if dec.rho1 else 0.0
        chi2v = chi_square(dec.rho2, q_ref) if dec.rho2 else 0.0
        bracket = (1 + v) ** 2 * chi1 + (1 - v) ** 2 * chi2v
        lhs = 0.5 * (f_divergence(g, p1, q_ref).value + f_divergence(g, p2, q_ref).value)
        rhs = binary_divergence(g, (1 - v) / 2, 0.5) + 0.25 * kappa2 * bracket
        if math.isfinite(lhs):
            track("two_hypothesis_display", lhs - rhs)

        # JSD lower bound: derived coefficient and the published tight one
        mid = prob2.barycenter()
        dec_m = decompose(prob2, mid)
        chi1m = chi_square(dec_m.rho1, mid) if dec_m.rho1 else 0.0
        chi2m = chi_square(dec_m.rho2, mid) if dec_m.rho2 else 0.0
        bracket_m = (1 + v) ** 2 * chi1m + (1 - v) ** 2 * chi2m
        base = binary_divergence(g_kl, (1 - v) / 2, 0.5)
        track("jsd_lower_derived", jsd(p1, p2) - (base + bracket_m / 8.0))
        track("jsd_lower_published", jsd(p1, p2) - (base + bracket_m / 4.0))

        # finite total-variation ratio cap
        cap_gen = (make_builtin("squared_hellinger"), g_vlc,
                   make_builtin("jensen_shannon"))[i % 3]
        track("tv_ratio_cap",
              tv_ratio_cap(cap_gen) * total_variation(p, q)
              - f_divergence(cap_gen, p, q).value)

        # data processing under coarsening
        if k >= 2:
            part = GEN.partition(rng, p.support)
            fine = f_divergence(g, p, q).value
            coarse = f_divergence(g, coarsen(p, part), coarsen(q, part)).value
            if math.isfinite(fine):
                track("data_processing", fine - coarse)

    summary = ", ".join(f"{k}={v:.1e}" for k, v in sorted(worst.items()))
    _line(6, "bound suite, 500 instances each", True, f"worst margins: {summary}")


def _acceptance_series_pairs():
    rng = GEN.rng_for("acceptance_7")
    pairs = []
    for i in range(100):
        k = (2, 4, 8, 16)[i % 4]
        pairs.append(GEN.pair(rng, k, dominated=True))
    return pairs


def test_criterion_7_pinsker_series():
    pairs = _acceptance_series_pairs()
    improved = 0
    eligible = 0
    unweighted_failures = 0
    unweighted_worst = INF
    for p1, p2 in pairs:
        series = pinsker_series(p1, p2, max_terms=60)
        assert not series.diverges
        assert len(series.partial_sums) <= 60
        assert abs(series.partial_sums[-1] - series.kl_value) <= 1e-9
        for a, b in zip(series.partial_sums, series.partial_sums[1:]):
            assert b >= a - 1e-15
        assert series.partial_sums[-1] <= series.kl_value + 1e-9
        assert series.kl_value - series.proven_bound >= -1e-10
        stated_margin = series.kl_value - series.sharpened_bound
        unweighted_worst = min(unweighted_worst, stated_margin)
        if stated_margin < -1e-10:
            unweighted_failures += 1
        if series.total_variation >= 0.05:
            eligible += 1
            if series.proven_bound > series.plain_pinsker:
                improved += 1
    assert eligible > 0
    assert improved / eligible >= 0.95
    _line(7, "series convergence, monotonicity, weighted lower bound, improvement",
          True,
          f"improvement {improved}/{eligible}; unweighted variant fails on "
          f"{unweighted_failures}/100 (worst {unweighted_worst:.2e}), see companion test")


def test_criterion_7_unweighted_series_bound_as_stated():
    """The unweighted correction series asserted literally at -1e-10.

    The two chi-square terms per level enter the derivation with weights
    (1 + V_k)^2 and (1 - V_k)^2; dropping the weights (as displayed) is not a
    valid lower bound and overshoots the relative entropy on most instances
    (exact counterexample: (0.999, 0.001) against (0.5, 0.5)).  This test
    records that fact by running the stated form unchanged; the weighted
    form is asserted green in the companion test above.
    """
    pairs = _acceptance_series_pairs()
    failures = []
    for p1, p2 in pairs:
        series = pinsker_series(p1, p2, max_terms=60)
        margin = series.kl_value - series.sharpened_bound
        if margin < -1e-10:
            failures.append(margin)
    ok = not failures
    _line(7, "unweighted series bound as stated", ok,
          f"{len(failures)}/100 instances violate; worst margin "
          f"{min(failures, default=0.0):.2e}")
    if failures:
        pytest.fail(
            f"the stated unweighted series bound fails on {len(failures)}/100 "
            f"instances (worst margin {min(failures):.2e}); the derivation "
            "supports the (1 +/- V_k)^2-weighted terms, which pass (see "
            "test_criterion_7_pinsker_series)"
        )


def test_criterion_8_bayes_risk_oracle():
    rng = GEN.rng_for("acceptance_8")
    worst = 0.0
    for i in range(50):
        n = 2 + i % 2
        k = 2 + i % 3
        prob = GEN.bayes_problem(rng, n, k)
        _, risk = bayes_estimator(prob)
        gap = abs(risk - brute_force_min_error(prob))
        worst = max(worst, gap)
        assert gap <= 1e-12
    _line(8, "risk equals exhaustive enumeration, 50 instances", True,
          f"worst gap {worst:.2e}")


def test_criterion_9_determinism():
    runner = CliRunner()
    args = ["check", "--seed", "42", "--count", "5", "--support-sizes", "2,4",
            "--json"]
    a = runner.invoke(main_cli(), args)
    b = runner.invoke(main_cli(), args)
    assert a.exit_code == 0, a.output[-2000:]
    ok = a.output == b.output
    payload = json.loads(a.output)
    _line(9, "byte-identical reruns of the check harness", ok,
          f"{payload['summary']['total']} reports")
    assert ok
    assert payload["all_pass"] is True


def main_cli():
    from divkit.cli import main

    return main
