"""FastAPI service wrapping the divergence library.

Endpoints mirror the CLI subcommands: /compute, /check, /bayes, /series,
/table.  Invalid inputs map to 400 with a message naming the offending
field; schema violations surface as FastAPI's standard 422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..bayes import (
    BayesProblem,
    BayesProblemError,
    decompose,
    guntuboyina_bound,
    pinsker_series,
    w_terms,
)
from ..distributions import DistributionError
from ..engine import f_divergence, total_variation
from ..generators import (
    GeneratorParameterError,
    UnknownGeneratorError,
    kappa_table,
    parse_generator_spec,
)
from ..harness import InstanceGenerator, run_registry
from ..reports import ext_to_json, summarize
from ..skewing import SkewScheme, SkewSchemeError, generalized_skew_divergence, skew_divergence
from . import schemas

_INPUT_ERRORS = (
    DistributionError,
    UnknownGeneratorError,
    GeneratorParameterError,
    SkewSchemeError,
    BayesProblemError,
    ValueError,
    KeyError,
)


def _report_model(report) -> schemas.CheckReportModel:
    return schemas.CheckReportModel(
        check_id=report.check_id,
        instance=dict(report.instance),
        lhs=ext_to_json(report.lhs),
        rhs=ext_to_json(report.rhs),
        margin=ext_to_json(report.margin),
        tolerance=report.tolerance,
        verdict=report.verdict,
        detail=report.detail,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="divkit", version="0.1.0")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/compute", response_model=schemas.ComputeResponse)
    def compute(req: schemas.ComputeRequest) -> schemas.ComputeResponse:
        try:
            p = req.p.to_core()
            q = req.q.to_core()
            rows = []
            for spec in req.divergences:
                g = parse_generator_spec(spec)
                row = schemas.ComputeRow(
                    divergence=spec, value=ext_to_json(f_divergence(g, p, q).value)
                )
                if req.skew is not None:
                    row.skewed = ext_to_json(
                        skew_divergence(g, p, q, req.skew.t, req.skew.s)
                    )
                if req.scheme is not None:
                    scheme = SkewScheme(tuple(req.scheme.alphas), tuple(req.scheme.weights))
                    row.generalized = ext_to_json(
                        generalized_skew_divergence(g, p, q, scheme)
                    )
                rows.append(row)
            return schemas.ComputeResponse(rows=rows, total_variation=total_variation(p, q))
        except _INPUT_ERRORS as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/check", response_model=schemas.CheckResponse)
    def check(req: schemas.CheckRequest) -> schemas.CheckResponse:
        try:
            gen = InstanceGenerator(
                seed=req.seed,
                support_sizes=tuple(req.support_sizes),
                n_hypotheses=tuple(req.n_hypotheses),
                mass_floor=req.mass_floor,
                count=req.count,
            )
            reports = run_registry(gen, checks=req.checks, tolerance=req.tolerance)
        except _INPUT_ERRORS as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        stats = summarize(reports)
        from ..harness import CHECK_IDS

        return schemas.CheckResponse(
            seed=req.seed,
            count=req.count,
            checks=list(req.checks) if req.checks is not None else list(CHECK_IDS),
            tolerance=req.tolerance,
            reports=[_report_model(r) for r in reports],
            summary=schemas.CheckSummaryModel(
                total=stats["total"], passed=stats["pass"], failed=stats["fail"],
                skipped=stats["skipped"], degenerate=stats["degenerate"],
            ),
            all_pass=stats["all_pass"],
        )

    @app.post("/bayes", response_model=schemas.BayesResponse)
    def bayes(req: schemas.BayesRequest) -> schemas.BayesResponse:
        try:
            prob = BayesProblem(
                tuple(h.to_core() for h in req.hypotheses), tuple(req.prior)
            )
            q = req.q.to_core() if req.q is not None else prob.barycenter()
            dec = decompose(prob, q)
            wt = w_terms(prob, q)
            bounds = [
                guntuboyina_bound(prob, q, parse_generator_spec(spec))
                for spec in req.divergences
            ]
        except _INPUT_ERRORS as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        def _dist(d):
            return schemas.DistributionModel.from_core(d) if d is not None else None

        return schemas.BayesResponse(
            support=list(prob.support),
            risk=dec.risk,
            q_mass=dec.q_mass,
            estimator=list(dec.estimator),
            q1=_dist(dec.q1), q2=_dist(dec.q2),
            rho1=_dist(dec.rho1), rho2=_dist(dec.rho2),
            degenerate=sorted(dec.degenerate),
            w_terms=schemas.WTermsModel(
                w0=ext_to_json(wt.w0), w1=ext_to_json(wt.w1),
                w2=ext_to_json(wt.w2), total=ext_to_json(wt.total),
            ),
            bounds=[_report_model(b) for b in bounds],
        )

    @app.post("/series", response_model=schemas.SeriesResponse)
    def series(req: schemas.SeriesRequest) -> schemas.SeriesResponse:
        try:
            p1 = req.p1.to_core()
            p2 = req.p2.to_core()
            result = pinsker_series(p1, p2, max_terms=req.max_terms)
        except _INPUT_ERRORS as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if result.diverges:
            return schemas.SeriesResponse(
                kl="inf", total_variation=result.total_variation, diverges=True,
                terms_used=0, partial_sums=[], lower_bound_terms=[],
                weighted_lower_bound_terms=[], plain_pinsker=result.plain_pinsker,
                sharpened_bound=result.plain_pinsker, proven_bound=result.plain_pinsker,
                convergence_gap="inf", proven_bound_margin="inf",
            )
        return schemas.SeriesResponse(
            kl=ext_to_json(result.kl_value),
            total_variation=result.total_variation,
            diverges=False,
            terms_used=len(result.partial_sums),
            partial_sums=list(result.partial_sums),
            lower_bound_terms=list(result.lower_bound_terms),
            weighted_lower_bound_terms=list(result.weighted_lower_bound_terms),
            plain_pinsker=result.plain_pinsker,
            sharpened_bound=result.sharpened_bound,
            proven_bound=result.proven_bound,
            convergence_gap=ext_to_json(abs(result.partial_sums[-1] - result.kl_value)),
            proven_bound_margin=ext_to_json(result.kl_value - result.proven_bound),
        )

    @app.get("/table", response_model=schemas.TableResponse)
    def table(m: float = 2.0, alpha: float = 0.5, s: float = 1.0) -> schemas.TableResponse:
        try:
            rows = kappa_table(m, alpha=alpha, s=s)
        except _INPUT_ERRORS as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.TableResponse(
            m=m, alpha=alpha, s=s,
            rows=[schemas.TableRowModel(**row) for row in rows],
        )

    return app


app = create_app()
