"""Command-line client for the divergence service.

All subcommands build request payloads, send them through the HTTP API
(in-process by default, or a remote server via --url), and render the
response.  Exit codes: 0 success / all checks pass, 1 any check failed,
2 input error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .distributions import DistributionError, load_distribution
from .service.app import create_app

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class ApiClient:
    """HTTP client bound either to the in-process app or a remote base URL."""

    def __init__(self, url: str | None):
        self._url = url.rstrip("/") if url else None

    def _send(self, method: str, path: str, **kwargs) -> httpx.Response:
        if self._url:
            with httpx.Client(base_url=self._url, timeout=600.0) as client:
                return client.request(method, path, **kwargs)

        import asyncio

        async def go() -> httpx.Response:
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://divkit.local", timeout=600.0
            ) as client:
                return await client.request(method, path, **kwargs)

        return asyncio.run(go())

    def request(self, method: str, path: str, **kwargs) -> dict:
        try:
            resp = self._send(method, path, **kwargs)
        except httpx.HTTPError as exc:
            _die(f"cannot reach service: {exc}")
        if resp.status_code in (400, 422):
            _die(_format_error(resp))
        if resp.status_code != 200:
            _die(f"service error {resp.status_code}: {resp.text}")
        return resp.json()


def _format_error(resp: httpx.Response) -> str:
    try:
        detail = resp.json().get("detail")
    except ValueError:
        return resp.text
    if isinstance(detail, list):  # pydantic validation errors carry field paths
        parts = []
        for item in detail:
            loc = ".".join(str(x) for x in item.get("loc", []) if x != "body")
            parts.append(f"{loc}: {item.get('msg', '')}")
        return "; ".join(parts)
    return str(detail)


def _die(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT_ERROR)


def _load_dist_arg(path: str) -> dict:
    try:
        return load_distribution(path).as_dict()
    except DistributionError as exc:
        _die(f"{path}: {exc}")


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(payload, sort_keys=True, indent=2, allow_nan=False))


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return f"{value:.12g}"


@click.group()
@click.option("--url", default=None, help="Remote service base URL (default: in-process).")
@click.pass_context
def main(ctx: click.Context, url: str | None) -> None:
    """Divergence toolkit: compute panels, certify curvature, check inequalities."""
    ctx.obj = ApiClient(url)


@main.command()
@click.argument("p_file", type=click.Path())
@click.argument("q_file", type=click.Path())
@click.option("--divergence", "divergences", default="kl",
              help="Comma-separated names, e.g. kl,pearson_chi2,alpha:0.5,sason:1.0.")
@click.option("--skew", default=None, help="Mixture weights t,s for skewed values.")
@click.option("--scheme", nargs=2, default=None,
              help="Skew scheme: alphas=0,0.5,1 weights=0.2,0.3,0.5.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.pass_obj
def compute(client: ApiClient, p_file: str, q_file: str, divergences: str,
            skew: str | None, scheme: tuple[str, str] | None, as_json: bool) -> None:
    """Divergence panel between two distribution files."""
    payload: dict = {
        "p": _load_dist_arg(p_file),
        "q": _load_dist_arg(q_file),
        "divergences": [d.strip() for d in divergences.split(",") if d.strip()],
    }
    if skew is not None:
        try:
            t_str, s_str = skew.split(",")
            payload["skew"] = {"t": float(t_str), "s": float(s_str)}
        except ValueError:
            _die(f"--skew: expected 't,s' in [0,1], got {skew!r}")
    if scheme is not None:
        payload["scheme"] = _parse_scheme(scheme)
    data = client.request("POST", "/compute", json=payload)
    if as_json:
        _emit_json(data)
        return
    header = f"{'divergence':<24} {'value':>18}"
    has_skew = any(r.get("skewed") is not None for r in data["rows"])
    has_scheme = any(r.get("generalized") is not None for r in data["rows"])
    if has_skew:
        header += f" {'skewed':>18}"
    if has_scheme:
        header += f" {'generalized':>18}"
    click.echo(header)
    for row in data["rows"]:
        line = f"{row['divergence']:<24} {_fmt(row['value']):>18}"
        if has_skew:
            line += f" {_fmt(row.get('skewed', '')):>18}"
        if has_scheme:
            line += f" {_fmt(row.get('generalized', '')):>18}"
        click.echo(line)
    click.echo(f"{'total_variation':<24} {_fmt(data['total_variation']):>18}")


def _parse_scheme(scheme: tuple[str, str]) -> dict:
    fields: dict[str, list[float]] = {}
    for token in scheme:
        key, _, raw = token.partition("=")
        key = key.strip()
        if key not in ("alphas", "weights") or not raw:
            _die(f"--scheme: expected alphas=... weights=..., got {token!r}")
        try:
            fields[key] = [float(x) for x in raw.split(",") if x.strip()]
        except ValueError:
            _die(f"--scheme: non-numeric entry in {token!r}")
    if set(fields) != {"alphas", "weights"}:
        _die("--scheme: both alphas= and weights= are required")
    return fields


@main.command()
@click.option("--seed", default=42, type=int, show_default=True)
@click.option("--count", default=200, type=int, show_default=True,
              help="Instances per configuration.")
@click.option("--support-sizes", default="2,4,8,16", show_default=True)
@click.option("--checks", default=None, help="Comma-separated subset of check ids.")
@click.option("--mass-floor", default=0.0, type=float, show_default=True)
@click.option("--tolerance", default=1e-10, type=float, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def check(client: ApiClient, seed: int, count: int, support_sizes: str,
          checks: str | None, mass_floor: float, tolerance: float, as_json: bool) -> None:
    """Run the inequality registry on seeded random instances."""
    try:
        sizes = [int(x) for x in support_sizes.split(",") if x.strip()]
    except ValueError:
        _die(f"--support-sizes: expected integers, got {support_sizes!r}")
    payload = {
        "seed": seed,
        "count": count,
        "support_sizes": sizes,
        "mass_floor": mass_floor,
        "tolerance": tolerance,
    }
    if checks is not None:
        payload["checks"] = [c.strip() for c in checks.split(",") if c.strip()]
    data = client.request("POST", "/check", json=payload)
    if as_json:
        _emit_json(data)
    else:
        by_check: dict[str, dict] = {}
        for rep in data["reports"]:
            agg = by_check.setdefault(
                rep["check_id"],
                {"pass": 0, "fail": 0, "skipped": 0, "degenerate": 0, "worst": None},
            )
            agg[rep["verdict"]] += 1
            m = rep["margin"]
            if not isinstance(m, str):
                agg["worst"] = m if agg["worst"] is None else min(agg["worst"], m)
        click.echo(f"{'check':<34} {'pass':>6} {'fail':>6} {'skip':>6} {'worst margin':>14}")
        for cid, agg in by_check.items():
            worst = "" if agg["worst"] is None else f"{agg['worst']:.3e}"
            click.echo(f"{cid:<34} {agg['pass']:>6} {agg['fail']:>6} "
                       f"{agg['skipped'] + agg['degenerate']:>6} {worst:>14}")
        s = data["summary"]
        click.echo(f"total {s['total']}: {s['passed']} pass, {s['failed']} fail, "
                   f"{s['skipped']} skipped, {s['degenerate']} degenerate")
    sys.exit(EXIT_OK if data["all_pass"] else EXIT_CHECK_FAILED)


@main.command()
@click.option("--problem", "problem_file", required=True, type=click.Path(),
              help="JSON file with hypotheses, prior, and optional reference q.")
@click.option("--divergence", "divergences", default="kl", show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def bayes(client: ApiClient, problem_file: str, divergences: str, as_json: bool) -> None:
    """Risk, decomposition, and bound margins for a hypothesis-testing problem."""
    try:
        spec = json.loads(Path(problem_file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _die(f"{problem_file}: {exc}")
    if not isinstance(spec, dict) or "hypotheses" not in spec or "prior" not in spec:
        _die(f"{problem_file}: needs 'hypotheses' and 'prior' fields")
    payload = {
        "hypotheses": spec["hypotheses"],
        "prior": spec["prior"],
        "divergences": [d.strip() for d in divergences.split(",") if d.strip()],
    }
    if spec.get("q") is not None:
        payload["q"] = spec["q"]
    data = client.request("POST", "/bayes", json=payload)
    if as_json:
        _emit_json(data)
        return
    click.echo(f"risk           {data['risk']:.12g}")
    click.echo(f"q_mass         {data['q_mass']:.12g}")
    click.echo(f"estimator      {data['estimator']}")
    wt = data["w_terms"]
    click.echo(f"w_terms        w0={_fmt(wt['w0'])} w1={_fmt(wt['w1'])} "
               f"w2={_fmt(wt['w2'])} total={_fmt(wt['total'])}")
    if data["degenerate"]:
        click.echo(f"degenerate     {','.join(data['degenerate'])}")
    for b in data["bounds"]:
        click.echo(f"bound[{b['instance'].get('generator', '?')}]  lhs={_fmt(b['lhs'])} "
                   f"rhs={_fmt(b['rhs'])} margin={_fmt(b['margin'])} {b['verdict']}")


@main.command()
@click.argument("p1_file", type=click.Path())
@click.argument("p2_file", type=click.Path())
@click.option("--max-terms", default=60, type=int, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def series(client: ApiClient, p1_file: str, p2_file: str, max_terms: int, as_json: bool) -> None:
    """Dyadic JSD series trace for the relative entropy and its Pinsker sharpening."""
    payload = {
        "p1": _load_dist_arg(p1_file),
        "p2": _load_dist_arg(p2_file),
        "max_terms": max_terms,
    }
    data = client.request("POST", "/series", json=payload)
    if as_json:
        _emit_json(data)
        return
    if data["diverges"]:
        click.echo("relative entropy infinite: first argument not dominated; series diverges")
        return
    click.echo(f"kl               {_fmt(data['kl'])}")
    click.echo(f"total_variation  {data['total_variation']:.12g}")
    click.echo(f"terms_used       {data['terms_used']}")
    click.echo(f"plain_pinsker    {data['plain_pinsker']:.12g}")
    click.echo(f"sharpened_bound  {data['sharpened_bound']:.12g}")
    click.echo(f"proven_bound     {data['proven_bound']:.12g}")
    click.echo(f"convergence_gap  {_fmt(data['convergence_gap'])}")


@main.command()
@click.option("--M", "m_value", default=2.0, type=float, show_default=True)
@click.option("--alpha", default=0.5, type=float, show_default=True)
@click.option("--s", "s_value", default=1.0, type=float, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def table(client: ApiClient, m_value: float, alpha: float, s_value: float, as_json: bool) -> None:
    """Built-in generators with their certified curvature at scale M."""
    data = client.request("GET", "/table",
                          params={"m": m_value, "alpha": alpha, "s": s_value})
    if as_json:
        _emit_json(data)
        return
    click.echo(f"{'name':<20} {'kappa':>14} {'domain':>12} {'method':>18} {'certified':>10}")
    for row in data["rows"]:
        click.echo(f"{row['name']:<20} {row['kappa']:>14.9g} {row['domain']:>12} "
                   f"{row['method']:>18} {'yes' if row['certified'] else 'NO':>10}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, type=int, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
