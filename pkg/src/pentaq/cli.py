"""Command-line front end: verifications, limit studies, operator
expansions, and golden-vector self-checks.

Reports are line-delimited JSON: a header record (schema version, run
configuration, timestamp), one record per parameter point, and a summary
record with pass/fail counts and fitted constants.  Identical configuration
and seed produce byte-identical reports except for the header timestamp.
"""

from __future__ import annotations

import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from fractions import Fraction
from importlib import resources

import click
import numpy as np

from . import identities as idn
from . import kernels as krn
from .special_functions import (
    DEFAULT_POLICY,
    ModularPair,
    TruncationPolicy,
    bernoulli_b22,
    dilog,
    hyperbolic_gamma,
    log_gamma,
    qpoch_inf,
    qpoch_ratio_regularized,
    rogers_L,
)

SCHEMA_VERSION = 1

_IDENTITIES = ("operator", "classical", "hyperbolic", "index", "gamma",
               "equivalence", "beta")

_OPERATOR_QS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))


def _policy_from_options(product_tail_tol, quadrature_abs_tol,
                         quadrature_rel_tol, sum_tail_tol,
                         max_refinements) -> TruncationPolicy:
    policy = DEFAULT_POLICY
    overrides = {}
    if product_tail_tol is not None:
        overrides["product_tail_tol"] = product_tail_tol
    if quadrature_abs_tol is not None:
        overrides["quadrature_abs_tol"] = quadrature_abs_tol
    if quadrature_rel_tol is not None:
        overrides["quadrature_rel_tol"] = quadrature_rel_tol
    if sum_tail_tol is not None:
        overrides["sum_tail_tol"] = sum_tail_tol
    if max_refinements is not None:
        overrides["max_refinements"] = max_refinements
    return replace(policy, **overrides) if overrides else policy


def _sample_point(identity: str, rng: np.random.Generator):
    if identity == "classical":
        return {"x": float(rng.uniform(0.01, 0.99)),
                "y": float(rng.uniform(0.01, 0.99))}
    if identity == "hyperbolic":
        return krn.sample_hyperbolic(rng)
    if identity == "index":
        return krn.sample_index(rng)
    if identity == "gamma":
        return krn.sample_gamma(rng)
    if identity == "equivalence":
        return krn.sample_gamma(rng, with_spins=False)
    if identity == "beta":
        return krn.sample_beta(rng)
    raise ValueError(f"cannot sample points for identity {identity!r}")


def _load_point(identity: str, rec: dict):
    declared = rec.get("identity")
    expected = {"equivalence": "gamma"}.get(identity, identity)
    if declared is not None and declared != expected:
        raise ValueError(
            f"record declares identity {declared!r}, expected {expected!r}")
    if identity == "classical":
        return {"x": float(rec["x"]), "y": float(rec["y"])}
    if identity == "hyperbolic":
        return krn.HyperbolicParams.from_record(rec)
    if identity == "index":
        return krn.IndexParams.from_record(rec)
    if identity in ("gamma", "equivalence"):
        return krn.GammaParams.from_record(rec)
    if identity == "beta":
        return krn.BetaParams.from_record(rec)
    raise ValueError(f"cannot load points for identity {identity!r}")


def _verify_point(identity: str, point, policy: TruncationPolicy,
                  convention: str) -> idn.VerificationReport:
    if identity == "classical":
        return idn.verify_classical_pentagon(point["x"], point["y"])
    if identity == "hyperbolic":
        return idn.verify_pentagon_hyperbolic(point, policy)
    if identity == "index":
        return idn.verify_pentagon_index(point, policy, convention)
    if identity == "gamma":
        return idn.verify_pentagon_gamma(point, policy, convention)
    if identity == "equivalence":
        return idn.equivalence_check_gamma_rhs(point)
    if identity == "beta":
        return idn.verify_pentagon_beta(point, policy)
    raise ValueError(f"unknown identity {identity!r}")


def _emit(lines: list[str], report_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    click.echo(text, nl=False)


@click.group()
def main() -> None:
    """Pentagon-identity verification harness."""


@main.command()
@click.option("--identity", type=click.Choice(_IDENTITIES), required=True,
              help="Which identity to verify.")
@click.option("--params", "params_path", type=click.Path(exists=True),
              default=None, help="JSONL file of parameter points.")
@click.option("--random", "random_count", type=int, default=None,
              help="Number of random balanced points to sample.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for the random sampler (PCG64).")
@click.option("--tol", type=float, default=None,
              help="Override the identity's residual target.")
@click.option("--convention", type=click.Choice(["resolved", "printed"]),
              default="resolved", show_default=True)
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the JSONL report here as well as stdout.")
@click.option("--threads", type=int, default=1, show_default=True,
              help="Worker threads across parameter points.")
@click.option("--max-degree", type=int, default=10, show_default=True,
              help="Truncation degree for the operator identity.")
@click.option("--product-tail-tol", type=float, default=None)
@click.option("--quadrature-abs-tol", type=float, default=None)
@click.option("--quadrature-rel-tol", type=float, default=None)
@click.option("--sum-tail-tol", type=float, default=None)
@click.option("--max-refinements", type=int, default=None)
def verify(identity, params_path, random_count, seed, tol, convention,
           report_path, threads, max_degree, product_tail_tol,
           quadrature_abs_tol, quadrature_rel_tol, sum_tail_tol,
           max_refinements) -> None:
    """Verify one identity over a set of parameter points."""
    policy = _policy_from_options(product_tail_tol, quadrature_abs_tol,
                                  quadrature_rel_tol, sum_tail_tol,
                                  max_refinements)
    if identity == "operator":
        points = [{"q": str(q), "max_degree": max_degree}
                  for q in _OPERATOR_QS]
        if params_path or random_count:
            raise click.UsageError(
                "the operator identity runs its fixed rational-q set; "
                "--params/--random do not apply")
    elif params_path is not None and random_count is not None:
        raise click.UsageError("use exactly one of --params or --random")
    elif params_path is not None:
        points = []
        with open(params_path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    points.append(_load_point(identity, json.loads(line)))
                except (ValueError, KeyError) as exc:
                    raise click.ClickException(
                        f"{params_path}:{lineno}: constraint violation or "
                        f"parse error: {exc}") from exc
        if not points:
            raise click.ClickException(f"{params_path}: no parameter points")
    else:
        count = 25 if random_count is None else random_count
        if count < 1:
            raise click.UsageError("--random must be at least 1")
        rng = np.random.default_rng(seed)
        points = [_sample_point(identity, rng) for _ in range(count)]

    def run(indexed_point):
        index, point = indexed_point
        if identity == "operator":
            rep = idn.verify_operator_pentagon(point["max_degree"],
                                               Fraction(point["q"]))
        else:
            rep = _verify_point(identity, point, policy, convention)
        if tol is not None:
            rep = replace(rep, target=tol, passed=rep.rel_residual <= tol)
        return index, rep

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = sorted(pool.map(run, enumerate(points)))
    else:
        results = [run(item) for item in enumerate(points)]

    reports = [rep for _, rep in results]
    lines = [json.dumps({
        "schema_version": SCHEMA_VERSION, "kind": "run_header",
        "command": "verify", "identity": identity, "seed": seed,
        "convention": convention, "points": len(reports),
        "generator": "numpy.random.default_rng(PCG64)",
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    })]
    for index, rep in results:
        lines.append(json.dumps(
            {"kind": "point", "index": index, **rep.to_record()}))

    residuals = [rep.rel_residual for rep in reports]
    fits = [rep.constant_fit for rep in reports
            if rep.constant_fit is not None]
    summary = {
        "kind": "summary",
        "passed": sum(rep.passed for rep in reports),
        "failed": sum(not rep.passed for rep in reports),
        "max_rel_residual": max(residuals),
        "constant_fit_mean": float(np.mean(fits)) if fits else None,
        "constant_fit_std": float(np.std(fits)) if fits else None,
    }
    lines.append(json.dumps(summary))
    _emit(lines, report_path)
    sys.exit(0 if all(rep.passed for rep in reports) else 1)


@main.command("limit-study")
@click.argument("kind", type=click.Choice(["q-to-1", "omega"]))
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for the gamma parameter point of the q-to-1 study.")
@click.option("--report", "report_path", type=click.Path(), default=None)
def limit_study(kind, seed, report_path) -> None:
    """Run a convergence study toward one of the two gamma-function limits."""
    if kind == "q-to-1":
        rng = np.random.default_rng(seed)
        p = krn.sample_gamma(rng)
        result = idn.limit_study_q_to_1(p)
        params = p.to_record()
    else:
        result = idn.limit_study_omega()
        params = {"omega1": 1.0, "z_values": [0.17, 0.3, 0.42],
                  "T_sequence": [5.0, 10.0, 20.0]}
    lines = [json.dumps({
        "schema_version": SCHEMA_VERSION, "kind": "run_header",
        "command": "limit-study", "study": kind, "seed": seed,
        "parameters": params,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    })]
    lines.append(json.dumps({"kind": "study", **result.to_record()}))
    _emit(lines, report_path)
    sys.exit(0 if result.passed else 1)


@main.command("expand-operator")
@click.option("--max-degree", type=int, default=8, show_default=True)
@click.option("--q", "q_string", default="1/2", show_default=True,
              help="Rational q as p/r.")
def expand_operator(max_degree, q_string) -> None:
    """Print both sides of the operator identity and their difference."""
    try:
        q = Fraction(q_string)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"malformed rational {q_string!r}") from exc
    if not 0 < q < 1:
        raise click.UsageError(f"q must satisfy 0 < q < 1, got {q}")
    from .weyl_series import Generator, quantum_dilog_series, series_multiply

    lx = quantum_dilog_series(Generator.X, max_degree, q)
    ly = quantum_dilog_series(Generator.Y, max_degree, q)
    lxy = quantum_dilog_series(Generator.NEG_XY, max_degree, q)
    lhs = series_multiply(ly, lx)
    rhs = series_multiply(series_multiply(lx, lxy), ly)
    diff = lhs - rhs

    def dump(title, series):
        click.echo(f"# {title}")
        for a, b, c in series.table():
            click.echo(f"x^{a} y^{b}  {c}")
        if not series.coefficients:
            click.echo("(all coefficients zero)")

    dump("l(y) l(x)", lhs)
    dump("l(x) l(-xy) l(y)", rhs)
    dump("difference", diff)
    residual = diff.max_abs_coefficient()
    click.echo(f"# max residual: {residual}")
    sys.exit(0 if residual == 0 else 1)


def _golden_dispatch(rec: dict) -> complex:
    fn = rec["function"]
    args = rec["input"]

    def cx(value):
        if isinstance(value, list):
            return complex(value[0], value[1])
        return value

    if fn == "log_gamma":
        return log_gamma(cx(args["z"]))
    if fn == "qpoch_inf":
        return qpoch_inf(cx(args["a"]), cx(args["q"]))
    if fn == "qpoch_ratio_regularized":
        return qpoch_ratio_regularized(cx(args["alpha"]), cx(args["beta"]),
                                       cx(args["q"]))
    if fn == "bernoulli_b22":
        return bernoulli_b22(cx(args["u"]),
                             (cx(args["omega1"]), cx(args["omega2"])))
    if fn == "hyperbolic_gamma":
        omega = ModularPair(cx(args["omega1"]), cx(args["omega2"]))
        return hyperbolic_gamma(cx(args["u"]), omega)
    if fn == "dilog":
        return dilog(args["x"])
    if fn == "rogers_L":
        return rogers_L(args["x"])
    if fn == "b_idx":
        return krn.b_idx(cx(args["a"]), args["n"], cx(args["b"]), args["m"],
                         cx(args["q"]))
    if fn == "b_gamma_disc":
        return complex(krn.b_gamma_disc(args["a"], args["n"], args["b"],
                                        args["m"]))
    if fn == "b_beta":
        return krn.b_beta(cx(args["x"]), cx(args["y"]))
    if fn == "b_hyp":
        omega = ModularPair(cx(args["omega1"]), cx(args["omega2"]))
        return krn.b_hyp(cx(args["x"]), cx(args["y"]), omega)
    raise ValueError(f"unknown golden-vector function {fn!r}")


@main.command()
@click.option("--vectors", "vectors_path", type=click.Path(exists=True),
              default=None, help="Alternative golden-vector file.")
@click.option("--tol", "tol_scale", type=float, default=1.0,
              show_default=True,
              help="Scale factor applied to every vector tolerance.")
def selfcheck(vectors_path, tol_scale) -> None:
    """Evaluate every shipped golden test vector and report pass/fail."""
    if vectors_path is None:
        source = resources.files("pentaq").joinpath(
            "data/golden_vectors.jsonl")
        text = source.read_text(encoding="utf-8")
        name = "golden_vectors.jsonl"
    else:
        with open(vectors_path, encoding="utf-8") as fh:
            text = fh.read()
        name = vectors_path
    failures = 0
    total = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = json.loads(line)
            expected = complex(rec["expected"][0], rec["expected"][1])
            tol = float(rec["tol"]) * tol_scale
            fn = rec["function"]
        except (json.JSONDecodeError, KeyError, TypeError, IndexError) as exc:
            raise click.ClickException(
                f"{name}:{lineno}: malformed golden vector: {exc}") from exc
        total += 1
        got = complex(_golden_dispatch(rec))
        err = abs(got - expected) / max(abs(expected), 1e-300)
        ok = err <= tol
        failures += not ok
        status = "ok" if ok else "FAIL"
        click.echo(f"{status}  {fn:28s} rel={err:.3e} tol={tol:.1e} "
                   f"[{rec.get('provenance', '?')}]")
    click.echo(f"# {total - failures}/{total} golden vectors passed")
    sys.exit(0 if failures == 0 and total > 0 else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
