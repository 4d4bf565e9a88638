"""``choqlab`` command line: eval, check, decompose, gen and compare.

Every subcommand prints one JSON run report on stdout and logs to stderr.
Exit codes: 0 success or pass, 1 failed check or comparison, 2 parse error,
3 dimension error, 4 domain/axiom mismatch, 5 invalid cut.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import sys
import time
from typing import Any

import numpy as np

from . import __version__
from .axioms import AXIOMS, CheckConfig, check, check_oddness_positive_orthant
from .demo_functions import BUILTINS
from .errors import DimensionError, DomainError, DomainKindError, NegativeCutError
from .lovasz import (
    LovaszExtension,
    MedianAdditiveExtension,
    SymmetricLovaszExtension,
    eval_lovasz,
    eval_lovasz_dual,
    eval_median_additive,
    eval_symmetric,
    eval_symmetric_telescoping,
    extension_from_dict,
)
from .oracle import AFFINE_MAX_N, eval_affine_interpolation, eval_via_mobius
from .setfn import KINDS, SetFunction, random_set_function
from .vecops import (
    DomainSpec,
    as_vector,
    cut_above,
    cut_below,
    in_domain,
    join_scalar,
    med_clamp,
    meet_scalar,
    neg_part,
    pos_part,
)

SCHEMA = "choqlab.run-report/1"
CLI_MAX_N = 20
SEED_ENV = "CHOQLAB_SEED"

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DIM, EXIT_DOMAIN, EXIT_CUT = 0, 1, 2, 3, 4, 5

log = logging.getLogger("choqlab")


class ParseError(Exception):
    pass


# -- input handling ---------------------------------------------------------


def _read_text(source: str, stdin) -> str:
    if source == "-":
        return stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None


def _parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON ({exc})") from None


def _load_vectors(arg: str, stdin, raw: list) -> list[np.ndarray]:
    """Inline ``[3,5]``, ``3,5`` or ``[[..],[..]]``, a JSON file, or ``-``."""
    if arg == "-" or os.path.exists(arg):
        text = _read_text(arg, stdin)
    elif arg.lstrip().startswith(("[", "{")):
        text = arg
    else:
        text = "[" + arg + "]"
    raw.append(text)
    data = _parse_json(text, "vector input")
    if isinstance(data, dict):
        data = data.get("vectors", data.get("x"))
    if not isinstance(data, list) or not data:
        raise ParseError("vector input must be a nonempty list")
    rows = data if isinstance(data[0], list) else [data]
    out = []
    for row in rows:
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in row):
            raise ParseError(f"vector {row!r} must contain numbers only")
        try:
            out.append(as_vector(row))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return out


def _load_extension(arg: str, stdin, raw: list):
    """An extension JSON file, a bare set function (read as a Lovász
    extension) or ``builtin:NAME``."""
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        if name not in BUILTINS:
            raise ParseError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        raw.append(arg)
        return BUILTINS[name]
    text = _read_text(arg, stdin)
    raw.append(text)
    data = _parse_json(text, arg)
    try:
        if isinstance(data, dict) and "type" in data:
            return extension_from_dict(data, max_n=CLI_MAX_N)
        return LovaszExtension(SetFunction.from_dict(data, max_n=CLI_MAX_N))
    except DimensionError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{arg}: {exc}") from None


def _describe(f) -> dict:
    if hasattr(f, "to_dict"):
        return {"type": f.to_dict()["type"], "n": f.n}
    return {"type": "builtin", "name": f.name, "n": f.n}


def _domain(text: str) -> DomainSpec:
    try:
        return DomainSpec.parse(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad --domain {text!r}: {exc}") from None


# -- report -----------------------------------------------------------------


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(blob.encode()).hexdigest()


def make_report(command: list[str], raw_inputs: list, seed: int | None, results: Any, elapsed_ms: float) -> dict:
    """Assemble a run report.  ``report_digest`` covers the schema, inputs,
    seed and results; the command echo (which may carry flags like
    ``--jobs`` or file paths) and ``elapsed_ms`` are left out."""
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "inputs_digest": _digest(raw_inputs),
        "seed": seed,
        "results": results,
    }
    report["report_digest"] = _digest({k: v for k, v in report.items() if k != "command"})
    report["elapsed_ms"] = round(elapsed_ms, 3)
    return report


# -- subcommands ------------------------------------------------------------


def _representations(f, x, args) -> dict[str, float]:
    if isinstance(f, LovaszExtension):
        vals = {"lovasz": eval_lovasz(f, x)}
        if args.dual:
            vals["dual"] = eval_lovasz_dual(f, x)
        if args.oracle and f.n <= AFFINE_MAX_N:
            vals["affine"] = eval_affine_interpolation(f.phi, x)
            vals["mobius"] = eval_via_mobius(f.phi, x)
        return vals
    if isinstance(f, SymmetricLovaszExtension):
        vals = {"symmetric": eval_symmetric(f, x)}
        if args.symmetric_telescoping:
            vals["telescoping"] = eval_symmetric_telescoping(f, x)
        if args.oracle and f.n <= AFFINE_MAX_N:
            phi = f.phi
            vals["affine"] = phi[0] + eval_affine_interpolation(phi, pos_part(x)) - eval_affine_interpolation(
                phi, neg_part(x)
            )
        return vals
    if isinstance(f, MedianAdditiveExtension):
        vals = {"median": eval_median_additive(f, x)}
        if args.dual or args.symmetric_telescoping or args.oracle:
            vals["split"] = eval_lovasz(LovaszExtension(f.phi_pos), pos_part(x)) - eval_lovasz(
                LovaszExtension(f.phi_neg), neg_part(x)
            )
        return vals
    return {"value": float(f(x))}


def cmd_eval(args, stdin) -> tuple[int, dict, list, int | None]:
    raw: list = []
    f = _load_extension(args.extension, stdin, raw)
    xs = _load_vectors(args.vectors, stdin, raw)
    rows = []
    worst = 0.0
    for x in xs:
        if x.shape[0] != f.n:
            raise DimensionError(f"vector {x.tolist()} has length {x.shape[0]}, extension has n={f.n}")
        vals = _representations(f, x, args)
        spread = max(vals.values()) - min(vals.values())
        worst = max(worst, spread)
        rows.append({"x": x.tolist(), "values": vals, "discrepancy": spread})
    results = {"extension": _describe(f), "evaluations": rows, "max_discrepancy": worst}
    log.info("evaluated %d point(s); max discrepancy %.3g", len(rows), worst)
    return EXIT_OK, results, raw, None


def cmd_check(args, stdin):
    raw: list = []
    f = _load_extension(args.target, stdin, raw)
    cfg = CheckConfig(
        domain=_domain(args.domain),
        trials=args.trials,
        seed=args.seed,
        abs_tol=args.abs_tol,
        rel_tol=args.rel_tol,
        bound=args.bound,
        jobs=args.jobs,
    )
    raw.append([args.axiom, cfg.domain.to_dict(), args.trials, args.abs_tol, args.rel_tol, args.bound])
    kwargs = {"positive_only": True} if args.axiom == "homogeneity" and args.positive_only else {}
    verdict = check(args.axiom, f, cfg, **kwargs)
    results = {"target": _describe(f), "domain": cfg.domain.to_dict(), "verdict": verdict.to_dict()}
    if verdict.passed:
        log.info("%s: passed (%d instances)", args.axiom, verdict.trials)
    else:
        log.info("%s: FAILED, witness %s", args.axiom, verdict.witness.inputs)
    return (EXIT_OK if verdict.passed else EXIT_FAIL), results, raw, args.seed


def cmd_decompose(args, stdin):
    raw: list = []
    (x,) = _load_vectors(args.vector, stdin, raw)[:1]
    dom = _domain(args.domain)
    c = args.cut
    raw.append([c, args.mode, dom.to_dict()])
    if not math.isfinite(c) or not in_domain(c, dom):
        raise NegativeCutError(f"cut level {c} lies outside the domain")
    if not in_domain(x, dom):
        raise DomainError(f"vector {x.tolist()} lies outside the domain")
    if args.mode == "min":
        parts = {"meet": meet_scalar(x, c), "above": cut_above(x, c)}
    elif args.mode == "max":
        parts = {"join": join_scalar(x, c), "below": cut_below(x, c)}
    else:
        if c < 0:
            raise NegativeCutError(f"median mode needs a nonnegative cut, got {c}")
        if not in_domain(-c, dom):
            raise NegativeCutError(f"level {-c} lies outside the domain")
        parts = {"clamp": med_clamp(x, c), "above": cut_above(x, c), "below": cut_below(x, -c)}
    # Exact residual of the recomposition, per component.
    residual = [math.fsum([*(float(p[i]) for p in parts.values()), -float(x[i])]) for i in range(x.shape[0])]
    worst = max(abs(r) for r in residual)
    results = {
        "x": x.tolist(),
        "cut": c,
        "mode": args.mode,
        "parts": {k: v.tolist() for k, v in parts.items()},
        "residual": residual,
        "max_abs_residual": worst,
        "exact": worst == 0.0,
    }
    log.info("%s decomposition at c=%g, max residual %g", args.mode, c, worst)
    return EXIT_OK, results, raw, None


def cmd_gen(args, stdin):
    if args.kind not in KINDS:
        raise ParseError(f"kind must be one of {KINDS}")
    sf = random_set_function(args.n, args.seed, args.kind, max_n=CLI_MAX_N)
    payload = sf.to_dict()
    if args.wrap:
        payload = {"type": args.wrap, "phi": payload}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
        log.info("wrote %s", args.out)
    results = {"kind": args.kind, "n": args.n, "out": args.out, "set_function": payload}
    return EXIT_OK, results, [args.n, args.kind, args.wrap], args.seed


def _sample_points(n: int, samples: int, seed: int, bound: float) -> list[np.ndarray]:
    pts = []
    if n <= 4:
        grid = np.array(np.meshgrid(*[np.arange(-2.0, 3.0)] * n, indexing="ij")).reshape(n, -1).T
        pts.extend(grid)
    rng = np.random.default_rng([seed, 0])
    for k in range(samples):
        if k % 2:
            pts.append(rng.integers(-int(bound), int(bound) + 1, n).astype(float))
        else:
            pts.append(rng.uniform(-bound, bound, n))
    return pts


def cmd_compare(args, stdin):
    raw: list = []
    fa = _load_extension(args.a, stdin, raw)
    fb = _load_extension(args.b, stdin, raw)
    if fa.n != fb.n:
        raise DimensionError(f"extensions have n={fa.n} and n={fb.n}")
    raw.append([args.samples, args.bound, args.abs_tol, args.rel_tol])
    cfg = CheckConfig(
        trials=max(1, args.samples), seed=args.seed, abs_tol=args.abs_tol, rel_tol=args.rel_tol, jobs=args.jobs
    )
    worst, arg_pt, vals = -1.0, None, (0.0, 0.0)
    agree = True
    for x in _sample_points(fa.n, args.samples, args.seed, args.bound):
        a, b = float(fa(x)), float(fb(x))
        gap = abs(a - b)
        if cfg.violates(a, b):
            agree = False
        if gap > worst:
            worst, arg_pt, vals = gap, x.tolist(), (a, b)
    oddness = {
        "A": check_oddness_positive_orthant(fa, cfg).to_dict(),
        "B": check_oddness_positive_orthant(fb, cfg).to_dict(),
    }
    results = {
        "A": _describe(fa),
        "B": _describe(fb),
        "max_gap": worst,
        "argmax": arg_pt,
        "values_at_argmax": {"A": vals[0], "B": vals[1]},
        "agree": agree,
        "oddness": oddness,
    }
    log.info("max |A-B| = %g at %s", worst, arg_pt)
    return (EXIT_OK if agree else EXIT_FAIL), results, raw, args.seed


# -- entry point ------------------------------------------------------------


def _default_seed() -> int:
    text = os.environ.get(SEED_ENV)
    if text is None or text == "":
        return 0
    try:
        seed = int(text)
    except ValueError:
        raise ParseError(f"{SEED_ENV} must be an integer, got {text!r}") from None
    if seed < 0:
        raise ParseError(f"{SEED_ENV} must be nonnegative")
    return seed


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="choqlab", description="Lovász extensions and additivity checkers.")
    p.add_argument("--version", action="version", version=f"choqlab {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def tolerances(sp):
        sp.add_argument("--abs-tol", type=float, default=1e-9)
        sp.add_argument("--rel-tol", type=float, default=1e-9)

    e = sub.add_parser("eval", help="evaluate an extension at one or more vectors")
    e.add_argument("extension", help="extension JSON file, '-' for stdin, or builtin:NAME")
    e.add_argument("vectors", help="inline vector(s) like '[3,5]', a JSON file, or '-' for stdin")
    e.add_argument("--dual", action="store_true", help="also evaluate along the lower chain")
    e.add_argument("--symmetric-telescoping", action="store_true", help="also use the split telescoping sum")
    e.add_argument("--oracle", action="store_true", help="also evaluate by affine interpolation and Möbius")
    e.add_argument("--all", action="store_true", help="every representation that applies")

    c = sub.add_parser("check", help="check an additivity axiom on a black box")
    c.add_argument("target", help="extension JSON file, '-' for stdin, or builtin:NAME")
    c.add_argument("--axiom", required=True, choices=AXIOMS)
    c.add_argument("--domain", default="full_line", help="full_line, nonneg, nonpos, centered:A, box:LO,HI")
    c.add_argument("--trials", type=int, default=10_000)
    c.add_argument("--seed", type=int, default=default_seed)
    c.add_argument("--bound", type=float, default=10.0, help="sampling magnitude on unbounded sides")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--positive-only", action="store_true", help="homogeneity for c > 0 only")
    tolerances(c)

    d = sub.add_parser("decompose", help="split a vector at a cut level")
    d.add_argument("vector", help="inline vector like '[-3,5]', a JSON file, or '-' for stdin")
    d.add_argument("--cut", type=float, required=True)
    d.add_argument("--mode", choices=("min", "max", "median"), default="min")
    d.add_argument("--domain", default="full_line")

    g = sub.add_parser("gen", help="write a random set function")
    g.add_argument("n", type=int)
    g.add_argument("seed", type=int, nargs="?", default=default_seed)
    g.add_argument("kind", nargs="?", default="capacity", choices=KINDS)
    g.add_argument("-o", "--out", help="output file (the report always goes to stdout)")
    g.add_argument("--wrap", choices=("lovasz", "symmetric"), help="emit an extension object")

    m = sub.add_parser("compare", help="compare two extensions on sampled points")
    m.add_argument("a")
    m.add_argument("b")
    m.add_argument("--samples", type=int, default=1000)
    m.add_argument("--seed", type=int, default=default_seed)
    m.add_argument("--bound", type=float, default=10.0)
    m.add_argument("--jobs", type=int, default=1)
    tolerances(m)
    return p


_COMMANDS = {
    "eval": cmd_eval,
    "check": cmd_check,
    "decompose": cmd_decompose,
    "gen": cmd_gen,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    try:
        default_seed = _default_seed()
    except ParseError as exc:
        print(f"choqlab: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        args = build_parser(default_seed).parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="choqlab: %(message)s")
    if args.command == "eval" and args.all:
        args.dual = args.symmetric_telescoping = args.oracle = True

    start = time.perf_counter()
    try:
        code, results, raw, seed = _COMMANDS[args.command](args, stdin)
    except ParseError as exc:
        print(f"choqlab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"choqlab: dimension error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except (DomainKindError, DomainError) as exc:
        print(f"choqlab: domain/axiom mismatch: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NegativeCutError as exc:
        print(f"choqlab: invalid cut: {exc}", file=sys.stderr)
        return EXIT_CUT
    except ValueError as exc:
        print(f"choqlab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    elapsed = (time.perf_counter() - start) * 1000.0
    report = make_report(["choqlab", *argv], raw, seed, results, elapsed)
    json.dump(report, stdout, indent=2)
    stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
