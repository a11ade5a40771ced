"""Command line interface: ``skt-lab check | classify | catalog-verify | sweep``.

Exit codes: 0 success, 1 catalog mismatch, 2 domain error (including a
non-integrable J), 3 parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .linalg import DEFAULT_TOL, DomainError, identity, mat, to_scalar
from .liealg import canonical_j
from .notation import (
    NotationError, SCHEMA, algebra_from_json, dumps, emit_report, format_scalar,
    matrix_from_json, parse_notation, unicode_notation,
)

EXIT_OK, EXIT_MISMATCH, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise NotationError(f"not a rational number: {text!r}", text, 0) from None


def parse_params(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise NotationError(f"expected name=value, got {item!r}", item, 0)
        k, v = item.split("=", 1)
        out[k.strip()] = parse_rational(v)
    return out


def parse_range(item):
    """``name=start:stop:step`` with stop inclusive; ``start > stop`` gives
    an empty range."""
    if "=" not in item:
        raise NotationError(f"expected name=start:stop:step, got {item!r}", item, 0)
    name, spec = item.split("=", 1)
    parts = spec.split(":")
    if len(parts) != 3:
        raise NotationError(f"expected start:stop:step, got {spec!r}", spec, 0)
    start, stop, step = map(parse_rational, parts)
    if step <= 0:
        raise NotationError("step must be positive", spec, len(parts[0]) + len(parts[1]) + 2)
    values = []
    x = start
    while x <= stop:
        values.append(x)
        x += step
    return name.strip(), values


def read_matrix(path):
    """A square matrix from JSON (list of rows, or ``{"matrix": rows}``) or
    whitespace-separated text, one row per line."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        d = json.loads(text)
        rows = d["matrix"] if isinstance(d, dict) else d
        return matrix_from_json(rows)
    rows = [[parse_rational(x) for x in line.replace(",", " ").split()]
            for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return mat(rows)


def load_algebra(args, params):
    """The algebra from ``--notation`` or ``--input`` (``.json`` in the
    interchange schema, anything else as notation text)."""
    if args.notation and args.input:
        raise UsageError("give either --notation or --input, not both")
    if args.notation:
        return parse_notation(args.notation, params), args.notation
    if not args.input:
        raise UsageError("an algebra is required: --notation TEXT or --input FILE")
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    if args.input.endswith(".json"):
        d = json.loads(text)
        return algebra_from_json(d, params), d.get("notation")
    text = " ".join(line for line in text.splitlines() if not line.lstrip().startswith("#")).strip()
    return parse_notation(text, params), text


def load_structure(args, dim):
    J = read_matrix(args.J) if args.J else canonical_j(dim)
    metric = read_matrix(getattr(args, "metric", None)) if getattr(args, "metric", None) else identity(dim)
    for name, m in (("J", J), ("metric", metric)):
        if m.shape != (dim, dim):
            raise DomainError(f"{name} must be {dim}x{dim}, got {m.shape[0]}x{m.shape[1]}")
    return J, metric


def nijenhuis_witness(g, J, tol):
    """First pair ``(i, j)`` with ``N(e_i, e_j) != 0``, as text."""
    from .hermitian import nijenhuis

    N = nijenhuis(g, J)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if any(abs(N[i, j, k]) > tol for k in range(g.dim)):
                vec = ", ".join(format_scalar(x) for x in N[i, j])
                return f"N(e{i + 1}, e{j + 1}) = ({vec})"
    return None


def output_format(args):
    return "json" if args.json else "markdown"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _integrability_guard(g, J, tol):
    from .hermitian import is_integrable

    if not is_integrable(g, J, tol):
        raise DomainError(f"J is not integrable: {nijenhuis_witness(g, J, tol)}")


def cmd_check(args, out):
    from .verdicts import verdict

    params = parse_params(args.param)
    g, text = load_algebra(args, params)
    J, metric = load_structure(args, g.dim)
    _integrability_guard(g, J, args.tol)
    v = verdict(g, J, metric, args.tol)
    out.write(emit_report(v, output_format(args), args.name or g.name, unicode_notation(g)))
    return EXIT_OK


def cmd_classify(args, out):
    from .spectral import classify

    params = parse_params(args.param)
    g, text = load_algebra(args, params)
    J, _ = load_structure(args, g.dim)
    _integrability_guard(g, J, args.tol)
    r = classify(g, J, args.tol, with_witness=not args.no_witness)
    out.write(emit_report(r, output_format(args), args.name or g.name, unicode_notation(g)))
    return EXIT_OK


def _verify_one(job):
    from .catalog import load_catalog, verify_entry

    entry_id, samples, seed, reading, table, tol = job
    entry = load_catalog()[entry_id]
    return verify_entry(entry, samples, seed, reading, (table,), tol).as_dict()


def _table1_one(job):
    from .catalog import load_catalog, table1_compare, table1_samples

    row, samples, seed, tol = job
    spec = next(r for r in load_catalog().table1 if r["row"] == row)
    results = []
    for data in table1_samples(row, samples, seed):
        printed, solved, constructed = table1_compare(spec, data, tol)
        results.append({"a": format_scalar(data.a), "v": [format_scalar(x) for x in data.v],
                        "printed_equals_solved": printed == solved,
                        "constructed_equals_solved": constructed == solved,
                        "solved": str(solved), "printed": str(printed)})
    return {"row": row, "samples": results}


def pool_size():
    env = os.environ.get("SKT_LAB_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"SKT_LAB_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise UsageError("SKT_LAB_THREADS must be positive")
        return n
    return min(8, os.cpu_count() or 1)


def run_parallel(fn, jobs):
    """``map(fn, jobs)`` across a process pool, results in input order."""
    jobs = list(jobs)
    n = pool_size()
    if n == 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(n, len(jobs))) as ex:
        return list(ex.map(fn, jobs))


def cmd_catalog_verify(args, out):
    from .catalog import load_catalog

    cat = load_catalog()
    fmt = output_format(args)
    if args.table == 1:
        rows = run_parallel(_table1_one, [(s["row"], args.samples or 5, args.seed, args.tol) for s in cat.table1])
        bad = [(r["row"], i) for r in rows for i, s in enumerate(r["samples"])
               if not (s["printed_equals_solved"] and s["constructed_equals_solved"])]
        if fmt == "json":
            out.write(dumps({"schema": SCHEMA, "kind": "table1-verification", "rows": rows,
                             "ok": not bad}))
        else:
            out.write("| Row | samples | printed = solved | constructed = solved |\n|---|---|---|---|\n")
            for r in rows:
                ps = sum(s["printed_equals_solved"] for s in r["samples"])
                cs = sum(s["constructed_equals_solved"] for s in r["samples"])
                n = len(r["samples"])
                out.write(f"| {r['row']} | {n} | {ps}/{n} | {cs}/{n} |\n")
        return EXIT_MISMATCH if bad else EXIT_OK

    if args.table not in (2, 3):
        raise UsageError("--table must be 1, 2 or 3")
    expected = cat.expected_mismatches()
    jobs = [(e.id, args.samples or 8, args.seed, args.brf_reading, args.table, args.tol) for e in cat]
    reports = run_parallel(_verify_one, jobs)
    unexpected = []
    for r in reports:
        for m in r["mismatches"]:
            m["expected"] = m["where"] in expected
            if not m["expected"]:
                unexpected.append(m)
        unexpected += [{"where": r["entry"], "error": e} for e in r["errors"]]
    if fmt == "json":
        out.write(dumps({"schema": SCHEMA, "kind": f"table{args.table}-verification",
                         "brf_reading": args.brf_reading, "entries": reports,
                         "unexpected": len(unexpected), "ok": not unexpected}))
    else:
        out.write("| Entry | samples | result | mismatches |\n|---|---|---|---|\n")
        for r in reports:
            n_exp = sum(m["expected"] for m in r["mismatches"])
            n_bad = len(r["mismatches"]) - n_exp + len(r["errors"])
            status = "pass" if n_bad == 0 else "FAIL"
            if n_bad == 0 and n_exp:
                status = "pass (documented erratum)"
            cells = "; ".join(f"{m['where'].split('/')[-1]} @ {m['params']}: printed {m['printed']}, computed {m['computed']}"
                              + (f" [{m['note']}]" if m["note"] else "")
                              for m in r["mismatches"])
            out.write(f"| {r['name']} | {r['samples']} | {status} | {cells} |\n")
        for e in cat.errata:
            if e.get("expected_mismatch") and e["where"].startswith(f"table{args.table}/"):
                out.write(f"\nerratum {e['where']}: printed {e['printed']!r}; computed: {e['computed']}\n")
    return EXIT_MISMATCH if unexpected else EXIT_OK


SWEEP_FLAGS = ("kaehler", "skt", "twisted_skt", "lcskt", "balanced", "lcb", "bismut_ricci_flat")
EXIST_FLAGS = ("exists_twisted_skt", "exists_lcskt", "exists_kaehler", "exists_lcb", "exists_brf", "unimodular")


def _sweep_point(job):
    from .spectral import classify
    from .verdicts import verdict

    text, params, J, metric, tol = job
    g = parse_notation(text, params)
    row = {k: format_scalar(v) for k, v in params.items()}
    try:
        v = verdict(g, J, metric, tol)
        r = classify(g, J, tol, with_witness=False)
    except DomainError as e:
        row["error"] = str(e)
        return row
    row.update(v.flags())
    ex = r.flags()
    row.update({"exists_twisted_skt": ex["twisted_skt"], "exists_lcskt": ex["lcskt"],
                "exists_kaehler": ex["kaehler"], "exists_lcb": ex["lcb"],
                "exists_brf": ex["bismut_ricci_flat"], "unimodular": ex["unimodular"]})
    return row


def cmd_sweep(args, out):
    fixed = parse_params(args.param)
    ranges = [parse_range(r) for r in args.range or ()]
    if not ranges:
        raise UsageError("sweep needs at least one --range name=start:stop:step")
    if args.input:
        _, text = load_algebra(args, {**fixed, **{n: Fraction(1) for n, _ in ranges}})
        if text is None:
            raise UsageError("sweep needs notation text (a .alg file or a JSON file with notation)")
    elif args.notation:
        text = args.notation
    else:
        raise UsageError("an algebra is required: --notation TEXT or --input FILE")
    names = [n for n, _ in ranges]
    grid = [dict(fixed, **dict(zip(names, combo))) for combo in itertools.product(*(v for _, v in ranges))]
    dim = None
    if grid:
        dim = parse_notation(text, grid[0]).dim
    J, metric = load_structure(args, dim) if grid else (None, None)
    rows = run_parallel(_sweep_point, [(text, p, J, metric, args.tol) for p in grid])
    columns = names + list(SWEEP_FLAGS) + list(EXIST_FLAGS)
    if any("error" in r for r in rows):
        columns.append("error")
    if args.json:
        out.write(dumps({"schema": SCHEMA, "kind": "sweep", "notation": text,
                         "fixed": {k: format_scalar(v) for k, v in fixed.items()},
                         "columns": columns, "rows": rows}))
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: (int(v) if isinstance(v, bool) else v) for k, v in r.items()})
        out.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _add_common(p, algebra=True, structure=True, metric=True):
    if algebra:
        p.add_argument("--notation", help="structure equations, e.g. \"(f16, p*f26, 0, 0, 0, 0)\"")
        p.add_argument("--input", help="algebra file: notation text or interchange JSON")
        p.add_argument("--param", action="append", metavar="NAME=VALUE", help="bind a parameter (repeatable)")
        p.add_argument("--name", help="label used in reports")
    if structure:
        p.add_argument("--J", help="complex structure matrix file (default: canonical J)")
    if metric:
        p.add_argument("--metric", help="metric Gram matrix file (default: identity)")
    p.add_argument("--tol", type=_positive, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--md", action="store_true", help="Markdown output (default)")


def build_parser():
    p = argparse.ArgumentParser(prog="skt-lab", description="Hermitian invariants of almost abelian Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="all flags for a given (algebra, J, metric)")
    _add_common(c)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="metric-free existence for a given (algebra, J)")
    _add_common(c, metric=False)
    c.add_argument("--no-witness", action="store_true", help="skip constructing a witness metric")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("catalog-verify", help="recompute a classification table")
    _add_common(c, algebra=False, structure=False, metric=False)
    c.add_argument("--table", type=int, required=True, choices=(1, 2, 3))
    c.add_argument("--brf-reading", choices=("existence", "canonical"), default="existence",
                   help="Bismut-Ricci flat column: existence of a metric, or the identity metric")
    c.set_defaults(func=cmd_catalog_verify)

    c = sub.add_parser("sweep", help="flag grid over a parameter lattice (CSV, or JSON with --json)")
    _add_common(c)
    c.add_argument("--range", action="append", metavar="NAME=START:STOP:STEP", help="inclusive range (repeatable)")
    c.set_defaults(func=cmd_sweep)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except NotationError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
