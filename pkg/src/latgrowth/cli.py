"""Command-line front end: enumerate, eden, bounds, percolate, cache.

One executable with five subcommands.  JSON is the canonical machine
format ({"manifest": ..., "results": [...]}, keys sorted, two-space
indent); CSV is a flat projection of the results with the manifest in
leading ``#`` comment lines; the default ``table`` output is for humans.
Counts print as exact decimal strings, real-valued bounds print through
the conservative truncation of the bounds module together with their
direction marker, so a printed bound is itself a valid bound.

Exit codes are a stable contract: 0 success, 2 usage errors (including
malformed input files and unknown names), 3 resource limits (node budget
exceeded, box cap exceeded; a partial enumeration report is still
written, marked ``"partial": true``).  ``eden verify`` returns 1 if any
replayed check fails.

Reports are reproducible: repeating an invocation with the same flags
(seed included) writes byte-identical output; the embedded manifest
records the command line, tool version, schema version, resolved
configuration, and any cache files consumed, but no timestamps, since
wall-clock stamps would break reproducibility.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, bounds, cache, counting, eden, percolation
from .animals import canonical_cells, site_animal
from .counting import BudgetExceededError
from .lattice import Vertex

OK = 0
USAGE = 2
RESOURCE = 3

_CACHE_ENV = "LATGROWTH_CACHE_DIR"


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE


def _manifest(args: argparse.Namespace, config: dict, cache_files=()) -> dict:
    return {
        "command": "latgrowth " + " ".join(args.raw_argv),
        "version": __version__,
        "schema_version": cache.SCHEMA_VERSION,
        "config": config,
        "cache_files": sorted(str(f) for f in cache_files),
        "outputs": [args.out] if getattr(args, "out", None) else [],
    }


def _emit(args: argparse.Namespace, report: dict, table_lines: list[str],
          csv_fields: list[str], csv_rows: list[dict]) -> None:
    if args.output == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif args.output == "csv":
        buffer = io.StringIO()
        buffer.write("# manifest: " + json.dumps(report["manifest"], sort_keys=True) + "\n")
        writer = csv.DictWriter(buffer, fieldnames=csv_fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(csv_rows)
        text = buffer.getvalue()
    else:
        text = "\n".join(table_lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cache_dir(args: argparse.Namespace) -> str | None:
    # explicit flag wins over the environment variable
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return os.environ.get(_CACHE_ENV) or None


# ---------------------------------------------------------------- enumerate


def _cmd_enumerate(args: argparse.Namespace) -> int:
    if args.d < 1:
        return _fail("--d must be a positive integer")
    if args.n_max < 1:
        return _fail("--n-max must be a positive integer")
    if args.threads < 1:
        return _fail("--threads must be a positive integer")
    if args.node_budget is not None and args.node_budget < 1:
        return _fail("--node-budget must be a positive integer")
    try:
        epsilon = Fraction(args.epsilon)
        if epsilon <= 0:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        return _fail(f"--epsilon must be a positive rational, got {args.epsilon!r}")

    directory = _cache_dir(args)
    partial = False
    from_cache = False
    try:
        result, from_cache = cache.counts_for(
            directory, args.d, args.kind, args.rooting, args.n_max,
            node_budget=args.node_budget, threads=args.threads,
        )
        status = OK
    except BudgetExceededError as exc:
        result = exc.partial
        partial = True
        status = RESOURCE
    except ValueError as exc:
        return _fail(str(exc))

    histogram = None
    if args.histogram and not partial:
        histogram = counting.ratio_histogram(
            args.d, args.n_max, kind=args.kind, epsilon=epsilon, rooting=args.rooting
        )

    config = {
        "d": args.d, "n_max": args.n_max, "kind": args.kind, "rooting": args.rooting,
        "histogram": bool(args.histogram), "epsilon": str(epsilon),
        "node_budget": args.node_budget, "threads": args.threads,
    }
    cache_files = [cache.cache_path(directory, args.d, args.kind, args.rooting)] \
        if (directory and from_cache) else []
    counts_rows = [{"n": i + 1, "count": str(c)} for i, c in enumerate(result.counts)]
    results: dict = {
        "counts": counts_rows,
        "nodes_visited": str(result.nodes_visited),
        "partial": partial,
        "from_cache": from_cache,
    }
    table = [f"{args.kind} animals, d={args.d}, rooting={args.rooting}", "n count"]
    table += [f"{row['n']} {row['count']}" for row in counts_rows]
    if partial:
        table.append("(partial: node budget exceeded)")
    csv_fields = ["record", "n", "count", "ratio_lo", "ratio_hi"]
    csv_rows = [{"record": "count", "n": row["n"], "count": row["count"]} for row in counts_rows]
    if histogram is not None:
        results["histogram"] = {
            "size": histogram.size,
            "epsilon": str(histogram.epsilon),
            "bins": [
                {
                    "ratio_lo": str(histogram.interval(index)[0]),
                    "ratio_hi": str(histogram.interval(index)[1]),
                    "count": str(count),
                }
                for index, count in histogram.bins
            ],
        }
        table.append(f"ratio histogram at n={histogram.size}, epsilon={histogram.epsilon}")
        for entry in results["histogram"]["bins"]:
            table.append(f"({entry['ratio_lo']}, {entry['ratio_hi']}] {entry['count']}")
            csv_rows.append({
                "record": "histogram", "count": entry["count"],
                "ratio_lo": entry["ratio_lo"], "ratio_hi": entry["ratio_hi"],
            })
    report = {"manifest": _manifest(args, config, cache_files), "results": [results]}
    _emit(args, report, table, csv_fields, csv_rows)
    return status


# --------------------------------------------------------------------- eden


def _parse_inline_coords(text: str, d: int) -> list[Vertex]:
    cells = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != d:
            raise ValueError(f"vertex {chunk!r} has {len(parts)} coordinates, expected {d}")
        cells.append(tuple(int(p) for p in parts))
    if not cells:
        raise ValueError("no vertices given")
    return cells


def _parse_vertex_file(path: str, d: int) -> list[Vertex]:
    cells = []
    with open(path) as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(",")
            try:
                vertex = tuple(int(p) for p in parts)
            except ValueError:
                raise ValueError(f"line {lineno}: not a comma-separated integer vertex: {line!r}")
            if len(vertex) != d:
                raise ValueError(f"line {lineno}: vertex has {len(vertex)} coordinates, expected {d}")
            cells.append(vertex)
    if not cells:
        raise ValueError("input file contains no vertices")
    return cells


def _vertex_str(vertex: Vertex) -> str:
    return "(" + ",".join(str(c) for c in vertex) + ")"


def _cmd_eden_encode(args: argparse.Namespace) -> int:
    if args.d < 1:
        return _fail("--d must be a positive integer")
    if (args.coords is None) == (args.file is None):
        return _fail("give exactly one of --coords or --file")
    try:
        cells = (_parse_inline_coords(args.coords, args.d) if args.coords
                 else _parse_vertex_file(args.file, args.d))
        animal = site_animal(cells)
        code, tree = eden.eden_encode(animal)
    except (OSError, ValueError) as exc:  # MalformedAnimalError is a ValueError
        return _fail(str(exc))
    check = eden.check_turn_bound(animal)
    results = {
        "bits": code.bits, "size": code.size, "d": args.d,
        "code_length": len(code.bits), "ones_count": code.ones_count,
        "turn_count": tree.turn_count,
        "vertex_boundary": check.vertex_boundary, "turn_bound": check.bound,
    }
    config = {"d": args.d, "coords": args.coords, "file": args.file}
    table = [
        f"bits {code.bits}",
        f"size {code.size}",
        f"turn_count {tree.turn_count}",
        f"vertex_boundary {check.vertex_boundary} <= bound {check.bound}",
    ]
    fields = ["bits", "size", "turn_count", "vertex_boundary", "turn_bound"]
    row = {k: results[k] for k in fields}
    _emit(args, {"manifest": _manifest(args, config), "results": [results]}, table, fields, [row])
    return OK


def _cmd_eden_decode(args: argparse.Namespace) -> int:
    if args.d < 1:
        return _fail("--d must be a positive integer")
    try:
        code = eden.EdenCode(args.d, args.bits)
        animal, tree = eden.eden_decode(code)
    except ValueError as exc:  # DecodeError included
        return _fail(str(exc))
    cells = sorted(animal.cells)
    results = {
        "cells": [list(c) for c in cells], "size": animal.size,
        "d": args.d, "turn_count": tree.turn_count,
    }
    config = {"d": args.d, "bits": args.bits}
    table = [_vertex_str(c) for c in cells]
    csv_rows = [{"vertex": _vertex_str(c)} for c in cells]
    _emit(args, {"manifest": _manifest(args, config), "results": [results]}, table, ["vertex"], csv_rows)
    return OK


def _cmd_eden_verify(args: argparse.Namespace) -> int:
    if args.d < 1:
        return _fail("--d must be a positive integer")
    if args.n_max < 1:
        return _fail("--n-max must be a positive integer")
    rows = []
    violations = 0
    for n in range(1, args.n_max + 1):
        animals = 0
        max_turns = 0
        bad = 0
        expected_length = eden.code_length(args.d, n)
        for cells in counting.iter_site_animals(args.d, n):
            animals += 1
            animal = site_animal(cells)
            code, tree = eden.eden_encode(animal)
            decoded, _ = eden.eden_decode(code)
            check = eden.check_turn_bound(animal)
            max_turns = max(max_turns, tree.turn_count)
            if (
                decoded.cells != canonical_cells(animal.cells)
                or len(code.bits) != expected_length
                or code.ones_count != n - 1
                or not check.holds
            ):
                bad += 1
        bound = eden.ijq_upper_bound(args.d, n, max_turns)
        dominated = bound >= animals
        if not dominated:
            bad += 1
        violations += bad
        rows.append({
            "n": n, "animals": str(animals), "max_turns": max_turns,
            "ijq_bound": str(bound), "ijq_dominates": dominated, "violations": bad,
        })
    config = {"d": args.d, "n_max": args.n_max}
    results = {"rows": rows, "violations": violations, "passed": violations == 0}
    table = [f"eden verify d={args.d} n<={args.n_max}", "n animals max_turns ijq_bound status"]
    for row in rows:
        status = "ok" if row["violations"] == 0 and row["ijq_dominates"] else "FAIL"
        table.append(f"{row['n']} {row['animals']} {row['max_turns']} {row['ijq_bound']} {status}")
    table.append("PASS: zero violations" if violations == 0 else f"FAIL: {violations} violations")
    fields = ["n", "animals", "max_turns", "ijq_bound", "ijq_dominates", "violations"]
    _emit(args, {"manifest": _manifest(args, config), "results": [results]}, table, fields, rows)
    return OK if violations == 0 else 1


# ------------------------------------------------------------------- bounds


def _bound_result(bound: bounds.Bound, decimals: int | None, sig_figs: int | None) -> dict:
    printed = bounds.format_bound(bound.value, bound.direction, decimals, sig_figs)
    marker = ">=" if bound.direction == "lower" else "<="
    result = bound.as_dict()
    result["printed"] = printed
    result["marker"] = marker
    return result


def _bound_table_line(result: dict) -> str:
    where = f" (d={result['d']})" if result["d"] is not None else ""
    chain = " -> ".join(result["provenance"])
    return (f"{result['quantity']}{where} {result['marker']} {result['printed']}"
            f"  [{result['rigor']}; via {chain}]")


_BOUND_FIELDS = ["quantity", "d", "direction", "marker", "printed", "value", "rigor"]


def _emit_bounds(args: argparse.Namespace, config: dict, results: list[dict],
                 table: list[str] | None = None) -> None:
    table = table if table is not None else [_bound_table_line(r) for r in results]
    csv_rows = [{k: r.get(k) for k in _BOUND_FIELDS} for r in results]
    report = {"manifest": _manifest(args, config), "results": results}
    _emit(args, report, table, _BOUND_FIELDS, csv_rows)


def _cmd_bounds_translate(args: argparse.Namespace) -> int:
    if (args.from_growth_upper is None) == (args.from_pc_upper is None):
        return _fail("give exactly one of --from-growth-upper or --from-pc-upper")
    try:
        if args.from_growth_upper is not None:
            bound = bounds.threshold_lower_from_growth_upper(
                args.from_growth_upper, flavor=args.flavor, dimension=args.d)
        else:
            bound = bounds.growth_lower_from_threshold_upper(
                args.from_pc_upper, flavor=args.flavor, dimension=args.d)
    except ValueError as exc:
        return _fail(str(exc))
    config = {
        "from_growth_upper": args.from_growth_upper, "from_pc_upper": args.from_pc_upper,
        "d": args.d, "flavor": args.flavor, "decimals": args.decimals, "sig_figs": args.sig_figs,
    }
    _emit_bounds(args, config, [_bound_result(bound, args.decimals, args.sig_figs)])
    return OK


def _cmd_bounds_lemma(args: argparse.Namespace) -> int:
    try:
        value = bounds.stratum_growth_cap(args.d, args.x)
        envelope = (bounds.cap_envelope(args.d, args.slack, args.x)
                    if args.slack is not None else None)
    except ValueError as exc:
        return _fail(str(exc))
    result = {"quantity": "stratum-growth-cap", "d": args.d, "x": args.x, "value": value,
              "direction": "upper", "marker": "<=", "rigor": "rigorous",
              "printed": bounds.format_bound(value, "upper", args.decimals, args.sig_figs),
              "provenance": ["stratum-binomial-cap"]}
    table = [f"stratum-growth-cap(d={args.d}, x={args.x}) = {result['printed']}"]
    if envelope is not None:
        result["envelope"] = envelope
        result["within_envelope"] = value <= envelope
        table.append(f"envelope(slack={args.slack}) = {envelope!r}; cap within envelope: "
                     f"{result['within_envelope']}")
    config = {"d": args.d, "x": args.x, "slack": args.slack}
    _emit_bounds(args, config, [result], table)
    return OK


def _cmd_bounds_expansion(args: argparse.Namespace) -> int:
    try:
        value = bounds.evaluate_expansion(args.name, args.d)
    except ValueError as exc:
        return _fail(str(exc))
    spec = bounds.EXPANSIONS[args.name]
    result = {"quantity": spec.quantity, "d": args.d, "value": value, "name": spec.name,
              "direction": "estimate", "marker": "~", "rigor": spec.rigor,
              "printed": repr(value), "provenance": [f"series:{spec.name}"], "note": spec.note}
    table = [f"{spec.name}(d={args.d}) ~ {value!r}  [{spec.rigor}]"]
    config = {"name": args.name, "d": args.d}
    _emit_bounds(args, config, [result], table)
    return OK


def _cmd_bounds_improved(args: argparse.Namespace) -> int:
    try:
        growth = bounds.refined_growth_upper(args.d, args.slack)
        threshold = bounds.refined_threshold_lower(args.d, args.slack)
    except ValueError as exc:
        return _fail(str(exc))
    results = []
    for refined, quantity, direction in (
        (growth, "site-animal-growth", "upper"),
        (threshold, "site-percolation-threshold", "lower"),
    ):
        results.append({
            "quantity": quantity, "d": args.d, "value": refined.value,
            "direction": direction, "marker": "<=" if direction == "upper" else ">=",
            "printed": bounds.format_bound(refined.value, direction, args.decimals, args.sig_figs),
            "rigor": "rigorous" if refined.applicable else "inapplicable",
            "cutoff": refined.cutoff, "slack": refined.slack, "applicable": refined.applicable,
            "provenance": ["stratum-cap-envelope"],
        })
    table = [f"cutoff z = {growth.cutoff!r} (applicable: {growth.applicable})"]
    table += [_bound_table_line(r) for r in results]
    config = {"d": args.d, "slack": args.slack}
    _emit_bounds(args, config, results, table)
    return OK


def _cmd_bounds_crude(args: argparse.Namespace) -> int:
    try:
        crude = bounds.crude_growth_upper(args.d)
        kesten = bounds.kesten_growth_upper(args.d, args.kind)
    except ValueError as exc:
        return _fail(str(exc))
    results = [_bound_result(crude, args.decimals, args.sig_figs),
               _bound_result(kesten, args.decimals, args.sig_figs)]
    config = {"d": args.d, "kind": args.kind}
    _emit_bounds(args, config, results)
    return OK


def _cmd_bounds_certificate(args: argparse.Namespace) -> int:
    if args.d < 2:
        return _fail("--d must be at least 2")
    if args.n_max < 1:
        return _fail("--n-max must be a positive integer")
    try:
        p = Fraction(args.p)
    except (ValueError, ZeroDivisionError):
        return _fail(f"--p must be a rational in (0, 1), got {args.p!r}")
    directory = _cache_dir(args)
    try:
        counts, _ = cache.counts_for(directory, args.d, "bond", "origin", args.n_max,
                                     threads=args.threads)
        rows = bounds.kesten_certificate(counts.counts, dimension=args.d, p=p)
    except ValueError as exc:
        return _fail(str(exc))
    all_hold = all(row.holds for row in rows)
    results = [{
        "n": row.size, "count": str(row.count), "weight": str(row.weight),
        "weight_float": float(row.weight), "holds": row.holds,
    } for row in rows]
    config = {"d": args.d, "p": str(p), "n_max": args.n_max}
    table = [f"certificate: count * p^n * (1-p)^((2d-2)n+2d) <= 1 at p={p}, d={args.d}",
             "n count weight holds"]
    table += [f"{r['n']} {r['count']} {r['weight']} {r['holds']}" for r in results]
    table.append("PASS: all sizes certified" if all_hold else "FAIL: certificate violated")
    fields = ["n", "count", "weight", "weight_float", "holds"]
    report = {"manifest": _manifest(args, config),
              "results": [{"rows": results, "all_hold": all_hold}]}
    _emit(args, report, table, fields, results)
    return OK if all_hold else 1


# ---------------------------------------------------------------- percolate


def _cmd_percolate(args: argparse.Namespace) -> int:
    if args.d < 1:
        return _fail("--d must be a positive integer")
    if args.L < 2:
        return _fail("--L must be at least 2")
    if args.L**args.d > percolation.MAX_CELLS:
        print(f"error: box of {args.L}^{args.d} cells exceeds the cap of 2^26 cells",
              file=sys.stderr)
        return RESOURCE
    if args.threshold == (args.p is not None):
        return _fail("give exactly one of --p or --threshold")
    if args.tail is not None and args.p is None:
        return _fail("--tail needs a --p to run at")
    if args.trials < 1:
        return _fail("--trials must be a positive integer")
    if args.threads < 1:
        return _fail("--threads must be a positive integer")
    estimates = []
    try:
        if args.threshold:
            estimates.append(percolation.estimate_threshold(
                args.d, args.L, args.flavor, args.trials, args.seed,
                threads=args.threads, steps=args.steps))
        else:
            cfg = percolation.PercConfig(args.d, args.L, args.flavor, args.p,
                                         args.trials, args.seed)
            estimates.append(percolation.crossing_probability(cfg, threads=args.threads))
            if args.tail is not None:
                estimates.append(percolation.cluster_tail(cfg, args.tail, threads=args.threads))
    except ValueError as exc:
        return _fail(str(exc))
    config = {
        "d": args.d, "L": args.L, "flavor": args.flavor, "p": args.p,
        "threshold": args.threshold, "tail": args.tail, "trials": args.trials,
        "seed": args.seed, "steps": args.steps, "threads": args.threads,
    }
    results = [est.as_dict() for est in estimates]
    table = []
    for est in estimates:
        table.append(f"{est.quantity} = {est.value!r} +- {est.half_width!r} "
                     f"(d={est.config.dimension} {est.config.flavor} L={est.config.side} "
                     f"trials={est.config.trials} seed={est.config.seed})")
    fields = ["quantity", "d", "value", "half_width"]
    csv_rows = [{k: r[k] for k in fields} for r in results]
    _emit(args, {"manifest": _manifest(args, config), "results": results}, table, fields, csv_rows)
    return OK


# -------------------------------------------------------------------- cache


def _cmd_cache(args: argparse.Namespace) -> int:
    directory = _cache_dir(args)
    if not directory:
        return _fail(f"no cache directory: give --cache-dir or set {_CACHE_ENV}")
    if args.action == "list":
        entries = cache.list_cached(directory)
        results = entries
        table = [f"{e['file']}: {e['kind']} d={e['dimension']} {e['rooting']} n<={e['n_max']}"
                 for e in entries] or ["(cache empty)"]
        fields = ["file", "kind", "dimension", "rooting", "n_max"]
        csv_rows = entries
    else:
        removed = cache.clear_cache(directory)
        results = [{"removed": removed}]
        table = [f"removed {removed} cache file(s)"]
        fields = ["removed"]
        csv_rows = results
    config = {"action": args.action, "cache_dir": str(directory)}
    _emit(args, {"manifest": _manifest(args, config), "results": results}, table, fields, csv_rows)
    return OK


# ------------------------------------------------------------------- parser


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", choices=("table", "json", "csv"), default="table",
                        help="report format (default: table)")
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")


def _add_format_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--decimals", type=int, metavar="K",
                       help="truncate printed bounds to K decimal places (conservative)")
    group.add_argument("--sig-figs", type=int, metavar="K",
                       help="truncate printed bounds to K significant figures (conservative)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latgrowth",
        description="Lattice-animal enumeration, growth/threshold bounds, and percolation runs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    enum = commands.add_parser("enumerate", help="count animals exactly")
    enum.add_argument("--d", type=int, required=True, help="lattice dimension")
    enum.add_argument("--n-max", type=int, required=True, help="largest size to count")
    enum.add_argument("--kind", choices=counting.KINDS, default="site")
    enum.add_argument("--rooting", choices=counting.ROOTINGS, default="lexmin")
    enum.add_argument("--histogram", action="store_true",
                      help="also bin boundary-to-size ratios at n-max")
    enum.add_argument("--epsilon", default="1/20", help="histogram bin width (rational)")
    enum.add_argument("--node-budget", type=int, help="abort after this many search nodes")
    enum.add_argument("--threads", type=int, default=1)
    enum.add_argument("--cache-dir", help=f"count cache directory (or set {_CACHE_ENV})")
    _add_output_flags(enum)
    enum.set_defaults(func=_cmd_enumerate)

    eden_cmd = commands.add_parser("eden", help="growth-history codes for site animals")
    eden_sub = eden_cmd.add_subparsers(dest="action", required=True)
    encode = eden_sub.add_parser("encode", help="encode an animal as bits")
    encode.add_argument("--d", type=int, required=True)
    encode.add_argument("--coords", help="inline vertices, e.g. '0,0;1,0;1,1'")
    encode.add_argument("--file", help="file with one comma-separated vertex per line")
    _add_output_flags(encode)
    encode.set_defaults(func=_cmd_eden_encode)
    decode = eden_sub.add_parser("decode", help="decode bits back to an animal")
    decode.add_argument("--d", type=int, required=True)
    decode.add_argument("--bits", required=True)
    _add_output_flags(decode)
    decode.set_defaults(func=_cmd_eden_decode)
    verify = eden_sub.add_parser("verify", help="replay codec checks over all animals")
    verify.add_argument("--d", type=int, required=True)
    verify.add_argument("--n-max", type=int, required=True)
    _add_output_flags(verify)
    verify.set_defaults(func=_cmd_eden_verify)

    bnd = commands.add_parser("bounds", help="growth/threshold bound machinery")
    bnd_sub = bnd.add_subparsers(dest="action", required=True)
    translate = bnd_sub.add_parser("translate", help="translate between growth and threshold")
    translate.add_argument("--from-growth-upper", type=float, metavar="A")
    translate.add_argument("--from-pc-upper", type=float, metavar="P")
    translate.add_argument("--d", type=int)
    translate.add_argument("--flavor", choices=("site", "bond"), default="site")
    _add_format_flags(translate)
    _add_output_flags(translate)
    translate.set_defaults(func=_cmd_bounds_translate)
    lemma = bnd_sub.add_parser("lemma", help="stratified growth cap g(d, x)")
    lemma.add_argument("--d", type=int, required=True)
    lemma.add_argument("--x", type=float, required=True)
    lemma.add_argument("--slack", type=float, help="also print the envelope at this slack")
    _add_format_flags(lemma)
    _add_output_flags(lemma)
    lemma.set_defaults(func=_cmd_bounds_lemma)
    expansion = bnd_sub.add_parser("expansion", help="evaluate a registry series")
    expansion.add_argument("--name", required=True)
    expansion.add_argument("--d", type=int, required=True)
    _add_output_flags(expansion)
    expansion.set_defaults(func=_cmd_bounds_expansion)
    improved = bnd_sub.add_parser("improved", help="refined growth/threshold bounds")
    improved.add_argument("--d", type=int, required=True)
    improved.add_argument("--slack", type=float, default=2.0)
    _add_format_flags(improved)
    _add_output_flags(improved)
    improved.set_defaults(func=_cmd_bounds_improved)
    crude = bnd_sub.add_parser("crude", help="crude and certificate-route growth caps")
    crude.add_argument("--d", type=int, required=True)
    crude.add_argument("--kind", choices=("site", "bond"), default="bond")
    _add_format_flags(crude)
    _add_output_flags(crude)
    crude.set_defaults(func=_cmd_bounds_crude)
    certificate = bnd_sub.add_parser("certificate", help="finite certificate in exact rationals")
    certificate.add_argument("--d", type=int, default=2)
    certificate.add_argument("--p", default="1/3")
    certificate.add_argument("--n-max", type=int, default=8)
    certificate.add_argument("--threads", type=int, default=1)
    certificate.add_argument("--cache-dir", help=f"count cache directory (or set {_CACHE_ENV})")
    _add_output_flags(certificate)
    certificate.set_defaults(func=_cmd_bounds_certificate)

    perc = commands.add_parser("percolate", help="Monte Carlo box percolation")
    perc.add_argument("--d", type=int, required=True)
    perc.add_argument("--L", type=int, required=True, help="box side length")
    perc.add_argument("--flavor", choices=percolation.FLAVORS, default="site")
    perc.add_argument("--p", type=float, help="crossing probability at this parameter")
    perc.add_argument("--threshold", action="store_true", help="bisect for the crossing point")
    perc.add_argument("--tail", type=int, metavar="N",
                      help="also estimate P(central cluster size >= N) at --p")
    perc.add_argument("--trials", type=int, default=500)
    perc.add_argument("--seed", type=int, default=0)
    perc.add_argument("--steps", type=int, default=12, help="bisection steps (threshold mode)")
    perc.add_argument("--threads", type=int, default=1)
    _add_output_flags(perc)
    perc.set_defaults(func=_cmd_percolate)

    cache_cmd = commands.add_parser("cache", help="inspect or clear the count cache")
    cache_cmd.add_argument("action", choices=("list", "clear"))
    cache_cmd.add_argument("--cache-dir", help=f"cache directory (or set {_CACHE_ENV})")
    _add_output_flags(cache_cmd)
    cache_cmd.set_defaults(func=_cmd_cache)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(exc.code or 0)
    args.raw_argv = argv
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
