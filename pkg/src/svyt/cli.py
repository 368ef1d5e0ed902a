"""Command-line interface: ``svyt count|generate|map|verify|conjecture|cache``.

Exit status is 0 on success, 1 on errors and 2 when a check finds a
counterexample or disagreement.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from . import bijections, conjectures, counting, prographs, tableaux
from .counting import CountCache, Family
from .tableaux import DEFAULT_MAX_ENTRIES, Density, InstanceTooLarge, Shape, SkewShape

EXIT_OK, EXIT_ERROR, EXIT_FINDING = 0, 1, 2

UNKNOWN = "?"


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..4"`` or ``"1,3,5"`` to a list of integers."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad range {text!r}; expected N, A..B or A,B,C") from None


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


@dataclass
class RunConfig:
    command: str
    k: list[int] = field(default_factory=lambda: [3])
    n: list[int] = field(default_factory=lambda: [2])
    shape: tuple[int, ...] | None = None
    density: tuple[int, ...] | None = None
    budget_entries: int = DEFAULT_MAX_ENTRIES
    fmt: str = "text"
    cache: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.budget_entries < 1:
            raise UsageError("--budget-entries must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if not self.k or not self.n:
            raise UsageError("parameter grids must be non-empty")

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(
            command=args.command,
            k=parse_range(args.k) if getattr(args, "k", None) else [3],
            n=parse_range(args.n) if getattr(args, "n", None) else [2],
            shape=parse_ints(args.shape) if getattr(args, "shape", None) else None,
            density=parse_ints(args.density) if getattr(args, "density", None) else None,
            budget_entries=getattr(args, "budget_entries", DEFAULT_MAX_ENTRIES),
            fmt=getattr(args, "format", None) or "text",
            cache=getattr(args, "cache", None),
            jobs=getattr(args, "jobs", 1),
        )


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- count -------------------------------------------------------------------------

def _count_cell(job):
    family, n, k, budget = job
    try:
        return counting.count_family(Family(family), n, k, max_entries=budget)
    except InstanceTooLarge:
        return None


def cmd_count(args, out) -> int:
    cfg = RunConfig.from_args(args)
    if cfg.shape is not None or cfg.density is not None:
        if cfg.shape is None or cfg.density is None:
            raise UsageError("--shape and --density go together")
        value: int | str
        try:
            value = counting.count_explicit(Shape(cfg.shape), Density(cfg.density), max_entries=cfg.budget_entries)
        except InstanceTooLarge:
            value = UNKNOWN
        shape, dens = ",".join(map(str, cfg.shape)), ",".join(map(str, cfg.density))
        if cfg.fmt == "json":
            out.write(json.dumps({"shape": list(cfg.shape), "density": list(cfg.density), "value": value}) + "\n")
        elif cfg.fmt == "csv":
            out.write(_csv([[shape, dens, value]], ["shape", "density", "value"]))
        else:
            out.write(f"{value}\n")
        return EXIT_OK

    family = Family(args.family)
    cache = CountCache(cfg.cache)
    cells = [(k, n) for k in cfg.k for n in cfg.n]
    values: dict[tuple[int, int], int | None] = {}
    pending = []
    for k, n in cells:
        hit = cache.get(counting.CountRecord(Shape((n,) * family.rows), family, k, 0).key)
        if hit is not None:
            values[(k, n)] = hit
        else:
            pending.append((family.value, n, k, cfg.budget_entries))
    if cfg.jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_count_cell, pending))
    else:
        results = [_count_cell(job) for job in pending]
    for (_, n, k, _), v in zip(pending, results):
        values[(k, n)] = v
        if v is not None:
            cache.put(counting.CountRecord(Shape((n,) * family.rows), family, k, 0).key, v)
    cache.flush()

    reference = counting.TABLES[family]
    status = EXIT_OK
    rows = []
    for k, n in cells:
        v = values[(k, n)]
        row = {"k": k, "n": n, "value": UNKNOWN if v is None else v}
        if args.check:
            p = reference.get((k, n))
            if v is None:
                verdict = "not-computed"
            elif p is None:
                verdict = "new"
            elif p == v:
                verdict = "ok"
            else:
                verdict = "mismatch"
                status = EXIT_FINDING
            row["reference"] = "" if p is None else p
            row["status"] = verdict
        rows.append(row)

    header = ["k", "n", "value"] + (["reference", "status"] if args.check else [])
    if cfg.fmt == "json":
        out.write(json.dumps({"family": family.value, "cells": rows}) + "\n")
    elif cfg.fmt == "csv":
        out.write(_csv([[r[h] for h in header] for r in rows], header))
    else:
        for r in rows:
            out.write(" ".join(f"{h}={r[h]}" for h in header) + "\n")
    return status


# -- generate ----------------------------------------------------------------------------

def _emit_tableau(t, fmt) -> str:
    if fmt == "json":
        return tableaux.format_json(t)
    if fmt in ("text", "csv"):
        return tableaux.format_text(t)
    raise UsageError(f"format {fmt!r} is not available for tableaux")


def _emit_prograph(g, fmt) -> str:
    if fmt == "dot":
        return prographs.to_dot(g).rstrip("\n")
    if fmt == "json":
        return json.dumps({"k": g.k, "x": g.x, "word": [str(op) for op in g.word]})
    return prographs.format_text(g)


def cmd_generate(args, out) -> int:
    budget = args.budget_entries
    if args.kind == "svt":
        if not args.shape or not args.density:
            raise UsageError("generate svt needs --shape and --density")
        inner = Shape(parse_ints(args.inner)) if args.inner else Shape(())
        shape = SkewShape(Shape(parse_ints(args.shape)), inner)
        stream = (_emit_tableau(t, args.format) for t in tableaux.enumerate_svt(shape, Density(parse_ints(args.density)), max_entries=budget))
    else:
        k, n = int(args.k or 2), int(args.n or 1)
        m = n if args.m is None else int(args.m)
        stream = (_emit_prograph(g, args.format) for g in prographs.enumerate_prographs(k, n, m, int(args.x)))
    for line in islice(stream, args.limit):
        out.write(line + "\n")
    return EXIT_OK


# -- map ---------------------------------------------------------------------------------

def _parse_object(text: str):
    text = text.strip()
    if text.startswith("k="):
        return prographs.parse_text(text)
    if text.startswith("{"):
        data = json.loads(text)
        if "word" in data:
            return prographs.Prograph.from_word(data["k"], data["x"], [prographs.Op(s[0], int(s[2:])) for s in data["word"]])
        return tableaux.parse_json(data)
    return tableaux.parse_text(text)


MAPS = {
    "phi": bijections.phi,
    "phi_inverse": bijections.phi_inverse,
    "psi": bijections.psi,
    "psi_inverse": bijections.psi_inverse,
    "tau": bijections.tau,
    "phi_k_tree": bijections.phi_k_tree,
    "rotate": prographs.rotate,
    "justify": prographs.justify,
    "left_weighted_justify": prographs.left_weighted_justify,
    "schutzenberger": tableaux.schutzenberger,
    "skew_schutzenberger": tableaux.skew_schutzenberger,
}


def _emit(obj, fmt) -> str:
    if isinstance(obj, prographs.Prograph):
        return _emit_prograph(obj, fmt)
    return _emit_tableau(obj, fmt)


def cmd_map(args, out) -> int:
    names = args.maps.split(",")
    for name in names:
        if name not in MAPS:
            raise UsageError(f"unknown map {name!r}; choose from {', '.join(sorted(MAPS))}")
    source = sys.stdin if args.input in (None, "-") else open(args.input)
    try:
        for line in source:
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            obj = _parse_object(line)
            for name in names:
                obj = MAPS[name](obj)
            out.write(_emit(obj, args.format) + "\n")
    finally:
        if source is not sys.stdin:
            source.close()
    return EXIT_OK


# -- verify ----------------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    ks, ns = parse_range(args.k), parse_range(args.n)
    xs = parse_range(args.x) if args.x else [1]
    ms = parse_range(args.m) if args.m else None
    reports = []
    for k in ks:
        for n in ns:
            if args.identity == "schutzenberger":
                reports.append(bijections.verify_schutzenberger_square(k, n))
            elif args.identity == "phi":
                reports.append(bijections.verify_phi_roundtrip(k, n))
            else:
                fn = {
                    "skew": bijections.verify_skew_square,
                    "tau": bijections.verify_tau_psi,
                    "psi": bijections.verify_psi_roundtrip,
                }[args.identity]
                for x in xs:
                    if (x - 1) % (k - 1):
                        continue
                    for m in (ms if ms is not None else [n]):
                        if (n - m) * (k - 1) + x < 1:
                            continue
                        reports.append(fn(k, x, n, m))
    if args.format == "text":
        for r in reports:
            out.write(f"{r.identity} {json.dumps(r.grid, sort_keys=True)} cases={r.cases_checked} "
                      f"counterexamples={len(r.counterexamples)}\n")
    else:
        for r in reports:
            out.write(r.to_json() + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FINDING


# -- conjecture ----------------------------------------------------------------------------

def _conjecture_grid(args) -> list[dict] | None:
    if not (args.k or args.n or args.x or args.m):
        grid = conjectures.default_grid(args.claim)
    else:
        ks = parse_range(args.k) if args.k else [3]
        ns = parse_range(args.n) if args.n else [1]
        if args.claim == "conjecture6":
            xs = parse_range(args.x) if args.x else [2]
            ms = parse_range(args.m) if args.m else [0, 1]
            grid = [
                {"k": k, "x": x, "n": n, "m": m}
                for k in ks for x in xs for n in ns for m in ms
                if (x - 1) % (k - 1) and (n - m) * (k - 1) + x >= 1
            ]
        else:
            grid = [{"k": k, "n": n} for k in ks for n in ns]
    for p in grid:
        if args.claim == "conjecture6":
            p["reading"] = args.reading
        if args.claim == "lattice3d":
            p["constraint"] = args.constraint
    return grid


def cmd_conjecture(args, out) -> int:
    report = conjectures.sweep(args.claim, _conjecture_grid(args), jobs=args.jobs, path=args.out)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        out.write(report.to_text() + "\n")
    return EXIT_OK if report.verdict == conjectures.AGREE else EXIT_FINDING


# -- cache -------------------------------------------------------------------------------------

def cmd_cache(args, out) -> int:
    cache = CountCache(args.cache)
    if cache.path is None:
        raise UsageError(f"no cache configured; pass --cache or set {counting.CACHE_ENV}")
    if args.action == "path":
        out.write(f"{cache.path}\n")
    elif args.action == "clear":
        cache.clear()
        out.write("cleared\n")
    else:
        out.write(json.dumps({"path": str(cache.path), "entries": len(cache)}) + "\n")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="svyt", description="Set-valued tableaux and k-ary prographs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count tableaux for a family grid or an explicit shape")
    c.add_argument("--family", choices=[f.value for f in Family if f is not Family.EXPLICIT], default="1k1")
    c.add_argument("--shape")
    c.add_argument("--density")
    c.add_argument("--k", default="1..4")
    c.add_argument("--n", default="1..4")
    c.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    c.add_argument("--budget-entries", type=int, default=DEFAULT_MAX_ENTRIES)
    c.add_argument("--cache")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--check", action="store_true", help="compare against the reference tables")
    c.set_defaults(func=cmd_count)

    g = sub.add_parser("generate", help="stream tableaux or prographs")
    g.add_argument("kind", choices=["svt", "prographs"])
    g.add_argument("--shape")
    g.add_argument("--inner")
    g.add_argument("--density")
    g.add_argument("--k")
    g.add_argument("--n")
    g.add_argument("--m")
    g.add_argument("--x", default="1")
    g.add_argument("--limit", type=int)
    g.add_argument("--format", choices=["text", "json", "dot"], default="text")
    g.add_argument("--budget-entries", type=int, default=DEFAULT_MAX_ENTRIES)
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("map", help="apply maps (comma-separated, left to right) to objects read line by line")
    m.add_argument("maps")
    m.add_argument("input", nargs="?")
    m.add_argument("--format", choices=["text", "json", "dot"], default="text")
    m.set_defaults(func=cmd_map)

    v = sub.add_parser("verify", help="exhaustively check a bijection identity")
    v.add_argument("identity", choices=["schutzenberger", "skew", "phi", "psi", "tau"])
    v.add_argument("--k", default="2..3")
    v.add_argument("--n", default="1..2")
    v.add_argument("--x")
    v.add_argument("--m")
    v.add_argument("--format", choices=["json", "text"], default="json")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("conjecture", help="sweep a conjectured equality")
    q.add_argument("claim", choices=sorted(conjectures.CLAIMS))
    q.add_argument("--k")
    q.add_argument("--n")
    q.add_argument("--x")
    q.add_argument("--m")
    q.add_argument("--reading", choices=conjectures.READINGS, default="repaired")
    q.add_argument("--constraint", choices=sorted(conjectures.LATTICE_PRESETS), default="literal")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out", help="write the JSON report here")
    q.add_argument("--format", choices=["json", "text"], default="text")
    q.set_defaults(func=cmd_conjecture)

    h = sub.add_parser("cache", help="inspect or clear the count cache")
    h.add_argument("action", choices=["show", "clear", "path"], nargs="?", default="show")
    h.add_argument("--cache")
    h.set_defaults(func=cmd_cache)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args, out)
    except (ValueError, AssertionError, OSError, InstanceTooLarge) as exc:
        print(f"svyt: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
