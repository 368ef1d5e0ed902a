"""Write every table, verifier report and conjecture sweep to one directory.

    python scripts/reproduce_artifacts.py out/ --jobs 4 --cache out/counts.json

Exit status is 0 when every artifact is clean, 2 when some table cell or
sweep disagrees, 1 on error.
"""
from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

from svyt.cli import EXIT_ERROR, EXIT_FINDING, EXIT_OK, main

TABLES = {
    "1k1": "1..6",
    "k11": "1..6",
    "xi1": "1..6",
    "xi2": "1..6",
}

VERIFY = [
    ("phi", ["--k", "2..4", "--n", "1..2"]),
    ("phi_3", ["--k", "2..3", "--n", "3"]),
    ("schutzenberger", ["--k", "2..4", "--n", "1..2"]),
    ("skew", ["--k", "2..3", "--n", "1..2", "--x", "1,3", "--m", "0..2"]),
    ("tau", ["--k", "2..3", "--n", "0..3", "--x", "3", "--m", "0..3"]),
]

CLAIMS = ["conjecture6", "walks", "motzkin", "lattice3d"]


def _call(argv: list[str], path: Path) -> int:
    out = io.StringIO()
    code = main(argv, out=out)
    if code == EXIT_ERROR:
        raise RuntimeError(f"svyt {' '.join(argv)} failed")
    path.write_text(out.getvalue())
    return code


def build(outdir: str | Path, jobs: int = 1, cache: str | None = None) -> int:
    outdir = Path(outdir)
    for sub in ("tables", "verify", "conjectures"):
        (outdir / sub).mkdir(parents=True, exist_ok=True)
    worst = EXIT_OK
    extra = ["--jobs", str(jobs)] + (["--cache", cache] if cache else [])
    for family, ns in TABLES.items():
        for fmt in ("csv", "json"):
            code = _call(["count", "--family", family, "--n", ns, "--k", "1..7", "--check", "--format", fmt, *extra],
                         outdir / "tables" / f"{family}.{fmt}")
            worst = max(worst, code)
    for name, args in VERIFY:
        identity = name.split("_")[0]
        worst = max(worst, _call(["verify", identity, *args], outdir / "verify" / f"{name}.json"))
    for claim in CLAIMS:
        path = outdir / "conjectures" / f"{claim}.json"
        code = _call(["conjecture", claim, "--jobs", str(jobs), "--out", str(path)], outdir / "conjectures" / f"{claim}.txt")
        worst = max(worst, code)
    return worst


def artifact_bytes(outdir: str | Path) -> dict[str, bytes]:
    root = Path(outdir)
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file() and p.suffix in (".csv", ".json", ".txt")}


def cli(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("outdir")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache")
    args = p.parse_args(argv)
    code = build(args.outdir, args.jobs, args.cache)
    for name in artifact_bytes(args.outdir):
        print(name)
    return code


if __name__ == "__main__":
    sys.exit(cli())
