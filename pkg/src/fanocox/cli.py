"""Command line interface: ``fanocox verify-table | enumerate | invariants | deform``.

Exit codes: 0 ok, 1 mismatch or domain error, 2 usage or I/O failure.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import click

from .enumeration import SearchBounds, enumerate_with_reports
from .grading_core import InvalidData, SpecifyingData, canonical_form
from .invariants import (
    NotApplicable, anticanonical_class, anticanonical_degree, deformation_h1,
    elementary_contractions, fano_index, hodge_numbers,
)
from .verification import FAIL, NotFano, verify_candidate

ENV_REFERENCE = "FANO_COX_REFERENCE"


class UsageError(Exception):
    """Malformed input or unreadable files (exit code 2)."""


# ---------------------------------------------------------------------------
# reference table

@dataclass(frozen=True)
class ReferenceRow:
    row: int
    data: SpecifyingData
    minus_K: tuple[int, int]
    K4: int
    hodge: tuple[int, int, int]
    contractions: tuple[dict, ...]
    product: bool


@dataclass(frozen=True)
class ReferenceTable:
    rows: tuple[ReferenceRow, ...]
    header: tuple[str, ...] = ()

    def row(self, k: int) -> ReferenceRow:
        for r in self.rows:
            if r.row == k:
                return r
        raise KeyError(k)


def reference_path(path: str | None = None) -> Path | None:
    p = path or os.environ.get(ENV_REFERENCE)
    return Path(p) if p else None


def load_reference(path: str | None = None) -> ReferenceTable:
    p = reference_path(path)
    try:
        if p is None:
            text = resources.files("fanocox.data").joinpath("reference.json").read_text()
        else:
            text = p.read_text()
        obj = json.loads(text)
        rows = []
        for r in obj["rows"]:
            rows.append(ReferenceRow(
                row=int(r["row"]),
                data=SpecifyingData.from_matrix(r["degree_matrix"], r["relation_degree"]),
                minus_K=tuple(r["minus_K"]),
                K4=int(r["K4"]),
                hodge=tuple(r["hodge"]),
                contractions=tuple(dict(c) for c in r["contractions"]),
                product=bool(r["product"]),
            ))
    except (OSError, ValueError, KeyError, TypeError, InvalidData) as e:
        raise UsageError(f"cannot read reference table: {e}") from e
    numbers = [r.row for r in rows]
    if len(set(numbers)) != len(numbers):
        raise UsageError("duplicate row numbers in reference table")
    return ReferenceTable(tuple(rows), tuple(obj.get("header", ())))


# equivalent spellings of printed labels
LABEL_ALIASES = {"Q_4": "Y_{2;5}", "Y_4": "Y_{4;5}"}


def _norm_contraction(c: dict) -> dict:
    out = dict(c)
    for k in ("target", "fiber_or_center"):
        out[k] = LABEL_ALIASES.get(out[k], out[k])
    return out


def parse_rows(spec: str | None, available) -> list[int]:
    if not spec:
        return sorted(available)
    out = []
    try:
        for part in spec.split(","):
            part = part.strip()
            if "-" in part:
                a, b = part.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    except ValueError as e:
        raise UsageError(f"bad --rows value {spec!r}") from e
    missing = [k for k in out if k not in available]
    if missing:
        raise UsageError(f"rows not in reference table: {missing}")
    return out


def parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError as e:
        raise UsageError(f"expected A,B, got {text!r}") from e


# ---------------------------------------------------------------------------
# records

def invariants_record(d: SpecifyingData) -> dict:
    rep = verify_candidate(d)
    rec = {
        "degree_matrix": d.matrix,
        "relation_degree": list(d.mu),
        "verification": rep.to_json(),
    }
    if rep.overall == FAIL:
        return rec
    rec["minus_K"] = list(anticanonical_class(d))
    rec["fano_index"] = fano_index(d)
    rec["K4"] = anticanonical_degree(d)
    rec["hodge"] = hodge_numbers(d).as_list()
    rec["contractions"] = [c.to_json() for c in elementary_contractions(d)]
    return rec


def compare_row(ref: ReferenceRow) -> dict:
    """Recompute one table row; ``diff`` lists the fields that disagree."""
    d = ref.data
    got = invariants_record(d)
    diff = []
    status = got["verification"]["overall"]
    if status == FAIL:
        diff.append("status")
    else:
        if tuple(got["minus_K"]) != ref.minus_K:
            diff.append("minus_K")
        if got["K4"] != ref.K4:
            diff.append("K4")
        if tuple(got["hodge"]) != ref.hodge:
            diff.append("hodge")
        want = [_norm_contraction(c) for c in ref.contractions]
        have = [_norm_contraction(c) for c in got["contractions"]]
        keys = ("kind", "target", "fiber_or_center", "singular")
        if len(want) != len(have) or any(
                any(w[k] != h[k] for k in keys) for w, h in zip(want, have)):
            diff.append("contractions")
    return {"row": ref.row, "status": status, "diff": diff, "computed": got}


def _emit(records: list[dict], fmt: str, columns: list[str]) -> str:
    if fmt == "json":
        return json.dumps(records, indent=1, sort_keys=True)
    flat = [{k: _cell(r.get(k)) for k in columns} for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for r in flat:
        lines.append("| " + " | ".join(r[k] for k in columns) + " |")
    return "\n".join(lines)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _read_datum(stdin: bool, row: int | None, datum: str | None, reference: str | None) -> SpecifyingData:
    try:
        if row is not None:
            return load_reference(reference).row(row).data
        text = sys.stdin.read() if stdin else datum
        if not text:
            raise UsageError("no specifying data given (use --stdin, --row or a JSON argument)")
        return SpecifyingData.from_json(text)
    except KeyError as e:
        raise UsageError(f"row {row} not in reference table") from e
    except (ValueError, TypeError) as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"malformed specifying data: {e}") from e


# ---------------------------------------------------------------------------
# commands

FORMAT = click.option("--format", "fmt", type=click.Choice(["json", "csv", "md"]), default="json",
                      show_default=True)
REFERENCE = click.option("--reference", type=click.Path(dir_okay=False), default=None,
                         help=f"reference table (default: shipped data, or ${ENV_REFERENCE})")
JOBS = click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)


@click.group()
@click.option("-v", "--verbose", is_flag=True)
def main(verbose: bool) -> None:
    """Smooth Fano fourfolds of Picard number two with hypersurface Cox rings."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@main.command("verify-table")
@click.option("--rows", default=None, help="subset such as 1,5-9")
@FORMAT
@JOBS
@REFERENCE
def verify_table(rows, fmt, jobs, reference):
    """Recompute every table row and diff it against the reference."""
    table = load_reference(reference)
    wanted = parse_rows(rows, {r.row for r in table.rows})
    refs = [table.row(k) for k in wanted]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(compare_row, refs))
    else:
        results = [compare_row(r) for r in refs]
    if fmt == "json":
        click.echo(_emit(results, fmt, []))
    else:
        flat = [{"row": r["row"], "status": r["status"], "diff": ",".join(r["diff"]),
                 "K4": r["computed"].get("K4"), "hodge": r["computed"].get("hodge")}
                for r in results]
        click.echo(_emit(flat, fmt, ["row", "status", "diff", "K4", "hodge"]))
    bad = [r["row"] for r in results if r["diff"]]
    click.echo(f"{len(results) - len(bad)}/{len(results)} matched", err=True)
    if bad:
        click.echo("mismatched rows: " + ",".join(map(str, bad)), err=True)
        sys.exit(1)


@main.command("enumerate")
@click.option("--bounds-entry", type=click.IntRange(min=0, max=63), default=6, show_default=True)
@click.option("--bounds-mu", default="12,12", show_default=True)
@click.option("--no-prune", is_flag=True, help="disable the pair/triple pruning (slow)")
@FORMAT
@JOBS
def enumerate_cmd(bounds_entry, bounds_mu, no_prune, fmt, jobs):
    """Search the bounded window for candidate specifying data."""
    b = SearchBounds(bounds_entry, parse_pair(bounds_mu))
    found = enumerate_with_reports(b, prune=not no_prune, jobs=jobs)
    records = [{**c.data.to_json(), "status": c.status} for c in found]
    click.echo(_emit(records, fmt, ["degree_matrix", "relation_degree", "status"]))
    click.echo(f"{len(records)} candidates", err=True)


@main.command("invariants")
@click.argument("datum", required=False)
@click.option("--stdin", "from_stdin", is_flag=True, help="read JSON specifying data from stdin")
@click.option("--row", type=int, default=None)
@FORMAT
@REFERENCE
def invariants_cmd(datum, from_stdin, row, fmt, reference):
    """Invariants of one specifying datum given as JSON."""
    d = _read_datum(from_stdin, row, datum, reference)
    if d.problems():
        raise UsageError("; ".join(d.problems()))
    rec = invariants_record(d)
    cols = ["degree_matrix", "relation_degree", "minus_K", "fano_index", "K4", "hodge"]
    click.echo(json.dumps(rec, sort_keys=True) if fmt == "json" else _emit([rec], fmt, cols))
    if rec["verification"]["overall"] == FAIL:
        click.echo("verification failed", err=True)
        sys.exit(1)


@main.command("deform")
@click.argument("datum", required=False)
@click.option("--stdin", "from_stdin", is_flag=True)
@click.option("--row", type=int, default=None)
@click.option("--dim-aut", type=int, required=True, help="dimension of Aut(X)")
@REFERENCE
def deform_cmd(datum, from_stdin, row, dim_aut, reference):
    """h^1 of the tangent sheaf from the dimension of the automorphism group."""
    d = _read_datum(from_stdin, row, datum, reference)
    click.echo(deformation_h1(d, dim_aut))


@main.command("canonical")
@click.argument("datum", required=False)
@click.option("--stdin", "from_stdin", is_flag=True)
def canonical_cmd(datum, from_stdin):
    """Canonical representative of the orbit of a datum."""
    d = _read_datum(from_stdin, None, datum, None)
    click.echo(json.dumps(canonical_form(d).to_json(), sort_keys=True))


def run(argv=None) -> int:
    try:
        main.main(args=argv, standalone_mode=False)
    except UsageError as e:
        click.echo(f"error: {e}", err=True)
        return 2
    except click.UsageError as e:
        e.show()
        return 2
    except (NotFano, NotApplicable) as e:
        click.echo(json.dumps({"error": type(e).__name__, "message": str(e)}), err=True)
        return 1
    except SystemExit as e:
        return int(e.code or 0)
    except click.exceptions.Abort:
        return 2
    return 0


def entry() -> None:
    sys.exit(run())
