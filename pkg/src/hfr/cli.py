"""Command-line front end: ``hfr chi`` and ``hfr verify``.

Exit status is 0 on success, 1 when a computed value disagrees with an oracle
or an expectation, and 2 on bad input (unparsable braid, unknown knot, missing
table file, exhausted budget).
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import click

from hfr.braid_core import BraidWord, closure_components, parse_braid
from hfr.errors import BraidInputError, BudgetExceededError, HFRError
from hfr.euler import (
    chi_by_spinc,
    ordering_invariance_check,
    random_connected_braid,
    skein_check,
    stabilization_check,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class KnotTableEntry:
    name: str
    braid: BraidWord
    expected_chi_tot: int | None = None
    expected_per_class: tuple[int, ...] | None = None
    kind: str = "table"
    slow: bool = False
    source: str = ""


def load_table(path: str | Path | None = None) -> list[KnotTableEntry]:
    if path is None:
        text = resources.files("hfr").joinpath("data/knot_table.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise BraidInputError(f"cannot read table file {path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BraidInputError(f"table file is not valid JSON: {exc}") from None
    items = raw["entries"] if isinstance(raw, dict) else raw
    out = []
    for item in items:
        try:
            name = item["name"]
            braid = parse_braid(item.get("braid", ""), item.get("strands"))
        except KeyError as exc:
            raise BraidInputError(f"table entry missing field {exc}") from None
        per_class = item.get("expected_per_class")
        out.append(
            KnotTableEntry(
                name=name,
                braid=braid,
                expected_chi_tot=item.get("expected_chi_tot"),
                expected_per_class=tuple(per_class) if per_class is not None else None,
                kind=item.get("kind", "table"),
                slow=bool(item.get("slow", False)),
                source=item.get("source", ""),
            )
        )
    return out


def find_entry(table: list[KnotTableEntry], name: str) -> KnotTableEntry:
    for e in table:
        if e.name == name:
            return e
    raise BraidInputError(f"unknown knot {name!r}; known: {', '.join(e.name for e in table)}")


def check_entry(entry: KnotTableEntry, budget: int | None = None) -> tuple[bool, str]:
    """Run the pipeline on one bundled entry against its expectations and the oracles."""
    rep = chi_by_spinc(entry.braid, budget, name=entry.name)
    problems = []
    if not rep.oracle_match:
        problems.append(f"oracle {rep.oracle_value} != {rep.chi_tot}")
    if entry.expected_chi_tot is not None and rep.chi_tot != entry.expected_chi_tot:
        problems.append(f"chi_tot {rep.chi_tot} != expected {entry.expected_chi_tot}")
    if entry.expected_per_class is not None and rep.chi_values != sorted(entry.expected_per_class):
        problems.append(f"per-class {rep.chi_values} != expected {sorted(entry.expected_per_class)}")
    if rep.determinant and len(rep.per_class) != rep.determinant:
        problems.append(f"{len(rep.per_class)} classes != det {rep.determinant}")
    detail = f"chi_tot={rep.chi_tot} classes={len(rep.per_class)} det={rep.determinant}"
    return not problems, "; ".join(problems) or detail


@click.group()
@click.version_option(package_name="hfr")
def main() -> None:
    """Euler characteristics of real Heegaard Floer homology of double branched covers."""


def _fail_input(msg: str) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


@main.command()
@click.option("--braid", "braid_text", help='Braid word such as "1,-2,1,-2".')
@click.option("--knot", help="Name of a bundled entry, e.g. 4_1.")
@click.option("--strands", type=int, help="Strand count (default: max |letter| + 1).")
@click.option("--format", "fmt", type=click.Choice(["pretty", "json", "csv"]), default="pretty")
@click.option("--budget", type=int, help="Generator cap (default: HFR_BUDGET or 5000000).")
@click.option("--table-file", type=click.Path(dir_okay=False), help="Alternative knot table.")
def chi(braid_text, knot, strands, fmt, budget, table_file) -> None:
    """Compute chi_tot and the per-Spin^c values for one link."""
    if (braid_text is None) == (knot is None):
        _fail_input("give exactly one of --braid or --knot")
    try:
        if knot is not None:
            entry = find_entry(load_table(table_file), knot)
            b, name = entry.braid, entry.name
        else:
            b, name = parse_braid(braid_text, strands), None
        rep = chi_by_spinc(b, budget, name=name)
    except BudgetExceededError as exc:
        _fail_input(f"budget exceeded: {exc}")
    except HFRError as exc:
        _fail_input(str(exc))
    if fmt == "json":
        click.echo(rep.to_json())
    elif fmt == "csv":
        click.echo(rep.to_csv(), nl=False)
    else:
        click.echo(rep.pretty())
    sys.exit(EXIT_OK if rep.oracle_match else EXIT_MISMATCH)


@main.command()
@click.option("--table", "mode", flag_value="table", help="Check every bundled entry.")
@click.option("--skein", "mode", flag_value="skein", help="Sample skein triples.")
@click.option("--invariance", "mode", flag_value="invariance", help="Reordering, reversal, stabilization.")
@click.option("--skip-slow", is_flag=True, help="Skip entries marked slow (reported as SKIP).")
@click.option("--samples", type=int, default=25, show_default=True)
@click.option("--cases", type=int, default=20, show_default=True, help="Random links for --invariance.")
@click.option("--max-crossings", type=int, default=8, show_default=True)
@click.option("--max-strands", type=int, default=4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int)
@click.option("--table-file", type=click.Path(dir_okay=False))
def verify(mode, skip_slow, samples, cases, max_crossings, max_strands, seed, budget, table_file):
    """Run a verification battery; exit 0 iff every item passes."""
    if mode is None:
        _fail_input("choose one of --table, --skein, --invariance")
    if max_strands < 2 or max_crossings < max_strands - 1:
        _fail_input("need --max-strands >= 2 and --max-crossings >= max-strands - 1")
    try:
        if mode == "table":
            ok = _verify_table(load_table(table_file), skip_slow, budget)
        elif mode == "skein":
            ok = _verify_skein(samples, max_crossings, max_strands, seed, budget)
        else:
            ok = _verify_invariance(load_table(table_file), cases, max_crossings, max_strands,
                                    seed, budget)
    except BudgetExceededError as exc:
        _fail_input(f"budget exceeded: {exc}")
    except HFRError as exc:
        _fail_input(str(exc))
    sys.exit(EXIT_OK if ok else EXIT_MISMATCH)


def _line(ok: bool, label: str, detail: str) -> None:
    click.echo(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")


def _verify_table(table: list[KnotTableEntry], skip_slow: bool, budget: int | None) -> bool:
    passed = failed = skipped = 0
    for entry in table:
        if entry.slow and skip_slow:
            click.echo(f"SKIP {entry.name}: marked slow (--skip-slow)")
            skipped += 1
            continue
        ok, detail = check_entry(entry, budget)
        _line(ok, entry.name, detail)
        passed += ok
        failed += not ok
    click.echo(f"{passed} passed, {failed} failed, {skipped} skipped")
    return failed == 0


def _verify_skein(samples: int, max_crossings: int, max_strands: int, seed: int,
                  budget: int | None) -> bool:
    rng = random.Random(seed)
    failed = 0
    for _ in range(samples):
        b = random_connected_braid(rng, max_strands, max_crossings)
        index = rng.randrange(len(b.letters))
        r = skein_check(b, index, budget)
        plus, minus, zero = r.chis
        _line(r.ok, f"[{b}] at {index}",
              f"{r.case} L+={plus} L-={minus} L0={zero} (components {r.components[0]}/{r.components[1]})")
        failed += not r.ok
    click.echo(f"{samples - failed}/{samples} skein triples pass")
    return failed == 0


def _verify_invariance(table: list[KnotTableEntry], cases: int, max_crossings: int,
                       max_strands: int, seed: int, budget: int | None) -> bool:
    rng = random.Random(seed)
    subjects = [(e.name, e.braid) for e in table if e.kind == "link"]
    drawn = 0
    while drawn < cases:  # random links with at least two components
        b = random_connected_braid(rng, max_strands, max_crossings)
        if closure_components(b).count > 1:
            subjects.append((f"[{b}]", b))
            drawn += 1
    total = failed = 0
    for label, b in subjects:
        results = stabilization_check(b, rng, budget)
        if closure_components(b).count > 1:
            results += ordering_invariance_check(b, rng, budget)
        for r in results:
            _line(r.ok, f"{label} {r.label}", r.detail)
            total += 1
            failed += not r.ok
    click.echo(f"{total - failed}/{total} invariance checks pass over {len(subjects)} links")
    return failed == 0


if __name__ == "__main__":
    main()
