"""Golden reproduction of the published table of quandle homology groups."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .homology import AbelianGroupInvariants, homology_groups
from .racks import parse_rack_spec

__all__ = ["TableRow", "RowResult", "load_table1", "select_rows", "compute_row", "run_table1"]


@dataclass(frozen=True)
class TableRow:
    label: str
    spec: str
    H2: AbelianGroupInvariants
    H3: AbelianGroupInvariants


@dataclass(frozen=True)
class RowResult:
    row: TableRow
    computed_H2: AbelianGroupInvariants
    computed_H3: AbelianGroupInvariants

    @property
    def cells(self) -> list[tuple[str, AbelianGroupInvariants, AbelianGroupInvariants, bool]]:
        return [
            ("H^Q_2", self.computed_H2, self.row.H2, self.computed_H2 == self.row.H2),
            ("H^Q_3", self.computed_H3, self.row.H3, self.computed_H3 == self.row.H3),
        ]

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.cells)


def load_table1() -> list[TableRow]:
    raw = json.loads(resources.files("rackhom").joinpath("data/table1.json").read_text())
    return [TableRow(r["label"], r["spec"], AbelianGroupInvariants.parse(r["H2"]),
                     AbelianGroupInvariants.parse(r["H3"])) for r in raw]


def select_rows(only=None) -> list[TableRow]:
    """Rows matching any of the given labels or spec strings (all rows if none given)."""
    rows = load_table1()
    if not only:
        return rows
    wanted = list(only)
    picked = [r for r in rows if r.label in wanted or r.spec in wanted]
    missing = [w for w in wanted if not any(w in (r.label, r.spec) for r in rows)]
    if missing:
        raise KeyError(f"no table row matches {', '.join(missing)}")
    return picked


def compute_row(row: TableRow) -> RowResult:
    rack = parse_rack_spec(row.spec)
    groups = homology_groups(rack, "Q", 3)
    return RowResult(row, groups[2], groups[3])


def run_table1(only=None, jobs: int = 1) -> list[RowResult]:
    rows = select_rows(only)
    if jobs > 1 and len(rows) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(compute_row, rows))
    return [compute_row(r) for r in rows]
