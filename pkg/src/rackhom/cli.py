"""Command-line front end: ``rackhom homology|table1|verify|iso|orbits``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from sympy import isprime

from .errors import RackError, ResourceCapExceeded
from .homology import AbelianGroupInvariants, homology_groups
from .racks import (
    find_isomorphism,
    homogeneity_report,
    orbit_partition,
    parse_rack_spec,
    prop41_map,
    prop42_map,
)
from .table1 import run_table1
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_MAX_SIZE = 64
DEFAULT_MAX_BASIS = 10_000


@dataclass
class RunConfig:
    command: str
    specs: list[str] = field(default_factory=list)
    variants: list[str] = field(default_factory=lambda: ["Q"])
    max_degree: int = 3
    primes: list[int] = field(default_factory=list)
    fmt: str = "text"
    jobs: int = 1
    max_basis: int = DEFAULT_MAX_BASIS
    max_size: int = DEFAULT_MAX_SIZE
    only: list[str] = field(default_factory=list)
    suite: str = "all"
    prop41: tuple[int, int] | None = None
    prop42: int | None = None

    def __post_init__(self):
        if self.max_degree < 1:
            raise RackError("degree must be at least 1")
        bad = [p for p in self.primes if not isprime(p)]
        if bad:
            raise RackError(f"not prime: {', '.join(map(str, bad))}")
        if self.jobs < 1 or self.max_basis < 1 or self.max_size < 1:
            raise RackError("--jobs, --max-basis and --max-size must be positive")
        for W in self.variants:
            if W not in ("R", "D", "Q", "L"):
                raise RackError(f"unknown variant {W!r}")


@dataclass
class HomologyReport:
    rack: str
    m: int
    homogeneous: bool
    groups: dict[str, dict[int, AbelianGroupInvariants]] = field(default_factory=dict)
    modp: dict[str, dict[int, dict[int, int]]] = field(default_factory=dict)
    verdicts: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rack": self.rack,
            "m": self.m,
            "homogeneous": self.homogeneous,
            "groups": {W: {str(n): g.to_json() for n, g in per.items()}
                       for W, per in self.groups.items()},
            "modp": {W: {str(n): {str(p): d for p, d in dims.items()} for n, dims in per.items()}
                     for W, per in self.modp.items()},
            "verdicts": dict(self.verdicts),
        }

    def text_lines(self) -> list[str]:
        lines = [f"rack {self.rack}: m = {self.m}, "
                 f"{'homogeneous' if self.homogeneous else 'not homogeneous'}"]
        for W, per in self.groups.items():
            for n, g in per.items():
                lines.append(f"H^{W}_{n} = {g}")
        for W, per in self.modp.items():
            for n, dims in per.items():
                for p, d in dims.items():
                    lines.append(f"dim H^{W}_{n}(X; Z_{p}) = {d}")
        for name, verdict in self.verdicts.items():
            lines.append(f"{name}: {verdict}")
        return lines


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _load_rack(spec: str, cfg: RunConfig):
    rack = parse_rack_spec(spec)
    if rack.size > cfg.max_size:
        raise ResourceCapExceeded(0, rack.size, cfg.max_size)
    return rack


def _groups_job(args):
    rack, W, n, cap = args
    return homology_groups(rack, W, n, cap)


def _mod_p(groups, n: int, p: int) -> int:
    h = groups[n]
    below = groups[n - 1].torsion if n >= 1 else ()
    return (h.free_rank + sum(1 for d in h.torsion if d % p == 0)
            + sum(1 for d in below if d % p == 0))


def cmd_homology(cfg: RunConfig, out) -> int:
    rack = _load_rack(cfg.specs[0], cfg)
    part = orbit_partition(rack)
    jobs = [(rack, W, cfg.max_degree, cfg.max_basis) for W in cfg.variants]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_groups_job, jobs))
    else:
        results = [_groups_job(j) for j in jobs]
    report = HomologyReport(rack.label, part.count, part.homogeneous)
    for W, groups in zip(cfg.variants, results):
        report.groups[W] = {n: groups[n] for n in range(1, cfg.max_degree + 1)}
        if cfg.primes:
            report.modp[W] = {n: {p: _mod_p(groups, n, p) for p in cfg.primes}
                              for n in range(1, cfg.max_degree + 1)}
    if cfg.fmt == "json":
        print(_dump(report.to_json()), file=out)
    else:
        print("\n".join(report.text_lines()), file=out)
    return EXIT_OK


def cmd_table1(cfg: RunConfig, out) -> int:
    try:
        results = run_table1(cfg.only or None, jobs=cfg.jobs)
    except KeyError as e:
        raise RackError(str(e.args[0])) from None
    cells = sum(len(r.cells) for r in results)
    passed = sum(ok for r in results for *_, ok in r.cells)
    if cfg.fmt == "json":
        rows = [{"rack": r.row.label, "spec": r.row.spec,
                 "cells": {name: {"computed": got.to_json(), "expected": want.to_json(),
                                  "status": "PASS" if ok else "FAIL"}
                           for name, got, want, ok in r.cells}} for r in results]
        print(_dump({"rows": rows, "cells": cells, "passed": passed}), file=out)
    else:
        for r in results:
            for name, got, want, ok in r.cells:
                print(f"{r.row.label:<24} {name}  computed {str(got):<24} "
                      f"expected {str(want):<24} {'PASS' if ok else 'FAIL'}", file=out)
        print(f"{len(results)} rows, {passed}/{cells} cells PASS", file=out)
    return EXIT_OK if passed == cells else EXIT_FAIL


def cmd_verify(cfg: RunConfig, out) -> int:
    rack = _load_rack(cfg.specs[0], cfg)
    reports = run_suite(rack, cfg.suite, cfg.max_degree)
    failed = [r for r in reports if r.applicable and not r.passed]
    if cfg.fmt == "json":
        payload = {"rack": rack.label, "suite": cfg.suite, "max_degree": cfg.max_degree,
                   "reports": [{"name": r.name,
                                "status": ("NotApplicable" if not r.applicable
                                           else "PASS" if r.passed else "FAIL"),
                                "reason": r.reason,
                                "checks": [{"name": c.name, "status": "PASS" if c.passed else "FAIL",
                                            "observed": c.observed, "expected": c.expected,
                                            "witness": c.witness} for c in r.checks]}
                               for r in reports]}
        print(_dump(payload), file=out)
    else:
        for r in reports:
            print("\n".join(r.lines()), file=out)
        if not failed:
            applicable = [r for r in reports if r.applicable]
            print("all PASS" if applicable else "NotApplicable", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def _morphism_json(mor) -> dict:
    return {"source": mor.source.label, "target": mor.target.label,
            "map": list(mor.map), "verified": mor.check()}


def cmd_iso(cfg: RunConfig, out) -> int:
    results: list[dict] = []
    if cfg.prop41 is not None:
        n, k = cfg.prop41
        results.append(dict(_morphism_json(prop41_map(n, k)), kind="prop41"))
    if cfg.prop42 is not None:
        mor = prop42_map(cfg.prop42)
        involution = all(mor.map[mor.map[a]] == a for a in range(len(mor.map)))
        results.append(dict(_morphism_json(mor), kind="prop42", involution=involution))
    if cfg.specs:
        if len(cfg.specs) != 2:
            raise RackError("iso needs exactly two rack specs")
        X, Y = (_load_rack(s, cfg) for s in cfg.specs)
        found = find_isomorphism(X, Y)
        if found:
            results.append(dict(_morphism_json(found), kind="search"))
        else:
            results.append({"kind": "search", "source": X.label, "target": Y.label,
                            "isomorphic": False, "reason": found.reason, "nodes": found.nodes})
    if not results:
        raise RackError("iso needs two specs, --prop41 n k or --prop42 n")
    if cfg.fmt == "json":
        print(_dump(results), file=out)
    else:
        for r in results:
            if r.get("isomorphic") is False:
                print(f"{r['source']} vs {r['target']}: NOT-ISOMORPHIC ({r['reason']})", file=out)
                continue
            status = "VERIFIED" if r["verified"] else "FAILED"
            print(f"{r['kind']}: {r['source']} -> {r['target']}", file=out)
            print("  f = " + " ".join(f"{a}->{b}" for a, b in enumerate(r["map"])), file=out)
            if "involution" in r:
                print(f"  involution: {'yes' if r['involution'] else 'no'}", file=out)
            print(f"  {status}", file=out)
    return EXIT_OK if all(r.get("verified", True) for r in results) else EXIT_FAIL


def cmd_orbits(cfg: RunConfig, out) -> int:
    rack = _load_rack(cfg.specs[0], cfg)
    report = homogeneity_report(rack)
    if cfg.fmt == "json":
        print(_dump(report), file=out)
    else:
        print(f"rack {report['rack']}: order {report['size']}, "
              f"{'quandle' if report['quandle'] else 'not a quandle'}, m = {report['m']}", file=out)
        for k, orb in enumerate(report["orbits"]):
            extra = f"  N = {report['N'][k]}" if report["homogeneous"] else ""
            print(f"  orbit {k}: {{{', '.join(map(str, orb))}}}{extra}", file=out)
        if report["homogeneous"]:
            print("homogeneous orbits: yes", file=out)
        else:
            w = report["witness"]
            a, b, b2 = w["a"], w["b"], w["b'"]
            n1, n2 = w["N(a,b)"], w["N(a,b')"]
            print(f"homogeneous orbits: no (N({a},{b}) = {n1}, N({a},{b2}) = {n2})", file=out)
    return EXIT_OK


COMMANDS = {
    "homology": cmd_homology,
    "table1": cmd_table1,
    "verify": cmd_verify,
    "iso": cmd_iso,
    "orbits": cmd_orbits,
}


def _csv(text: str, conv=str) -> list:
    return [conv(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rackhom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=True):
        if degree:
            p.add_argument("-n", dest="max_degree", type=int, default=3, help="maximum degree")
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--max-basis", type=int, default=DEFAULT_MAX_BASIS)
        p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)

    p = sub.add_parser("homology", help="integral and mod-p homology")
    p.add_argument("spec")
    p.add_argument("-W", dest="variants", action="append",
                   help="R, D, Q or L; repeat or comma-separate (default Q)")
    p.add_argument("-p", dest="primes", default="", help="comma-separated primes")
    common(p)

    p = sub.add_parser("table1", help="recompute the table of quandle homology groups")
    p.add_argument("--only", action="append", default=[], help="row label or spec")
    common(p, degree=False)

    p = sub.add_parser("verify", help="run theorem and identity suites")
    p.add_argument("spec")
    p.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    common(p)

    p = sub.add_parser("iso", help="isomorphism search and explicit isomorphisms")
    p.add_argument("specs", nargs="*")
    p.add_argument("--prop41", nargs=2, type=int, metavar=("N", "K"))
    p.add_argument("--prop42", type=int, metavar="N")
    common(p, degree=False)

    p = sub.add_parser("orbits", help="orbit partition and homogeneity")
    p.add_argument("spec")
    common(p, degree=False)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    variants = []
    for v in getattr(ns, "variants", None) or ["Q"]:
        variants += _csv(v)
    specs = getattr(ns, "specs", None)
    if specs is None:
        specs = [ns.spec] if getattr(ns, "spec", None) else []
    try:
        primes = _csv(getattr(ns, "primes", ""), int)
    except ValueError:
        raise RackError(f"bad prime list {ns.primes!r}") from None
    return RunConfig(
        command=ns.command, specs=list(specs), variants=variants,
        max_degree=getattr(ns, "max_degree", 3), primes=primes, fmt=ns.fmt,
        jobs=ns.jobs, max_basis=ns.max_basis, max_size=ns.max_size,
        only=getattr(ns, "only", []), suite=getattr(ns, "suite", "all"),
        prop41=tuple(ns.prop41) if getattr(ns, "prop41", None) else None,
        prop42=getattr(ns, "prop42", None),
    )


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg, out)
    except ResourceCapExceeded as e:
        print(f"error: resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (RackError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
