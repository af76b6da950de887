"""Mechanical checks of the chain-level identities, grouped into named suites."""

from __future__ import annotations

from itertools import product

from .chains import (
    FormalChain,
    alpha,
    boundary,
    build_complex,
    degenerate,
    deg_projection,
    homotopy_D,
    phi,
    psi,
    r_shift,
)
from .homology import Check, TheoremReport, verify_main_theorem, verify_splitting
from .racks import FiniteRack, orbit_partition

__all__ = [
    "SUITES", "run_suite", "check_boundary_squared", "check_alpha",
    "check_homotopy", "check_phi_chain_maps", "check_psi", "check_r_shift",
    "homotopy_defect",
]


def _tuples(rack: FiniteRack, n: int):
    return product(range(rack.size), repeat=n)


def _record(report: TheoremReport, name: str, witness, count: int):
    report.checks.append(Check(
        name, witness is None,
        observed=f"{count} tuples checked" if witness is None else "counterexample",
        expected="identity on every tuple",
        witness="" if witness is None else f"tuple {witness}"))


def check_boundary_squared(rack: FiniteRack, max_degree: int) -> TheoremReport:
    report = TheoremReport(rack.label, "boundary-squared")
    variants = ("R", "D", "Q", "L") if rack.is_quandle else ("R",)
    for W in variants:
        cx = build_complex(rack, W, max_degree)
        for n in range(1, max_degree):
            prod_ = cx.boundary_matrix(n) @ cx.boundary_matrix(n + 1)
            witness = None if prod_.is_zero() else min(prod_.entries)
            report.checks.append(Check(
                f"d_{n} d_{n + 1} = 0 on C^{W}", prod_.is_zero(),
                f"{prod_.nnz} nonzero entries", "0",
                "" if witness is None else f"matrix entry {witness}"))
    return report


def check_alpha(rack: FiniteRack, max_degree: int) -> TheoremReport:
    """alpha is a chain map, kills C^D, and id - alpha is an idempotent onto C^D."""
    report = TheoremReport(rack.label, "alpha")
    if not rack.is_quandle:
        report.applicable, report.reason = False, "alpha needs a quandle"
        return report
    for n in range(1, max_degree + 1):
        bad = {"chain": None, "kills": None, "image": None, "idem": None}
        count = 0
        for T in _tuples(rack, n):
            count += 1
            c = FormalChain(n, {T: 1})
            a = alpha(rack, c)
            if n >= 2 and bad["chain"] is None and boundary(rack, a) != alpha(rack, boundary(rack, c)):
                bad["chain"] = T
            if degenerate(T) and a and bad["kills"] is None:
                bad["kills"] = T
            p = c - a
            if bad["image"] is None and not all(degenerate(S) for S in p.support()):
                bad["image"] = T
            if bad["idem"] is None and deg_projection(rack, p) != p:
                bad["idem"] = T
        if n >= 2:
            _record(report, f"d alpha = alpha d on C^R_{n}", bad["chain"], count)
        _record(report, f"alpha = 0 on C^D_{n}", bad["kills"], count)
        _record(report, f"c - alpha(c) in C^D_{n}", bad["image"], count)
        _record(report, f"(id - alpha)^2 = id - alpha on C^R_{n}", bad["idem"], count)
    return report


def homotopy_defect(rack: FiniteRack, j: int, T, sign: int = 1) -> FormalChain:
    """dD^j(T) + D^j d(T) - sign * (-1)^(j+1) * (|X| phi^(j-1)(T) - phi^j(T))."""
    n = len(T)
    c = FormalChain(n, {tuple(T): 1})
    lhs = boundary(rack, homotopy_D(rack, j, c))
    if n >= 1:
        lhs = lhs + homotopy_D(rack, j, boundary(rack, c))
    rhs = rack.size * phi(rack, j - 1, c) - phi(rack, j, c)
    s = sign * (1 if j % 2 else -1)
    return lhs - s * rhs


def check_homotopy(rack: FiniteRack, max_degree: int) -> TheoremReport:
    """D^j is a chain homotopy from phi^j to |X| phi^(j-1), with sign (-1)^(j+1).

    Runs over 0 <= n <= max_degree and 1 <= j <= n + 1.  If the signed
    identity fails, the opposite sign is also tried and reported.
    """
    report = TheoremReport(rack.label, "homotopy")
    for n in range(0, max_degree + 1):
        for j in range(1, n + 2):
            witness, count = None, 0
            for T in _tuples(rack, n):
                count += 1
                if homotopy_defect(rack, j, T):
                    witness = T
                    break
            name = f"dD^{j} + D^{j}d = (-1)^{j + 1}(|X| phi^{j - 1} - phi^{j}) on C^R_{n}"
            _record(report, name, witness, count)
            if witness is not None:
                flipped = not homotopy_defect(rack, j, witness, sign=-1)
                report.checks[-1].witness += "; opposite sign holds" if flipped else ""
    return report


def check_phi_chain_maps(rack: FiniteRack, max_degree: int) -> TheoremReport:
    report = TheoremReport(rack.label, "phi-chain-map")
    for n in range(1, max_degree + 1):
        for j in range(0, n + 2):
            witness, count = None, 0
            for T in _tuples(rack, n):
                count += 1
                c = FormalChain(n, {T: 1})
                if boundary(rack, phi(rack, j, c)) != phi(rack, j, boundary(rack, c)):
                    witness = T
                    break
            _record(report, f"d phi^{j} = phi^{j} d on C^R_{n}", witness, count)
    return report


def check_psi(rack: FiniteRack, max_degree: int) -> TheoremReport:
    """psi(pi(x)) = phi^n(x) and d psi = 0, for racks with homogeneous orbits."""
    report = TheoremReport(rack.label, "psi")
    part = orbit_partition(rack)
    if not part.homogeneous:
        report.applicable, report.reason = False, "orbits are not homogeneous"
        return report
    for n in range(1, max_degree + 1):
        witness, count = None, 0
        for T in _tuples(rack, n):
            count += 1
            w = tuple(part.orbit_of[x] for x in T)
            if psi(rack, w, part) != phi(rack, n, FormalChain(n, {T: 1})):
                witness = T
                break
        _record(report, f"psi pi = phi^{n} on C^R_{n}", witness, count)
        witness, count = None, 0
        for w in product(range(part.count), repeat=n):
            count += 1
            if boundary(rack, psi(rack, w, part)):
                witness = w
                break
        _record(report, f"d psi = 0 on orbit {n}-tuples", witness, count)
    return report


def check_r_shift(rack: FiniteRack, max_degree: int) -> TheoremReport:
    """r commutes with the boundary up to the sign of the degree shift (d r = -r d).

    Also checks that r is injective, C^D_n = im r + C^L_n, and that im r
    meets C^L_n exactly in r(C^D_{n-1}).
    """
    report = TheoremReport(rack.label, "r-shift")
    if not rack.is_quandle:
        report.applicable, report.reason = False, "r needs a quandle"
        return report
    for n in range(2, max_degree + 1):
        witness, count = None, 0
        for T in _tuples(rack, n - 1):
            count += 1
            c = FormalChain(n - 1, {T: 1})
            total = boundary(rack, r_shift(rack, c))
            if n >= 3:
                total = total + r_shift(rack, boundary(rack, c))
            if total:
                witness = T
                break
        _record(report, f"d r + r d = 0 into C^D_{n}", witness, count)
        image = {(T[0],) + T for T in _tuples(rack, n - 1)}
        injective = len(image) == rack.size ** (n - 1)
        deg = {T for T in _tuples(rack, n) if degenerate(T)}
        late = {T for T in deg if any(T[i] == T[i + 1] for i in range(1, n - 1))}
        r_deg = {(T[0],) + T for T in _tuples(rack, n - 1) if degenerate(T)}
        ok = injective and (image | late) == deg and (image & late) == r_deg
        report.checks.append(Check(
            f"C^D_{n} = im r + C^L_{n}, im r & C^L_{n} = r(C^D_{n - 1})", ok,
            "decomposition holds" if ok else "decomposition fails", "decomposition holds"))
    return report


def _chain_maps(rack: FiniteRack, max_degree: int) -> list[TheoremReport]:
    return [
        check_boundary_squared(rack, max_degree),
        check_alpha(rack, max_degree),
        check_phi_chain_maps(rack, max_degree),
        check_psi(rack, max_degree),
        check_r_shift(rack, max_degree),
    ]


def _splitting(rack: FiniteRack, max_degree: int) -> list[TheoremReport]:
    if not rack.is_quandle:
        return [TheoremReport(rack.label, "splitting", False, "needs a quandle")]
    return [verify_splitting(rack, max_degree)]


SUITES = {
    "main-theorem": lambda rack, n: [verify_main_theorem(rack, n)],
    "splitting": _splitting,
    "homotopy": lambda rack, n: [check_homotopy(rack, n)],
    "chain-maps": _chain_maps,
}


def run_suite(rack: FiniteRack, suite: str, max_degree: int) -> list[TheoremReport]:
    """Run one named suite, or ``all`` of them in a fixed order."""
    if suite == "all":
        out = []
        for name in SUITES:
            out += SUITES[name](rack, max_degree)
        return out
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[suite](rack, max_degree)
