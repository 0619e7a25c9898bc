"""The acceptance suite: one callable per criterion, shared by pytest and the CLI.

Each criterion raises AssertionError on failure and returns a short detail
string on success; run_all collects results with timings.  The stated runtime
budgets are asserted along with the mathematical content.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Callable

from . import alcove, geom, invariants, simplicial, weyl, wps
from .homology import FinAbGroup
from .rootdata import (
    FaceIndex,
    LieType,
    build_root_datum,
    dynkin_index,
    lattice_quotient,
    n_vee,
)


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _table_types() -> list[LieType]:
    out = [LieType("A", r) for r in range(1, 9)]
    out += [LieType("B", r) for r in range(2, 9)]
    out += [LieType("C", r) for r in range(2, 9)]
    out += [LieType("D", r) for r in range(3, 9)]
    out += [LieType("E", r) for r in (6, 7, 8)]
    out += [LieType("F", 4), LieType("G", 2)]
    return out


def _canonical_types(max_rank: int) -> list[LieType]:
    seen = set()
    out = []
    for lt in _table_types():
        c = lt.canonical()
        if c.rank <= max_rank and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _expected_table(lt: LieType) -> tuple[set[int], int]:
    fam, r = lt.family, lt.rank
    if fam in ("A", "C") or (fam == "B" and r == 2) or (fam == "D" and r == 3):
        return {1}, 1
    if fam in ("B", "D"):
        return {1, 2}, 2
    if fam == "G":
        return {1, 2}, 2
    if fam == "F" or (fam == "E" and r == 6):
        return {1, 2, 3}, 6
    if fam == "E" and r == 7:
        return {1, 2, 3, 4}, 12
    return {1, 2, 3, 4, 5, 6}, 60  # E8


def criterion_coroot_tables(**_) -> str:
    """1. Coroot integers and Dynkin indices match the tabulated values."""
    start = time.perf_counter()
    for lt in _table_types():
        datum = build_root_datum(lt)
        expected_set, expected_lcm = _expected_table(lt)
        assert set(datum.coroot_integers) == expected_set, lt.name
        assert dynkin_index(datum) == expected_lcm, lt.name
        assert lcm(*datum.coroot_integers) == expected_lcm, lt.name
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.2f}s, budget 1s"
    return f"{len(_table_types())} types checked in {elapsed:.2f}s"


def criterion_molien(**_) -> str:
    """2. Poincare coefficients: [t^0]=1, [t^1]=0, [t^2]=C(n,2), nonnegative."""
    start = time.perf_counter()
    cases = 0
    for lt in _canonical_types(4):
        group = weyl.generate(build_root_datum(lt))
        for n in range(1, 5):
            coeffs = weyl.molien_poincare(group, n, 3)
            assert coeffs[0] == 1 and coeffs[1] == 0, (lt.name, n)
            assert coeffs[2] == comb(n, 2), (lt.name, n)
            assert all(c >= 0 for c in coeffs), (lt.name, n)
            cases += 1
    a1 = weyl.generate(build_root_datum(LieType("A", 1)))
    assert weyl.molien_poincare(a1, 2, 3) == [1, 0, 1, 2]
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.2f}s, budget 10s"
    return f"{cases} (type, n) cases in {elapsed:.2f}s"


def criterion_irreducibility(rank_cap: int = 6, **_) -> str:
    """3. (1/|W|) sum of squared traces equals 1 for every enumerable type."""
    start = time.perf_counter()
    types = _canonical_types(min(rank_cap, 6))
    for lt in types:
        group = weyl.generate(build_root_datum(lt))
        assert weyl.irreducibility_check(group) == Fraction(1), lt.name
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"took {elapsed:.2f}s, budget 30s"
    return f"{len(types)} types (max order {max(build_root_datum(t).weyl_order for t in types)}) in {elapsed:.2f}s"


def criterion_lattice_quotient(rank_cap: int = 6, **_) -> str:
    """4. Smith-form lattice quotients match the gcd formula on every face."""
    from itertools import combinations

    checked = 0
    for lt in _canonical_types(min(rank_cap, 6)):
        datum = build_root_datum(lt)
        nodes = list(range(datum.rank + 1))
        for size in range(0, datum.rank + 1):
            for subset in combinations(nodes, size):
                face = FaceIndex.of(datum, subset)
                free, torsion = lattice_quotient(datum, face)
                nv = n_vee(datum, face)
                assert free == datum.rank - len(subset), (lt.name, subset)
                assert torsion == FinAbGroup.cyclic(nv), (lt.name, subset)
                checked += 1
    return f"{checked} (type, face) pairs, zero mismatches"


def criterion_prime_assembly(**_) -> str:
    """5. Product of degree-0 prime fragments equals the coroot-integer lcm."""
    for lt in _table_types():
        report = invariants.pi2_hom_pairs(lt)
        datum = build_root_datum(lt)
        assert report.quotient_degree == dynkin_index(datum), lt.name
        assert report.group == FinAbGroup.free(1), lt.name
        is_big_e = datum.lie_type.family == "E" and datum.lie_type.rank >= 7
        frag2 = invariants.bredon_e2_fragment(lt, 2, 0)
        if is_big_e:
            assert frag2 == FinAbGroup.cyclic(4), lt.name
        else:
            assert frag2.order() in (1, 2), lt.name
    assert invariants.pi2_hom_pairs("E7").quotient_degree == 12
    assert invariants.pi2_hom_pairs("G2").quotient_degree == 2
    assert invariants.pi2_hom_pairs("SU(5)").quotient_degree == 1
    return "all families assemble to the Dynkin index; Z/4 override fires only at rank-7/8 E"


def criterion_cell_census(**_) -> str:
    """6. Alternating cell counts match the Lefschetz averages for k = 1, 2, 3."""
    checked = 0
    for lt in _canonical_types(3):
        datum = build_root_datum(lt)
        group = weyl.generate(datum)
        geometry = alcove.alcove_geometry(datum)
        for k in (1, 2, 3):
            counts = weyl.cell_census(group, geometry, k)
            alternating = sum((-1) ** d * c for d, c in enumerate(counts))
            assert alternating == weyl.euler_char_rep(group, k), (lt.name, k)
            if k == 2:
                assert alternating == datum.rank + 1, lt.name
            checked += 1
    a1 = build_root_datum(LieType("A", 1))
    census = weyl.cell_census(weyl.generate(a1), alcove.alcove_geometry(a1), 2)
    assert census == [4, 4, 2], census
    return f"{checked} (type, k) censuses; rank-1 k=2 census is (4, 4, 2)"


def criterion_torus_quotient(**_) -> str:
    """7. Quotient torus homology matches the closed formula for n = 1, 2, 3."""
    start = time.perf_counter()
    details = []
    for n in (1, 2, 3):
        complex_, involution = simplicial.torus_triangulation(n)
        torus_h = complex_.homology()
        for k in range(n + 1):
            assert torus_h[k] == FinAbGroup.free(comb(n, k)), (n, k, str(torus_h[k]))
        quotient, extra = simplicial.torus_inversion_quotient(n)
        assert quotient.euler_characteristic() == 2 ** (n - 1), n
        qh = quotient.homology()
        assert qh[0] == FinAbGroup.free(1), n
        if n >= 1 and len(qh) > 1:
            assert qh[1] == FinAbGroup.trivial(), (n, str(qh[1]))
        expected_h2 = FinAbGroup.from_divisors(
            [2] * (2**n - 1 - n - comb(n, 2)), comb(n, 2)
        )
        actual_h2 = qh[2] if len(qh) > 2 else FinAbGroup.trivial()
        assert actual_h2 == expected_h2, (n, str(actual_h2))
        details.append(f"n={n}: H2={actual_h2} (+{extra} subdivisions)")
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"took {elapsed:.2f}s, budget 120s"
    return "; ".join(details) + f"; {elapsed:.1f}s"


def criterion_spin_stability(**_) -> str:
    """8. Spin stabilization degrees and pi_2 stability across the whole range."""
    for ell in range(4, 9):
        for k in range(0, 2 * ell - 6 + 1, 2):
            expected = 2 if k == 2 * ell - 6 else 1
            assert wps.spin_stability_degree(ell, "even", k) == expected, ("even", ell, k)
        for k in range(0, 2 * ell - 4 + 1, 2):
            expected = 2 if k == 2 * ell - 4 else 1
            assert wps.spin_stability_degree(ell, "odd", k) == expected, ("odd", ell, k)
        for k in (1, 3):
            report = wps.spin_stability_report(ell, "even", k)
            assert report["degree"] == 1 and report["zero_groups"], ("even", ell, k)
    assert wps.spin_stability_degree(3, "odd", 2) == 2  # the 5 -> 7 composite
    for m in range(5, 17):
        report = invariants.spin_pi2_stability(m)
        assert report.stable, m
    return "degrees for ell=4..8 both parities, the 5->7 composite, stability m=5..16"


def criterion_composite_degree(**_) -> str:
    """9. The rank-1 composite degree equals lcm of the weights for every node."""
    checked = 0
    for lt in _table_types():
        datum = build_root_datum(lt)
        weights = datum.coroot_integers
        target = lcm(*weights)
        for j in range(1, datum.rank + 1):
            assert wps.composite_su2_degree(weights, j) == target, (lt.name, j)
            checked += 1
    return f"{checked} (type, node) composites, all equal to the weight lcm"


def criterion_geometry(grid: int = 50, samples: int = 10_000, **_) -> str:
    """10. Generator and cocycle residuals within tolerance; degree is +-1."""
    start = time.perf_counter()
    beta_report = geom.beta_check(grid=grid)
    assert beta_report["seam_residual"] < 1e-12, beta_report
    assert beta_report["max_commutator"] < 1e-12, beta_report
    assert beta_report["degree"] in (1, -1), beta_report
    assert beta_report["degree_residue"] < 1e-3, beta_report
    assert beta_report["degree_refined"] == beta_report["degree"], beta_report
    assert beta_report["degree_refined_residue"] < 1e-3, beta_report
    cocycle_report = geom.cocycle_check(samples=samples)
    assert cocycle_report["cocycle_residual"] < 1e-12, cocycle_report
    assert cocycle_report["pairwise_commutator"] < 1e-12, cocycle_report
    assert cocycle_report["overlap_agreement"] < 1e-12, cocycle_report
    assert cocycle_report["clutching_residual"] < 1e-12, cocycle_report
    assert cocycle_report["min_extension_denominator"] > 0.1, cocycle_report
    assert cocycle_report["conjugation_residual"] < 1e-9, cocycle_report
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"took {elapsed:.2f}s, budget 60s"
    return (
        f"degree {beta_report['degree']} (residue {beta_report['degree_residue']:.1e}), "
        f"max residual {max(beta_report['seam_residual'], cocycle_report['cocycle_residual']):.1e}, "
        f"{elapsed:.1f}s"
    )


def criterion_theorem_tables(**_) -> str:
    """11. The n-tuple formulas, the extension quotients, and pi_4 values."""
    cases = 0
    for name in ("SU(3)", "SU(5)"):
        for n in range(1, 5):
            expected = FinAbGroup.free(comb(n, 2))
            assert invariants.pi2_hom_n(name, n) == expected, (name, n)
            cases += 1
    for name in ("Sp(1)", "Sp(2)", "Sp(3)"):
        for n in range(1, 5):
            expected = FinAbGroup.from_divisors(
                [2] * (2**n - 1 - n - comb(n, 2)), comb(n, 2)
            )
            assert invariants.pi2_hom_n(name, n) == expected, (name, n)
            cases += 1
    assert cases == 20
    so3 = invariants.h2_extension_semisimple(FinAbGroup.cyclic(2), 1)
    assert so3.quotient == FinAbGroup.cyclic(2) and not so3.has_forced_torsion
    pso = invariants.h2_extension_semisimple(FinAbGroup(0, (2, 2)), 1)
    assert pso.has_forced_torsion and pso.quotient == FinAbGroup(0, (2, 2, 2, 2))
    for lt in _table_types():
        ecom, bcom = invariants.pi4_commutative_classifying(lt)
        assert ecom == FinAbGroup.free(1) and bcom == FinAbGroup.free(2), lt.name
    return "20 n-tuple cases, both extension examples, pi_4 for all types"


CRITERIA: list[tuple[str, Callable[..., str]]] = [
    ("coroot-integer tables", criterion_coroot_tables),
    ("Poincare series low degrees", criterion_molien),
    ("irreducibility sum", criterion_irreducibility),
    ("lattice-quotient oracle", criterion_lattice_quotient),
    ("prime assembly equals Dynkin index", criterion_prime_assembly),
    ("cell census Euler identity", criterion_cell_census),
    ("torus quotient homology", criterion_torus_quotient),
    ("spin stability", criterion_spin_stability),
    ("rank-1 composite degree", criterion_composite_degree),
    ("geometry residuals and degree", criterion_geometry),
    ("theorem tables", criterion_theorem_tables),
]


def run_criterion(index: int, **options) -> CriterionResult:
    """Run a single acceptance criterion (1-based index)."""
    name, func = CRITERIA[index - 1]
    start = time.perf_counter()
    try:
        detail = func(**options)
        passed = True
    except Exception as exc:  # noqa: BLE001 - verdicts must not crash the table
        detail = f"{type(exc).__name__}: {exc}"
        passed = False
    return CriterionResult(index, name, passed, detail, time.perf_counter() - start)


def run_all(**options) -> list[CriterionResult]:
    return [run_criterion(i, **options) for i in range(1, len(CRITERIA) + 1)]
