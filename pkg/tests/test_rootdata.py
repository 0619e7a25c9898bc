from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from liecomm.homology import FinAbGroup
from liecomm.rootdata import (
    FaceIndex,
    LieType,
    LieTypeError,
    build_root_datum,
    dynkin_index,
    lattice_quotient,
    n_vee,
    zeta_class,
)

# acceptance data: full coroot-integer tuples in Bourbaki node order
KNOWN_COROOT_INTEGERS = {
    "A3": (1, 1, 1, 1),
    "B4": (1, 1, 2, 2, 1),
    "C4": (1, 1, 1, 1, 1),
    "D5": (1, 1, 2, 2, 1, 1),
    "E6": (1, 1, 2, 2, 3, 2, 1),
    "E7": (1, 2, 2, 3, 4, 3, 2, 1),
    "E8": (1, 2, 3, 4, 6, 5, 4, 3, 2),
    "F4": (1, 2, 3, 2, 1),
    "G2": (1, 1, 2),
}

# acceptance data: characteristic degrees
KNOWN_DEGREES = {
    "A4": (2, 3, 4, 5),
    "B4": (2, 4, 6, 8),
    "C3": (2, 4, 6),
    "D4": (2, 4, 4, 6),
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


class TestLieType:
    def test_aliases(self):
        assert LieType.parse("SU(5)") == LieType("A", 4)
        assert LieType.parse("Sp(3)") == LieType("C", 3)
        assert LieType.parse("Sp(1)") == LieType("A", 1)
        assert LieType.parse("Spin(3)") == LieType("A", 1)
        assert LieType.parse("Spin(9)") == LieType("B", 4)
        assert LieType.parse("Spin(10)") == LieType("D", 5)
        assert LieType.parse("e_7") == LieType("E", 7)

    def test_canonicalization(self):
        assert LieType("B", 2).canonical() == LieType("C", 2)
        assert LieType("D", 3).canonical() == LieType("A", 3)
        assert build_root_datum("Spin(5)").lie_type == LieType("C", 2)
        assert build_root_datum("Spin(6)").lie_type == LieType("A", 3)

    @pytest.mark.parametrize("bad", ["E5", "F5", "G3", "A0", "D2", "Spin(4)", "SU(1)", "H3"])
    def test_inadmissible(self, bad):
        with pytest.raises(LieTypeError):
            LieType.parse(bad)


class TestRootDatum:
    @pytest.mark.parametrize("name,expected", sorted(KNOWN_COROOT_INTEGERS.items()))
    def test_coroot_integers(self, name, expected):
        assert build_root_datum(name).coroot_integers == expected

    @pytest.mark.parametrize("name,expected", sorted(KNOWN_DEGREES.items()))
    def test_degrees(self, name, expected):
        assert build_root_datum(name).degrees == expected

    @pytest.mark.parametrize("name", ["A5", "B3", "C4", "D6", "E7", "F4", "G2"])
    def test_positive_root_count(self, name):
        datum = build_root_datum(name)
        r, h = datum.rank, datum.coxeter_number
        assert len(datum.positive_roots) == r * h // 2
        assert sum(d - 1 for d in datum.degrees) == len(datum.positive_roots)

    @pytest.mark.parametrize("name", ["A2", "C3", "F4", "G2", "E6"])
    def test_exponent_height_duality(self, name):
        # independent oracle: the root-height distribution is dual to the
        # exponent partition, so it re-derives the Coxeter eigenvalue angles
        datum = build_root_datum(name)
        heights = [sum(c) for c in datum.positive_roots]
        counts = {k: heights.count(k) for k in set(heights)}
        derived = tuple(
            sorted(max(k for k in counts if counts[k] >= j) for j in range(1, datum.rank + 1))
        )
        assert derived == tuple(sorted(datum.exponents))

    def test_theta_expansion_is_stored(self):
        datum = build_root_datum("F4")
        # -alpha0_vee expands with exactly the stored coroot integers
        assert datum.theta_vee == datum.coroot_integers[1:]
        assert datum.alpha0 == tuple(-c for c in datum.theta)

    def test_coroot_integer_sum_is_height_plus_one(self):
        for name in ("A3", "B4", "F4", "E7"):
            datum = build_root_datum(name)
            assert sum(datum.coroot_integers) == 1 + sum(datum.theta_vee)

    def test_symmetrizer_relation(self):
        datum = build_root_datum("F4")
        a, d = datum.cartan, datum.symmetrizer
        for i in range(4):
            for j in range(4):
                assert d[i] * a[i][j] == d[j] * a[j][i]
        assert all(x > 0 for x in d)

    def test_dynkin_index_prime_factorization(self):
        # lcm equals the product over primes of (p, or 4 at p=2 for rank-7/8 E)
        for name in ("A4", "B5", "E6", "E7", "E8", "F4", "G2"):
            datum = build_root_datum(name)
            primes = set()
            for n in datum.coroot_integers:
                for p in (2, 3, 5):
                    if n % p == 0:
                        primes.add(p)
            factor = 1
            for p in sorted(primes):
                if p == 2 and datum.lie_type.family == "E" and datum.lie_type.rank >= 7:
                    factor *= 4
                else:
                    factor *= p
            assert factor == dynkin_index(datum), name

    def test_json_dict(self):
        d = build_root_datum("G2").to_json_dict()
        assert d["coroot_integers"] == [1, 1, 2]
        assert d["weyl_order"] == 12


class TestFaceOperations:
    def test_face_index_validation(self):
        datum = build_root_datum("A2")
        with pytest.raises(ValueError):
            FaceIndex.of(datum, [0, 1, 2])  # not proper
        with pytest.raises(ValueError):
            FaceIndex.of(datum, [5])

    def test_n_vee_examples(self):
        datum = build_root_datum("E7")
        assert n_vee(datum, FaceIndex.of(datum, [])) == 1
        r = datum.rank
        for j in range(r + 1):
            face = FaceIndex.of(datum, set(range(r + 1)) - {j})
            assert n_vee(datum, face) == datum.coroot_integers[j]

    def test_zeta_singleton_complement(self):
        datum = build_root_datum("F4")
        r = datum.rank
        for j in range(1, r + 1):
            face = FaceIndex.of(datum, set(range(r + 1)) - {j})
            zeta = zeta_class(datum, face)
            assert zeta == tuple(
                Fraction(1 if i == j - 1 else 0) for i in range(r)
            )

    def test_zeta_g2(self):
        datum = build_root_datum("G2")
        face = FaceIndex.of(datum, [0])
        assert zeta_class(datum, face) == (Fraction(1), Fraction(2))

    @pytest.mark.parametrize("name", ["A2", "C3", "G2", "F4", "D4"])
    def test_zeta_integrality_and_coprimality(self, name):
        datum = build_root_datum(name)
        r = datum.rank
        for size in range(r + 1):
            for subset in combinations(range(r + 1), size):
                face = FaceIndex.of(datum, subset)
                nv = n_vee(datum, face)
                zeta = zeta_class(datum, face)
                scaled = [nv * c for c in zeta]
                assert all(c.denominator == 1 for c in scaled)
                extended = [datum.coroot_integers[i] // nv for i in face.complement()]
                assert gcd(*extended) == 1

    def test_lattice_quotient_examples(self):
        datum = build_root_datum("E6")
        full_minus = FaceIndex.of(datum, [])
        assert lattice_quotient(datum, full_minus) == (datum.rank, FinAbGroup.trivial())
        for j in range(datum.rank + 1):
            face = FaceIndex.of(datum, set(range(datum.rank + 1)) - {j})
            free, torsion = lattice_quotient(datum, face)
            assert free == 0
            assert torsion == FinAbGroup.cyclic(datum.coroot_integers[j])

    @pytest.mark.parametrize("name", ["E6", "F4", "G2"])
    def test_lattice_quotient_matches_gcd(self, name):
        datum = build_root_datum(name)
        r = datum.rank
        for size in range(r + 1):
            for subset in combinations(range(r + 1), size):
                face = FaceIndex.of(datum, subset)
                free, torsion = lattice_quotient(datum, face)
                assert free == r - size
                assert torsion == FinAbGroup.cyclic(n_vee(datum, face))
