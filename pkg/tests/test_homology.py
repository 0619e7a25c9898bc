import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecomm.homology import (
    ChainComplexError,
    FinAbGroup,
    chain_homology,
    smith_normal_form,
    snf_divisors,
    tensor_finab,
)


def _mat_mult(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _det(mat):
    # Bareiss, enough for unimodularity checks on small matrices
    a = [row[:] for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


class TestSmithNormalForm:
    def test_identity(self):
        u, d, v = smith_normal_form([[1, 0], [0, 1]])
        assert d == [[1, 0], [0, 1]]

    def test_diag_2_3(self):
        u, d, v = smith_normal_form([[2, 0], [0, 3]])
        assert [d[0][0], d[1][1]] == [1, 6]

    def test_zero(self):
        _, d, _ = smith_normal_form([[0, 0], [0, 0]])
        assert d == [[0, 0], [0, 0]]

    def test_transforms(self):
        m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
        u, d, v = smith_normal_form(m)
        assert _mat_mult(_mat_mult(u, m), v) == d
        assert abs(_det(u)) == 1 and abs(_det(v)) == 1
        diag = [d[i][i] for i in range(3)]
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0 or b == 0

    def test_divisors_fast_path_matches(self):
        m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
        _, d, _ = smith_normal_form(m)
        assert snf_divisors(m) == [d[i][i] for i in range(3) if d[i][i]]

    @given(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        ),
        st.permutations(range(3)),
        st.permutations(range(3)),
    )
    @settings(max_examples=60, deadline=None)
    def test_divisors_invariant_under_permutation(self, mat, rp, cp):
        permuted = [[mat[rp[i]][cp[j]] for j in range(3)] for i in range(3)]
        assert snf_divisors(mat) == snf_divisors(permuted)

    @given(
        st.lists(
            st.lists(st.integers(-20, 20), min_size=2, max_size=4),
            min_size=2,
            max_size=4,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1)
    )
    @settings(max_examples=60, deadline=None)
    def test_transform_identity_and_chain(self, mat):
        u, d, v = smith_normal_form(mat)
        assert _mat_mult(_mat_mult(u, mat), v) == d
        assert abs(_det(u)) == 1 and abs(_det(v)) == 1
        diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
        for a, b in zip(diag, diag[1:]):
            assert (b % a == 0) if a else b == 0
        assert snf_divisors(mat) == [x for x in diag if x]


class TestChainHomology:
    def test_circle(self):
        # one vertex, one edge, zero boundary
        h = chain_homology([np.zeros((1, 1), dtype=int)])
        assert h == [FinAbGroup.free(1), FinAbGroup.free(1)]

    def test_tetrahedron_boundary(self):
        from liecomm.simplicial import SimplicialComplex

        sphere = SimplicialComplex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
        assert sphere.homology() == [
            FinAbGroup.free(1),
            FinAbGroup.trivial(),
            FinAbGroup.free(1),
        ]

    def test_projective_plane(self):
        from liecomm.simplicial import SimplicialComplex

        rp2 = SimplicialComplex(
            [
                (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
            ]
        )
        assert rp2.homology() == [
            FinAbGroup.free(1),
            FinAbGroup.cyclic(2),
            FinAbGroup.trivial(),
        ]

    def test_compose_check(self):
        with pytest.raises(ChainComplexError):
            chain_homology([np.array([[1]]), np.array([[1]])])


class TestFinAbGroup:
    def test_divisor_chain_normalization(self):
        g = FinAbGroup.from_divisors([6, 4])
        assert g.torsion == (2, 12)

    def test_tensor_examples(self):
        z2 = FinAbGroup.cyclic(2)
        z3 = FinAbGroup.cyclic(3)
        assert tensor_finab(z2, z2) == z2
        assert tensor_finab(z2, z3) == FinAbGroup.trivial()
        klein = FinAbGroup(0, (2, 2))
        assert tensor_finab(klein, klein) == FinAbGroup(0, (2, 2, 2, 2))

    def test_tensor_with_free_part(self):
        g = FinAbGroup(2, (3,))
        h = FinAbGroup(1, (6,))
        # (Z^2 + Z/3) (x) (Z + Z/6) = Z^2 + (Z/6)^2 + (Z/3)^1 + Z/3
        assert tensor_finab(g, h) == FinAbGroup.from_divisors([6, 6, 3, 3], 2)

    @given(
        st.lists(st.integers(2, 12), max_size=3),
        st.lists(st.integers(2, 12), max_size=3),
    )
    @settings(max_examples=50, deadline=None)
    def test_tensor_commutative(self, da, db):
        a = FinAbGroup.from_divisors(da)
        b = FinAbGroup.from_divisors(db)
        assert tensor_finab(a, b) == tensor_finab(b, a)

    def test_invalid_chain_rejected(self):
        with pytest.raises(ValueError):
            FinAbGroup(0, (4, 2))
        with pytest.raises(ValueError):
            FinAbGroup(0, (1,))

    def test_str(self):
        assert str(FinAbGroup.trivial()) == "0"
        assert str(FinAbGroup(1, (2, 4))) == "Z + Z/2 + Z/4"
        assert str(FinAbGroup.free(3)) == "Z^3"

    def test_order_and_cyclic(self):
        assert FinAbGroup.cyclic(6).order() == 6
        assert FinAbGroup.cyclic(6).is_cyclic
        assert not FinAbGroup(0, (2, 2)).is_cyclic
        with pytest.raises(ValueError):
            FinAbGroup.free(1).order()
