"""Weyl groups as integer matrices on the coroot lattice.

Enumeration is a breadth-first closure over the simple reflections, batched
through numpy and stored in a canonical sorted order, so runs are
deterministic.  Molien/Poincare sums, trace statistics and Lefschetz averages
are evaluated per characteristic-polynomial bucket: both det(1 + t*w) and
det(1 - t^2*w) depend only on the characteristic polynomial of w.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm
from pathlib import Path
from typing import Sequence

import numpy as np

from .alcove import AlcoveGeometry, barycenter
from .rootdata import FaceIndex, RootDatum

WeylMatrix = tuple[tuple[int, ...], ...]

DEFAULT_ELEMENT_CAP = 100_000
HARD_ELEMENT_LIMIT = 10_000_000
CACHE_ENV_VAR = "LIECOMM_CACHE_DIR"
_CACHE_VERSION = 1


class WeylCapError(RuntimeError):
    """Full enumeration would exceed the element cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"enumeration needs {required} elements, above the cap {cap}; "
            "raise element_cap or use the formula-level operations"
        )


class ReductionError(RuntimeError):
    """Affine reduction failed to land in the alcove within the iteration cap."""


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """A fully enumerated Weyl group acting on coroot coordinates.

    matrices holds the canonically sorted element stack; it is the primary
    representation (int16 for the largest enumerations).  elements materializes
    the same data as nested tuples on demand.
    """

    datum: RootDatum
    matrices: np.ndarray
    charpoly_buckets: tuple[tuple[tuple[int, ...], int], ...]
    order: int

    @cached_property
    def elements(self) -> tuple[WeylMatrix, ...]:
        return tuple(
            tuple(tuple(int(x) for x in row) for row in mat)
            for mat in self.matrices.tolist()
        )

    @cached_property
    def _array(self) -> np.ndarray:
        return self.matrices.astype(np.int64)

    @cached_property
    def _index(self) -> dict[bytes, int]:
        return {m.tobytes(): i for i, m in enumerate(self._array)}

    @cached_property
    def identity_index(self) -> int:
        eye = np.eye(self.datum.rank, dtype=np.int64)
        return self._index[eye.tobytes()]

    @cached_property
    def _mult_table(self) -> np.ndarray:
        """table[i, j] = index of elements[i] @ elements[j]; small groups only."""
        if self.order > 20_000:
            raise WeylCapError(self.order, 20_000)
        arr = self._array
        idx = self._index
        table = np.empty((self.order, self.order), dtype=np.int32)
        for i in range(self.order):
            prods = arr[i] @ arr
            table[i] = [idx[p.tobytes()] for p in prods]
        return table

    @cached_property
    def _inverse(self) -> np.ndarray:
        table = self._mult_table
        inv = np.empty(self.order, dtype=np.int32)
        e = self.identity_index
        for i in range(self.order):
            inv[i] = int(np.nonzero(table[i] == e)[0][0])
        return inv

    @cached_property
    def _conjugation_table(self) -> np.ndarray:
        """conj[g, w] = index of g^-1 * w * g."""
        table = self._mult_table
        left = table[self._inverse]  # left[g, w] = g^-1 * w
        return table[left, np.arange(self.order, dtype=np.int32)[:, None]]


@dataclass(frozen=True)
class StabilizerSubgroup:
    """A subgroup of a Weyl group given by its member list."""

    group: WeylGroup
    indices: tuple[int, ...]
    face: FaceIndex | None = None

    @property
    def members(self) -> tuple[WeylMatrix, ...]:
        return tuple(self.group.elements[i] for i in self.indices)

    @property
    def order(self) -> int:
        return len(self.indices)


_MEMO: dict[tuple[str, int], WeylGroup] = {}


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "liecomm"


def _cache_path(datum: RootDatum, cache_dir: Path | None) -> Path:
    base = cache_dir if cache_dir is not None else default_cache_dir()
    return Path(base) / f"weyl_{datum.lie_type.name}_v{_CACHE_VERSION}.npz"


def _simple_reflection_matrices(datum: RootDatum) -> np.ndarray:
    r = datum.rank
    gens = np.empty((r, r, r), dtype=np.int64)
    for i in range(r):
        m = np.eye(r, dtype=np.int64)
        m[i, :] -= np.array(datum.cartan[i], dtype=np.int64)
        gens[i] = m
    return gens


def _charpolys_stack(arr: np.ndarray) -> np.ndarray:
    """Characteristic polynomials of a stack of integer matrices, ascending.

    Faddeev-LeVerrier with exact integer divisions; entries stay tiny because
    Weyl matrices have small coordinates.
    """
    n, r, _ = arr.shape
    a = arr.astype(np.int64)
    desc = np.zeros((n, r + 1), dtype=np.int64)
    desc[:, 0] = 1
    m = a.copy()
    eye = np.eye(r, dtype=np.int64)
    for k in range(1, r + 1):
        tr = np.trace(m, axis1=1, axis2=2)
        if np.any(tr % k):
            raise ArithmeticError("Faddeev-LeVerrier divisibility failed")
        c = -(tr // k)
        desc[:, k] = c
        if k == r:
            break
        m = a @ (m + c[:, None, None] * eye)
    return desc[:, ::-1]  # ascending: coefficient of x^0 first


def generate(
    datum: RootDatum,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    cache_dir: Path | None = None,
) -> WeylGroup:
    """Fully enumerate the Weyl group, deterministically sorted.

    Raises WeylCapError when the order (product of the degrees) exceeds
    element_cap, and unconditionally beyond HARD_ELEMENT_LIMIT; those types
    are served by the formula-level operations instead.
    """
    required = datum.weyl_order
    if required > element_cap or required > HARD_ELEMENT_LIMIT:
        raise WeylCapError(required, min(element_cap, HARD_ELEMENT_LIMIT))
    key = (datum.lie_type.family, datum.lie_type.rank)
    if key in _MEMO:
        return _MEMO[key]
    group = _load_cache(datum, cache_dir)
    if group is None:
        group = _enumerate(datum)
        if datum.rank >= 5:
            _save_cache(group, cache_dir)
    _MEMO[key] = group
    return group


def _bucket_charpolys(arr: np.ndarray, chunk: int = 200_000):
    """Characteristic-polynomial histogram, computed in bounded-memory chunks."""
    buckets: dict[tuple[int, ...], int] = {}
    for start in range(0, arr.shape[0], chunk):
        part = _charpolys_stack(arr[start : start + chunk].astype(np.int64))
        for row in part.tolist():
            key = tuple(row)
            buckets[key] = buckets.get(key, 0) + 1
    return tuple(sorted(buckets.items()))


def _enumerate(datum: RootDatum) -> WeylGroup:
    r = datum.rank
    if datum.rank >= 5:
        print(
            f"liecomm: enumerating the {datum.lie_type.name} Weyl group "
            f"({datum.weyl_order} elements)",
            file=sys.stderr,
        )
    # matrix entries are coroot coordinates of coroots, far inside int16 range
    dtype = np.int64 if datum.weyl_order <= 200_000 else np.int16
    gens = _simple_reflection_matrices(datum).astype(dtype)
    eye = np.eye(r, dtype=dtype)
    seen = {eye.tobytes()}
    chunks = [eye[None, :, :]]
    frontier = eye[None, :, :]
    while frontier.shape[0]:
        prods = np.einsum("fij,gjk->fgik", frontier, gens).reshape(-1, r, r)
        fresh = []
        for mat in prods:
            key = mat.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(mat)
        if not fresh:
            break
        frontier = np.stack(fresh)
        chunks.append(frontier)
    all_mats = np.concatenate(chunks, axis=0)
    del seen, chunks, frontier
    if all_mats.shape[0] != datum.weyl_order:
        raise ArithmeticError(
            f"enumeration found {all_mats.shape[0]} elements, expected {datum.weyl_order}"
        )
    flat = all_mats.reshape(all_mats.shape[0], r * r)
    order = np.lexsort(flat.T[::-1])
    arr = np.ascontiguousarray(all_mats[order])
    arr.setflags(write=False)
    return WeylGroup(datum, arr, _bucket_charpolys(arr), arr.shape[0])


def _save_cache(group: WeylGroup, cache_dir: Path | None) -> None:
    path = _cache_path(group.datum, cache_dir)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        keys = np.array([k for k, _ in group.charpoly_buckets], dtype=np.int64)
        counts = np.array([c for _, c in group.charpoly_buckets], dtype=np.int64)
        np.savez_compressed(
            path,
            version=np.int64(_CACHE_VERSION),
            order=np.int64(group.order),
            matrices=group.matrices.astype(np.int16),
            bucket_keys=keys,
            bucket_counts=counts,
        )
    except OSError:
        pass


def _load_cache(datum: RootDatum, cache_dir: Path | None) -> WeylGroup | None:
    path = _cache_path(datum, cache_dir)
    if not path.exists():
        return None
    try:
        with np.load(path) as data:
            if int(data["version"]) != _CACHE_VERSION:
                return None
            order = int(data["order"])
            mats = data["matrices"].astype(np.int64)
            keys = data["bucket_keys"]
            counts = data["bucket_counts"]
    except (OSError, KeyError, ValueError):
        return None
    if order != datum.weyl_order or mats.shape != (order, datum.rank, datum.rank):
        return None
    buckets = tuple(
        sorted((tuple(int(x) for x in k), int(c)) for k, c in zip(keys.tolist(), counts.tolist()))
    )
    if sum(c for _, c in buckets) != order:
        return None
    arr = mats if order <= 200_000 else mats.astype(np.int16)
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return WeylGroup(datum, arr, buckets, order)


# ---------------------------------------------------------------------------
# Truncated integer power series helpers
# ---------------------------------------------------------------------------


def _pmul(p: Sequence[int], q: Sequence[int], trunc: int) -> list[int]:
    out = [0] * (trunc + 1)
    for i, a in enumerate(p):
        if a == 0 or i > trunc:
            continue
        top = min(len(q) - 1, trunc - i)
        for j in range(top + 1):
            out[i + j] += a * q[j]
    return out


def _ppow(p: Sequence[int], n: int, trunc: int) -> list[int]:
    out = [1] + [0] * trunc
    for _ in range(n):
        out = _pmul(out, p, trunc)
    return out


def _pinv(p: Sequence[int], trunc: int) -> list[int]:
    if p[0] != 1:
        raise ValueError("series inversion needs constant term 1")
    out = [1] + [0] * trunc
    for k in range(1, trunc + 1):
        acc = 0
        for i in range(1, min(k, len(p) - 1) + 1):
            acc += p[i] * out[k - i]
        out[k] = -acc
    return out


def _det_one_plus_tw(charpoly: Sequence[int]) -> list[int]:
    """Coefficients of det(1 + t*w) from the ascending charpoly of w."""
    r = len(charpoly) - 1
    return [(-1) ** j * charpoly[r - j] for j in range(r + 1)]


def _det_one_minus_t2w(charpoly: Sequence[int]) -> list[int]:
    """Coefficients of det(1 - t^2*w) from the ascending charpoly of w."""
    r = len(charpoly) - 1
    out = [0] * (2 * r + 1)
    for j in range(r + 1):
        out[2 * j] = charpoly[r - j]
    return out


def molien_poincare(group: WeylGroup, n: int, max_deg: int) -> list[int]:
    """Coefficients of the Poincare series of the commuting-n-tuple space.

    prod(1 - t^(2 d_i)) / |W| * sum over W of det(1 + t*w)^n / det(1 - t^2*w),
    truncated at max_deg.  All coefficients are nonnegative integers.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    acc = [0] * (max_deg + 1)
    for charpoly, mult in group.charpoly_buckets:
        num = _ppow(_det_one_plus_tw(charpoly), n, max_deg)
        den_inv = _pinv(_det_one_minus_t2w(charpoly), max_deg)
        term = _pmul(num, den_inv, max_deg)
        for j in range(max_deg + 1):
            acc[j] += mult * term[j]
    prefactor = [1] + [0] * max_deg
    for d in group.datum.degrees:
        factor = [0] * (max_deg + 1)
        factor[0] = 1
        if 2 * d <= max_deg:
            factor[2 * d] = -1
        prefactor = _pmul(prefactor, factor, max_deg)
    acc = _pmul(acc, prefactor, max_deg)
    coeffs = []
    for c in acc:
        if c % group.order:
            raise ArithmeticError("Molien sum is not divisible by the group order")
        coeffs.append(c // group.order)
    if coeffs[0] != 1 or (max_deg >= 1 and coeffs[1] != 0) or any(c < 0 for c in coeffs):
        raise ArithmeticError("Poincare coefficients violate their invariants")
    return coeffs


def irreducibility_check(group: WeylGroup) -> Fraction:
    """(1/|W|) * sum of trace(w)^2; equals 1 exactly for every simple type."""
    r = group.datum.rank
    total = 0
    for charpoly, mult in group.charpoly_buckets:
        tr = -charpoly[r - 1]
        total += mult * tr * tr
    return Fraction(total, group.order)


def euler_char_rep(group: WeylGroup, k: int) -> int:
    """Lefschetz average (1/|W|) * sum of det(1 - w)^k.

    This is the Euler characteristic of the k-fold torus quotient; for k = 2
    it equals rank + 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    total = 0
    for charpoly, mult in group.charpoly_buckets:
        det1 = sum(charpoly)  # charpoly evaluated at 1 = det(1 - w)
        total += mult * det1**k
    if total % group.order:
        raise ArithmeticError("Lefschetz average is not an integer")
    return total // group.order


# ---------------------------------------------------------------------------
# Stabilizers, double cosets, cell census
# ---------------------------------------------------------------------------


def face_stabilizer(group: WeylGroup, geometry: AlcoveGeometry, face: FaceIndex) -> StabilizerSubgroup:
    """Elements fixing the face barycenter modulo the coroot lattice."""
    b = barycenter(geometry, face)
    denom = 1
    for c in b:
        denom = lcm(denom, c.denominator)
    vec = np.array([int(c * denom) for c in b], dtype=np.int64)
    moved = group._array @ vec - vec
    keep = np.nonzero((moved % denom == 0).all(axis=1))[0]
    return StabilizerSubgroup(group, tuple(int(i) for i in keep), face)


def trivial_subgroup(group: WeylGroup) -> StabilizerSubgroup:
    return StabilizerSubgroup(group, (group.identity_index,))


def full_subgroup(group: WeylGroup) -> StabilizerSubgroup:
    return StabilizerSubgroup(group, tuple(range(group.order)))


def double_cosets(
    group: WeylGroup, h: StabilizerSubgroup, k: StabilizerSubgroup
) -> list[WeylMatrix]:
    """Lexicographically least representatives of the double cosets H\\W/K."""
    if h.group is not group or k.group is not group:
        raise ValueError("subgroups must belong to the given Weyl group")
    table = group._mult_table
    hs = np.array(h.indices, dtype=np.int32)
    ks = np.array(k.indices, dtype=np.int32)
    seen = np.zeros(group.order, dtype=bool)
    reps = []
    for w in range(group.order):
        if seen[w]:
            continue
        reps.append(group.elements[w])
        hw = table[hs, w]
        orbit = table[hw[:, None], ks[None, :]]
        seen[orbit.reshape(-1)] = True
    return reps


def _all_faces(datum: RootDatum) -> list[FaceIndex]:
    nodes = range(datum.rank + 1)
    faces = []
    for bits in product((0, 1), repeat=datum.rank + 1):
        subset = frozenset(i for i in nodes if bits[i])
        if len(subset) <= datum.rank:
            faces.append(FaceIndex(subset, datum.rank))
    faces.sort(key=lambda f: (len(f.nodes), f.sorted_nodes()))
    return faces


def _fixed_coset_counts(group: WeylGroup, stab: StabilizerSubgroup) -> np.ndarray:
    """For each w: number of cosets g*W_sigma with w*g*W_sigma = g*W_sigma."""
    conj = group._conjugation_table
    member = np.zeros(group.order, dtype=bool)
    member[list(stab.indices)] = True
    counts = member[conj].sum(axis=0)
    if np.any(counts % stab.order):
        raise ArithmeticError("coset fixed-point count is not divisible")
    return counts // stab.order


def cell_census(group: WeylGroup, geometry: AlcoveGeometry, k: int) -> list[int]:
    """Cells per dimension of the k-fold torus quotient's face/coset structure.

    Cells are indexed by k-tuples of alcove faces together with diagonal
    W-orbits of the product of coset spaces; orbits are counted by Burnside
    averaging of the fixed-coset counts.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    datum = group.datum
    faces = _all_faces(datum)
    fixed = {f: _fixed_coset_counts(group, face_stabilizer(group, geometry, f)) for f in faces}
    counts = [0] * (k * datum.rank + 1)
    for combo in product(faces, repeat=k):
        dim = sum(f.dim for f in combo)
        acc = np.ones(group.order, dtype=np.int64)
        for f in combo:
            acc = acc * fixed[f]
        total = int(acc.sum())
        if total % group.order:
            raise ArithmeticError("Burnside average is not an integer")
        counts[dim] += total // group.order
    alternating = sum((-1) ** d * c for d, c in enumerate(counts))
    if alternating != euler_char_rep(group, k):
        raise ArithmeticError("cell census fails the Euler-characteristic identity")
    return counts


# ---------------------------------------------------------------------------
# Affine alcove reduction
# ---------------------------------------------------------------------------


def _as_fraction_vector(x: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in x)


def alcove_reduce(
    datum: RootDatum, x: Sequence, max_iter: int = 100_000
) -> tuple[tuple[Fraction, ...], WeylMatrix, tuple[int, ...]]:
    """Reduce a point into the fundamental alcove by wall reflections.

    Returns (point, w, q) with point = w*x + q, all alcove inequalities
    satisfied, w a Weyl matrix and q an integer coroot translation.
    """
    r = datum.rank
    y = list(_as_fraction_vector(x))
    if len(y) != r:
        raise ValueError(f"expected a vector of length {r}")
    w = [[Fraction(1 if i == j else 0) for j in range(r)] for i in range(r)]
    if datum.contains_in_alcove(y):
        identity = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
        return tuple(y), identity, tuple(0 for _ in range(r))
    # translate by the coroot lattice (integer vectors in this basis) first,
    # so the reflection walk starts from a bounded point
    q = [Fraction(-math.floor(c)) for c in y]
    y = [c + d for c, d in zip(y, q)]
    theta_vee = [Fraction(c) for c in datum.theta_vee]
    # theta as a functional on coroot coordinates: row vector theta . cartan
    theta_row = [
        sum(Fraction(datum.theta[i]) * datum.cartan[i][j] for i in range(r)) for j in range(r)
    ]

    def apply_linear(mat_rows: list[list[Fraction]]) -> None:
        nonlocal y, w, q
        y = [sum(mat_rows[i][j] * y[j] for j in range(r)) for i in range(r)]
        w = [[sum(mat_rows[i][j] * w[j][jj] for j in range(r)) for jj in range(r)] for i in range(r)]
        q = [sum(mat_rows[i][j] * q[j] for j in range(r)) for i in range(r)]

    for _ in range(max_iter):
        vals = [
            sum(Fraction(datum.cartan[j][jj]) * y[jj] for jj in range(r)) for j in range(r)
        ]
        theta_val = sum(Fraction(datum.theta[j]) * vals[j] for j in range(r))
        neg = next((j for j in range(r) if vals[j] < 0), None)
        if neg is not None:
            s = [
                [Fraction(1 if i == j else 0) - (Fraction(datum.cartan[neg][j]) if i == neg else 0) for j in range(r)]
                for i in range(r)
            ]
            apply_linear(s)
            continue
        if theta_val > 1:
            s_theta = [
                [Fraction(1 if i == j else 0) - theta_vee[i] * theta_row[j] for j in range(r)]
                for i in range(r)
            ]
            apply_linear(s_theta)
            for i in range(r):
                y[i] += theta_vee[i]
                q[i] += theta_vee[i]
            continue
        if any(c.denominator != 1 for row in w for c in row) or any(
            c.denominator != 1 for c in q
        ):
            raise ArithmeticError("reduction produced a non-integral transform")
        w_int = tuple(tuple(int(c) for c in row) for row in w)
        q_int = tuple(int(c) for c in q)
        x_frac = _as_fraction_vector(x)
        check = [
            sum(w_int[i][j] * x_frac[j] for j in range(r)) + q_int[i] for i in range(r)
        ]
        if check != y:
            raise ArithmeticError("reduction bookkeeping failed")
        return tuple(y), w_int, q_int
    raise ReductionError("alcove reduction did not terminate; input may be irrational")
