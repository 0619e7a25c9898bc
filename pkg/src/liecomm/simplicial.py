"""Brute-force simplicial topology: triangulated tori, subdivision, quotients.

The n-torus is triangulated by the monotone-path simplices of the half-integer
grid.  Coordinate inversion fixes every grid vertex but is only simplicial
after one barycentric subdivision (it is affine on each closed cell), so
``torus_triangulation`` returns the subdivided complex together with the
induced involution on its vertices.  Quotients check the strong regularity
condition at runtime and refuse to proceed when it fails.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product
from math import floor
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .homology import FinAbGroup, chain_homology


class RegularityError(ValueError):
    """The involution is not regular on this complex; subdivide further."""


class SimplicialError(ValueError):
    """Malformed complex or non-simplicial vertex map."""


class SimplicialComplex:
    """An abstract simplicial complex given by its maximal simplices."""

    def __init__(self, facets: Iterable[Sequence[Hashable]]):
        cleaned = set()
        for f in facets:
            listed = tuple(f)
            face = tuple(sorted(set(listed)))
            if len(face) != len(listed):
                raise SimplicialError(f"facet {listed!r} repeats a vertex")
            cleaned.add(face)
        # drop facets that are faces of larger ones
        facets_sorted = sorted(cleaned, key=len, reverse=True)
        kept: list[tuple] = []
        seen_faces: set[tuple] = set()
        for f in facets_sorted:
            if f in seen_faces:
                continue
            kept.append(f)
            for size in range(1, len(f) + 1):
                seen_faces.update(combinations(f, size))
        self.facets: tuple[tuple, ...] = tuple(sorted(kept))
        if not self.facets:
            raise SimplicialError("complex must have at least one simplex")

    @cached_property
    def faces_by_dim(self) -> list[list[tuple]]:
        top = max(len(f) for f in self.facets) - 1
        levels: list[set[tuple]] = [set() for _ in range(top + 1)]
        for f in self.facets:
            for size in range(1, len(f) + 1):
                levels[size - 1].update(combinations(f, size))
        return [sorted(level) for level in levels]

    @cached_property
    def face_set(self) -> set[tuple]:
        out: set[tuple] = set()
        for level in self.faces_by_dim:
            out.update(level)
        return out

    @property
    def vertices(self) -> tuple:
        return tuple(v for (v,) in self.faces_by_dim[0])

    @property
    def dimension(self) -> int:
        return len(self.faces_by_dim) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.faces_by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def boundary_matrices(self) -> list[np.ndarray]:
        """Boundary matrices [d_1, ..., d_top] over the sorted face bases."""
        levels = self.faces_by_dim
        index = [{face: i for i, face in enumerate(level)} for level in levels]
        mats = []
        if len(levels) == 1:
            return [np.zeros((len(levels[0]), 0), dtype=np.int64)]
        for k in range(1, len(levels)):
            mat = np.zeros((len(levels[k - 1]), len(levels[k])), dtype=np.int64)
            for col, face in enumerate(levels[k]):
                for i in range(k + 1):
                    sub = face[:i] + face[i + 1 :]
                    mat[index[k - 1][sub], col] = (-1) ** i
            mats.append(mat)
        return mats

    def homology(self) -> list[FinAbGroup]:
        return chain_homology(self.boundary_matrices())


def barycentric_subdivide(
    complex_: SimplicialComplex,
    involution: Mapping[Hashable, Hashable] | None = None,
):
    """Barycentric subdivision; vertices of the result are faces of the input.

    With an involution given, returns (subdivision, transported involution);
    otherwise returns just the subdivision.  Labels are re-encoded as integers
    in a deterministic order.
    """
    faces = sorted(complex_.face_set, key=lambda f: (len(f), f))
    label = {f: i for i, f in enumerate(faces)}
    new_facets = []
    for facet in complex_.facets:
        for perm in permutations(facet):
            chain = []
            for k in range(1, len(perm) + 1):
                chain.append(label[tuple(sorted(perm[:k]))])
            new_facets.append(tuple(chain))
    sd = SimplicialComplex(new_facets)
    if involution is None:
        return sd
    new_inv = {}
    for f in faces:
        image = tuple(sorted(involution[v] for v in f))
        if image not in label:
            raise SimplicialError("involution is not simplicial on the input complex")
        new_inv[label[f]] = label[image]
    return sd, new_inv


def check_involution_regular(
    complex_: SimplicialComplex, involution: Mapping[Hashable, Hashable]
) -> None:
    """Verify the strong regularity condition for a simplicial involution.

    For every simplex {v_i} and every mixed image {g_i v_i} that again spans a
    simplex there must be a single group element realizing it.  Violations
    raise RegularityError with the offending simplex.
    """
    verts = set(complex_.vertices)
    if set(involution) != verts:
        raise SimplicialError("involution must be defined exactly on the vertices")
    for v in verts:
        if involution[involution[v]] != v:
            raise SimplicialError("vertex map is not an involution")
    face_set = complex_.face_set
    for face in face_set:
        image = tuple(sorted(involution[v] for v in face))
        if len(set(image)) != len(face) or image not in face_set:
            raise SimplicialError("involution is not simplicial")
    for face in face_set:
        k = len(face)
        fixed = [involution[v] == v for v in face]
        for bits in product((0, 1), repeat=k):
            if all(bits) or not any(bits):
                continue
            mixed = {involution[v] if b else v for v, b in zip(face, bits)}
            if tuple(sorted(mixed)) not in face_set:
                continue
            swapped_fixed = all(f for f, b in zip(fixed, bits) if b)
            kept_fixed = all(f for f, b in zip(fixed, bits) if not b)
            if not (swapped_fixed or kept_fixed):
                raise RegularityError(
                    f"simplex {face} violates regularity; "
                    "apply barycentric_subdivide and retry"
                )


def quotient_by_involution(
    complex_: SimplicialComplex, involution: Mapping[Hashable, Hashable]
) -> SimplicialComplex:
    """Orbit complex of a regular simplicial involution.

    Checks the regularity condition first and raises RegularityError (asking
    for further subdivision) when it fails; under regularity the orbit complex
    triangulates the topological quotient.
    """
    check_involution_regular(complex_, involution)

    def rep(v):
        w = involution[v]
        return v if v <= w else w

    new_facets = []
    for facet in complex_.facets:
        image = tuple(sorted(rep(v) for v in facet))
        if len(set(image)) != len(facet):
            raise RegularityError("orbit map collapses a simplex")
        new_facets.append(image)
    return SimplicialComplex(new_facets)


# ---------------------------------------------------------------------------
# Triangulated tori with the inversion involution
# ---------------------------------------------------------------------------

_HALF = Fraction(1, 2)


def _canonical_cell(points: Iterable[tuple[Fraction, ...]]) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical lift of a geometric cell of the torus.

    Cells have per-axis spread at most 1/2, so translating away the floor of
    the per-axis minimum picks a unique representative.
    """
    pts = [tuple(p) for p in points]
    n = len(pts[0])
    shift = []
    for i in range(n):
        m = min(p[i] for p in pts)
        shift.append(Fraction(floor(m)))
    return tuple(sorted(tuple(p[i] - shift[i] for i in range(n)) for p in pts))


def _torus_cells(n: int):
    """All cells of the monotone-path triangulation on the half-integer grid.

    Returns (cells, top_cells) where cells maps a canonical cell to its id and
    top_cells lists the top simplices as tuples of unreduced grid points.
    """
    corners = product((Fraction(0), _HALF), repeat=n)
    tops = []
    for corner in corners:
        for perm in permutations(range(n)):
            pts = [tuple(corner)]
            cur = list(corner)
            for axis in perm:
                cur[axis] += _HALF
                pts.append(tuple(cur))
            tops.append(tuple(pts))
    cell_forms = set()
    for top in tops:
        for size in range(1, n + 2):
            for sub in combinations(top, size):
                cell_forms.add(_canonical_cell(sub))
    ordered = sorted(cell_forms, key=lambda c: (len(c), c))
    cells = {form: i for i, form in enumerate(ordered)}
    return cells, tops


def torus_triangulation(n: int):
    """Triangulated n-torus with the coordinate-inversion vertex involution.

    Returns (complex, involution).  The complex is the barycentric subdivision
    of the half-grid monotone-path triangulation: its vertices are the
    geometric cells, on which inversion acts simplicially.
    """
    if not 1 <= n <= 3:
        raise ValueError("torus triangulation is supported for 1 <= n <= 3")
    cells, tops = _torus_cells(n)
    facets = []
    for top in tops:
        for perm in permutations(top):
            chain = []
            for k in range(1, len(perm) + 1):
                chain.append(cells[_canonical_cell(perm[:k])])
            facets.append(tuple(chain))
    complex_ = SimplicialComplex(facets)
    involution = {}
    for form, idx in cells.items():
        negated = _canonical_cell(tuple(tuple(-x for x in p) for p in form))
        involution[idx] = cells[negated]
    for idx, jdx in involution.items():
        if involution[jdx] != idx:
            raise ArithmeticError("inversion transport failed to be an involution")
    return complex_, involution


def torus_inversion_quotient(n: int, max_extra_subdivisions: int = 2):
    """Quotient of the triangulated n-torus by inversion.

    Subdivides further only if the runtime regularity check demands it (one
    subdivision is already built into torus_triangulation and suffices: two
    opposite half-grid cubes of the torus meet only in grid vertices).
    Returns (quotient complex, number of extra subdivisions used).
    """
    complex_, involution = torus_triangulation(n)
    for extra in range(max_extra_subdivisions + 1):
        try:
            return quotient_by_involution(complex_, involution), extra
        except RegularityError:
            if extra == max_extra_subdivisions:
                raise
            complex_, involution = barycentric_subdivide(complex_, involution)
    raise RegularityError("unreachable")
