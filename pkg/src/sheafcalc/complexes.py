"""Abstract simplicial complexes with exact simplicial homology.

Faces are tuples of vertex labels sorted under one global vertex order
fixed at construction; all matrix layouts list the k-faces in that
order, so signs and ranks are reproducible.  Input faces must already
be sorted; reordering silently would change every sign downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .poset import FinitePoset
from .rationals import RationalMatrix, decompose, rational


class SimplicialComplex:
    __slots__ = ("vertex_order", "faces", "_index")

    def __init__(self, vertex_order, faces):
        vertex_order = tuple(vertex_order)
        assert len(set(vertex_order)) == len(vertex_order)
        index = {v: i for i, v in enumerate(vertex_order)}
        faces = frozenset(tuple(f) for f in faces)
        for f in faces:
            assert f, "empty face"
            assert all(v in index for v in f)
            ranks = [index[v] for v in f]
            assert ranks == sorted(set(ranks)), f"face {f} not sorted"
        object.__setattr__(self, "vertex_order", vertex_order)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.vertex_order, self.faces) == (
            other.vertex_order, other.faces)

    def __hash__(self):
        return hash((self.vertex_order, self.faces))

    def __repr__(self):
        return (f"SimplicialComplex({len(self.vertex_order)} vertices, "
                f"{len(self.faces)} faces, dim {self.dimension()})")

    def dimension(self) -> int:
        assert self.faces, "empty complex has no dimension"
        return max(len(f) for f in self.faces) - 1

    def face_key(self, face):
        return tuple(self._index[v] for v in face)

    def k_faces(self, k: int):
        """The k-dimensional faces in the fixed order."""
        return sorted((f for f in self.faces if len(f) == k + 1),
                      key=self.face_key)

    def all_faces(self):
        return sorted(self.faces, key=lambda f: (len(f), self.face_key(f)))

    def has_face(self, face) -> bool:
        return tuple(face) in self.faces


@dataclass(frozen=True)
class Chain:
    dimension: int
    coefficients: tuple        # sorted (face, Rational) pairs

    @classmethod
    def of(cls, complex_: SimplicialComplex, k: int, coefficients):
        items = []
        for face, value in coefficients.items():
            face = tuple(face)
            assert complex_.has_face(face), f"{face} not a face"
            assert len(face) == k + 1, f"{face} is not {k}-dimensional"
            items.append((face, rational(value)))
        items.sort(key=lambda fv: complex_.face_key(fv[0]))
        return cls(k, tuple(items))

    def vector(self, complex_: SimplicialComplex) -> tuple:
        table = dict(self.coefficients)
        return tuple(table.get(f, rational(0))
                     for f in complex_.k_faces(self.dimension))


def validate_complex(faces, vertices=None,
                     strict: bool = False) -> SimplicialComplex:
    """Build a complex, completing the downward closure (default) or
    rejecting input that is not already closed (strict), naming the
    first missing face."""
    faces = [tuple(f) for f in faces]
    for f in faces:
        if not f:
            raise ValueError("empty face")
        if len(set(f)) != len(f):
            raise ValueError(f"duplicate vertices in face {f}")
        for v in f:
            if "," in v or "->" in v:
                raise ValueError(f"vertex label {v!r} uses reserved characters")
    if vertices is None:
        vertices = sorted({v for f in faces for v in f})
    else:
        vertices = list(vertices)
        known = set(vertices)
        for f in faces:
            for v in f:
                if v not in known:
                    raise ValueError(f"face vertex {v!r} not in vertex list")
    index = {v: i for i, v in enumerate(vertices)}
    for f in faces:
        ranks = [index[v] for v in f]
        if ranks != sorted(set(ranks)):
            raise ValueError(f"face {f} is not sorted by the vertex order")
    present = set(faces)
    closed = set(faces)
    for f in faces:
        for size in range(1, len(f)):
            for sub in combinations(f, size):
                if sub not in present:
                    if strict:
                        raise ValueError(
                            f"not closed: {sub} missing under {f}")
                    closed.add(sub)
    return SimplicialComplex(vertices, closed)


def face_name(complex_: SimplicialComplex, face) -> str:
    """Printable face identifier: concatenated when every vertex label
    is one character, comma-joined otherwise."""
    face = tuple(face)
    if all(len(v) == 1 for v in complex_.vertex_order):
        return "".join(face)
    return ",".join(face)


def face_poset(complex_: SimplicialComplex) -> FinitePoset:
    """Attachment order: a face sits below every face containing it."""
    faces = complex_.all_faces()
    names = {f: face_name(complex_, f) for f in faces}
    assert len(set(names.values())) == len(faces)
    pairs = [(names[a], names[b])
             for a in faces for b in faces if set(a) <= set(b)]
    return FinitePoset(names.values(), pairs)


def open_star(complex_: SimplicialComplex, face) -> frozenset:
    face = tuple(face)
    assert complex_.has_face(face)
    return frozenset(f for f in complex_.faces if set(face) <= set(f))


def incidence(complex_: SimplicialComplex, b, a) -> int:
    """[b:a] = 0 unless a arises from b by deleting one vertex, in
    which case the sign alternates with the deleted position."""
    b, a = tuple(b), tuple(a)
    assert complex_.has_face(b) and complex_.has_face(a)
    assert len(b) == len(a) + 1, "incidence needs a dimension gap of one"
    if not set(a) <= set(b):
        return 0
    missing = set(b) - set(a)
    assert len(missing) == 1
    n = b.index(missing.pop())
    return -1 if n % 2 else 1


def boundary_matrix(complex_: SimplicialComplex, k: int) -> RationalMatrix:
    assert 1 <= k <= complex_.dimension()
    rows = complex_.k_faces(k - 1)
    cols = complex_.k_faces(k)
    entries = []
    for a in rows:
        for b in cols:
            entries.append(incidence(complex_, b, a))
    return RationalMatrix(len(rows), len(cols), entries)


def homology_dims(complex_: SimplicialComplex):
    """dim H_k = dim ker d_k - rank d_{k+1} for k = 0..dim; d_0 is the
    zero map, so its kernel is all of C_0."""
    dim = complex_.dimension()
    kernel_dims = {0: len(complex_.k_faces(0))}
    ranks = {}
    for k in range(1, dim + 1):
        dec = decompose(boundary_matrix(complex_, k))
        kernel_dims[k] = len(dec.kernel_basis)
        ranks[k] = dec.rank
    ranks[dim + 1] = 0
    return [kernel_dims[k] - ranks[k + 1] for k in range(dim + 1)]
