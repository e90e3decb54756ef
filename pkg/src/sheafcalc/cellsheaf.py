"""Cellular sheaves of rational vector spaces on simplicial complexes.

A sheaf stores one matrix per covering attachment (dimension gap one);
longer composites are derived on demand, which path independence makes
well defined.  Section propagation works face by face with exact linear
solving, so an inconsistent seed is pinned to the first face whose
constraint system dies, the way the worked obstruction example walks it.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .complexes import SimplicialComplex, face_name
from .rationals import RationalMatrix, block_assemble, decompose, rational, solve

__all__ = [
    "CellularSheaf",
    "Assignment",
    "SheafMorphism",
    "SheafReport",
    "SectionReport",
    "ExtendResult",
    "SectionSpace",
    "MorphismReport",
    "covering_pairs",
    "validate_sheaf",
    "composite_map",
    "is_global_section",
    "extend",
    "global_section_space",
    "direct_sum",
    "pullback",
    "check_morphism",
]


def covering_pairs(base: SimplicialComplex):
    """Attachment pairs (facet, face) with dimension gap one, in face order."""
    out = []
    for tau in base.all_faces():
        if len(tau) == 1:
            continue
        for i in range(len(tau)):
            out.append((tau[:i] + tau[i + 1:], tau))
    return out


@dataclass(frozen=True)
class CellularSheaf:
    """Stalk dimensions per face plus one matrix per covering attachment.

    A sheaf map for sigma < tau has shape dim(tau) x dim(sigma); a
    cosheaf reverses the arrows, so its matrix maps the tau stalk down
    and has the transposed shape.
    """

    base: SimplicialComplex
    stalk_dim: dict
    restriction: dict
    variance: str = "sheaf"

    def __post_init__(self):
        assert self.variance in ("sheaf", "cosheaf")
        for face in self.base.all_faces():
            dim = self.stalk_dim.get(face)
            assert isinstance(dim, int) and dim >= 0, \
                f"bad stalk dimension at {face}"
        covering = set(covering_pairs(self.base))
        for pair in self.restriction:
            assert pair in covering, f"not a covering attachment: {pair}"

    def expected_shape(self, sigma, tau):
        if self.variance == "sheaf":
            return self.stalk_dim[tau], self.stalk_dim[sigma]
        return self.stalk_dim[sigma], self.stalk_dim[tau]


@dataclass(frozen=True)
class Assignment:
    """Vectors on a subset of faces; partial assignments are allowed."""

    vectors: dict

    def __post_init__(self):
        clean = {face: tuple(rational(x) for x in vec)
                 for face, vec in self.vectors.items()}
        object.__setattr__(self, "vectors", clean)

    @property
    def support(self) -> frozenset:
        return frozenset(self.vectors)

    def __getitem__(self, face):
        return self.vectors[face]


@dataclass(frozen=True)
class SheafReport:
    ok: bool
    kind: Optional[str] = None  # missing-map | shape | path-independence
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class SectionReport:
    ok: bool
    violations: tuple = ()


@dataclass(frozen=True)
class ExtendResult:
    result: Optional[Assignment] = None
    obstruction: Optional[tuple] = None
    kind: Optional[str] = None  # no-consistent-value | conflicting-values
    detail: Optional[str] = None
    propagated: Optional[Assignment] = None

    @property
    def ok(self) -> bool:
        return self.result is not None


@dataclass(frozen=True)
class SectionSpace:
    dimension: int
    basis: tuple  # of Assignment


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    squares: tuple = ()  # failing (sigma, tau) attachments
    induced: tuple = ()  # images of the source section basis
    induced_ok: bool = True


def validate_sheaf(s: CellularSheaf, require_complete: bool = True) -> SheafReport:
    """Dimension check plus every path-independence square.

    With require_complete=False, attachments without a stored matrix are
    skipped instead of reported; partially specified sheaves (only a
    chain of maps given) can then still be checked for what they do say.
    """
    pairs = covering_pairs(s.base)
    usable = set()
    for sigma, tau in pairs:
        mat = s.restriction.get((sigma, tau))
        if mat is None:
            if require_complete:
                return SheafReport(False, "missing-map", (sigma, tau))
            continue
        want = s.expected_shape(sigma, tau)
        if (mat.rows, mat.cols) != want:
            return SheafReport(
                False, "shape", (sigma, tau, (mat.rows, mat.cols), want))
        usable.add((sigma, tau))

    for tau in s.base.all_faces():
        m = len(tau)
        if m < 3:
            continue
        for i in range(m):
            for j in range(i + 1, m):
                rho = tuple(v for k, v in enumerate(tau) if k not in (i, j))
                mid_a = tuple(sorted(rho + (tau[i],),
                                     key=s.base.vertex_order.index))
                mid_b = tuple(sorted(rho + (tau[j],),
                                     key=s.base.vertex_order.index))
                needed = [(rho, mid_a), (mid_a, tau), (rho, mid_b), (mid_b, tau)]
                if any(p not in usable for p in needed):
                    continue
                if s.variance == "sheaf":
                    route_a = s.restriction[(mid_a, tau)] @ s.restriction[(rho, mid_a)]
                    route_b = s.restriction[(mid_b, tau)] @ s.restriction[(rho, mid_b)]
                else:
                    route_a = s.restriction[(rho, mid_a)] @ s.restriction[(mid_a, tau)]
                    route_b = s.restriction[(rho, mid_b)] @ s.restriction[(mid_b, tau)]
                if route_a != route_b:
                    return SheafReport(
                        False, "path-independence", (rho, mid_a, mid_b, tau))
    return SheafReport(True)


def composite_map(s: CellularSheaf, rho, tau) -> RationalMatrix:
    """The derived map between nested faces, one covering step at a time.

    Path independence makes the choice of chain irrelevant; this one adds
    the missing vertices in complex order.
    """
    assert set(rho) <= set(tau), f"{rho} is not a face of {tau}"
    order = s.base.vertex_order.index
    out = RationalMatrix.identity(s.stalk_dim[rho])
    current = rho
    for v in sorted(set(tau) - set(rho), key=order):
        bigger = tuple(sorted(current + (v,), key=order))
        step = s.restriction[(current, bigger)]
        if s.variance == "sheaf":
            out = step @ out
        else:
            out = out @ step
        current = bigger
    return out


def _check_total(s: CellularSheaf, a: Assignment, faces):
    for face in faces:
        if face not in a.vectors:
            raise ValueError(f"assignment is partial: no value at {face}")
    _check_lengths(s, a)


def _check_lengths(s: CellularSheaf, a: Assignment):
    for face, vec in a.vectors.items():
        if not s.base.has_face(face):
            raise ValueError(f"unknown face {face}")
        if len(vec) != s.stalk_dim[face]:
            raise ValueError(
                f"dimension mismatch at {face}: got {len(vec)}, "
                f"stalk has {s.stalk_dim[face]}")


def is_global_section(s: CellularSheaf, a: Assignment) -> SectionReport:
    """Check every covering attachment, listing all violated pairs."""
    faces = s.base.all_faces()
    _check_total(s, a, faces)
    violations = []
    for sigma, tau in covering_pairs(s.base):
        mat = s.restriction[(sigma, tau)]
        if s.variance == "sheaf":
            expected = mat.apply(a[sigma])
            got = a[tau]
            where = tau
        else:
            expected = mat.apply(a[tau])
            got = a[sigma]
            where = sigma
        if expected != got:
            violations.append((sigma, tau, where, expected, got))
    return SectionReport(not violations, tuple(violations))


def _vertex_layout(s: CellularSheaf):
    offsets = {}
    total = 0
    for v in s.base.k_faces(0):
        offsets[v] = total
        total += s.stalk_dim[v]
    return offsets, total


def _vertex_rows(s: CellularSheaf, face, offsets, total):
    """The value at `face` as a matrix over concatenated vertex stalks."""
    v0 = (face[0],)
    comp = composite_map(s, v0, face)
    rows = []
    for r in range(comp.rows):
        row = [Fraction(0)] * total
        for c in range(comp.cols):
            row[offsets[v0] + c] = comp.entry(r, c)
        rows.append(row)
    return rows


def extend(s: CellularSheaf, seed: Assignment) -> ExtendResult:
    """Grow a partial assignment into a global section, or say why not.

    First the seed is tested globally: vertex data must lie in the kernel
    of the degree-zero coboundary and reproduce every seeded value.  If
    that system is solvable the solution is spread to all faces.  If not,
    determined values are propagated breadth-first from the seed until
    some face's exact linear system dies, and that face is reported: with
    kind "no-consistent-value" when the newest constraint alone is
    already unsolvable, "conflicting-values" when only the combination is.
    """
    assert s.variance == "sheaf"
    report = validate_sheaf(s)
    assert report.ok, report
    _check_lengths(s, seed)

    from .cohomology import coboundary

    offsets, total = _vertex_layout(s)
    delta0 = coboundary(s, 0)
    rows = [list(r) for r in delta0.row_lists()]
    rhs = [Fraction(0)] * delta0.rows
    for face in s.base.all_faces():
        if face not in seed.vectors:
            continue
        rows.extend(_vertex_rows(s, face, offsets, total))
        rhs.extend(seed[face])
    system = RationalMatrix.from_rows(rows, cols=total)
    solution = solve(system, tuple(rhs))

    if solution is not None:
        vectors = {}
        for face in s.base.all_faces():
            v0 = (face[0],)
            block = solution[offsets[v0]:offsets[v0] + s.stalk_dim[v0]]
            vectors[face] = composite_map(s, v0, face).apply(block)
        result = Assignment(vectors)
        for face in seed.vectors:
            assert result[face] == seed[face]
        return ExtendResult(result=result)

    return _localize_obstruction(s, seed)


def _stack(blocks):
    rows = []
    rhs = []
    for mat, b in blocks:
        rows.extend(list(r) for r in mat.row_lists())
        rhs.extend(b)
    return rows, tuple(rhs)


def _localize_obstruction(s: CellularSheaf, seed: Assignment) -> ExtendResult:
    faces = s.base.all_faces()
    neighbors = {g: [] for g in faces}
    for sigma, tau in covering_pairs(s.base):
        neighbors[sigma].append(tau)
        neighbors[tau].append(sigma)
    face_order = {g: i for i, g in enumerate(faces)}
    for g in faces:
        neighbors[g].sort(key=face_order.get)

    systems = {g: [] for g in faces}
    value = {}
    queue = deque()
    for g in faces:
        if g in seed.vectors:
            systems[g].append(
                (RationalMatrix.identity(s.stalk_dim[g]), seed[g]))
            value[g] = seed[g]
            queue.append(g)

    while queue:
        g = queue.popleft()
        xg = value[g]
        for n in neighbors[g]:
            if len(n) > len(g):
                # value above is forced outright
                block = (RationalMatrix.identity(s.stalk_dim[n]),
                         s.restriction[(g, n)].apply(xg))
            else:
                # value below must map onto the determined value
                block = (s.restriction[(n, g)], xg)
            systems[n].append(block)
            rows, rhs = _stack(systems[n])
            stacked = RationalMatrix.from_rows(rows, cols=s.stalk_dim[n])
            sol = solve(stacked, rhs)
            if sol is None:
                alone_rows, alone_rhs = _stack([block])
                alone = solve(
                    RationalMatrix.from_rows(alone_rows, cols=s.stalk_dim[n]),
                    alone_rhs)
                kind = ("no-consistent-value" if alone is None
                        else "conflicting-values")
                detail = (
                    f"constraints at {face_name(s.base, n)} from "
                    f"{face_name(s.base, g)} admit no solution"
                    if alone is None else
                    f"{face_name(s.base, n)} is forced two different ways")
                return ExtendResult(
                    obstruction=n, kind=kind, detail=detail,
                    propagated=Assignment(dict(value)))
            if n not in value and decompose(stacked).rank == s.stalk_dim[n]:
                value[n] = sol
                queue.append(n)

    # The global system is infeasible, yet no single face collected an
    # inconsistent system from determined neighbors.  Sweep faces in
    # order, adding each face's coherence and seed rows to one growing
    # vertex-coordinate system; the face whose rows break it is blamed.
    from .cohomology import coboundary

    offsets, total = _vertex_layout(s)
    rows: list = []
    rhs: list = []
    for g in faces:
        added = []
        if len(g) == 2:
            u, v = (g[0],), (g[1],)
            left = composite_map(s, u, g)
            right = composite_map(s, v, g)
            for r in range(left.rows):
                row = [Fraction(0)] * total
                for c in range(left.cols):
                    row[offsets[u] + c] = left.entry(r, c)
                for c in range(right.cols):
                    row[offsets[v] + c] -= right.entry(r, c)
                added.append((row, Fraction(0)))
        if g in seed.vectors:
            for row, b in zip(_vertex_rows(s, g, offsets, total), seed[g]):
                added.append((row, b))
        if not added:
            continue
        alone = solve(
            RationalMatrix.from_rows([r for r, _ in added], cols=total),
            tuple(b for _, b in added))
        rows.extend(r for r, _ in added)
        rhs.extend(b for _, b in added)
        joint = solve(RationalMatrix.from_rows(rows, cols=total), tuple(rhs))
        if joint is None:
            kind = "no-consistent-value" if alone is None else "conflicting-values"
            return ExtendResult(
                obstruction=g, kind=kind,
                detail=f"constraints through {face_name(s.base, g)} close off "
                       f"the remaining solutions",
                propagated=Assignment(dict(value)))
    raise AssertionError("global solve failed but no face could be blamed")


def global_section_space(s: CellularSheaf) -> SectionSpace:
    """Kernel of the degree-zero coboundary, spread over all faces.

    Each kernel vector is vertex data; values on higher faces follow
    uniquely through the restriction maps.
    """
    assert s.variance == "sheaf"
    from .cohomology import coboundary

    offsets, total = _vertex_layout(s)
    dec = decompose(coboundary(s, 0))
    basis = []
    for vec in dec.kernel_basis:
        vectors = {}
        for face in s.base.all_faces():
            v0 = (face[0],)
            block = vec[offsets[v0]:offsets[v0] + s.stalk_dim[v0]]
            vectors[face] = composite_map(s, v0, face).apply(block)
        basis.append(Assignment(vectors))
    return SectionSpace(len(basis), tuple(basis))


def _same_base(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    return (a.vertex_order == b.vertex_order
            and a.all_faces() == b.all_faces())


def direct_sum(f: CellularSheaf, g: CellularSheaf) -> CellularSheaf:
    """Stalkwise sum; restriction maps become block diagonal."""
    if not _same_base(f.base, g.base):
        raise ValueError("base mismatch")
    if f.variance != g.variance:
        raise ValueError("variance mismatch")
    dims = {face: f.stalk_dim[face] + g.stalk_dim[face]
            for face in f.base.all_faces()}
    restriction = {}
    for pair in covering_pairs(f.base):
        left = f.restriction[pair]
        right = g.restriction[pair]
        restriction[pair] = block_assemble(
            {(0, 0): left, (1, 1): right},
            (left.rows, right.rows), (left.cols, right.cols))
    return CellularSheaf(f.base, dims, restriction, f.variance)


def pullback(base: SimplicialComplex, f: dict, s: CellularSheaf) -> CellularSheaf:
    """Reindex a sheaf through an order-preserving face map into its base."""
    for face in base.all_faces():
        if face not in f:
            raise ValueError(f"face map misses {face}")
        if not s.base.has_face(f[face]):
            raise ValueError(f"face map leaves the target complex at {face}")
    for sigma, tau in covering_pairs(base):
        if not set(f[sigma]) <= set(f[tau]):
            raise ValueError(
                f"face map is not order-preserving at {sigma} < {tau}")
    dims = {face: s.stalk_dim[f[face]] for face in base.all_faces()}
    restriction = {}
    for sigma, tau in covering_pairs(base):
        restriction[(sigma, tau)] = composite_map(s, f[sigma], f[tau])
    return CellularSheaf(base, dims, restriction, s.variance)


@dataclass(frozen=True)
class SheafMorphism:
    """Componentwise maps l_sigma : F(f(sigma)) -> G(sigma).

    The source sheaf lives over the image complex, the target over the
    domain of the face map, mirroring how pullback moves data.
    """

    source: CellularSheaf  # F
    target: CellularSheaf  # G
    cell_map: dict  # faces of target.base -> faces of source.base
    components: dict  # face of target.base -> RationalMatrix

    def __post_init__(self):
        assert self.source.variance == "sheaf"
        assert self.target.variance == "sheaf"
        for face in self.target.base.all_faces():
            assert face in self.cell_map, f"cell map misses {face}"
            image = self.cell_map[face]
            assert self.source.base.has_face(image)
            comp = self.components.get(face)
            assert comp is not None, f"no component at {face}"
            assert comp.rows == self.target.stalk_dim[face]
            assert comp.cols == self.source.stalk_dim[image]
        for sigma, tau in covering_pairs(self.target.base):
            assert set(self.cell_map[sigma]) <= set(self.cell_map[tau]), \
                f"cell map is not order-preserving at {sigma} < {tau}"


def check_morphism(m: SheafMorphism) -> MorphismReport:
    """Verify every commuting square and the induced map on sections."""
    failing = []
    for sigma, tau in covering_pairs(m.target.base):
        lhs = m.target.restriction[(sigma, tau)] @ m.components[sigma]
        rhs = m.components[tau] @ composite_map(
            m.source, m.cell_map[sigma], m.cell_map[tau])
        if lhs != rhs:
            failing.append((sigma, tau))

    space = global_section_space(m.source)
    images = []
    induced_ok = True
    for section in space.basis:
        image = Assignment({
            face: m.components[face].apply(section[m.cell_map[face]])
            for face in m.target.base.all_faces()})
        images.append(image)
        if not is_global_section(m.target, image).ok:
            induced_ok = False
    return MorphismReport(
        ok=not failing and induced_ok,
        squares=tuple(failing),
        induced=tuple(images),
        induced_ok=induced_ok)
