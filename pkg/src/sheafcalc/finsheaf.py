"""Presheaves of finite sets on finite topological spaces.

A presheaf here is the whole restriction table, spelled out: a stalk for
every open set and a map for every nested pair of opens.  Everything is
small enough to enumerate, so the sheaf axioms are checked literally --
locality by comparing sections, gluing by building every matching family
and looking for amalgamations.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .poset import FinitePoset, FiniteTopology, alexandrov

__all__ = [
    "FinitePresheaf",
    "PresheafReport",
    "SheafCondition",
    "MatchingFamily",
    "Copresheaf",
    "NColorSheaf",
    "validate_presheaf",
    "restrict",
    "matching_families",
    "sheaf_check",
    "irredundant_covers",
    "is_sheaf",
    "stalk_at",
    "validate_copresheaf",
    "poset_transfer",
    "copresheaf_from_presheaf",
    "ncolor",
    "predict",
]


def _ordered(elements):
    # deterministic iteration over possibly mixed-type section sets
    return sorted(elements, key=repr)


@dataclass(frozen=True)
class FinitePresheaf:
    """Stalks over every open, restriction maps over every nested pair.

    ``stalk`` maps each open (a frozenset of points) to a finite set of
    sections.  ``restriction`` maps each pair ``(u, v)`` with ``v <= u``
    to a dict sending sections of ``u`` to sections of ``v``.
    """

    topology: FiniteTopology
    stalk: dict
    restriction: dict

    def __post_init__(self):
        for u in self.topology.opens:
            assert u in self.stalk, f"no stalk over {sorted(u)}"
        for u in self.topology.opens:
            for v in self.topology.opens:
                if v <= u:
                    assert (u, v) in self.restriction, \
                        f"no restriction from {sorted(u)} to {sorted(v)}"
                    table = self.restriction[(u, v)]
                    assert set(table) == set(self.stalk[u])
                    for s in self.stalk[u]:
                        assert table[s] in self.stalk[v]


@dataclass(frozen=True)
class PresheafReport:
    ok: bool
    kind: Optional[str] = None
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class SheafCondition:
    """Outcome of both sheaf axioms for one cover.

    Each field is ``("pass", None)`` or ``("fail", witness)``.  A locality
    witness is a pair of distinct sections with equal restrictions; a
    gluing witness is a matching family with no amalgamation.
    """

    locality: tuple
    gluing: tuple

    @property
    def ok(self) -> bool:
        return self.locality[0] == "pass" and self.gluing[0] == "pass"


@dataclass(frozen=True)
class MatchingFamily:
    """A choice of section per cover member, agreeing on overlaps."""

    cover: tuple
    choice: tuple  # pairs (open, section), aligned with cover

    def section(self, u):
        for v, s in self.choice:
            if v == u:
                return s
        raise KeyError(sorted(u))


def restrict(p: FinitePresheaf, u, v, section):
    """Restrict a section of u to the smaller open v."""
    assert v <= u
    return p.restriction[(u, v)][section]


def validate_presheaf(p: FinitePresheaf) -> PresheafReport:
    """Check the functor laws: identities and composition of restrictions.

    Returns the first violation found, scanning opens small-to-large.
    """
    opens = p.topology.opens_sorted()
    for u in opens:
        table = p.restriction[(u, u)]
        for s in _ordered(p.stalk[u]):
            if table[s] != s:
                return PresheafReport(False, "identity", (u, s, table[s]))
    for u in opens:
        for v in opens:
            if not v <= u:
                continue
            for w in opens:
                if not w <= v:
                    continue
                for s in _ordered(p.stalk[u]):
                    direct = restrict(p, u, w, s)
                    stepped = restrict(p, v, w, restrict(p, u, v, s))
                    if direct != stepped:
                        return PresheafReport(
                            False, "composition", (u, v, w, s, direct, stepped))
    return PresheafReport(True)


def matching_families(p: FinitePresheaf, cover):
    """Yield every matching family over the cover.

    Sections are chosen member by member; a partial choice is extended
    only while it agrees on all pairwise intersections, so consistent
    presheaves prune the product search drastically.
    """
    members = sorted(set(cover), key=lambda u: (-len(u), tuple(sorted(u))))
    for u in members:
        assert p.topology.is_open(u)

    def extend(i, partial):
        if i == len(members):
            yield MatchingFamily(tuple(members), tuple(partial))
            return
        u = members[i]
        for s in _ordered(p.stalk[u]):
            good = True
            for v, t in partial:
                w = u & v
                if restrict(p, u, w, s) != restrict(p, v, w, t):
                    good = False
                    break
            if good:
                partial.append((u, s))
                yield from extend(i + 1, partial)
                partial.pop()

    yield from extend(0, [])


def sheaf_check(p: FinitePresheaf, cover, target) -> SheafCondition:
    """Test locality and gluing for one cover of one open.

    The cover must be a family of opens whose union is the target open;
    anything else is a usage error, not a sheaf failure.
    """
    target = frozenset(target)
    members = [frozenset(u) for u in cover]
    if not p.topology.is_open(target):
        raise ValueError(f"target {sorted(target)} is not open")
    union = frozenset().union(*members) if members else frozenset()
    if union != target:
        raise ValueError("cover does not union to the target")

    locality = ("pass", None)
    sections = _ordered(p.stalk[target])
    for s, t in combinations(sections, 2):
        if all(restrict(p, target, u, s) == restrict(p, target, u, t)
               for u in members):
            locality = ("fail", (s, t))
            break

    gluing = ("pass", None)
    for family in matching_families(p, members):
        glued = [s for s in sections
                 if all(restrict(p, target, u, s) == family.section(u)
                        for u in set(members))]
        if not glued:
            gluing = ("fail", family)
            break

    return SheafCondition(locality, gluing)


def irredundant_covers(topology: FiniteTopology, target):
    """Enumerate covers of the target with no member inside the others' union.

    Such covers are antichains and every member keeps a private point, so
    the search branches on the smallest uncovered point and prunes any
    branch where an already chosen member has gone redundant.
    """
    target = frozenset(target)
    assert topology.is_open(target)
    usable = [u for u in topology.opens_sorted() if u and u <= target]
    points = sorted(target)
    seen = set()

    def private_points_survive(chosen):
        for i, u in enumerate(chosen):
            rest = [v for j, v in enumerate(chosen) if j != i]
            union = frozenset().union(*rest) if rest else frozenset()
            if u <= union:
                return False
        return True

    def recurse(chosen, covered):
        if covered == target:
            family = frozenset(chosen)
            if family not in seen:
                seen.add(family)
                yield family
            return
        pivot = next(x for x in points if x not in covered)
        for u in usable:
            if pivot not in u or u <= covered:
                continue
            grown = chosen + [u]
            # a member redundant now stays redundant as the union grows
            if private_points_survive(grown):
                yield from recurse(grown, covered | u)

    if not points:
        yield frozenset()
        return
    yield from recurse([], frozenset())


def is_sheaf(p: FinitePresheaf) -> bool:
    """Both sheaf axioms over every irredundant cover of every open.

    Redundant covers add no information: dropping a member contained in
    the union of the rest never changes the matching families that
    matter, so checking irredundant covers decides the full condition.
    """
    for target in p.topology.opens_sorted():
        for cover in irredundant_covers(p.topology, target):
            if not sheaf_check(p, cover, target).ok:
                return False
    return True


def stalk_at(p: FinitePresheaf, point):
    """Sections over the minimal open around a point.

    Raises ValueError when the space has no minimal open there.
    """
    u = p.topology.minimal_open_containing(point)
    return p.stalk[u]


@dataclass(frozen=True)
class Copresheaf:
    """Covariant set-valued data on a poset: stalks and action maps upward."""

    poset: FinitePoset
    stalk: dict
    action: dict  # (p, q) with p <= q  ->  dict stalk(p) -> stalk(q)

    def __post_init__(self):
        for x in self.poset.elements:
            assert x in self.stalk
        for x in self.poset.elements:
            for y in self.poset.elements:
                if self.poset.leq(x, y):
                    assert (x, y) in self.action
                    table = self.action[(x, y)]
                    assert set(table) == set(self.stalk[x])
                    for s in self.stalk[x]:
                        assert table[s] in self.stalk[y]


def validate_copresheaf(f: Copresheaf) -> PresheafReport:
    for x in f.poset.elements:
        table = f.action[(x, x)]
        for s in _ordered(f.stalk[x]):
            if table[s] != s:
                return PresheafReport(False, "identity", (x, s, table[s]))
    for x in f.poset.elements:
        for y in f.poset.elements:
            if not f.poset.leq(x, y):
                continue
            for z in f.poset.elements:
                if not f.poset.leq(y, z):
                    continue
                for s in _ordered(f.stalk[x]):
                    direct = f.action[(x, z)][s]
                    stepped = f.action[(y, z)][f.action[(x, y)][s]]
                    if direct != stepped:
                        return PresheafReport(
                            False, "composition", (x, y, z, s, direct, stepped))
    return PresheafReport(True)


def _compatible_tuples(f: Copresheaf, points):
    """All assignments over the given points that the action maps force.

    Points are filled along a linear extension, so each new value is
    either free (no predecessor yet assigned) or forced by every
    assigned predecessor at once.
    """
    order = sorted(points,
                   key=lambda x: (sum(1 for y in points if f.poset.leq(y, x)), x))
    out = []

    def extend(i, partial):
        if i == len(order):
            out.append(tuple(sorted(partial.items())))
            return
        q = order[i]
        forced = None
        consistent = True
        for x, v in partial.items():
            if f.poset.leq(x, q):
                image = f.action[(x, q)][v]
                if forced is None:
                    forced = image
                elif forced != image:
                    consistent = False
                    break
        if not consistent:
            return
        candidates = [forced] if forced is not None else _ordered(f.stalk[q])
        for v in candidates:
            partial[q] = v
            extend(i + 1, partial)
            del partial[q]

    extend(0, {})
    return out


def poset_transfer(f: Copresheaf) -> FinitePresheaf:
    """Realize a copresheaf as a presheaf on the up-set topology.

    The sections over an open are the action-compatible tuples over its
    points; restriction just forgets coordinates.  The result always
    satisfies both sheaf axioms, and the construction is reversible:
    ``copresheaf_from_presheaf`` recovers the input on the nose.
    """
    report = validate_copresheaf(f)
    assert report.ok, report
    topology = alexandrov(f.poset, "up")
    stalk = {u: frozenset(_compatible_tuples(f, u))
             for u in topology.opens}
    restriction = {}
    for u in topology.opens:
        for v in topology.opens:
            if v <= u:
                restriction[(u, v)] = {
                    s: tuple(pair for pair in s if pair[0] in v)
                    for s in stalk[u]}
    return FinitePresheaf(topology, stalk, restriction)


def copresheaf_from_presheaf(p: FinitePresheaf, poset: FinitePoset) -> Copresheaf:
    """Invert poset_transfer by reading values off principal opens."""
    up = {x: frozenset(poset.principal_up(x)) for x in poset.elements}
    stalk = {}
    rep = {}
    for x in poset.elements:
        values = {}
        for section in p.stalk[up[x]]:
            value = dict(section)[x]
            values[value] = section
        stalk[x] = frozenset(values)
        rep[x] = values
    action = {}
    for x in poset.elements:
        for y in poset.elements:
            if not poset.leq(x, y):
                continue
            table = {}
            for v, section in rep[x].items():
                smaller = restrict(p, up[x], up[y], section)
                table[v] = dict(smaller)[y]
            action[(x, y)] = table
    return Copresheaf(poset, stalk, action)


@dataclass(frozen=True)
class NColorSheaf:
    """Proper colorings organized over the connected-subgraph poset."""

    presheaf: FinitePresheaf
    poset: FinitePoset
    labels: dict  # label -> (frozenset vertices, frozenset edges)
    top: str
    colors: int

    def principal_open(self, label) -> frozenset:
        return self.presheaf.topology.minimal_open_containing(label)

    def colorings(self, label) -> frozenset:
        """Sections over the principal open, read as vertex-color maps."""
        out = set()
        for section in self.presheaf.stalk[self.principal_open(label)]:
            out.add(dict(section)[label])
        return frozenset(out)


def _subgraph_label(vertices, edges):
    vs = ",".join(sorted(vertices))
    es = ",".join("".join(sorted(e)) for e in sorted(edges, key=sorted))
    return vs + "/" + es


def _proper_colorings(vertices, edges, n):
    order = sorted(vertices)
    out = []

    def extend(i, partial):
        if i == len(order):
            out.append(tuple(sorted(partial.items())))
            return
        v = order[i]
        for c in range(n):
            if all(partial.get(w) != c for e in edges if v in e
                   for w in e if w != v):
                partial[v] = c
                extend(i + 1, partial)
                del partial[v]

    extend(0, {})
    return out


def _connected(vertices, edges) -> bool:
    vertices = set(vertices)
    if not vertices:
        return False
    seen = {min(vertices)}
    frontier = [min(vertices)]
    while frontier:
        x = frontier.pop()
        for e in edges:
            if x in e:
                for y in e:
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
    return seen == vertices


def ncolor(vertices, edges, n: int) -> NColorSheaf:
    """Sheaf of proper n-colorings over connected subgraphs.

    Subgraphs are ordered by containment of both vertex and edge sets.
    The stalk at a subgraph is its set of proper colorings and the
    restriction maps forget vertices, so a family of colorings on
    subgraphs whose edges cover the whole graph glues to a coloring of
    the whole graph exactly when it matches on overlaps.
    """
    vertices = sorted(set(vertices))
    edges = sorted({frozenset(e) for e in edges}, key=sorted)
    for e in edges:
        assert len(e) == 2, f"not a simple edge: {sorted(e)}"
        assert all(v in vertices for v in e)
    assert n >= 1
    if not _connected(vertices, edges if len(vertices) > 1 else []):
        raise ValueError("graph is not connected")

    subgraphs = {}
    for v in vertices:
        subgraphs[_subgraph_label([v], [])] = (frozenset([v]), frozenset())
    for r in range(1, len(edges) + 1):
        for combo in combinations(edges, r):
            vs = frozenset().union(*combo)
            if _connected(vs, combo):
                subgraphs[_subgraph_label(vs, combo)] = (vs, frozenset(combo))
    assert len(subgraphs) <= 24, "too many connected subgraphs to enumerate"

    labels = sorted(subgraphs)
    pairs = []
    for a in labels:
        for b in labels:
            va, ea = subgraphs[a]
            vb, eb = subgraphs[b]
            if va <= vb and ea <= eb:
                pairs.append((a, b))
    poset = FinitePoset(labels, pairs)

    stalk = {}
    action = {}
    for a in labels:
        va, ea = subgraphs[a]
        stalk[a] = frozenset(_proper_colorings(va, ea, n))
    # colorings restrict downward, so the covariant data lives on the dual
    dual = poset.dualize()
    for a in labels:
        for b in labels:
            if dual.leq(a, b):
                vb, _ = subgraphs[b]
                action[(a, b)] = {
                    s: tuple(pair for pair in s if pair[0] in vb)
                    for s in stalk[a]}
    functor = Copresheaf(dual, stalk, action)
    presheaf = poset_transfer(functor)
    top = _subgraph_label(vertices, edges)
    assert top in subgraphs
    return NColorSheaf(presheaf, poset, subgraphs, top, n)


def predict(p: FinitePresheaf, u, v, observed):
    """Possible restrictions to v of global sections seen as `observed` on u.

    Filters the stalk over the whole space by its restriction to u, then
    pushes the survivors down to v.
    """
    u = frozenset(u)
    v = frozenset(v)
    whole = frozenset(p.topology.points)
    observed = set(observed)
    assert p.topology.is_open(u) and p.topology.is_open(v)
    for s in observed:
        assert s in p.stalk[u]
    survivors = [s for s in p.stalk[whole]
                 if restrict(p, whole, u, s) in observed]
    return frozenset(restrict(p, whole, v, s) for s in survivors)
