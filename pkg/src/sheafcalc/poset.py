"""Finite partial orders with explicit relation storage.

Elements are opaque string labels; every iteration order is
lexicographic so results are reproducible.  The order relation is kept
as the full reflexive-transitive closure, which makes ``leq`` a set
lookup and keeps downset/upset computations trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

POWERSET_LIMIT = 16


class OrderViolation(ValueError):
    """Antisymmetry failure; ``cycle`` holds the offending 2-cycle."""

    def __init__(self, x, y):
        self.cycle = (x, y)
        super().__init__(f"antisymmetry violated: {x} <= {y} and {y} <= {x}")


class FinitePoset:
    __slots__ = ("elements", "_leq")

    def __init__(self, elements, leq_pairs):
        # trusts the caller to hand over a closed relation; use
        # validate_poset for raw input
        elements = tuple(sorted(elements))
        assert len(set(elements)) == len(elements), "duplicate labels"
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_leq", frozenset(leq_pairs))
        for x, y in self._leq:
            assert x in elements and y in elements

    def __setattr__(self, name, value):
        raise AttributeError("FinitePoset is immutable")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, label):
        return label in self.elements

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self._leq == other._leq

    def __hash__(self):
        return hash((self.elements, self._leq))

    def __repr__(self):
        return f"FinitePoset({len(self.elements)} elements)"

    def leq(self, x, y) -> bool:
        assert x in self.elements and y in self.elements
        return (x, y) in self._leq

    def pairs(self):
        """All related pairs (x, y) with x <= y, lexicographic order."""
        return sorted(self._leq)

    def principal_down(self, x) -> frozenset:
        return frozenset(y for y in self.elements if self.leq(y, x))

    def principal_up(self, x) -> frozenset:
        return frozenset(y for y in self.elements if self.leq(x, y))

    def dualize(self) -> "FinitePoset":
        return FinitePoset(self.elements, ((y, x) for x, y in self._leq))

    # ---------------------------------------------------- bound helpers

    def upper_bounds(self, subset):
        subset = list(subset)
        return [u for u in self.elements
                if all(self.leq(x, u) for x in subset)]

    def lower_bounds(self, subset):
        subset = list(subset)
        return [l for l in self.elements
                if all(self.leq(l, x) for x in subset)]

    def join(self, subset):
        """Least upper bound, or None if it does not exist."""
        ubs = self.upper_bounds(subset)
        least = [u for u in ubs if all(self.leq(u, v) for v in ubs)]
        return least[0] if least else None

    def meet(self, subset):
        lbs = self.lower_bounds(subset)
        greatest = [l for l in lbs if all(self.leq(m, l) for m in lbs)]
        return greatest[0] if greatest else None

    def top(self):
        return self.join(())

    def bottom(self):
        return self.meet(())

    def is_lattice(self) -> bool:
        if self.top() is None or self.bottom() is None:
            return False
        for x, y in combinations(self.elements, 2):
            if self.join((x, y)) is None or self.meet((x, y)) is None:
                return False
        return True


def validate_poset(elements, pairs) -> FinitePoset:
    """Close the relation reflexively and transitively, then check
    antisymmetry.  Raises OrderViolation naming a 2-cycle on failure.
    """
    elements = tuple(sorted(set(elements)))
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    for x, y in pairs:
        assert x in index, f"unknown element {x!r}"
        assert y in index, f"unknown element {y!r}"
        reach[index[x]][index[y]] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if reach[i][j] and reach[j][i]:
                raise OrderViolation(elements[i], elements[j])
    closed = [(elements[i], elements[j])
              for i in range(n) for j in range(n) if reach[i][j]]
    return FinitePoset(elements, closed)


def is_monotone(source: FinitePoset, target: FinitePoset, mapping) -> bool:
    assert set(mapping) == set(source.elements), "mapping must be total"
    for v in mapping.values():
        assert v in target.elements, f"value {v!r} outside target"
    return all(target.leq(mapping[x], mapping[y]) for x, y in source.pairs())


# ------------------------------------------------------------- downsets

def set_label(members) -> str:
    return "{" + ",".join(sorted(members)) + "}"


def downset_family(p: FinitePoset):
    """Every down-closed subset, sorted by (size, members)."""
    if len(p) > POWERSET_LIMIT:
        raise ValueError(
            f"downset enumeration capped at {POWERSET_LIMIT} elements, "
            f"got {len(p)}")
    elems = p.elements
    downs = {e: p.principal_down(e) for e in elems}
    found = []
    for mask in range(1 << len(elems)):
        subset = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
        if all(downs[e] <= subset for e in subset):
            found.append(subset)
    found.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return found


def all_downsets(p: FinitePoset) -> FinitePoset:
    """The lattice D(P): downsets of p ordered by inclusion.

    Elements are brace labels like "{a,b}"; pair each label back to its
    member set with downset_family (same construction, same order).
    """
    family = downset_family(p)
    labels = {s: set_label(s) for s in family}
    pairs = [(labels[s], labels[t]) for s in family for t in family if s <= t]
    return FinitePoset(labels.values(), pairs)


def yoneda_check(p: FinitePoset):
    """Order-embedding of p into its downset lattice.

    Confirms x <= y iff down(x) is contained in down(y), and that
    membership in any downset A is equivalent to down(x) <= A.
    Returns (ok, witness); witness names the first failing instance.
    """
    downs = {x: p.principal_down(x) for x in p.elements}
    for x in p.elements:
        for y in p.elements:
            if p.leq(x, y) != (downs[x] <= downs[y]):
                return False, ("order", x, y)
    for a in downset_family(p):
        for x in p.elements:
            if (x in a) != (downs[x] <= a):
                return False, ("membership", x, set_label(a))
    return True, None


# ------------------------------------------------------------- topology

@dataclass(frozen=True)
class FiniteTopology:
    points: tuple
    opens: frozenset  # of frozensets

    def is_open(self, s) -> bool:
        return frozenset(s) in self.opens

    def opens_sorted(self):
        return sorted(self.opens, key=lambda s: (len(s), tuple(sorted(s))))

    def minimal_open_containing(self, point) -> frozenset:
        assert point in self.points
        out = frozenset(self.points)
        for u in self.opens:
            if point in u:
                out &= u
        if out not in self.opens:
            raise ValueError(f"no minimal open around {point!r}")
        return out


def validate_topology(points, opens) -> FiniteTopology:
    points = tuple(sorted(set(points)))
    opens = frozenset(frozenset(u) for u in opens)
    full = frozenset(points)
    for u in opens:
        assert u <= full, f"open set {sorted(u)} leaves the space"
    if frozenset() not in opens:
        raise ValueError("empty set is not open")
    if full not in opens:
        raise ValueError("whole space is not open")
    ordered = sorted(opens, key=lambda s: (len(s), tuple(sorted(s))))
    for u, v in combinations(ordered, 2):
        if u | v not in opens:
            raise ValueError(
                f"not closed under union: {sorted(u)} | {sorted(v)}")
        if u & v not in opens:
            raise ValueError(
                f"not closed under intersection: {sorted(u)} & {sorted(v)}")
    return FiniteTopology(points, opens)


def alexandrov(p: FinitePoset, direction: str) -> FiniteTopology:
    """Topology whose opens are all up-closed (or down-closed) sets."""
    assert direction in ("up", "down")
    if direction == "down":
        opens = downset_family(p)
    else:
        opens = downset_family(p.dualize())
    return FiniteTopology(p.elements, frozenset(opens))
