"""Galois connections between finite posets.

A connection is a pair of monotone maps F: P -> Q and G: Q -> P with
F(p) <= q exactly when p <= G(q).  The checker tests that biconditional
pointwise and additionally the unit/counit laws it implies, so a bug in
either route shows up as a disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poset import FinitePoset, is_monotone


@dataclass(frozen=True)
class GaloisConnection:
    source: FinitePoset        # P
    target: FinitePoset        # Q
    left: dict                 # F: P -> Q
    right: dict                # G: Q -> P


@dataclass(frozen=True)
class ConnectionReport:
    ok: bool
    kind: str | None = None    # what failed
    witness: tuple | None = None


class AdjointSynthesisError(ValueError):
    """Raised when no adjoint exists; carries the violated join/meet."""

    def __init__(self, kind, at, subset, bound, image):
        self.kind = kind
        self.at = at
        self.subset = tuple(sorted(subset))
        self.bound = bound
        self.image = image
        super().__init__(
            f"{kind} at {at!r}: bound of {self.subset} is {bound!r}, "
            f"mapped to {image!r}")


def check_connection(c: GaloisConnection) -> ConnectionReport:
    p, q = c.source, c.target
    assert set(c.left) == set(p.elements), "left map must be total on source"
    assert set(c.right) == set(q.elements), "right map must be total on target"
    if not is_monotone(p, q, c.left):
        bad = next((x, y) for x, y in p.pairs()
                   if not q.leq(c.left[x], c.left[y]))
        return ConnectionReport(False, "left-not-monotone", bad)
    if not is_monotone(q, p, c.right):
        bad = next((x, y) for x, y in q.pairs()
                   if not p.leq(c.right[x], c.right[y]))
        return ConnectionReport(False, "right-not-monotone", bad)
    for x in p.elements:
        for y in q.elements:
            if q.leq(c.left[x], y) != p.leq(x, c.right[y]):
                return ConnectionReport(False, "adjunction", (x, y))
    for x in p.elements:
        if not p.leq(x, c.right[c.left[x]]):
            return ConnectionReport(False, "unit", (x,))
    for y in q.elements:
        if not q.leq(c.left[c.right[y]], y):
            return ConnectionReport(False, "counit", (y,))
    return ConnectionReport(True)


def right_adjoint_of(left: dict, source: FinitePoset,
                     target: FinitePoset) -> dict:
    """Synthesize G(q) as the join of everything F maps below q.

    Works whenever F preserves joins; otherwise raises
    AdjointSynthesisError carrying the subset whose join F breaks.
    Joins are taken in the source, which must provide them.
    """
    assert is_monotone(source, target, left), "left map must be monotone"
    right = {}
    for q in target.elements:
        subset = [x for x in source.elements if target.leq(left[x], q)]
        j = source.join(subset)
        if j is None:
            raise AdjointSynthesisError("no-join", q, subset, None, None)
        if not target.leq(left[j], q):
            # every member maps below q but the join does not: the join
            # escaped, so F is not join-preserving and no adjoint exists
            raise AdjointSynthesisError(
                "join-not-preserved", q, subset, j, left[j])
        right[q] = j
    report = check_connection(
        GaloisConnection(source, target, dict(left), right))
    assert report.ok, report
    return right


def left_adjoint_of(right: dict, source: FinitePoset,
                    target: FinitePoset) -> dict:
    """Dual synthesis: F(p) is the meet of everything G maps above p."""
    assert is_monotone(target, source, right), "right map must be monotone"
    left = {}
    for p in source.elements:
        subset = [y for y in target.elements if source.leq(p, right[y])]
        m = target.meet(subset)
        if m is None:
            raise AdjointSynthesisError("no-meet", p, subset, None, None)
        if not source.leq(p, right[m]):
            raise AdjointSynthesisError(
                "meet-not-preserved", p, subset, m, right[m])
        left[p] = m
    report = check_connection(
        GaloisConnection(source, target, left, dict(right)))
    assert report.ok, report
    return left


@dataclass(frozen=True)
class LatticeOperator:
    poset: FinitePoset
    mapping: dict
    kind: str                  # "closure" or "kernel"


def induced_operators(c: GaloisConnection) -> dict:
    """The closure G.F on the source and the kernel F.G on the target.

    Also confirms the absorption laws FGF = F and GFG = G pointwise;
    those identities are what make the two composites idempotent.
    """
    report = check_connection(c)
    assert report.ok, f"not a Galois connection: {report}"
    p, q, f, g = c.source, c.target, c.left, c.right
    for x in p.elements:
        assert f[g[f[x]]] == f[x], f"FGF != F at {x!r}"
    for y in q.elements:
        assert g[f[g[y]]] == g[y], f"GFG != G at {y!r}"
    closure = {x: g[f[x]] for x in p.elements}
    kernel = {y: f[g[y]] for y in q.elements}
    for x in p.elements:
        assert p.leq(x, closure[x])
        assert closure[closure[x]] == closure[x]
    for y in q.elements:
        assert q.leq(kernel[y], y)
        assert kernel[kernel[y]] == kernel[y]
    assert is_monotone(p, p, closure)
    assert is_monotone(q, q, kernel)
    return {
        "closure": LatticeOperator(p, closure, "closure"),
        "kernel": LatticeOperator(q, kernel, "kernel"),
    }


def compose_connections(inner: GaloisConnection,
                        outer: GaloisConnection) -> GaloisConnection:
    """(F', G') after (F, G) gives (F'.F, G.G'): adjunctions compose."""
    assert inner.target == outer.source, "middle posets must agree"
    left = {x: outer.left[inner.left[x]] for x in inner.source.elements}
    right = {z: inner.right[outer.right[z]] for z in outer.target.elements}
    composite = GaloisConnection(inner.source, outer.target, left, right)
    report = check_connection(composite)
    assert report.ok, report
    return composite


def cantor_diagonal(f: dict, xs, ys, alpha: dict) -> dict:
    """g(x) = alpha(f(x, x)) differs from every row f(-, x0) of f.

    ``alpha`` must move every point of ys; with a fixed point the
    construction collapses and a ValueError names the stuck value.
    The post-condition is checked exhaustively: x = x0 always witnesses
    that g is not the row at x0.
    """
    xs = tuple(xs)
    ys = tuple(ys)
    assert set(alpha) == set(ys), "alpha must be total"
    for y in ys:
        assert alpha[y] in set(ys)
        if alpha[y] == y:
            raise ValueError(f"alpha has a fixed point at {y!r}")
    for x1 in xs:
        for x2 in xs:
            assert (x1, x2) in f, f"f is partial at {(x1, x2)}"
            assert f[(x1, x2)] in set(ys)
    g = {x: alpha[f[(x, x)]] for x in xs}
    for x0 in xs:
        assert g[x0] != f[(x0, x0)], "diagonal escape failed"
    return g
