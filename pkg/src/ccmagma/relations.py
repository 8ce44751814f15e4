"""Internal binary relations between finite tables: property predicates,
equalizer relations of homomorphism pairs, relations induced by a
subalgebra, and the pullback construction for split-epimorphism pairs.

Relations are dense flag grids; every predicate is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import (FiniteMagma, Homomorphism, compose, identity_hom,
                   is_homomorphism, magma_from_function, pair_index,
                   subalgebra_closure, _first)
from .structures import double_table


@dataclass(frozen=True)
class BinaryRelation:
    left: FiniteMagma
    right: FiniteMagma
    member: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(bool(v) for v in row) for row in self.member)
        object.__setattr__(self, "member", rows)
        if len(rows) != self.left.order:
            raise ValueError("member grid row count must equal left order")
        for row in rows:
            if len(row) != self.right.order:
                raise ValueError("member grid column count must equal right order")

    def holds(self, a: int, b: int) -> bool:
        return self.member[a][b]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.left.elements()
                for b in self.right.elements() if self.member[a][b]]

    @property
    def _mat(self) -> np.ndarray:
        return np.array(self.member, dtype=bool)

    def _require_square(self, what: str):
        if self.left != self.right:
            raise ValueError(f"{what} requires equal left and right carriers")

    def is_internal(self) -> tuple[bool, Optional[tuple]]:
        """Whether the member set is a subalgebra of the product; the witness
        is a pair of related pairs whose pointwise product is unrelated."""
        tl, tr = self.left.table, self.right.table
        ps = self.pairs()
        for a, b in ps:
            for a2, b2 in ps:
                if not self.member[tl[a][a2]][tr[b][b2]]:
                    return False, ((a, b), (a2, b2))
        return True, None

    def is_reflexive(self) -> tuple[bool, Optional[int]]:
        self._require_square("reflexivity")
        for a in self.left.elements():
            if not self.member[a][a]:
                return False, a
        return True, None

    def is_symmetric(self) -> tuple[bool, Optional[tuple[int, int]]]:
        self._require_square("symmetry")
        ce = _first(self._mat != self._mat.T)
        return ce is None, ce

    def is_transitive(self) -> tuple[bool, Optional[tuple[int, int, int]]]:
        self._require_square("transitivity")
        mat = self._mat
        bad = _first((mat @ mat) & ~mat)
        if bad is None:
            return True, None
        a, c = bad
        b = int(np.nonzero(mat[a] & mat[:, c])[0][0])
        return False, (a, b, c)

    def is_difunctional(self) -> tuple[bool, Optional[tuple[int, int, int, int]]]:
        """xRy, zRy, zRw
        => xRw; the witness is the smallest failing (x, w) completed with
        the smallest connecting (y, z)."""
        mat = self._mat
        bad = _first((mat @ mat.T @ mat) & ~mat)
        if bad is None:
            return True, None
        x, w = bad
        for y in self.right.elements():
            if not mat[x][y]:
                continue
            zs = np.nonzero(mat[:, y] & mat[:, w])[0]
            if zs.size:
                return False, (x, int(y), int(zs[0]), w)
        raise AssertionError("unreachable: matrix witness without elementwise witness")

    def is_congruence(self) -> tuple[bool, Optional[dict]]:
        self._require_square("congruence")
        for name, check in (("internal", self.is_internal),
                            ("reflexive", self.is_reflexive),
                            ("symmetric", self.is_symmetric),
                            ("transitive", self.is_transitive)):
            ok, witness = check()
            if not ok:
                return False, {"property": name, "witness": witness}
        return True, None

    def classes(self) -> list[tuple[int, ...]]:
        """Equivalence classes; only meaningful once is_congruence holds."""
        seen = []
        out = []
        for a in self.left.elements():
            row = tuple(b for b in self.right.elements() if self.member[a][b])
            if row not in seen:
                seen.append(row)
                out.append(row)
        return out


def relation_from_pairs(left: FiniteMagma, right: FiniteMagma,
                        pairs: Iterable[tuple[int, int]]) -> BinaryRelation:
    grid = [[False] * right.order for _ in left.elements()]
    for a, b in pairs:
        grid[a][b] = True
    return BinaryRelation(left, right, tuple(tuple(r) for r in grid))


def identity_relation(m: FiniteMagma) -> BinaryRelation:
    return relation_from_pairs(m, m, ((a, a) for a in m.elements()))


def full_relation(left: FiniteMagma, right: FiniteMagma) -> BinaryRelation:
    return BinaryRelation(left, right,
                          tuple(tuple(True for _ in right.elements())
                                for _ in left.elements()))


def format_relation(r: BinaryRelation) -> str:
    out = [f"{r.left.order} {r.right.order}"]
    out.extend(" ".join("1" if v else "0" for v in row) for row in r.member)
    return "\n".join(out) + "\n"


def parse_relation_grid(text: str) -> tuple[int, int, tuple[tuple[bool, ...], ...]]:
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    rows, cols = (int(p) for p in lines[0].split())
    grid = tuple(tuple(p == "1" for p in ln.split()) for ln in lines[1:rows + 1])
    return rows, cols, grid


# ---------------------------------------------------------------------------

def equalizer_relation(x: FiniteMagma, y: FiniteMagma,
                       f: Homomorphism, g: Homomorphism) -> BinaryRelation:
    """aRb iff f(a,b) = g(a,b) for f, g out of the product of x and y.

    Always difunctional; a congruence whenever x = y and f, g agree on the
    diagonal.
    """
    if f.target != g.target:
        raise ValueError("f and g must share a target")
    if f.source != g.source:
        raise ValueError("f and g must share the product source")
    if f.source.order != x.order * y.order:
        raise ValueError("source order does not match the factors")
    member = tuple(
        tuple(f.map[pair_index(a, b, y.order)] == g.map[pair_index(a, b, y.order)]
              for b in y.elements())
        for a in x.elements())
    return BinaryRelation(x, y, member)


def _check_subalgebra_inputs(m: FiniteMagma, xs: Iterable[int], e: int) -> tuple[int, ...]:
    xset = tuple(sorted(set(xs)))
    closed = subalgebra_closure(m, xset)
    if closed != xset:
        raise ValueError(f"{list(xset)} is not closed; its closure is {list(closed)}")
    if e not in xset:
        raise ValueError(f"unit {e} is not in the subalgebra")
    if m.table[e][e] != e:
        raise ValueError(f"unit {e} is not idempotent")
    return xset


def subalgebra_relation(m: FiniteMagma, xs: Iterable[int], e: int) -> BinaryRelation:
    """aRb iff a op e = x op b for some x in the subalgebra."""
    xset = _check_subalgebra_inputs(m, xs, e)
    t = m.table
    member = tuple(
        tuple(any(t[a][e] == t[x][b] for x in xset) for b in m.elements())
        for a in m.elements())
    return BinaryRelation(m, m, member)


def subalgebra_witnesses(m: FiniteMagma, xs: Iterable[int],
                         e: int) -> tuple[tuple[Optional[int], ...], ...]:
    """First witness x (in increasing order) per related pair, None elsewhere."""
    xset = _check_subalgebra_inputs(m, xs, e)
    t = m.table
    return tuple(
        tuple(next((x for x in xset if t[a][e] == t[x][b]), None)
              for b in m.elements())
        for a in m.elements())


def transitivity_criterion(m: FiniteMagma, xs: Iterable[int], e: int) -> bool:
    """Exact criterion: for all x, y in the subalgebra and c in the carrier,
    solvability of a op e = x op b and b op e = y op c forces some z in the
    subalgebra with z op e = x op y.

    Cross-checked against direct transitivity of the induced relation.
    """
    xset = _check_subalgebra_inputs(m, xs, e)
    t = m.table
    dt = double_table(m, e)
    holds = True
    for x in xset:
        for y in xset:
            z = dt[t[x][y]]
            z_ok = z is not None and z in xset
            if z_ok:
                continue
            for c in m.elements():
                b = dt[t[y][c]]
                if b is None:
                    continue
                if dt[t[x][b]] is not None:
                    holds = False
                    break
            if not holds:
                break
        if not holds:
            break
    direct, _ = subalgebra_relation(m, xset, e).is_transitive()
    if holds != direct:
        raise AssertionError(
            f"criterion ({holds}) disagrees with direct transitivity ({direct})")
    return holds


# ---------------------------------------------------------------------------
# pullbacks of split epimorphism pairs

@dataclass(frozen=True)
class KiteInput:
    """Split epis f: A->B (section r) and g: C->B (section s), plus
    u: A->D, v: B->D, w: C->D with u r = v = w s."""
    f: Homomorphism
    r: Homomorphism
    g: Homomorphism
    s: Homomorphism
    u: Homomorphism
    v: Homomorphism
    w: Homomorphism

    def __post_init__(self):
        a, b, c, d = self.A, self.B, self.C, self.D
        expected = {"f": (a, b), "r": (b, a), "g": (c, b), "s": (b, c),
                    "u": (a, d), "v": (b, d), "w": (c, d)}
        for name, (src, dst) in expected.items():
            h = getattr(self, name)
            if h.source != src or h.target != dst:
                raise ValueError(f"{name} has mismatched endpoints")
            ok, ce = is_homomorphism(h)
            if not ok:
                raise ValueError(f"{name} is not a homomorphism, counterexample {ce}")
        ident = identity_hom(b).map
        if compose(self.f, self.r).map != ident:
            raise ValueError("f compose r is not the identity on B")
        if compose(self.g, self.s).map != ident:
            raise ValueError("g compose s is not the identity on B")
        if compose(self.u, self.r).map != self.v.map:
            raise ValueError("u compose r differs from v")
        if compose(self.w, self.s).map != self.v.map:
            raise ValueError("w compose s differs from v")

    @property
    def A(self) -> FiniteMagma:
        return self.f.source

    @property
    def B(self) -> FiniteMagma:
        return self.f.target

    @property
    def C(self) -> FiniteMagma:
        return self.g.source

    @property
    def D(self) -> FiniteMagma:
        return self.u.target


@dataclass(frozen=True)
class PullbackSpan:
    carrier: tuple[tuple[int, int], ...]
    magma: FiniteMagma
    pi1: Homomorphism
    pi2: Homomorphism
    e1: Homomorphism
    e2: Homomorphism


def pullback_pairs(f: Homomorphism, g: Homomorphism) -> tuple[tuple[int, int], ...]:
    """Carrier of the pullback of f along g: pairs (a, c) with f(a) = g(c),
    in row-major order.  Needs no sections."""
    if f.target != g.target:
        raise ValueError("pullback requires a shared target")
    return tuple((a, c) for a in f.source.elements() for c in g.source.elements()
                 if f.map[a] == g.map[c])


def build_pullback(k: KiteInput) -> PullbackSpan:
    """Pullback carrier with componentwise operation, projections, and the
    injections a -> (a, s f a), c -> (r g c, c)."""
    carrier = pullback_pairs(k.f, k.g)
    index = {pair: i for i, pair in enumerate(carrier)}
    ta, tc = k.A.table, k.C.table

    def op(i, j):
        a1, c1 = carrier[i]
        a2, c2 = carrier[j]
        pair = (ta[a1][a2], tc[c1][c2])
        if pair not in index:
            raise ValueError("pullback carrier is not closed; inputs are not "
                             "homomorphisms")
        return index[pair]

    magma = magma_from_function(len(carrier), op)
    pi1 = Homomorphism(magma, k.A, tuple(a for a, _ in carrier))
    pi2 = Homomorphism(magma, k.C, tuple(c for _, c in carrier))
    e1 = Homomorphism(k.A, magma,
                      tuple(index[(a, k.s.map[k.f.map[a]])] for a in k.A.elements()))
    e2 = Homomorphism(k.C, magma,
                      tuple(index[(k.r.map[k.g.map[c]], c)] for c in k.C.elements()))
    if compose(pi1, e1).map != identity_hom(k.A).map:
        raise ValueError("pi1 compose e1 is not the identity")
    if compose(pi2, e2).map != identity_hom(k.C).map:
        raise ValueError("pi2 compose e2 is not the identity")
    return PullbackSpan(carrier, magma, pi1, pi2, e1, e2)


def kite_theta(k: KiteInput) -> Optional[Homomorphism]:
    """The unique map theta on the pullback with theta e1 = u and
    theta e2 = w, determined pointwise by theta(a,c) op v(b) = u(a) op w(c).

    Cancellation gives at most one solution per pair (asserted, not
    searched); returns None when some pair has no solution.
    """
    span = build_pullback(k)
    td = k.D.table
    theta = []
    for a, c in span.carrier:
        b = k.f.map[a]
        rhs = td[k.u.map[a]][k.w.map[c]]
        vb = k.v.map[b]
        solutions = [x for x in k.D.elements() if td[x][vb] == rhs]
        if len(solutions) > 1:
            raise ValueError("multiple solutions: D is not cancellative")
        if not solutions:
            return None
        theta.append(solutions[0])
    h = Homomorphism(span.magma, k.D, tuple(theta))
    ok, ce = is_homomorphism(h)
    if not ok:
        raise AssertionError(f"theta failed the homomorphism check at {ce}")
    if compose(h, span.e1).map != k.u.map:
        raise AssertionError("theta e1 differs from u")
    if compose(h, span.e2).map != k.w.map:
        raise AssertionError("theta e2 differs from w")
    return h
