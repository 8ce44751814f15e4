"""Doubling/negation maps, internal monoids and groups, and the six-way
classification by the (expansive, symmetric, monoid, group) flags.

For a fixed idempotent e, the star operation is pinned down by
star(x, y) op e = x op y; cancellation makes it unique, so construction is
a per-pair solve and everything else is verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import FiniteMagma, Homomorphism


class NotIdempotentError(ValueError):
    """Raised when a unit candidate e does not satisfy e op e = e."""


def double(m: FiniteMagma, e: int, a: int) -> Optional[int]:
    """The unique x with x op e = a, or None when the equation is unsolvable."""
    col = [m.table[x][e] for x in m.elements()]
    try:
        return col.index(a)
    except ValueError:
        return None


def negate(m: FiniteMagma, e: int, a: int) -> Optional[int]:
    """The unique x with x op a = e, or None."""
    col = [m.table[x][a] for x in m.elements()]
    try:
        return col.index(e)
    except ValueError:
        return None


def double_table(m: FiniteMagma, e: int) -> tuple[Optional[int], ...]:
    """double(m, e, a) for every a, as one lookup table."""
    out: list[Optional[int]] = [None] * m.order
    for x in m.elements():
        out[m.table[x][e]] = x
    return tuple(out)


def is_expansive(m: FiniteMagma, e: int) -> bool:
    """Whether doubling at e is total, i.e. column e is surjective."""
    return len({m.table[x][e] for x in m.elements()}) == m.order


def is_symmetric(m: FiniteMagma, e: int) -> bool:
    """Whether negation at e is total: every column contains e."""
    return all(any(m.table[x][a] == e for x in m.elements()) for a in m.elements())


def is_homogeneous(m: FiniteMagma) -> bool:
    """Expansive at every element.  True for every valid finite table; kept
    as a sanity oracle and for API symmetry with the parametric catalog."""
    return all(is_expansive(m, e) for e in m.elements())


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonoidStructure:
    base: FiniteMagma
    unit: int
    star: tuple[tuple[int, ...], ...]

    def as_magma(self) -> FiniteMagma:
        return FiniteMagma(self.star)

    def __repr__(self):
        return f"MonoidStructure(order={self.base.order}, unit={self.unit})"


@dataclass(frozen=True)
class GroupStructure:
    monoid: MonoidStructure
    inverse: tuple[int, ...]

    def __repr__(self):
        return f"GroupStructure(order={self.monoid.base.order}, unit={self.monoid.unit})"


def _monoid_invariants_hold(m: FiniteMagma, e: int, star: np.ndarray) -> bool:
    """All MonoidStructure invariants: unit laws, commutativity,
    associativity, compatibility with the base operation, and the defining
    identity star(x,y) op e = x op y."""
    n = m.order
    t = m.arr
    idx = np.arange(n)
    if not (np.array_equal(star[e], idx) and np.array_equal(star[:, e], idx)):
        return False
    if not np.array_equal(star, star.T):
        return False
    if not np.array_equal(star[star], star[idx[:, None, None], star[None, :, :]]):
        return False
    if not np.array_equal(t[star, e], t):
        return False
    # compatibility (x*y) op (z*w) = (x op z)*(y op w), sliced to n^3 memory
    for x in range(n):
        lhs = t[star[x][:, None, None], star[None, :, :]]
        rhs = star[t[x][None, :, None], t[:, None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def internal_monoid(m: FiniteMagma, e: int) -> Optional[MonoidStructure]:
    """Monoid with unit e whose star solves star(x,y) op e = x op y.

    Returns None when some pair has no solution; raises NotIdempotentError
    when e is not idempotent (a distinct outcome, not absence).
    """
    if m.table[e][e] != e:
        raise NotIdempotentError(f"element {e} is not idempotent")
    dt = double_table(m, e)
    star_rows = []
    for x in m.elements():
        row = []
        for y in m.elements():
            v = dt[m.table[x][y]]
            if v is None:
                return None
            row.append(v)
        star_rows.append(tuple(row))
    star = np.array(star_rows, dtype=np.intp)
    if not _monoid_invariants_hold(m, e, star):
        raise ValueError("constructed star table violates monoid invariants; "
                         "the base table is not a valid ccm-magma")
    return MonoidStructure(base=m, unit=e, star=tuple(star_rows))


def internal_group(m: FiniteMagma, e: int) -> Optional[GroupStructure]:
    """Group over e: present iff the monoid exists and negation at e is total."""
    mon = internal_monoid(m, e)
    if mon is None:
        return None
    inverse = []
    for a in m.elements():
        v = negate(m, e, a)
        if v is None:
            return None
        inverse.append(v)
    for a in m.elements():
        if mon.star[inverse[a]][a] != e:
            raise ValueError(f"negation at {a} is not a star-inverse; "
                             "the base table is not a valid ccm-magma")
    return GroupStructure(monoid=mon, inverse=tuple(inverse))


def monoid_isomorphism(m: FiniteMagma, u: int, v: int) -> Homomorphism:
    """Isomorphism a -> double(u, a op v) between the monoids over u and v.

    Verifies unit preservation, the homomorphism law, that
    a -> double(v, a op u) is a two-sided inverse, and the interchange
    identity star_u(a,b) = star_u(star_v(a,b), v) for all pairs.
    """
    if m.table[u][u] != u:
        raise NotIdempotentError(f"element {u} is not idempotent")
    if m.table[v][v] != v:
        raise NotIdempotentError(f"element {v} is not idempotent")
    mon_u = internal_monoid(m, u)
    mon_v = internal_monoid(m, v)
    if mon_u is None or mon_v is None:
        raise ValueError("monoid structure missing; table is not homogeneous")
    du = double_table(m, u)
    dv = double_table(m, v)
    f = tuple(du[m.table[a][v]] for a in m.elements())
    g = tuple(dv[m.table[a][u]] for a in m.elements())
    if f[u] != v:
        raise ValueError("isomorphism does not send u to v")
    su, sv = mon_u.star, mon_v.star
    for a in m.elements():
        if g[f[a]] != a or f[g[a]] != a:
            raise ValueError("doubling maps are not mutually inverse")
        for b in m.elements():
            if f[su[a][b]] != sv[f[a]][f[b]]:
                raise ValueError(f"homomorphism law fails at ({a}, {b})")
            if su[a][b] != su[sv[a][b]][v]:
                raise ValueError(f"interchange identity fails at ({a}, {b})")
    return Homomorphism(mon_u.as_magma(), mon_v.as_magma(), f)


def doubling_additivity_check(m: FiniteMagma, u: int, v: int) -> bool:
    """Whether double(u,a) op double(v,b) = double(u op v, a op b) for all a, b."""
    du = double_table(m, u)
    dv = double_table(m, v)
    duv = double_table(m, m.table[u][v])
    t = m.table
    for a in m.elements():
        for b in m.elements():
            xa, xb = du[a], dv[b]
            rhs = duv[t[a][b]]
            if xa is None or xb is None or rhs is None:
                return False
            if t[xa][xb] != rhs:
                return False
    return True


@dataclass(frozen=True)
class AssociativityReport:
    """Four equivalent views of associativity at an idempotent e."""
    associative: bool
    unit_for_op: bool
    doubling_is_identity: bool
    op_is_monoid: bool

    def all_flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.associative, self.unit_for_op,
                self.doubling_is_identity, self.op_is_monoid)


def associativity_equivalences(m: FiniteMagma, e: int) -> AssociativityReport:
    """Evaluate independently: op associative; e a unit for op; doubling at e
    the identity; (m, op, e) satisfying the monoid invariants.  The four are
    equal on valid tables and that equality is asserted."""
    if m.table[e][e] != e:
        raise NotIdempotentError(f"element {e} is not idempotent")
    t = m.arr
    n = m.order
    idx = np.arange(n)
    assoc = np.array_equal(t[t], t[idx[:, None, None], t[None, :, :]])
    unit = all(m.table[e][x] == x for x in m.elements())
    dbl = all(double(m, e, a) == a for a in m.elements())
    monoid_direct = _monoid_invariants_hold(m, e, t.copy())
    rep = AssociativityReport(assoc, unit, dbl, monoid_direct)
    if len(set(rep.all_flags())) != 1:
        raise ValueError(f"equivalence broken: {rep}; table is not a valid ccm-magma")
    return rep


def midpoint_distributivity_check(m: FiniteMagma,
                                  s: MonoidStructure) -> tuple[bool, bool]:
    """(every element idempotent, star distributes over op).

    The two flags agree on valid tables; disagreement raises.
    """
    if s.base != m:
        raise ValueError("monoid structure was built over a different table")
    all_idem = all(m.table[i][i] == i for i in m.elements())
    star = np.array(s.star, dtype=np.intp)
    t = m.arr
    distributive = bool(np.array_equal(star[:, t], t[star[:, :, None], star[:, None, :]]))
    # star[:,t][x,y,z] = star(x, y op z); rhs[x,y,z] = star(x,y) op star(x,z)
    if all_idem != distributive:
        raise ValueError("distributivity and idempotency flags disagree; "
                         "table is not a valid ccm-magma")
    return all_idem, distributive


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class ClassificationLabel:
    label: str
    expansive: bool
    symmetric: bool
    monoid: bool
    group: bool

    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.expansive, self.symmetric, self.monoid, self.group)


# the only six flag combinations that can occur
_LABELS = {
    (True, True, True, True): "I",
    (True, False, True, False): "II",
    (False, True, False, False): "III",
    (False, False, False, False): "IV",
    (False, False, True, False): "V",
    (False, True, True, True): "VI",
}


def classify(expansive: bool, symmetric: bool, monoid: bool,
             group: bool) -> ClassificationLabel:
    """Map a flag quadruple to its label I..VI; any other combination is an
    upstream bug and raises."""
    key = (bool(expansive), bool(symmetric), bool(monoid), bool(group))
    if key not in _LABELS:
        raise ValueError(f"flag combination {key} is not among the six possible ones")
    return ClassificationLabel(_LABELS[key], *key)


def classify_finite(m: FiniteMagma, e: int) -> ClassificationLabel:
    """Classification of a finite table at idempotent e, computed from
    scratch (always I on valid input, but never hard-coded)."""
    if m.table[e][e] != e:
        raise NotIdempotentError(f"element {e} is not idempotent")
    exp = is_expansive(m, e)
    sym = is_symmetric(m, e)
    mon = internal_monoid(m, e) is not None
    grp = mon and internal_group(m, e) is not None
    return classify(exp, sym, mon, grp)
