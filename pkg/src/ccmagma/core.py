"""Finite magmas given by Cayley tables, with exhaustive axiom checking.

Elements are dense indices 0..n-1.  A table is "valid" when it satisfies
commutativity (M1), cancellation (M2) and mediality (M3); all checks here
are exhaustive and return lexicographically smallest counterexamples, so
reports are deterministic and can be frozen in golden tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np


class ParseError(ValueError):
    """Malformed Cayley-table text."""


@dataclass(frozen=True)
class FiniteMagma:
    """An order-n magma as an n x n grid of element indices."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("order must be >= 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"entry {v} out of range 0..{n - 1}")

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def arr(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.intp)
        a.setflags(write=False)
        return a

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):  # the full table is rarely useful in tracebacks
        return f"FiniteMagma(order={self.order})"


def magma_from_function(n: int, fn) -> FiniteMagma:
    return FiniteMagma(tuple(tuple(fn(x, y) for y in range(n)) for x in range(n)))


# ---------------------------------------------------------------------------
# text format: first non-comment line is the order, then n rows of n indices;
# lines starting with '#' are comments.  The writer output is bit-stable.

def parse_magma(text: str) -> FiniteMagma:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))
    if not lines:
        raise ParseError("empty input")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"line {lineno}: order {head!r} is not an integer") from None
    if n < 1:
        raise ParseError(f"line {lineno}: order must be >= 1, got {n}")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}")
    rows = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, found {len(parts)}")
        row = []
        for p in parts:
            try:
                v = int(p)
            except ValueError:
                raise ParseError(f"line {lineno}: entry {p!r} is not an integer") from None
            if not 0 <= v < n:
                raise ParseError(f"line {lineno}: entry {v} >= order {n}" if v >= 0
                                 else f"line {lineno}: entry {v} is negative")
            row.append(v)
        rows.append(tuple(row))
    return FiniteMagma(tuple(rows))


def format_magma(m: FiniteMagma) -> str:
    out = [str(m.order)]
    out.extend(" ".join(str(v) for v in row) for row in m.table)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# axiom report

@dataclass(frozen=True)
class AxiomReport:
    commutative: bool
    commutative_counterexample: Optional[tuple[int, int]]
    cancellative: bool
    cancellative_counterexample: Optional[tuple[int, int, int]]
    medial: bool
    medial_counterexample: Optional[tuple[int, int, int, int]]
    associative: bool
    associative_counterexample: Optional[tuple[int, int, int]]
    idempotents: tuple[int, ...]

    @property
    def is_ccm(self) -> bool:
        return self.commutative and self.cancellative and self.medial

    def to_dict(self) -> dict:
        def ce(t):
            return list(t) if t is not None else None
        return {
            "commutative": self.commutative,
            "commutative_counterexample": ce(self.commutative_counterexample),
            "cancellative": self.cancellative,
            "cancellative_counterexample": ce(self.cancellative_counterexample),
            "medial": self.medial,
            "medial_counterexample": ce(self.medial_counterexample),
            "associative": self.associative,
            "associative_counterexample": ce(self.associative_counterexample),
            "idempotents": list(self.idempotents),
            "is_ccm": self.is_ccm,
        }


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    # np.argwhere scans in C order, so row 0 is the lexicographic minimum
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_axioms(m: FiniteMagma) -> AxiomReport:
    """Exhaustively evaluate M1, M2, M3 and associativity, all four always.

    Mediality costs O(n^4); it is evaluated in n^3-sized slices so order 64
    stays within a few megabytes.
    """
    t = m.arr
    n = m.order
    idx = np.arange(n)

    comm_ce = _first(t != t.T)

    # cancellation, both sides: columns injective (a+c = b+c => a = b) and
    # rows injective; scanning right violations first keeps reports stable
    off_diag = ~np.eye(n, dtype=bool)[:, :, None]
    right_ce = _first((t[:, None, :] == t[None, :, :]) & off_diag)
    left_ce = _first((t.T[:, None, :] == t.T[None, :, :]) & off_diag)
    canc_ce = right_ce if right_ce is not None else left_ce

    medial_ce = None
    for a in range(n):
        lhs = t[t[a][:, None, None], t[None, :, :]]       # [b,c,d] = (a+b)+(c+d)
        rhs = t[t[a][None, :, None], t[:, None, :]]       # [b,c,d] = (a+c)+(b+d)
        hit = _first(lhs != rhs)
        if hit is not None:
            medial_ce = (a, *hit)
            break

    assoc_lhs = t[t]                                      # [a,b,c] = (a+b)+c
    assoc_rhs = t[idx[:, None, None], t[None, :, :]]      # [a,b,c] = a+(b+c)
    assoc_ce = _first(assoc_lhs != assoc_rhs)

    return AxiomReport(
        commutative=comm_ce is None,
        commutative_counterexample=comm_ce,
        cancellative=canc_ce is None,
        cancellative_counterexample=canc_ce,
        medial=medial_ce is None,
        medial_counterexample=medial_ce,
        associative=assoc_ce is None,
        associative_counterexample=assoc_ce,
        idempotents=idempotents(m),
    )


def idempotents(m: FiniteMagma) -> tuple[int, ...]:
    return tuple(i for i in m.elements() if m.table[i][i] == i)


def idempotent_subalgebra(m: FiniteMagma) -> tuple[int, ...]:
    """Idempotent set, with its closure under the operation asserted.

    A closure failure is impossible for a valid table and signals broken
    input (non-commutative or non-medial).
    """
    idem = idempotents(m)
    members = set(idem)
    for x in idem:
        for y in idem:
            z = m.table[x][y]
            if z not in members:
                raise ValueError(
                    f"idempotents not closed: {x} op {y} = {z} is not idempotent")
    return idem


def subalgebra_closure(m: FiniteMagma, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest subset containing seed and closed under the operation."""
    current = set(seed)
    for x in current:
        if not 0 <= x < m.order:
            raise ValueError(f"seed element {x} out of range")
    frontier = list(current)
    while frontier:
        fresh = []
        for x in frontier:
            for y in current:
                for z in (m.table[x][y], m.table[y][x]):
                    if z not in current:
                        fresh.append(z)
        for z in fresh:
            current.add(z)
        frontier = fresh
    return tuple(sorted(current))


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class Homomorphism:
    source: FiniteMagma
    target: FiniteMagma
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.source.order:
            raise ValueError("map length must equal source order")
        for v in self.map:
            if not 0 <= v < self.target.order:
                raise ValueError(f"map value {v} out of target range")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self):
        return f"Homomorphism({self.source.order}->{self.target.order}, map={self.map})"


def identity_hom(m: FiniteMagma) -> Homomorphism:
    return Homomorphism(m, m, tuple(m.elements()))


def constant_hom(source: FiniteMagma, target: FiniteMagma, value: int) -> Homomorphism:
    if target.table[value][value] != value:
        raise ValueError(f"constant maps are homomorphisms only at idempotents; "
                         f"{value} is not idempotent")
    return Homomorphism(source, target, (value,) * source.order)


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    if inner.target is not outer.source and inner.target != outer.source:
        raise ValueError("composition endpoint mismatch")
    return Homomorphism(inner.source, outer.target,
                        tuple(outer.map[v] for v in inner.map))


def is_homomorphism(h: Homomorphism) -> tuple[bool, Optional[tuple[int, int]]]:
    """Exhaustive check of map(x op y) == map(x) op' map(y)."""
    mp = np.array(h.map, dtype=np.intp)
    lhs = mp[h.source.arr]
    rhs = h.target.arr[mp[:, None], mp[None, :]]
    ce = _first(lhs != rhs)
    return ce is None, ce


# ---------------------------------------------------------------------------
# products and table-building constructions

def pair_index(i: int, j: int, right_order: int) -> int:
    return i * right_order + j


def pair_split(k: int, right_order: int) -> tuple[int, int]:
    return divmod(k, right_order)


def product_magma(m: FiniteMagma, n: FiniteMagma) -> FiniteMagma:
    """Componentwise operation on pairs, encoded row-major (i*|N| + j)."""
    no = n.order

    def op(a, b):
        i1, j1 = pair_split(a, no)
        i2, j2 = pair_split(b, no)
        return pair_index(m.table[i1][i2], n.table[j1][j2], no)

    return magma_from_function(m.order * no, op)


def pair_hom(f1: Homomorphism, f2: Homomorphism) -> Homomorphism:
    """The map (x, y) -> f1(x) op f2(y) out of the product of the sources.

    Mediality makes this a homomorphism whenever f1 and f2 are; the result
    is verified before being returned.
    """
    if f1.target != f2.target:
        raise ValueError("pair_hom requires a shared target")
    b = f1.target
    prod = product_magma(f1.source, f2.source)
    mp = tuple(b.table[f1.map[i]][f2.map[j]]
               for i in f1.source.elements() for j in f2.source.elements())
    h = Homomorphism(prod, b, mp)
    ok, ce = is_homomorphism(h)
    if not ok:
        raise ValueError(f"pair_hom produced a non-homomorphism at {ce}; "
                         "inputs were not homomorphisms")
    return h


def derived_magma(m: FiniteMagma, g: Homomorphism, a: int) -> FiniteMagma:
    """New table (x, y) -> g(x op y) op a for an injective endomorphism g."""
    if g.source != m or g.target != m:
        raise ValueError("g must be an endomorphism of m")
    if len(set(g.map)) != m.order:
        raise ValueError("g must be injective")
    ok, ce = is_homomorphism(g)
    if not ok:
        raise ValueError(f"g is not a homomorphism, counterexample {ce}")
    if not 0 <= a < m.order:
        raise ValueError("a out of range")
    return magma_from_function(m.order, lambda x, y: m.table[g.map[m.table[x][y]]][a])


def weak_maltsev_p(m: FiniteMagma, x: int, y: int, z: int) -> int:
    """Ternary term (y op x) op (z op y); satisfies p(x,y,y) = p(y,y,x) and
    p(x,a,a) = p(y,a,a) implies x = y on valid tables."""
    t = m.table
    return t[t[y][x]][t[z][y]]
