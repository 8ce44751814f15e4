"""Seeded random generation of finite commutative medial quasigroups in
affine form over a random abelian group, plus group extraction and
isomorphism certificates via invariant factors.

Everything is deterministic per (order, seed); the generating parameters
travel with the table so any artifact can be audited and rebuilt.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .core import FiniteMagma, magma_from_function


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Direct sum of cyclic groups, factors in invariant-factor form
    (each divides the next); elements are mixed-radix encoded."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        for f in self.factors:
            if f < 2:
                raise ValueError("factors must be >= 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"{self.factors} is not in invariant-factor form")

    @property
    def size(self) -> int:
        return math.prod(self.factors)

    def decode(self, k: int) -> tuple[int, ...]:
        out = []
        for f in reversed(self.factors):
            k, r = divmod(k, f)
            out.append(r)
        return tuple(reversed(out))

    def encode(self, coords) -> int:
        k = 0
        for f, c in zip(self.factors, coords):
            k = k * f + (c % f)
        return k

    def add(self, i: int, j: int) -> int:
        return self.encode(a + b for a, b in zip(self.decode(i), self.decode(j)))

    def neg(self, i: int) -> int:
        return self.encode(-a for a in self.decode(i))

    @cached_property
    def addition_table(self) -> FiniteMagma:
        return magma_from_function(self.size, self.add)


@dataclass(frozen=True)
class ToyodaParams:
    """Provenance of a generated quasigroup: x op y = phi(x + y) + c over
    the group, then a relabeling permutation; phi multiplies each cyclic
    coordinate by a unit (no cross-factor mixing is sampled)."""

    group: AbelianGroupSpec
    multipliers: tuple[int, ...]
    translation: int
    relabeling: tuple[int, ...]

    def __post_init__(self):
        if len(self.multipliers) != len(self.group.factors):
            raise ValueError("one multiplier per factor required")
        for m, f in zip(self.multipliers, self.group.factors):
            if math.gcd(m, f) != 1:
                raise ValueError(f"multiplier {m} is not a unit mod {f}")
        if sorted(self.relabeling) != list(range(self.group.size)):
            raise ValueError("relabeling is not a permutation")
        table = self.automorphism
        n = self.group.size
        if sorted(table) != list(range(n)):
            raise ValueError("automorphism action is not a bijection")
        for i in range(n):
            for j in range(n):
                if table[self.group.add(i, j)] != self.group.add(table[i], table[j]):
                    raise ValueError("action table is not additive")

    @cached_property
    def automorphism(self) -> tuple[int, ...]:
        """Action table of phi on group element indices."""
        g = self.group
        return tuple(
            g.encode(m * c for m, c in zip(self.multipliers, g.decode(i)))
            for i in range(g.size))

    def to_json_dict(self) -> dict:
        return {
            "invariant_factors": list(self.group.factors),
            "multipliers": list(self.multipliers),
            "translation": self.translation,
            "relabeling": list(self.relabeling),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ToyodaParams":
        return cls(AbelianGroupSpec(tuple(d["invariant_factors"])),
                   tuple(d["multipliers"]), d["translation"],
                   tuple(d["relabeling"]))


def toyoda_table(params: ToyodaParams) -> FiniteMagma:
    """Rebuild the quasigroup table from its parameters."""
    g = params.group
    phi = params.automorphism
    c = params.translation
    sigma = params.relabeling
    inv_sigma = [0] * g.size
    for i, v in enumerate(sigma):
        inv_sigma[v] = i
    return magma_from_function(
        g.size,
        lambda x, y: sigma[g.add(phi[g.add(inv_sigma[x], inv_sigma[y])], c)])


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _random_partition(e: int, rng: random.Random) -> list[int]:
    parts = []
    while e:
        k = rng.randint(1, e)
        parts.append(k)
        e -= k
    return sorted(parts, reverse=True)


def _invariant_factors_from_primary(primary: dict[int, list[int]]) -> tuple[int, ...]:
    # primary: prime -> exponent partition sorted descending
    width = max((len(v) for v in primary.values()), default=0)
    ds = []
    for slot in range(width):
        d = 1
        for p, exps in primary.items():
            if slot < len(exps):
                d *= p ** exps[slot]
        ds.append(d)
    return tuple(reversed(ds))  # ascending, each divides the next


def random_group_spec(order: int, rng: random.Random) -> AbelianGroupSpec:
    """Random isomorphism type: per prime, a random partition of the
    exponent chooses the prime-power cyclic factors."""
    if order == 1:
        return AbelianGroupSpec(())
    primary = {p: _random_partition(e, rng)
               for p, e in sorted(_prime_factorization(order).items())}
    return AbelianGroupSpec(_invariant_factors_from_primary(primary))


def generate_quasigroup(order: int, seed: int) -> tuple[FiniteMagma, ToyodaParams]:
    """Deterministic random commutative medial quasigroup of the given order.

    Samples group type, per-factor unit multipliers, a translation and a
    relabeling from one seeded generator, so (order, seed) pins the output.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    rng = random.Random(order * 0x1FFFFFFFFFFFFF + seed)
    spec = random_group_spec(order, rng)
    multipliers = []
    for f in spec.factors:
        while True:
            m = rng.randrange(1, f)
            if math.gcd(m, f) == 1:
                multipliers.append(m)
                break
    translation = rng.randrange(order) if order > 1 else 0
    relabeling = list(range(order))
    rng.shuffle(relabeling)
    params = ToyodaParams(spec, tuple(multipliers), translation, tuple(relabeling))
    return toyoda_table(params), params


# ---------------------------------------------------------------------------
# group extraction and isomorphism type

def extract_group(m: FiniteMagma, e: int) -> Optional[FiniteMagma]:
    """Divide out the operation by column e: star(i, j) is the unique k with
    k op e = i op j.  On a valid table the result is an abelian group with
    identity e for any e; that is verified, not assumed.
    """
    n = m.order
    col = [m.table[x][e] for x in m.elements()]
    if len(set(col)) != n:
        raise ValueError(f"column {e} is not injective: table is not cancellative")
    inv_col = [0] * n
    for x, v in enumerate(col):
        inv_col[v] = x
    star = magma_from_function(n, lambda i, j: inv_col[m.table[i][j]])
    if not _is_abelian_group(star, e):
        return None
    return star


def _is_abelian_group(star: FiniteMagma, e: int) -> bool:
    t = star.arr
    n = star.order
    idx = np.arange(n)
    if not np.array_equal(t[e], idx):
        return False
    if not np.array_equal(t, t.T):
        return False
    if not np.array_equal(t[t], t[idx[:, None, None], t[None, :, :]]):
        return False
    return all(e in row for row in star.table)


def group_identity(star: FiniteMagma) -> Optional[int]:
    for e in star.elements():
        if all(star.table[e][x] == x for x in star.elements()):
            return e
    return None


def _require_group(star: FiniteMagma) -> int:
    e = group_identity(star)
    if e is None or not _is_abelian_group(star, e):
        raise ValueError("input is not an abelian group table")
    return e


def element_orders(star: FiniteMagma) -> tuple[int, ...]:
    """Multiplicative order of each element, by power iteration."""
    e = _require_group(star)
    out = []
    for x in star.elements():
        acc, k = x, 1
        while acc != e:
            acc = star.table[acc][x]
            k += 1
        out.append(k)
    return tuple(out)


def invariant_factors(star: FiniteMagma) -> list[int]:
    """Invariant-factor decomposition from the multiset of element orders.

    Per prime p, counting elements of order dividing p^k recovers the
    partition of the p-primary component; recombining per slot gives the
    d_1 | d_2 | ... list that determines the group up to isomorphism.
    """
    _require_group(star)
    orders = element_orders(star)
    n = star.order
    if n == 1:
        return []
    primary: dict[int, list[int]] = {}
    for p in sorted(_prime_factorization(n)):
        exps_of_parts = []
        prev_s = 0
        k = 1
        while True:
            c = sum(1 for o in orders if p ** k % o == 0)
            s = 0
            while c % p == 0:
                c //= p
                s += 1
            if c != 1:
                raise ValueError("torsion counts are not prime powers; not a group")
            m_k = s - prev_s  # number of partition parts >= k
            if m_k == 0:
                break
            exps_of_parts.append(m_k)
            prev_s = s
            k += 1
        depth = len(exps_of_parts)
        parts = [sum(1 for k in range(depth) if exps_of_parts[k] >= i)
                 for i in range(1, exps_of_parts[0] + 1)] if depth else []
        if parts:
            primary[p] = parts
    return list(_invariant_factors_from_primary(primary))


def groups_isomorphic(g1: FiniteMagma, g2: FiniteMagma) -> bool:
    return invariant_factors(g1) == invariant_factors(g2)


def idempotent_parity_audit(m: FiniteMagma) -> bool:
    """Idempotent count of a valid table is 0 or odd; even counts cannot
    occur because the idempotents form a subquasigroup, and commutative
    idempotent quasigroups have odd order."""
    count = sum(1 for i in m.elements() if m.table[i][i] == i)
    return count == 0 or count % 2 == 1
