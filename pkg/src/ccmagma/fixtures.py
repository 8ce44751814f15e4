"""Small reference tables used across tests, docs and the CLI examples."""

from __future__ import annotations

from .core import FiniteMagma, magma_from_function


def affine_mod(n: int, alpha: int, beta: int = 0) -> FiniteMagma:
    """Table of x op y = alpha*(x+y) + beta over Z_n.

    Commutative and medial for every alpha; cancellative exactly when
    alpha is invertible mod n.
    """
    return magma_from_function(n, lambda x, y: (alpha * (x + y) + beta) % n)


def cyclic_add(n: int) -> FiniteMagma:
    """Addition table of Z_n (the associative case)."""
    return affine_mod(n, 1, 0)


def singleton() -> FiniteMagma:
    return FiniteMagma(((0,),))


# order-3 table with three idempotents, not associative
DOUBLE_MOD3 = affine_mod(3, 2, 0)

# order-3 table with no idempotents
DOUBLE_MOD3_SHIFTED = affine_mod(3, 2, 1)

# order-5 and order-9 doubling tables; 2 is invertible in both moduli
DOUBLE_MOD5 = affine_mod(5, 2, 0)
DOUBLE_MOD9 = affine_mod(9, 2, 0)
