"""Spinors for the complexified Clifford algebra of R^2n.

Fock model: the basis of S is indexed by subsets of {1..n}, encoded as
bitmasks in increasing order.  With creation operators a_j^+ and
annihilation operators a_j,

    gamma_{2j-1} = a_j^+ - a_j,    gamma_{2j} = i (a_j^+ + a_j),

so every gamma squares to -1 and all entries lie in {0, +-1, +-i}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from kdirac.consts import CLIFFORD_SIGN
from kdirac.exactla import I, ExactMatrix
from kdirac.exceptions import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorIndexOutOfRange,
    ArgumentErrorNotInAlgebra,
)

__all__ = ["SpinorSpace", "build", "act", "spin_action", "anticommutator_defects"]


def _jordan_wigner_sign(mask, j):
    below = mask & ((1 << (j - 1)) - 1)
    return -1 if bin(below).count("1") % 2 else 1


def _creation(n, j):
    size = 1 << n
    data = {}
    bit = 1 << (j - 1)
    for mask in range(size):
        if not mask & bit:
            data[(mask | bit, mask)] = _jordan_wigner_sign(mask, j)
    return ExactMatrix.from_sparse(size, size, data)


class SpinorSpace:
    __slots__ = ("n", "gammas", "plus_indices", "minus_indices")

    def __init__(self, n, gammas, plus_indices, minus_indices):
        self.n = n
        self.gammas = gammas
        self.plus_indices = plus_indices
        self.minus_indices = minus_indices

    @property
    def dim(self):
        return 1 << self.n

    @property
    def parity_split(self):
        return (self.plus_indices, self.minus_indices)

    def gamma(self, alpha):
        if not 1 <= alpha <= 2 * self.n:
            raise ArgumentErrorIndexOutOfRange(
                f"gamma index {alpha} outside 1..{2 * self.n}"
            )
        return self.gammas[alpha - 1]

    def parity(self, index):
        """+1 for a basis vector of S+, -1 for S-."""
        return -1 if bin(index).count("1") % 2 else 1

    def __repr__(self):
        return f"<SpinorSpace n={self.n} dim={self.dim}>"


@lru_cache(maxsize=None)
def build(n):
    if n < 1:
        raise ArgumentErrorIndexOutOfRange(f"spinors need n >= 1, got {n}")
    gammas = []
    for j in range(1, n + 1):
        up = _creation(n, j)
        down = up.transpose()
        gammas.append(up - down)
        gammas.append((up + down).scale(I))
    size = 1 << n
    plus = tuple(m for m in range(size) if bin(m).count("1") % 2 == 0)
    minus = tuple(m for m in range(size) if bin(m).count("1") % 2 == 1)
    return SpinorSpace(n, tuple(gammas), plus, minus)


def act(space, alpha, psi):
    """gamma_alpha applied to the spinor `psi`."""
    psi = tuple(psi)
    if len(psi) != space.dim:
        raise ArgumentErrorDimensionMismatch(
            f"spinor of length {len(psi)} for dim S = {space.dim}"
        )
    return space.gamma(alpha).apply(psi)


def spin_action(space, b):
    """The spin representation of b in so(2n): -1/4 sum b_{mu nu} gamma_mu gamma_nu.

    It satisfies [s_b, gamma_mu] = sum_nu b_{nu mu} gamma_nu.
    """
    two_n = 2 * space.n
    if b.shape != (two_n, two_n):
        raise ArgumentErrorDimensionMismatch(f"need a {two_n}x{two_n} matrix")
    if not b.is_antisymmetric():
        raise ArgumentErrorNotInAlgebra("spin_action needs an antisymmetric matrix")
    rv = ExactMatrix.zeros(space.dim, space.dim)
    for (mu, nu), value in b.items():
        rv = rv + (space.gammas[mu] @ space.gammas[nu]).scale(value)
    return rv.scale(Fraction(-1, 4))


def anticommutator_defects(space):
    """Pairs (alpha, beta) violating gamma_a gamma_b + gamma_b gamma_a = -2 delta."""
    ident = ExactMatrix.identity(space.dim)
    bad = []
    for alpha in range(1, 2 * space.n + 1):
        for beta in range(alpha, 2 * space.n + 1):
            ga, gb = space.gamma(alpha), space.gamma(beta)
            expected = ident.scale(2 * CLIFFORD_SIGN) if alpha == beta else None
            got = ga @ gb + gb @ ga
            if expected is None and not got.is_zero():
                bad.append((alpha, beta))
            elif expected is not None and got != expected:
                bad.append((alpha, beta))
    return bad
