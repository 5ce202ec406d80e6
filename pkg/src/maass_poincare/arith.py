"""Modular arithmetic: inverses, Kloosterman sums, coset representatives."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, DomainError

IMAG_TOL = 1e-9


def mod_inverse(d, c):
    """Inverse of ``d`` modulo ``c`` in ``[0, c)``; by convention 0 when ``c == 1``."""
    if c < 1:
        raise DomainError(f"modulus must be positive, got {c}")
    if c == 1:
        return 0
    try:
        return pow(d, -1, c)
    except ValueError:
        raise DomainError(f"{d} is not invertible modulo {c}") from None


@lru_cache(maxsize=4096)
def units(c):
    """Residues ``d`` in ``[0, c)`` with ``gcd(d, c) == 1`` and their inverses."""
    ds = [d for d in range(c) if math.gcd(d, c) == 1]
    return np.array(ds, dtype=np.int64), np.array([mod_inverse(d, c) for d in ds], dtype=np.int64)


def kloosterman(m, n, c):
    """Kloosterman sum ``K(m, n; c) = sum_{d mod c}^* e((m dbar + n d)/c)``.

    The sum is real; its imaginary part is computed and must be below
    ``IMAG_TOL``, otherwise :class:`ConsistencyError` is raised.
    """
    if c < 1:
        raise DomainError(f"Kloosterman modulus must be positive, got {c}")
    ds, dbars = units(c)
    phase = (m * dbars + n * ds) % c
    z = np.exp(2j * math.pi * phase / c)
    re, im = math.fsum(z.real), math.fsum(z.imag)
    if abs(im) > IMAG_TOL:
        raise ConsistencyError(f"K({m},{n};{c}) has imaginary part {im:g}")
    return re


def kloosterman_row(m, ns, c):
    """``K(m, n; c)`` for every ``n`` in ``ns`` at fixed ``c``."""
    ns = np.asarray(ns, dtype=np.int64)
    ds, dbars = units(c)
    phase = (m * dbars[:, None] + ds[:, None] * ns[None, :]) % c
    z = np.exp(2j * math.pi * phase / c).sum(axis=0)
    if z.size and np.max(np.abs(z.imag)) > IMAG_TOL:
        raise ConsistencyError(f"Kloosterman row for m={m}, c={c} is not real")
    return z.real


@dataclass(frozen=True)
class CosetRep:
    """An element ``(a b; c d)`` of ``Gamma_0(N)`` representing a coset."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self} is not 1")
        if self.c < 0:
            raise DomainError("coset representatives are normalized to c >= 0")

    def act(self, tau):
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau):
        """The factor ``c*tau + d``."""
        return self.c * tau + self.d


IDENTITY = CosetRep(1, 0, 0, 1)
T_MATRIX = CosetRep(1, 1, 0, 1)
S_MATRIX = CosetRep(0, -1, 1, 0)


def coset_reps(N, c_max):
    """Identity plus one matrix per ``(c, d mod c)`` with ``N | c <= c_max``, ``gcd(c, d) = 1``.

    Each representative ``(a b; c d)`` has ``a = dbar mod c`` and
    ``b = (a d - 1) / c``.  The remaining cosets of ``Gamma_inf \\ Gamma_0(N)``
    are obtained by right translation ``d -> d + c t``.
    """
    if N < 1:
        raise DomainError("level must be positive")
    reps = [IDENTITY]
    for c in range(N, c_max + 1, N):
        ds, dbars = units(c)
        for d, a in zip(ds.tolist(), dbars.tolist()):
            reps.append(CosetRep(a, (a * d - 1) // c, c, d))
    return reps
