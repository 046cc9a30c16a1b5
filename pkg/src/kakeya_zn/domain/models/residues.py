"""Residues mod N and the prime-power factorization of N."""

import math

from pydantic import Field, model_validator
from sympy import isprime

from .base import KznModel


class Factorization(KznModel):
    """N = p_1^{k_1} ... p_r^{k_r} with primes strictly increasing."""

    N: int = Field(ge=1)
    factors: tuple[tuple[int, int], ...]

    @model_validator(mode="after")
    def _check_factors(self) -> "Factorization":
        primes = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:], strict=False)):
            raise ValueError("primes must be strictly increasing")
        if any(k < 1 for _, k in self.factors):
            raise ValueError("every exponent must be at least 1")
        if not all(isprime(p) for p in primes):
            raise ValueError("every factor base must be prime")
        if math.prod(p**k for p, k in self.factors) != self.N:
            raise ValueError("factors do not multiply to N")
        return self

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def moduli(self) -> tuple[int, ...]:
        """The prime powers p_i^{k_i}, in factor order."""
        return tuple(p**k for p, k in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(k == 1 for _, k in self.factors)

    @property
    def is_prime_power(self) -> bool:
        return self.r == 1


class ZmodElem(KznModel):
    """An element of Z/NZ stored as its least nonnegative residue."""

    value: int
    modulus: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_range(self) -> "ZmodElem":
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} is not a least residue mod {self.modulus}")
        return self

    @classmethod
    def of(cls, value: int, modulus: int) -> "ZmodElem":
        """Reduce an arbitrary integer into Z/modulus."""
        return cls(value=value % modulus, modulus=modulus)
