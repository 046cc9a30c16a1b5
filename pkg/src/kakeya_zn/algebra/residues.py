"""Exact arithmetic in Z/NZ: factorization, CRT, digits, valuations and binomials.

Everything here is a pure function on immutable values.
"""

import math
from collections.abc import Sequence
from fractions import Fraction

from sympy import factorint, totient
from sympy.ntheory.modular import crt

from kakeya_zn.core.constants import TRIAL_DIVISION_LIMIT
from kakeya_zn.core.errors import InvalidInputError, ModulusMismatchError
from kakeya_zn.domain.models import Factorization, ZmodElem


def factorize(N: int) -> Factorization:
    """Prime-power factorization of N, primes in increasing order."""
    if N < 2:
        raise InvalidInputError(
            f"factorize needs N >= 2, got {N}",
            details={"source": "ring-core", "operation": "factorize", "N": N},
        )
    if N > TRIAL_DIVISION_LIMIT:
        raise InvalidInputError(
            f"N = {N} is beyond the supported range",
            details={"source": "ring-core", "operation": "factorize", "N": N, "limit": TRIAL_DIVISION_LIMIT},
        )
    return Factorization(N=N, factors=tuple(sorted(factorint(N).items())))


def is_unit(x: ZmodElem) -> bool:
    return math.gcd(x.value, x.modulus) == 1


def crt_split(x: ZmodElem, f: Factorization) -> list[ZmodElem]:
    """Residues of x modulo each prime power of f."""
    if f.N != x.modulus:
        raise ModulusMismatchError(
            f"factorization of {f.N} does not match modulus {x.modulus}",
            details={"source": "ring-core", "operation": "crt_split", "N": f.N, "modulus": x.modulus},
        )
    return [ZmodElem.of(x.value, q) for q in f.moduli]


def crt_combine_values(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """The unique least residue mod Π moduli congruent to each residue; moduli pairwise coprime."""
    if len(residues) != len(moduli):
        raise ModulusMismatchError(
            "one residue per modulus is required",
            details={"source": "ring-core", "operation": "crt_combine", "residues": len(residues)},
        )
    if len(moduli) == 1:
        return residues[0] % moduli[0]
    combined = crt(list(moduli), list(residues), check=True)
    if combined is None:
        raise ModulusMismatchError(
            "residues are inconsistent for the given moduli",
            details={"source": "ring-core", "operation": "crt_combine", "moduli": list(moduli)},
        )
    return int(combined[0])


def crt_combine(parts: Sequence[ZmodElem], f: Factorization) -> ZmodElem:
    """Inverse of crt_split."""
    if tuple(part.modulus for part in parts) != f.moduli:
        raise ModulusMismatchError(
            "component moduli do not match the factorization",
            details={
                "source": "ring-core",
                "operation": "crt_combine",
                "moduli": [part.modulus for part in parts],
                "expected": list(f.moduli),
            },
        )
    return ZmodElem(value=crt_combine_values([part.value for part in parts], f.moduli), modulus=f.N)


def p_digits(x: int, p: int, length: int) -> list[int]:
    """Base-p digits of x, lowest first, padded to ``length``."""
    if x < 0 or x >= p**length:
        raise InvalidInputError(
            f"{x} does not fit in {length} base-{p} digits",
            details={"source": "ring-core", "operation": "p_digits", "x": x, "p": p, "length": length},
        )
    digits = []
    for _ in range(length):
        x, digit = divmod(x, p)
        digits.append(digit)
    return digits


def from_digits(digits: Sequence[int], p: int) -> int:
    """Horner evaluation of a low-to-high digit list."""
    value = 0
    for digit in reversed(digits):
        value = value * p + digit
    return value


def p_valuation(x: int, p: int) -> int:
    """Largest t with p^t dividing x."""
    if x <= 0:
        raise InvalidInputError(
            f"valuation is defined for positive integers, got {x}",
            details={"source": "ring-core", "operation": "p_valuation", "x": x, "p": p},
        )
    t = 0
    while x % p == 0:
        x //= p
        t += 1
    return t


def lucas_binom(a: int, b: int, p: int) -> int:
    """C(a, b) mod p, one base-p digit at a time."""
    result = 1
    while a or b:
        a, a_digit = divmod(a, p)
        b, b_digit = divmod(b, p)
        if b_digit > a_digit:
            return 0
        result = result * math.comb(a_digit, b_digit) % p
    return result % p


def binom_exact(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def binom_real(x: Fraction | int, n: int) -> Fraction:
    """Generalized binomial C(x, n) = Π_{i=1}^{n} (x − n + i)/i for rational x."""
    if n < 0:
        raise InvalidInputError(
            f"binomial lower index must be nonnegative, got {n}",
            details={"source": "ring-core", "operation": "binom_real", "n": n},
        )
    x = Fraction(x)
    result = Fraction(1)
    for i in range(1, n + 1):
        result *= (x - n + i) / i
    return result


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def ceil_log(n: int, p: int) -> int:
    """Smallest a with p^a ≥ n, i.e. ⌈log_p n⌉ without floating point."""
    if n < 1 or p < 2:
        raise InvalidInputError(
            "ceil_log needs n >= 1 and p >= 2",
            details={"source": "ring-core", "operation": "ceil_log", "n": n, "p": p},
        )
    a, power = 0, 1
    while power < n:
        power *= p
        a += 1
    return a


def euler_phi(N: int) -> int:
    return int(totient(N))
