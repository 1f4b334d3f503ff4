"""Elementary number theory: modular exponentiation, p-th power residue
tests, roots of unity mod ell, Bernoulli numbers, regular primes, p-adic
valuations.  Exact rationals are plain fractions.Fraction values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from ._primes import factorize, is_prime, primes_upto
from .errors import NotAUnitError, ParameterError, UndefinedValuationError

__all__ = [
    "ResidueClass",
    "pow_mod",
    "is_pth_power",
    "primitive_pth_root",
    "least_primitive_root",
    "bernoulli",
    "is_regular_prime",
    "p_adic_valuation",
    "is_prime",
    "primes_upto",
]


@dataclass(frozen=True)
class ResidueClass:
    """An element of Z/(modulus) with a prime modulus."""

    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ParameterError(f"modulus {self.modulus} is not prime")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def is_unit(self) -> bool:
        return self.value % self.modulus != 0

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        if self.modulus != other.modulus:
            raise ParameterError("moduli differ")
        return ResidueClass(self.value * other.value % self.modulus, self.modulus)

    def __int__(self) -> int:
        return self.value


def pow_mod(base: ResidueClass, exponent: int) -> ResidueClass:
    """base**exponent, reducing the exponent mod (modulus-1) for units first."""
    if exponent < 0:
        raise ParameterError("exponent must be nonnegative")
    m = base.modulus
    e = exponent
    if base.is_unit() and m > 2:
        e %= m - 1  # Fermat: unit^(m-1) = 1, and pow(v, 0, m) = 1 covers e = 0
    return ResidueClass(pow(base.value, e, m), m)


def is_pth_power(x: ResidueClass, p: int) -> bool:
    """True iff x is a p-th power in (Z/ell)^x, by x^((ell-1)/p) == 1."""
    ell = x.modulus
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if (ell - 1) % p != 0:
        raise ParameterError(f"{p} does not divide {ell} - 1")
    if not x.is_unit():
        raise NotAUnitError(f"{x.value} is not a unit mod {ell}")
    return pow(x.value, (ell - 1) // p, ell) == 1


@lru_cache(maxsize=None)
def least_primitive_root(ell: int) -> int:
    """Smallest generator of (Z/ell)^x for prime ell."""
    if not is_prime(ell):
        raise ParameterError(f"{ell} is not prime")
    if ell == 2:
        return 1
    cofactors = [(ell - 1) // q for q in factorize(ell - 1)]
    g = 2
    while True:
        if all(pow(g, c, ell) != 1 for c in cofactors):
            return g
        g += 1


def primitive_pth_root(p: int, ell: int) -> ResidueClass:
    """g^((ell-1)/p) mod ell for the least primitive root g: a deterministic
    primitive p-th root of unity, so cached downstream values are stable."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if not is_prime(ell):
        raise ParameterError(f"{ell} is not prime")
    if (ell - 1) % p != 0:
        raise ParameterError(f"{p} does not divide {ell} - 1")
    g = least_primitive_root(ell)
    return ResidueClass(pow(g, (ell - 1) // p, ell), ell)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number, convention B_1 = -1/2, by the defining
    recurrence sum_{j<=n} C(n+1, j) B_j = 0."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def is_regular_prime(p: int) -> bool:
    """p divides no numerator among B_2, B_4, ..., B_{p-3}."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if p == 2:
        raise ParameterError("regularity is defined for odd primes")
    return all(bernoulli(n).numerator % p != 0 for n in range(2, p - 2, 2))


def p_adic_valuation(n: int, p: int) -> int:
    """Largest e with p^e | n; undefined for n = 0."""
    if n == 0:
        raise UndefinedValuationError("v_p(0) is undefined")
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e
