"""Coefficient fields: prime fields F_p and the rationals.

Elements of a prime field are plain Python ints in ``[0, p)``; rational
elements are ``fractions.Fraction``.  Both field objects expose the same
small interface so the rest of the library can stay field-agnostic.
Matrices use numpy arrays: ``int64`` for prime fields, ``object`` dtype
(holding Fractions) for the rationals.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p for a prime p >= 11.

    The lower bound keeps every factorial used by polynomial contraction
    (degrees up to 8) invertible.
    """

    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p < 11:
            raise ValueError(f"prime field needs p >= 11, got {p}")
        self.p = p

    def of(self, x) -> int:
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    # -- array helpers ------------------------------------------------

    dtype = np.int64

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def random_element(self, rng) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """Exact rationals via ``fractions.Fraction`` (no overflow possible)."""

    kind = "rationals"
    p = None

    def of(self, x) -> Fraction:
        return Fraction(x)

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def div(self, a, b):
        return a / b

    dtype = object

    def array(self, data) -> np.ndarray:
        arr = np.empty(np.shape(data), dtype=object)
        flat = arr.reshape(-1)
        src = np.asarray(data, dtype=object).reshape(-1)
        for i, v in enumerate(src):
            flat[i] = Fraction(v)
        return arr

    def zeros(self, shape) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr[...] = Fraction(0)
        return arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def random_element(self, rng) -> Fraction:
        return Fraction(rng.randrange(-50, 51))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "RationalField()"


Field = PrimeField | RationalField


def field_from_spec(spec: str | int) -> Field:
    """Build a field from a CLI-style spec: an integer prime or "rationals"."""
    if spec == "rationals":
        return RationalField()
    return PrimeField(int(spec))
