"""Nonnegative exponents with p-power denominators."""
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class ExponentQ:
    """The rational num / p**dexp, kept reduced.

    >>> ExponentQ.make(2, 2, 2)
    ExponentQ(num=1, dexp=1, p=2)
    """
    num: int
    dexp: int
    p: int

    def __post_init__(self):
        if self.num < 0 or self.dexp < 0:
            raise ValueError("exponents are nonnegative")
        if self.dexp > 0 and self.num % self.p == 0:
            raise ValueError("ExponentQ not reduced; use ExponentQ.make")

    @classmethod
    def make(cls, num, dexp, p):
        if num < 0 or dexp < 0:
            raise ValueError("exponents are nonnegative")
        while dexp > 0 and num % p == 0:
            num //= p
            dexp -= 1
        if num == 0:
            dexp = 0
        return cls(num, dexp, p)

    @classmethod
    def parse(cls, text, p):
        text = str(text).strip().strip("()")
        if "/" in text:
            a, b = text.split("/")
            a, b = int(a), int(b)
        else:
            a, b = int(text), 1
        d = 0
        while b % p == 0:
            b //= p
            d += 1
        if b != 1:
            raise ValueError(f"denominator of {text} is not a power of {p}")
        return cls.make(a, d, p)

    def _cmp_key(self, other):
        # cross multiplication, no normalisation to a common Fraction
        if other.p != self.p:
            raise ValueError("exponents for different primes")
        return self.num * other.p ** other.dexp, other.num * self.p ** self.dexp

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __add__(self, other):
        d = max(self.dexp, other.dexp)
        n = self.num * self.p ** (d - self.dexp) + other.num * self.p ** (d - other.dexp)
        return ExponentQ.make(n, d, self.p)

    def __sub__(self, other):
        d = max(self.dexp, other.dexp)
        n = self.num * self.p ** (d - self.dexp) - other.num * self.p ** (d - other.dexp)
        return ExponentQ.make(n, d, self.p)

    def scale(self, k):
        return ExponentQ.make(self.num * k, self.dexp, self.p)

    def divide_p(self, times=1):
        return ExponentQ.make(self.num, self.dexp + times, self.p)

    def at_level(self, level):
        """Numerator over p**level, or None if not representable there."""
        if self.dexp > level:
            return None
        return self.num * self.p ** (level - self.dexp)

    def ceil_at_level(self, level):
        q, r = divmod(self.num * self.p ** level, self.p ** self.dexp)
        return q + (1 if r else 0)

    def as_fraction(self):
        return Fraction(self.num, self.p ** self.dexp)

    def is_zero(self):
        return self.num == 0

    def __str__(self):
        if self.dexp == 0:
            return str(self.num)
        return f"{self.num}/{self.p ** self.dexp}"
