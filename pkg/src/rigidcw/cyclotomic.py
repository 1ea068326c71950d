"""Exact arithmetic in the rings of cyclotomic integers Z[zeta_n]."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from sympy import Symbol, cyclotomic_poly

_x = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = cyclotomic_poly(n, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _reduce(coeffs: list[int], n: int) -> tuple[int, ...]:
    phi = cyclotomic_coefficients(n)
    deg = len(phi) - 1
    a = list(coeffs) + [0] * max(0, deg - len(coeffs))
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            base = i - deg
            for j, pj in enumerate(phi):
                a[base + j] -= c * pj
    return tuple(a[:deg])


class Cyclotomic:
    """An element of Z[zeta_n], stored reduced modulo the n-th cyclotomic polynomial."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.coeffs = _reduce(list(coeffs), n)

    @classmethod
    def from_int(cls, a: int, n: int = 1) -> "Cyclotomic":
        return cls(n, [a])

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        """``zeta_n ** k``."""
        k %= n
        return cls(n, [0] * k + [1])

    def lift(self, m: int) -> "Cyclotomic":
        """The same number expressed in Z[zeta_m]; ``n`` must divide ``m``."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        step = m // self.n
        poly = [0] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return Cyclotomic(m, poly)

    def _unify(self, other):
        if isinstance(other, int):
            other = Cyclotomic.from_int(other)
        m = math.lcm(self.n, other.n)
        return self.lift(m), other.lift(m), m

    def __add__(self, other):
        a, b, m = self._unify(other)
        k = max(len(a.coeffs), len(b.coeffs))
        ca = a.coeffs + (0,) * (k - len(a.coeffs))
        cb = b.coeffs + (0,) * (k - len(b.coeffs))
        return Cyclotomic(m, [x + y for x, y in zip(ca, cb)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.n, [other * c for c in self.coeffs])
        a, b, m = self._unify(other)
        prod = [0] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return Cyclotomic(m, prod)

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclotomic":
        n = self.n
        poly = [0] * n
        for i, c in enumerate(self.coeffs):
            poly[(-i) % n] += c
        return Cyclotomic(n, poly)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclotomic.from_int(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b, _ = self._unify(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # hash the value in its smallest reachable conductor-free form: the complex value rounded
        z = complex(self)
        return hash((round(z.real, 9), round(z.imag, 9)))

    def is_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def integer_value(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __complex__(self):
        w = cmath.exp(2j * cmath.pi / self.n)
        return sum((c * w ** i for i, c in enumerate(self.coeffs)), 0j)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = f"z{self.n}" + (f"^{i}" if i > 1 else "")
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            terms.append(coef + mono)
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")
