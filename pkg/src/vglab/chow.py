"""Chow ring of P^n, Chern classes and Riemann-Roch for rank-2 bundles.

Classes are integer polynomials in the hyperplane class ``t`` truncated
modulo ``t^(n+1)``.  Euler characteristics come back as Fractions so that
non-integral values (Chern data violating integrality) stay visible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence, Tuple

from .errors import ParseError, VGLabError


class NonIntegerChi(VGLabError):
    def __init__(self, value):
        super().__init__(f"Euler characteristic {value} is not an integer")
        self.value = value


@dataclass(frozen=True)
class ChowClass:
    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)[: self.n + 1]
        c = c + (0,) * (self.n + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def one(cls, n: int) -> "ChowClass":
        return cls(n, (1,))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i <= self.n else 0

    def __mul__(self, other: "ChowClass") -> "ChowClass":
        return chow_mul(self, other)

    def __str__(self):
        return format_chow(self)


def _check_same(a: ChowClass, b: ChowClass):
    if a.n != b.n:
        raise ValueError(f"classes live on different projective spaces: P^{a.n} vs P^{b.n}")


def chow_mul(a: ChowClass, b: ChowClass) -> ChowClass:
    _check_same(a, b)
    n = a.n
    out = [0] * (n + 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b.coeffs[j]
    return ChowClass(n, tuple(out))


def chow_inv(a: ChowClass) -> ChowClass:
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError("only classes with constant term +-1 are invertible over Z")
    n = a.n
    inv = [0] * (n + 1)
    inv[0] = c0
    for k in range(1, n + 1):
        s = sum(a.coeffs[j] * inv[k - j] for j in range(1, k + 1))
        inv[k] = -s * c0
    return ChowClass(n, tuple(inv))


def chow_prod(classes: Iterable[ChowClass], n: int) -> ChowClass:
    out = ChowClass.one(n)
    for c in classes:
        out = chow_mul(out, c)
    return out


def chern_line_sum(n: int, degrees: Sequence[int]) -> ChowClass:
    return chow_prod((ChowClass(n, (1, d)) for d in degrees), n)


def chern_twist(c: ChowClass, rank: int, k: int) -> ChowClass:
    """Total Chern class of ``E(k)`` from that of ``E`` (rank ``rank``)."""
    out = []
    for i in range(c.n + 1):
        s = 0
        for j in range(i + 1):
            s += comb(rank - j, i - j) * c[j] * k ** (i - j) if rank - j >= 0 else 0
        out.append(s)
    return ChowClass(c.n, tuple(out))


def chern_omega_twist(n: int, k: int) -> ChowClass:
    """c(Omega_{P^n}(k)): the Euler sequence gives c(Omega) = (1 - t)^(n+1)."""
    if n < 1:
        raise ValueError("Omega needs n >= 1")
    omega = chow_prod([ChowClass(n, (1, -1))] * (n + 1), n)
    return chern_twist(omega, n, k)


def chern_sym2_omega1_p2() -> ChowClass:
    """c(S^2 Omega_{P^2}(1)) = c(O(1)^3)^(-1)."""
    return chow_inv(chern_line_sum(2, [1, 1, 1]))


# Chern data and Riemann-Roch ------------------------------------------------

@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: int
    c2: int
    c3: int | None = None

    def as_tuple(self):
        return (self.c1, self.c2) if self.c3 is None else (self.c1, self.c2, self.c3)

    def to_dict(self):
        d = {"rank": self.rank, "c1": self.c1, "c2": self.c2}
        if self.c3 is not None:
            d["c3"] = self.c3
        return d


def chern_data(total: ChowClass, rank: int) -> ChernData:
    if total.coeffs[0] != 1:
        raise ValueError("total Chern class must have constant term 1")
    return ChernData(rank, total[1], total[2], total[3] if total.n >= 3 else None)


def chi_line(n: int, a: int) -> Fraction:
    """chi(O_{P^n}(a)) = binom(a + n, n) read as a polynomial in ``a``."""
    num = 1
    for i in range(1, n + 1):
        num *= a + i
    return Fraction(num, factorial(n))


def twist_rank2(c1: int, c2: int, m: int) -> Tuple[int, int]:
    return c1 + 2 * m, c2 + c1 * m + m * m


def euler_char_p2(c1: int, c2: int, m: int = 0) -> int:
    """chi(E(m)) for a rank-2 bundle on P^2 with Chern classes (c1, c2)."""
    a, b = twist_rank2(c1, c2, m)
    val = Fraction(3 * a + a * a - 2 * b, 2) + 2
    if val.denominator != 1:
        raise NonIntegerChi(val)
    return int(val)


def euler_char_p3(c1: int, c2: int, m: int = 0) -> Fraction:
    """Riemann-Roch on P^3 for rank 2, as the cubic polynomial in ``m``."""
    m = Fraction(m)
    c1f = Fraction(c1)
    return (
        m ** 3 / 3
        + (2 + c1f / 2) * m ** 2
        + (Fraction(11, 3) + 2 * c1f + c1f ** 2 / 2 - c2) * m
        + 1
        + chi_line(3, c1)
        - 2 * c2
        - c1f * c2 / 2
    )


def euler_char_p3_checked(c1: int, c2: int, m: int = 0) -> int:
    val = euler_char_p3(c1, c2, m)
    if val.denominator != 1:
        raise NonIntegerChi(val)
    return int(val)


def _binom_poly(n: int):
    """Coefficients of ``a -> binom(a + n, n)`` as Fractions, low degree first."""
    coeffs = [Fraction(1)]
    for i in range(1, n + 1):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c * i
            nxt[k + 1] += c
        coeffs = nxt
    return [c / factorial(n) for c in coeffs]


def euler_char_rank2(n: int, c1: int, c2: int, m: int = 0) -> Fraction:
    """chi(E(m)) on P^n via the splitting principle.

    With Chern roots u, v (u + v = c1, uv = c2) the answer is
    P(u + m) + P(v + m) for P(a) = binom(a + n, n); the power sums of the
    shifted roots follow from Newton's identities.
    """
    s1, s2 = c1 + 2 * m, c2 + c1 * m + m * m
    coeffs = _binom_poly(n)
    power = [Fraction(2), Fraction(s1)]
    while len(power) < len(coeffs):
        power.append(s1 * power[-1] - s2 * power[-2])
    return sum(c * p for c, p in zip(coeffs, power))


def schwarzenberger_ok(c1: int, c2: int) -> bool:
    return (c1 * c2) % 2 == 0


def parity_scan(c1: int, c2: int, m_range=range(-6, 7)):
    """Twists in ``m_range`` at which the P^3 Riemann-Roch value is non-integral."""
    return [m for m in m_range if euler_char_p3(c1, c2, m).denominator != 1]


# text syntax ----------------------------------------------------------------

def format_chow(c: ChowClass) -> str:
    parts = []
    for i, x in enumerate(c.coeffs):
        if not x and not (i == 0 and not any(c.coeffs)):
            continue
        a = abs(x)
        if i == 0:
            body = str(a)
        else:
            mon = "t" if i == 1 else f"t^{i}"
            body = mon if a == 1 else f"{a}{mon}"
        if not parts:
            parts.append(("-" if x < 0 else "") + body)
        else:
            parts.append(("- " if x < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


_CHOW_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(t(?:\^(\d+))?)?")


def parse_chow(text: str, n: int) -> ChowClass:
    if re.search(r"[\dt]\s+[\dt]", text):
        raise ParseError(f"missing operator in {text!r}")
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty Chow class")
    coeffs = [0] * (n + 1)
    pos = 0
    while pos < len(s):
        m = _CHOW_TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ParseError(f"cannot parse Chow class {text!r} at {pos}")
        if pos and not m.group(1):
            raise ParseError(f"missing sign in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        deg = 0 if not m.group(3) else (int(m.group(4)) if m.group(4) else 1)
        if deg <= n:
            coeffs[deg] += sign * coef
        pos = m.end()
    return ChowClass(n, tuple(coeffs))
