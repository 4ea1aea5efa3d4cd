"""Homogeneous polynomials over the rationals.

A :class:`Form` is a homogeneous polynomial in ``x0..xn`` with exact
:class:`fractions.Fraction` coefficients.  Every basis-dependent object in the
package (section bases, Pluecker index order, interpolation systems) uses the
graded lexicographic monomial order produced by :func:`monomial_basis`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import ParseError

Rat = Fraction
Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of length ``n + 1`` summing to ``d``, graded-lex.

    Graded lex within a single degree means lexicographically largest first,
    so ``x0^d`` leads and ``xn^d`` comes last.
    """
    if n < 0 or d < 0:
        return ()

    def rec(k: int, left: int):
        if k == 0:
            yield (left,)
            return
        for e in range(left, -1, -1):
            for tail in rec(k - 1, left - e):
                yield (e,) + tail

    out = tuple(rec(n, d))
    assert len(out) == comb(n + d, n)
    return out


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> Dict[Exponent, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, d))}


def _as_rat(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Form:
    """Immutable homogeneous form.

    ``terms`` maps exponent tuples to nonzero coefficients.  The zero form keeps
    its degree so that matrix entries of a presentation stay homogeneous.
    """

    __slots__ = ("nvars", "degree", "terms", "_hash")

    def __init__(self, nvars: int, degree: int, terms: Mapping[Exponent, object] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _as_rat(c)
                if not c:
                    continue
                if len(e) != nvars or sum(e) != degree or min(e) < 0:
                    raise ValueError(f"exponent {e} incompatible with nvars={nvars}, degree={degree}")
                clean[tuple(e)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, degree: int = 0) -> "Form":
        return cls(nvars, degree)

    @classmethod
    def const(cls, nvars: int, c) -> "Form":
        return cls(nvars, 0, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Form":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, {tuple(e): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "Form":
        exp = tuple(exp)
        return cls(len(exp), sum(exp), {exp: coeff})

    @classmethod
    def _raw(cls, nvars, degree, terms):
        f = object.__new__(cls)
        object.__setattr__(f, "nvars", nvars)
        object.__setattr__(f, "degree", degree)
        object.__setattr__(f, "terms", terms)
        object.__setattr__(f, "_hash", None)
        return f

    # basic protocol ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Form):
            if self.nvars != other.nvars or self.terms != other.terms:
                return False
            return self.degree == other.degree or not self.terms
        if not self.terms:
            return other == 0
        return False

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def leading(self):
        return max(self.terms.items()) if self.terms else None

    def __repr__(self):
        return f"Form({self.nvars}, {self.degree}, {self})"

    def __str__(self):
        return format_form(self)

    # arithmetic ------------------------------------------------------------
    def _check(self, other: "Form"):
        if self.nvars != other.nvars:
            raise ValueError(f"mismatched num_vars: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return self
            return self + Form.const(self.nvars, other)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Form._raw(self.nvars, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return Form._raw(self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Form":
        c = _as_rat(c)
        if not c:
            return Form._raw(self.nvars, self.degree, {})
        return Form._raw(self.nvars, self.degree, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        return form_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = Form.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def eval(self, coords: Sequence) -> Fraction:
        return form_eval(self, coords)

    def partial(self, i: int) -> "Form":
        return form_partial(self, i)

    def substitute(self, images: Sequence["Form"]) -> "Form":
        """Compose with a linear change of variables ``x_i -> images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars
        deg = self.degree * images[0].degree
        out = Form.zero(m, deg)
        cache: Dict[Tuple[int, int], Form] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        for e, c in self.terms.items():
            t = Form.const(m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out


def form_mul(f: Form, g: Form) -> Form:
    if f.nvars != g.nvars:
        raise ValueError(f"mismatched num_vars: {f.nvars} vs {g.nvars}")
    deg = f.degree + g.degree
    if not f.terms or not g.terms:
        return Form._raw(f.nvars, deg, {})
    out: Dict[Exponent, Fraction] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return Form._raw(f.nvars, deg, {e: c for e, c in out.items() if c})


def form_eval(f: Form, coords: Sequence) -> Fraction:
    coords = getattr(coords, "coords", coords)
    if len(coords) != f.nvars:
        raise ValueError("point and form have different numbers of variables")
    total = Fraction(0)
    for e, c in f.terms.items():
        t = c
        for x, k in zip(coords, e):
            if k:
                t *= x ** k
        total += t
    return total


def form_partial(f: Form, i: int) -> Form:
    if not 0 <= i < f.nvars:
        raise ValueError("variable index out of range")
    deg = max(f.degree - 1, 0)
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * k
    return Form._raw(f.nvars, deg, out)


def form_from_vector(n: int, d: int, vec: Sequence) -> Form:
    """Inverse of :func:`form_to_vector` on the graded-lex basis."""
    return Form(n + 1, d, dict(zip(monomial_basis(n, d), vec)))


def form_to_vector(f: Form) -> list:
    idx = monomial_index(f.nvars - 1, f.degree)
    v = [Fraction(0)] * len(idx)
    for e, c in f.terms.items():
        v[idx[e]] = c
    return v


def random_form(rng, nvars: int, degree: int, lo: int = -3, hi: int = 3) -> Form:
    """Dense form with independent integer coefficients in ``[lo, hi]``."""
    return Form(nvars, degree, {e: rng.randint(lo, hi) for e in monomial_basis(nvars - 1, degree)})


def content_normalize(forms: Iterable[Form]) -> Tuple[list, Fraction]:
    """Scale a family of forms jointly to coprime integer coefficients.

    The sign is fixed so that the graded-lex leading coefficient of the first
    nonzero form is positive.  Returns the scaled forms and the scalar used.
    """
    from math import gcd, lcm

    forms = list(forms)
    den = 1
    num_gcd = 0
    first = None
    for f in forms:
        for c in f.terms.values():
            den = lcm(den, c.denominator)
        if first is None and f.terms:
            first = f
    if first is None:
        return forms, Fraction(1)
    for f in forms:
        for c in f.terms.values():
            num_gcd = gcd(num_gcd, (c * den).numerator)
    scale = Fraction(den, num_gcd)
    if first.leading()[1] < 0:
        scale = -scale
    return [f.scale(scale) for f in forms], scale


# text syntax ----------------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_form(f: Form) -> str:
    if not f.terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(f.sorted_terms()):
        mon = "*".join(
            f"x{i}" if p == 1 else f"x{i}^{p}" for i, p in enumerate(e) if p
        )
        a = abs(c)
        if not mon:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mon
        else:
            body = f"{_fmt_coeff(a)}*{mon}"
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)(?:\^(\d+))?|([+\-*]))")


def parse_form(text: str, nvars: int, degree: int | None = None) -> Form:
    """Parse ``3/2*x0^2*x1 - x2^3`` style text.

    ``degree`` is required only to give the zero form a degree; for nonzero
    input it is checked against the parsed terms when supplied.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    terms: Dict[Exponent, Fraction] = {}
    sign = 1
    coeff = Fraction(1)
    exp = [0] * nvars
    expect_factor = True
    have_factor = False

    def flush():
        nonlocal coeff, exp, sign, have_factor
        if not have_factor:
            raise ParseError(f"dangling operator in {text!r}")
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + sign * coeff
        coeff, exp, sign, have_factor = Fraction(1), [0] * nvars, 1, False

    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        num, var, power, op = m.groups()
        if num is not None or var is not None:
            if not expect_factor:
                raise ParseError(f"missing operator before position {m.start()} in {text!r}")
            if num is not None:
                coeff *= Fraction(num)
            else:
                i = int(var)
                if i >= nvars:
                    raise ParseError(f"variable x{i} out of range for {nvars} variables")
                exp[i] += int(power) if power else 1
            have_factor = True
            expect_factor = False
        elif op == "*":
            if expect_factor:
                raise ParseError(f"misplaced '*' in {text!r}")
            expect_factor = True
        else:
            if have_factor:
                flush()
            elif terms or not expect_factor:
                raise ParseError(f"misplaced sign in {text!r}")
            if op == "-":
                sign = -sign
            expect_factor = True
    flush()
    nonzero = {e: c for e, c in terms.items() if c}
    degs = {sum(e) for e in nonzero}
    if len(degs) > 1:
        raise ParseError(f"{text!r} is not homogeneous")
    if degs:
        d = degs.pop()
        if degree is not None and d != degree:
            raise ParseError(f"{text!r} has degree {d}, expected {degree}")
    else:
        d = degree if degree is not None else 0
    return Form(nvars, d, nonzero)
