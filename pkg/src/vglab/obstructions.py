"""Arithmetic oracles for curves in P^3 and the Chern-class contradictions.

Curves are disjoint unions of smooth components, each recorded as a
``(degree, genus)`` pair.  For such a union ``Z`` with ``m`` components,
``chi(O_Z) = sum (1 - g_i)`` and ``p_a(Z) = 1 - chi(O_Z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .chow import (
    ChowClass,
    chern_line_sum,
    chern_omega_twist,
    chern_sym2_omega1_p2,
    chow_inv,
    chow_mul,
    euler_char_p2,
    euler_char_p3,
    schwarzenberger_ok,
)

# genera of smooth irreducible space curves of small degree
REALIZABLE_GENERA: Dict[int, Tuple[int, ...]] = {
    1: (0,),
    2: (0,),
    3: (0, 1),
    4: (0, 1, 3),
    5: (0, 1, 2),
    6: (0, 1, 2, 3, 4, 10),
}


def realizable_genera(d: int) -> Tuple[int, ...]:
    if d < 1:
        return ()
    if d in REALIZABLE_GENERA:
        return REALIZABLE_GENERA[d]
    # beyond the table: every genus up to the plane-curve bound (a superset)
    return tuple(range((d - 1) * (d - 2) // 2 + 1))


Component = Tuple[int, int]


@dataclass(frozen=True)
class CurveDatum:
    components: Tuple[Component, ...]

    def __post_init__(self):
        comps = tuple(sorted(self.components))
        for d, g in comps:
            if g not in realizable_genera(d):
                raise ValueError(f"no smooth space curve of degree {d} and genus {g}")
        object.__setattr__(self, "components", comps)

    @property
    def degree(self) -> int:
        return sum(d for d, _ in self.components)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def chi(self) -> int:
        return sum(1 - g for _, g in self.components)

    @property
    def arithmetic_genus(self) -> int:
        return 1 - self.chi

    def omega_is_minus_one(self) -> bool:
        """omega_Z = O_Z(-1) forces 2g - 2 = -deg on each component."""
        return all(2 * g - 2 == -d for d, g in self.components)

    def __str__(self):
        return "+".join(f"({d},{g})" for d, g in self.components)


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def _genus_choices(parts):
    """Multisets of (degree, genus) over a degree partition, without repeats."""
    out = [()]
    for d in parts:
        nxt = []
        for prefix in out:
            for g in realizable_genera(d):
                comp = (d, g)
                # keep genus nondecreasing within equal degrees
                if prefix and prefix[-1][0] == d and prefix[-1][1] > g:
                    continue
                nxt.append(prefix + (comp,))
        out = nxt
    return out


def enumerate_curve_data(d: int, chi: Optional[int] = None) -> List[CurveDatum]:
    """All disjoint unions of total degree ``d`` (and given chi(O_Z))."""
    seen = set()
    out = []
    for parts in _partitions(d, d):
        for comps in _genus_choices(parts):
            datum = CurveDatum(comps)
            if datum.components in seen:
                continue
            seen.add(datum.components)
            if chi is None or datum.chi == chi:
                out.append(datum)
    out.sort(key=lambda c: c.components)
    return out


@dataclass
class ChiThreeHalvesVerdict:
    d: int
    chi_required: Fraction
    m_lower: Fraction
    m_upper: int
    solutions: List[CurveDatum]

    @property
    def feasible(self) -> bool:
        return bool(self.solutions)

    def to_dict(self):
        return {
            "d": self.d,
            "chi_required": str(self.chi_required),
            "m_lower": str(self.m_lower),
            "m_upper": self.m_upper,
            "feasible": self.feasible,
            "solutions": [str(s) for s in self.solutions],
        }


def chi_three_halves_oracle(d: int) -> ChiThreeHalvesVerdict:
    """Can a smooth curve of even degree ``d`` have chi(O_Z) = 3d/2?

    ``m - sum g_i = 3d/2`` gives ``m >= 3d/2`` while ``m <= d``.
    """
    if d < 2 or d % 2:
        raise ValueError("degree must be even and at least 2")
    chi = Fraction(3 * d, 2)
    sols = enumerate_curve_data(d, int(chi))
    return ChiThreeHalvesVerdict(d, chi, chi, d, sols)


def enumerate_unions(d: int = 6, chi: int = 3) -> List[CurveDatum]:
    return enumerate_curve_data(d, chi)


def omega_filter(data: Sequence[CurveDatum]) -> List[CurveDatum]:
    return [c for c in data if c.omega_is_minus_one()]


def abc_triples(deg: int = 4, pa: int = -5, a_max: int = 20) -> set:
    """Integer triples with ``b + c = deg``, ``1 <= b <= c`` and
    ``pa = (b-1)(b-2)/2 + (c-1)(c-2)/2 + b - a - 1``."""
    out = set()
    for b in range(1, deg // 2 + 1):
        c = deg - b
        a = (b - 1) * (b - 2) // 2 + (c - 1) * (c - 2) // 2 + b - 1 - pa
        if 0 <= a <= a_max:
            out.add((a, b, c))
    return out


def min_pa_reduced(d: int) -> int:
    if d < 1:
        raise ValueError("degree must be positive")
    return min(c.arithmetic_genus for c in enumerate_curve_data(d))


# Chern-class records ------------------------------------------------------------

@dataclass
class ObstructionEntry:
    name: str
    expected: object
    computed: object
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "expected": _plain(self.expected), "computed": _plain(self.computed), "detail": self.detail}


def _plain(v):
    if isinstance(v, (set, frozenset)):
        return sorted(_plain(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (ChowClass, CurveDatum, Fraction)):
        return str(v)
    return v


@dataclass
class ChiContradiction:
    chi: int
    h0: int
    forced_h1: int
    c_F: ChowClass
    c_sym2: ChowClass
    c_omega_sum: ChowClass

    @property
    def contradiction(self) -> bool:
        return self.forced_h1 < 0

    def to_dict(self):
        return {
            "chi": self.chi,
            "h0": self.h0,
            "forced_h1": self.forced_h1,
            "c_F": str(self.c_F),
            "c_Sym2Omega1": str(self.c_sym2),
            "c_Omega1_plus_O(-2)": str(self.c_omega_sum),
        }


def chi_contradiction_omega(h0: int = 4) -> ChiContradiction:
    """chi(E) for (c1, c2) = (3, 6) against a bundle with ``h0`` sections and no h^2."""
    chi = euler_char_p2(3, 6)
    c_E = ChowClass(2, (1, 3, 6))
    c_F = chow_inv(c_E)
    c_omega_sum = chow_mul(chern_omega_twist(2, 1), chern_line_sum(2, [-2]))
    return ChiContradiction(chi, h0, h0 - chi, c_F, chern_sym2_omega1_p2(), c_omega_sum)


def extension_c3_p3() -> int:
    """c3 of the rank-2 extension with c(E) = (1+2t)/(1-t) on P^3."""
    c = chow_mul(ChowClass(3, (1, 2)), chow_inv(ChowClass(3, (1, -1))))
    return c[3]


def run_obstructions() -> List[ObstructionEntry]:
    """Every oracle with its expected value; deterministic order."""
    out: List[ObstructionEntry] = []
    for d in (2, 4, 6):
        v = chi_three_halves_oracle(d)
        out.append(ObstructionEntry(
            f"chi=3d/2 smooth curve, d={d}", False, v.feasible,
            f"needs m >= {v.m_lower} and m <= {v.m_upper}",
        ))
    raw = enumerate_unions()
    expected_raw = {((2, 0), (2, 0), (2, 0)), ((1, 0), (2, 0), (3, 0)), ((1, 0), (1, 0), (1, 0), (3, 1)), ((1, 0), (1, 0), (4, 0))}
    out.append(ObstructionEntry("degree 6, chi 3 unions", expected_raw, {c.components for c in raw}))
    out.append(ObstructionEntry(
        "degree 6, chi 3 with omega = O(-1)", {((2, 0), (2, 0), (2, 0))}, {c.components for c in omega_filter(raw)}
    ))
    raw4 = enumerate_unions(4, 2)
    out.append(ObstructionEntry(
        "degree 4, chi 2 with omega = O(-1)", {((2, 0), (2, 0))}, {c.components for c in omega_filter(raw4)},
        "unfiltered: " + ", ".join(str(c) for c in raw4),
    ))
    out.append(ObstructionEntry("(a,b,c) triples, deg 4, p_a -5", {(6, 2, 2), (6, 1, 3)}, abc_triples()))
    out.append(ObstructionEntry("min p_a of reduced degree-4 curve", -3, min_pa_reduced(4)))
    cc = chi_contradiction_omega()
    out.append(ObstructionEntry("chi(E) for (3,6)", 5, cc.chi))
    out.append(ObstructionEntry("forced h1 with h0 = 4", -1, cc.forced_h1, "negative: contradiction"))
    out.append(ObstructionEntry("c(F) = c(E)^-1", "1 - 3t + 3t^2", str(cc.c_F)))
    out.append(ObstructionEntry("c(Sym2 Omega(1))", "1 - 3t + 6t^2", str(cc.c_sym2)))
    out.append(ObstructionEntry("c(F) == c(Omega(1) + O(-2))", True, cc.c_F == cc.c_omega_sum))
    out.append(ObstructionEntry("c(F) == c(Sym2 Omega(1))", False, cc.c_F == cc.c_sym2))
    out.append(ObstructionEntry("c3 of (1+2t)(1-t)^-1 on P^3", 3, extension_c3_p3()))
    out.append(ObstructionEntry("Schwarzenberger for (c1,c2) = (-3,3)", False, schwarzenberger_ok(-3, 3)))
    parity = all(schwarzenberger_ok(a, b) == (euler_char_p3(a, b, 0).denominator == 1)
                 for a in range(-5, 6) for b in range(-5, 6))
    out.append(ObstructionEntry("Schwarzenberger matches P^3 chi integrality on [-5,5]^2", True, parity))
    return out
