"""Symbolic bundle descriptions and the catalog of named cases.

A :class:`BundleSpec` is a small expression tree.  Everything except the
Chern-only ``Sym2OmegaTwist`` expands to a :class:`FreePresentation`, which
is what the cohomology and Pluecker machinery consume.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .chow import (
    ChowClass,
    ChernData,
    chern_data,
    chern_line_sum,
    chern_omega_twist,
    chern_sym2_omega1_p2,
    chern_twist,
    chow_inv,
    chow_mul,
    chow_prod,
)
from .cohomology import (
    SectionBasis,
    evaluation_matrix,
    fiber_functionals,
    h0,
    h0_basis,
)
from .errors import NotInM36, NotPresentable, ParseError, SamplingExhausted, WrongFirstChern
from .forms import Form, parse_form, random_form
from .linalg import kernel_basis, matrix_rank
from .points import ProjPoint, derive_rng, random_points
from .presentation import FreePresentation


class BundleSpec:
    n: int

    @property
    def rank(self) -> int:
        raise NotImplementedError

    def symbolic_chern(self) -> ChowClass:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class LineSum(BundleSpec):
    degrees: Tuple[int, ...]
    n: int = 2

    @property
    def rank(self):
        return len(self.degrees)

    def symbolic_chern(self):
        return chern_line_sum(self.n, self.degrees)

    def to_text(self):
        return "+".join(f"O({d})" for d in self.degrees) + f"@P{self.n}"


@dataclass(frozen=True)
class OmegaTwist(BundleSpec):
    k: int
    n: int = 2

    def __post_init__(self):
        if self.n != 2:
            raise ValueError("OmegaTwist is only defined on P^2")

    @property
    def rank(self):
        return 2

    def symbolic_chern(self):
        return chern_omega_twist(2, self.k)

    def to_text(self):
        return f"Omega({self.k})"


@dataclass(frozen=True)
class Sym2OmegaTwist(BundleSpec):
    """S^2(Omega_{P^2}(k)); carries Chern data only."""

    k: int
    n: int = 2

    @property
    def rank(self):
        return 3

    def symbolic_chern(self):
        return chern_twist(chern_sym2_omega1_p2(), 3, 2 * (self.k - 1))

    def to_text(self):
        return f"Sym2Omega({self.k})"


@dataclass(frozen=True)
class Coker(BundleSpec):
    pres: FreePresentation

    @property
    def n(self):
        return self.pres.n

    @property
    def rank(self):
        return self.pres.rank

    def symbolic_chern(self):
        return self.pres.chern_class()

    def to_text(self):
        return format_coker(self.pres)


@dataclass(frozen=True)
class DirectSum(BundleSpec):
    parts: Tuple[BundleSpec, ...]

    @property
    def n(self):
        return self.parts[0].n

    @property
    def rank(self):
        return sum(p.rank for p in self.parts)

    def symbolic_chern(self):
        return chow_prod((p.symbolic_chern() for p in self.parts), self.n)

    def to_text(self):
        return "+".join(p.to_text() for p in self.parts)


@dataclass(frozen=True)
class CokerOf(BundleSpec):
    """Cokernel of a map from a bundle (itself a cokernel) to a sum of line bundles.

    ``phi`` is written on the generators of the source's F0 and must kill the
    source's relations; expansion is the mapping cone, a length-2 presentation.
    """

    source: BundleSpec
    f0: Tuple[int, ...]
    phi: Tuple[Tuple[Form, ...], ...]

    @property
    def n(self):
        return self.source.n

    @property
    def rank(self):
        return len(self.f0) - self.source.rank

    def symbolic_chern(self):
        return chow_mul(chern_line_sum(self.n, self.f0), chow_inv(self.source.symbolic_chern()))

    def to_text(self):
        return f"cokerof({self.source.to_text()} -> {'+'.join(f'O({d})' for d in self.f0)})"


@dataclass(frozen=True)
class NamedCase(BundleSpec):
    case_id: str
    n: int = 2
    seed: Optional[int] = None

    @property
    def rank(self):
        return CATALOG[self.case_id].rank

    def symbolic_chern(self):
        return CATALOG[self.case_id].symbolic(self.n)

    def to_text(self):
        return f"case:{self.case_id}@P{self.n}"


# expansion --------------------------------------------------------------------

def expand_to_presentation(spec: BundleSpec) -> FreePresentation:
    if isinstance(spec, LineSum):
        return FreePresentation(spec.n, tuple(spec.degrees), name=spec.to_text())
    if isinstance(spec, OmegaTwist):
        k = spec.k
        x = [Form.var(3, i) for i in range(3)]
        return FreePresentation(2, (k - 2,) * 3, (k - 3,), (), [[xi] for xi in x], name=spec.to_text())
    if isinstance(spec, Sym2OmegaTwist):
        raise NotPresentable("Sym2Omega specs carry Chern data only")
    if isinstance(spec, Coker):
        return spec.pres
    if isinstance(spec, DirectSum):
        parts = [expand_to_presentation(p) for p in spec.parts]
        out = parts[0]
        for p in parts[1:]:
            out = out.direct_sum(p)
        return out
    if isinstance(spec, CokerOf):
        src = expand_to_presentation(spec.source)
        if src.f2:
            raise NotPresentable("mapping cone of a length-2 source would have length 3")
        return FreePresentation(spec.n, spec.f0, src.f0, src.f1, spec.phi, src.A1)
    if isinstance(spec, NamedCase):
        return build_case(spec.case_id, spec.n, spec.seed)
    raise TypeError(f"unknown spec {spec!r}")


def chern_of(spec: BundleSpec) -> ChernData:
    """Chern data by Whitney along the expanded presentation (Chern-only specs
    fall back to their symbolic description)."""
    try:
        pres = expand_to_presentation(spec)
    except NotPresentable:
        return chern_data(spec.symbolic_chern(), spec.rank)
    return pres.chern()


# named-case catalog ------------------------------------------------------------

@dataclass
class CaseInfo:
    case_id: str
    title: str
    builder: object
    symbolic: object
    ambients: Tuple[int, ...] = (2,)
    theorem: bool = True
    default_seed: int = 0
    rank: int = 2
    note: str = ""


def _x(n):
    return [Form.var(n + 1, i) for i in range(n + 1)]


def _generic(case_id, seed, attempt_fn):
    """Draw seeded generic entries until the presentation is locally free."""
    for attempt in range(64):
        rng = derive_rng(seed, "case", case_id, attempt)
        pres = attempt_fn(rng)
        if pres.is_locally_free():
            return pres
    raise SamplingExhausted(f"no locally free draw for case {case_id}")


def _case_split(degrees):
    def build(n, seed):
        return FreePresentation(n, degrees, name=f"O({degrees[0]})+O({degrees[1]})")
    return build


def _case2(n, seed, q: Form | None = None):
    x = _x(2)
    q = q if q is not None else x[2] ** 3
    return FreePresentation(2, (2, 0, 0), (-1,), (), [[q], [x[1]], [-x[0]]], name="case 2")


def _case3(n, seed):
    return expand_to_presentation(OmegaTwist(3))


def _case4a(n, seed):
    def draw(rng):
        A = [[random_form(rng, 3, 1) for _ in range(3)] for _ in range(5)]
        return FreePresentation(2, (0,) * 5, (-1,) * 3, (), A, name="case 4a")
    return _generic("4a", seed, draw)


def _case4b(n, seed):
    def draw(rng):
        col = [random_form(rng, 3, 2), random_form(rng, 3, 2), random_form(rng, 3, 3)]
        return FreePresentation(2, (0, 0, 1), (-2,), (), [[f] for f in col], name="case 4b")
    return _generic("4b", seed, draw)


def _case4c(n, seed):
    def draw(rng):
        A = [[random_form(rng, 3, 1) for _ in range(2)] for _ in range(3)]
        A.append([random_form(rng, 3, 2) for _ in range(2)])
        return FreePresentation(2, (0, 0, 0, 1), (-1, -1), (), A, name="case 4c")
    return _generic("4c", seed, draw)


def _case4d(n, seed):
    def draw(rng):
        col = [random_form(rng, 3, 1), random_form(rng, 3, 2), random_form(rng, 3, 2)]
        return FreePresentation(2, (0, 1, 1), (-1,), (), [[f] for f in col], name="case 4d")
    return _generic("4d", seed, draw)


def _case_neg_c2_7(n, seed):
    x = _x(2)

    def draw(rng):
        quad = [random_form(rng, 3, 2) for _ in range(4)]
        A = [[x[0], quad[0]], [x[1], quad[1]], [x[2], quad[2]], [0, quad[3]]]
        return FreePresentation(2, (0,) * 4, (-1, -2), (), A, name="case neg-c2-7")
    return _generic("neg-c2-7", seed, draw)


def _case_type3(n, seed):
    def draw(rng):
        col = [random_form(rng, 3, 1), random_form(rng, 3, 4), random_form(rng, 3, 4)]
        return FreePresentation(2, (-2, 1, 1), (-3,), (), [[f] for f in col], name="M(3,6) type 3")
    return _generic("type3", seed, draw)


def _case_type2(n, seed):
    def draw(rng):
        r = lambda d: random_form(rng, 3, d)
        A = [[r(1), 0], [r(2), r(1)], [r(2), r(1)], [r(3), r(2)]]
        return FreePresentation(2, (-1, 0, 0, 1), (-2, -1), (), A, name="M(3,6) type 2")
    return _generic("type2", seed, draw)


def _case_special_c5(n, seed):
    def draw(rng):
        col = [random_form(rng, 3, 1), random_form(rng, 3, 3), random_form(rng, 3, 3)]
        return FreePresentation(2, (-1, 1, 1), (-2,), (), [[f] for f in col], name="M(3,5) special")
    return _generic("special-c5", seed, draw)


def _case_h0_3(n, seed):
    # cyclic-invariant cubics without common zero: x and its coordinate
    # rotation always have the same image
    x0, x1, x2 = _x(2)
    col = [x0 ** 3 + x1 ** 3 + x2 ** 3, x0 * x1 * x2, x0 * x0 * x1 + x1 * x1 * x2 + x2 * x2 * x0]
    return FreePresentation(2, (0, 0, 0), (-3,), (), [[f] for f in col], name="h0=3 quotient")


def euler_lift(pres: FreePresentation) -> CokerOf:
    """Rewrite every O(1) summand of F0 through the Euler sequence.

    ``0 -> Omega(1) -> O^3 -> O(1) -> 0`` replaces O(1) by O^3 and adds an
    Omega(1) summand to the source; the result is the same bundle written as
    ``Omega(1)^k (+) F1 -> O^N``.
    """
    if pres.f2:
        raise NotPresentable("Euler lift needs a length-1 presentation")
    n, nv = pres.n, pres.nvars
    if n != 2:
        raise NotPresentable("Euler lift is implemented on P^2")
    x = _x(2)
    lifted = [i for i, d in enumerate(pres.f0) if d == 1]
    kept = [i for i, d in enumerate(pres.f0) if d != 1]
    f0 = tuple(pres.f0[i] for i in kept) + (0,) * (3 * len(lifted))
    omega_parts = [OmegaTwist(1)] * len(lifted)
    rows: List[List[Form]] = []
    for i in kept:
        rows.append(list(pres.A1[i]) + [Form.zero(nv, pres.f0[i] + 1)] * (3 * len(lifted)))
    skew = [[0, -x[2], x[1]], [x[2], 0, -x[0]], [-x[1], x[0], 0]]
    for li, i in enumerate(lifted):
        parts = [_split_by_variable(f) for f in pres.A1[i]]
        for k in range(3):
            row = [parts[j][k] for j in range(len(pres.f1))]
            for lj in range(len(lifted)):
                row += skew[k] if lj == li else [0, 0, 0]
            rows.append(row)
    # source generators: F1 summands first, then O(-1)^3 per Omega(1)
    source = DirectSum(tuple([LineSum(tuple(pres.f1), 2)] + omega_parts)) if pres.f1 else DirectSum(tuple(omega_parts))
    src_pres = expand_to_presentation(source)
    phi = [[_coerce(nv, e, f0[r] - src_pres.f0[c]) for c, e in enumerate(row)] for r, row in enumerate(rows)]
    return CokerOf(source, f0, tuple(tuple(r) for r in phi))


def _coerce(nv, e, degree):
    if isinstance(e, Form):
        return e if e else Form.zero(nv, max(degree, 0))
    return Form.zero(nv, max(degree, 0)) if e == 0 else Form.const(nv, e)


def _split_by_variable(f: Form) -> List[Form]:
    """Write ``f = sum x_k f_k``, assigning each term to its first variable."""
    nv = f.nvars
    parts: List[Dict] = [dict() for _ in range(nv)]
    for e, c in f.terms.items():
        k = next(i for i, p in enumerate(e) if p)
        e2 = list(e)
        e2[k] -= 1
        parts[k][tuple(e2)] = c
    return [Form(nv, max(f.degree - 1, 0), p) for p in parts]


def _omega_alt(base):
    def build(n, seed):
        alt = euler_lift(build_case(base, 2, seed))
        return expand_to_presentation(alt)
    return build


def _sym_lines(*degs):
    return lambda n: chern_line_sum(n, degs)


def _sym_quotient(sub_classes, f0_degs):
    def symbolic(n):
        sub = chow_prod(sub_classes(n), n)
        return chow_mul(chern_line_sum(n, f0_degs), chow_inv(sub))
    return symbolic


def _omega1(n):
    return chern_omega_twist(2, 1)


CATALOG: Dict[str, CaseInfo] = {}


def _register(info: CaseInfo):
    CATALOG[info.case_id] = info


_register(CaseInfo("1a", "O + O(3)", _case_split((0, 3)), _sym_lines(0, 3), (2, 3, 4)))
_register(CaseInfo("1b", "O(1) + O(2)", _case_split((1, 2)), _sym_lines(1, 2), (2, 3, 4)))
_register(CaseInfo(
    "2", "extension 0 -> O(2) -> E -> I_p(1) -> 0", _case2,
    lambda n: chow_mul(chern_line_sum(2, [2]), ChowClass(2, (1, 1, 1))),
))
_register(CaseInfo("3", "Omega(3) = T_P2", _case3, lambda n: chern_omega_twist(2, 3)))
_register(CaseInfo("4a", "Steiner: O(-1)^3 -> O^5", _case4a, _sym_quotient(lambda n: [chern_line_sum(2, [-1] * 3)], [0] * 5), default_seed=1))
_register(CaseInfo(
    "4b", "Omega(1)+O(-2) -> O^5", _case4b,
    _sym_quotient(lambda n: [_omega1(n), chern_line_sum(2, [-2])], [0] * 5), default_seed=1,
))
_register(CaseInfo(
    "4c", "Omega(1)+O(-1)^2 -> O^6", _case4c,
    _sym_quotient(lambda n: [_omega1(n), chern_line_sum(2, [-1, -1])], [0] * 6), default_seed=1,
))
_register(CaseInfo(
    "4d", "Omega(1)^2+O(-1) -> O^7", _case4d,
    _sym_quotient(lambda n: [_omega1(n), _omega1(n), chern_line_sum(2, [-1])], [0] * 7), default_seed=1,
))
_register(CaseInfo(
    "neg-c2-7", "O(-1)+O(-2) -> O^4 (stable, c2=7)", _case_neg_c2_7,
    _sym_quotient(lambda n: [chern_line_sum(2, [-1, -2])], [0] * 4), theorem=False, default_seed=1,
    note="NON-EMBEDDING-BY-CLASSIFICATION",
))
_register(CaseInfo(
    "4b-omega", "case 4b via Omega(1)+O(-2) -> O^5", _omega_alt("4b"), CATALOG["4b"].symbolic,
    theorem=False, default_seed=1, note="alternate expansion of 4b",
))
_register(CaseInfo(
    "4c-omega", "case 4c via Omega(1)+O(-1)^2 -> O^6", _omega_alt("4c"), CATALOG["4c"].symbolic,
    theorem=False, default_seed=1, note="alternate expansion of 4c",
))
_register(CaseInfo(
    "4d-omega", "case 4d via Omega(1)^2+O(-1) -> O^7", _omega_alt("4d"), CATALOG["4d"].symbolic,
    theorem=False, default_seed=1, note="alternate expansion of 4d",
))
_register(CaseInfo(
    "type3", "M(3,6) type (3): O(-3) -> O(-2)+O(1)^2", _case_type3,
    _sym_quotient(lambda n: [chern_line_sum(2, [-3])], [-2, 1, 1]), theorem=False, default_seed=1,
    note="not globally generated",
))
_register(CaseInfo(
    "type2", "M(3,6) type (2): O(-2)+O(-1) -> O(-1)+O^2+O(1)", _case_type2,
    _sym_quotient(lambda n: [chern_line_sum(2, [-2, -1])], [-1, 0, 0, 1]), theorem=False, default_seed=1,
    note="not globally generated",
))
_register(CaseInfo(
    "special-c5", "M(3,5) special: O(-2) -> O(-1)+O(1)^2", _case_special_c5,
    _sym_quotient(lambda n: [chern_line_sum(2, [-2])], [-1, 1, 1]), theorem=False, default_seed=1,
    note="not globally generated; jumping line of type (-1,4)",
))
_register(CaseInfo(
    "h0-3", "O(-3) -> O^3 (degree-3 map to Gr(1,2))", _case_h0_3,
    _sym_quotient(lambda n: [chern_line_sum(2, [-3])], [0] * 3), theorem=False,
    note="not an embedding",
))

THEOREM_CASES = ["1a", "1b", "2", "3", "4a", "4b", "4c", "4d"]
_CASE_CACHE: Dict[Tuple[str, int, int], FreePresentation] = {}


def build_case(case_id: str, n: int = 2, seed: Optional[int] = None) -> FreePresentation:
    if case_id not in CATALOG:
        raise KeyError(f"unknown case {case_id!r}")
    info = CATALOG[case_id]
    if n not in info.ambients:
        raise ValueError(f"case {case_id} is not defined on P^{n}")
    seed = info.default_seed if seed is None else seed
    key = (case_id, n, seed)
    if key not in _CASE_CACHE:
        _CASE_CACHE[key] = info.builder(n, seed)
    return _CASE_CACHE[key]


# global generation, stability, classification ----------------------------------

@dataclass
class GGResult:
    ok: bool
    witness: Optional[ProjPoint] = None
    checked: int = 0
    reason: str = ""

    def __bool__(self):
        return self.ok


def fiber_rank(pres: FreePresentation, sections: SectionBasis, x) -> Tuple[int, int]:
    """(dimension of the fibre, rank of the sections in it) at ``x``."""
    Y = fiber_functionals(pres, x)
    if not Y:
        return 0, 0
    return len(Y), matrix_rank(evaluation_matrix(pres, sections, x))


def points_on_zero_line(f: Form, rng, count: int) -> List[ProjPoint]:
    """Random rational points on the line ``{f = 0}`` of P^2 (f linear)."""
    coeffs = [f.terms.get(tuple(int(i == j) for i in range(f.nvars)), 0) for j in range(f.nvars)]
    basis = kernel_basis([coeffs])
    out = []
    for _ in range(count * 4):
        lam = [rng.randint(-9, 9) for _ in basis]
        v = [sum(l * b[i] for l, b in zip(lam, basis)) for i in range(f.nvars)]
        if any(v):
            out.append(ProjPoint(v))
        if len(out) == count:
            break
    return out


def degeneracy_probe_points(pres: FreePresentation, seed: int, per_line: int = 8) -> List[ProjPoint]:
    """Points on the zero lines of the linear entries of A1."""
    rng = derive_rng(seed, "degeneracy-probe")
    out = []
    for f in pres.linear_entries():
        out.extend(points_on_zero_line(f, rng, per_line))
    return out


def is_globally_generated(
    pres: FreePresentation,
    sample_points: Sequence,
    extra_probe_points: Sequence = (),
    sections: Optional[SectionBasis] = None,
) -> GGResult:
    sections = sections if sections is not None else h0_basis(pres)
    checked = 0
    for x in list(extra_probe_points) + list(sample_points):
        checked += 1
        dim, r = fiber_rank(pres, sections, x)
        if dim != pres.rank:
            return GGResult(False, x, checked, f"fibre has dimension {dim} (not locally free)")
        if r < pres.rank:
            return GGResult(False, x, checked, f"sections span only {r} of {dim} fibre dimensions")
    return GGResult(True, None, checked)


def check_global_generation(pres: FreePresentation, seed: int, samples: int = 100) -> GGResult:
    """Seeded sampling plus the presentation's own degeneracy probes."""
    rng = derive_rng(seed, "global-generation")
    pts = random_points(rng, pres.n, samples)
    probes = degeneracy_probe_points(pres, seed) if pres.n == 2 else []
    return is_globally_generated(pres, pts, probes)


def _as_pres(spec_or_pres) -> FreePresentation:
    if isinstance(spec_or_pres, FreePresentation):
        return spec_or_pres
    return expand_to_presentation(spec_or_pres)


def is_stable_c1_3(spec_or_pres) -> bool:
    pres = _as_pres(spec_or_pres)
    if pres.rank != 2 or pres.c1 != 3:
        raise WrongFirstChern(f"stability test needs rank 2 and c1 = 3 (got rank {pres.rank}, c1 {pres.c1})")
    return h0(pres, -2) == 0


TYPE_SHAPES = {
    1: ((-2,), (0, 0, 1)),
    2: ((-2, -1), (-1, 0, 0, 1)),
    3: ((-3,), (-2, 1, 1)),
    4: ((-1, -1, -1), (0, 0, 0, 0, 0)),
}


@dataclass
class Classification:
    type: int
    h0_minus1: int
    betti: Tuple[Tuple[int, ...], Tuple[int, ...]]
    minimal: FreePresentation = field(repr=False)


def resolution_type_M36(pres: FreePresentation) -> Classification:
    """Stratum of M(3,6) containing the bundle presented by ``pres``."""
    ch = pres.chern()
    if pres.rank != 2 or (ch.c1, ch.c2) != (3, 6):
        raise NotInM36(f"Chern data {ch.as_tuple()} is not (3, 6)")
    if not is_stable_c1_3(pres):
        raise NotInM36("bundle is not stable")
    minimal = pres.minimalize()
    h = h0(minimal, -1)
    betti = (tuple(sorted(minimal.f1)), tuple(sorted(minimal.f0)))
    if h == 0:
        t = 4
    elif h == 2:
        t = 3
    elif h == 1:
        matches = [k for k in (1, 2) if TYPE_SHAPES[k] == betti and not minimal.f2]
        if not matches:
            raise NotInM36(f"h0(E(-1)) = 1 but minimal shape {betti} matches neither type (1) nor (2)")
        t = matches[0]
    else:
        raise NotInM36(f"h0(E(-1)) = {h} does not occur in M(3,6)")
    return Classification(t, h, betti, minimal)


# DSL ------------------------------------------------------------------------------

def _split_top(s: str, sep: str) -> List[str]:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _parse_list(text: str):
    """Nested ``[...]`` lists of raw strings."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"expected a bracketed list, got {text!r}")
    inner = s[1:-1].strip()
    if not inner:
        return []
    return [_parse_list(p) if p.strip().startswith("[") else p.strip() for p in _split_top(inner, ",")]


def parse_coker(body: str) -> FreePresentation:
    fields = {}
    for part in _split_top(body, ";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise ParseError(f"expected key=value in coker block, got {part!r}")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    try:
        n = int(fields["n"])
        f0 = tuple(int(v) for v in _parse_list(fields["F0"]))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"coker block needs n and F0: {exc}") from None
    f1 = tuple(int(v) for v in _parse_list(fields.get("F1", "[]")))
    f2 = tuple(int(v) for v in _parse_list(fields.get("F2", "[]")))

    def matrix(key, rows, cols):
        if not cols:
            return ()
        raw = _parse_list(fields.get(key, "[]"))
        if len(raw) != len(rows) or any(len(r) != len(cols) for r in raw):
            raise ParseError(f"{key} must be a {len(rows)}x{len(cols)} matrix")
        return [
            [parse_form(raw[i][j], n + 1, max(rows[i] - cols[j], 0)) for j in range(len(cols))]
            for i in range(len(rows))
        ]

    try:
        return FreePresentation(n, f0, f1, f2, matrix("A", f0, f1), matrix("B", f1, f2))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_coker(pres: FreePresentation) -> str:
    def lst(ds):
        return "[" + ",".join(str(d) for d in ds) + "]"

    def mat(A):
        return "[" + ",".join("[" + ",".join(str(f) for f in row) + "]" for row in A) + "]"

    parts = [f"n={pres.n}", f"F1={lst(pres.f1)}", f"F0={lst(pres.f0)}"]
    if pres.f1:
        parts.append(f"A={mat(pres.A1)}")
    if pres.f2:
        parts[1:1] = [f"F2={lst(pres.f2)}"]
        parts.append(f"B={mat(pres.A2)}")
    return "coker{" + "; ".join(parts) + "}"


_LINE = re.compile(r"^O\((-?\d+)\)(?:\^(\d+))?$")
_OMEGA = re.compile(r"^Omega\((-?\d+)\)$")
_SYM2 = re.compile(r"^Sym2Omega\((-?\d+)\)$")
_CASE = re.compile(r"^case:([A-Za-z0-9.\-]+?)(?:@P(\d+))?$")


def parse_spec(text: str) -> BundleSpec:
    """Parse the bundle DSL: ``O(1)+O(2)@P3``, ``O(-1)^3``, ``Omega(3)``,
    ``Sym2Omega(1)``, ``case:4a@P2``, ``coker{n=2; F1=[..]; F0=[..]; A=[[..]]}``."""
    s = text.strip()
    if not s:
        raise ParseError("empty bundle spec")
    ambient = None
    m = re.search(r"@P(\d+)$", s)
    if m and not s.startswith("case:"):
        ambient = int(m.group(1))
        s = s[: m.start()].strip()
    terms = [t.strip() for t in _split_top(s, "+")]
    parts: List[BundleSpec] = []
    degrees: List[int] = []
    for t in terms:
        if (mm := _LINE.match(t)) :
            degrees.extend([int(mm.group(1))] * int(mm.group(2) or 1))
            continue
        if degrees:
            parts.append(LineSum(tuple(degrees), ambient or 2))
            degrees = []
        if (mm := _OMEGA.match(t)):
            parts.append(OmegaTwist(int(mm.group(1))))
        elif (mm := _SYM2.match(t)):
            parts.append(Sym2OmegaTwist(int(mm.group(1))))
        elif (mm := _CASE.match(t)):
            cid = mm.group(1)
            if cid not in CATALOG:
                raise ParseError(f"unknown case {cid!r}")
            parts.append(NamedCase(cid, int(mm.group(2) or 2)))
        elif t.startswith("coker{") and t.endswith("}"):
            parts.append(Coker(parse_coker(t[len("coker{"):-1])))
        else:
            raise ParseError(f"cannot parse bundle term {t!r}")
    if degrees:
        parts.append(LineSum(tuple(degrees), ambient or 2))
    if len({p.n for p in parts}) > 1:
        raise ParseError("summands live on different projective spaces")
    return parts[0] if len(parts) == 1 else DirectSum(tuple(parts))
