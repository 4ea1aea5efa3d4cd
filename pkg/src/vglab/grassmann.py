"""Maps P^n -> Gr(1,N) induced by globally generated rank-2 bundles.

A map is stored through its Pluecker coordinates ``p_ij`` (``i < j``,
lexicographic order), which are forms of a common degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

from .cohomology import SectionBasis, evaluation_matrix, h0_basis
from .errors import (
    DegreeMismatch,
    InconsistentSamples,
    InterpolationInconsistent,
    NotGloballyGeneratedAt,
    ParseError,
    ShapeMismatch,
    Underdetermined,
    VGLabError,
)
from .forms import Form, content_normalize, format_form, monomial_basis, parse_form
from .interpolate import evaluation_row, interpolate_forms
from .linalg import kernel_basis, matrix_rank, normalize_vector, rank_mod_p
from .points import ProjPoint, derive_rng, random_point, random_points
from .presentation import FreePresentation, form_det

Pair = Tuple[int, int]


def pair_index(N: int) -> List[Pair]:
    return list(combinations(range(N + 1), 2))


@dataclass
class PluckerMap:
    n: int
    N: int
    d: int
    coords: Dict[Pair, Form]

    def __post_init__(self):
        nv = self.n + 1
        clean = {}
        for (i, j), f in self.coords.items():
            if not (0 <= i < j <= self.N):
                raise ValueError(f"bad Pluecker index ({i}, {j}) for N = {self.N}")
            if f:
                if f.nvars != nv:
                    raise ValueError("coordinate lives in the wrong polynomial ring")
                if f.degree != self.d:
                    raise DegreeMismatch(f"coordinate p{i}{j} has degree {f.degree}, expected {self.d}")
                clean[(i, j)] = f
        if not clean:
            raise VGLabError("all Pluecker coordinates vanish")
        self.coords = clean

    @classmethod
    def normalized(cls, n, N, d, coords: Dict[Pair, Form]) -> "PluckerMap":
        keys = sorted(k for k, f in coords.items() if f)
        scaled, _ = content_normalize([coords[k] for k in keys])
        return cls(n, N, d, dict(zip(keys, scaled)))

    @property
    def nvars(self):
        return self.n + 1

    def coordinate(self, i: int, j: int) -> Form:
        if i > j:
            return -self.coordinate(j, i)
        return self.coords.get((i, j), Form.zero(self.nvars, self.d))

    def nonzero_pairs(self) -> List[Pair]:
        return sorted(self.coords)

    def degrees(self):
        return {f.degree for f in self.coords.values()}

    def values(self, x) -> List[Fraction]:
        coords = getattr(x, "coords", x)
        return [self.coords[k].eval(coords) if k in self.coords else Fraction(0) for k in pair_index(self.N)]

    def projective_value(self, x) -> Optional[Tuple[int, ...]]:
        v = self.values(x)
        return normalize_vector(v) if any(v) else None

    def jacobian(self, x) -> List[List[Fraction]]:
        coords = getattr(x, "coords", x)
        parts = self._partials()
        return [[p.eval(coords) for p in row] for row in parts]

    def _partials(self):
        if not hasattr(self, "_partial_cache"):
            self._partial_cache = [
                [self.coords[k].partial(v) for v in range(self.nvars)] for k in self.nonzero_pairs()
            ]
        return self._partial_cache

    def equal_up_to_scalar(self, other: "PluckerMap") -> bool:
        if (self.n, self.N) != (other.n, other.N) or set(self.coords) != set(other.coords):
            return False
        keys = self.nonzero_pairs()
        a, _ = content_normalize([self.coords[k] for k in keys])
        b, _ = content_normalize([other.coords[k] for k in keys])
        return a == b

    def perturbed(self, pair: Optional[Pair] = None, seed: int = 0) -> "PluckerMap":
        """Copy with one coordinate changed by a monomial (a negative control)."""
        pair = pair or self.nonzero_pairs()[0]
        mono = monomial_basis(self.n, self.d)[derive_rng(seed, "perturb").randrange(comb(self.n + self.d, self.n))]
        coords = dict(self.coords)
        coords[pair] = self.coordinate(*pair) + Form.monomial(mono, 1)
        return PluckerMap(self.n, self.N, self.d, coords)

    def serialize(self) -> str:
        lines = [f"{self.n} {self.N} {self.d}"]
        for i, j in self.nonzero_pairs():
            lines.append(f"{i} {j} : {format_form(self.coords[(i, j)])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "PluckerMap":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        try:
            n, N, d = (int(v) for v in lines[0].split())
        except (IndexError, ValueError):
            raise ParseError("Pluecker header must be 'n N d'") from None
        coords = {}
        for ln in lines[1:]:
            head, sep, body = ln.partition(":")
            if not sep:
                raise ParseError(f"bad Pluecker line {ln!r}")
            try:
                i, j = (int(v) for v in head.split())
            except ValueError:
                raise ParseError(f"bad Pluecker index in {ln!r}") from None
            coords[(i, j)] = parse_form(body.strip(), n + 1, d)
        return cls(n, N, d, coords)


@dataclass(frozen=True)
class LineInPN:
    u: Tuple[Fraction, ...]
    v: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise ValueError("spanning vectors must have the same length")
        if matrix_rank([list(self.u), list(self.v)]) != 2:
            raise ValueError("spanning vectors are dependent")

    @property
    def N(self):
        return len(self.u) - 1

    def plucker(self) -> List[Fraction]:
        u, v = self.u, self.v
        return [u[i] * v[j] - u[j] * v[i] for i, j in pair_index(self.N)]

    def plucker_normalized(self) -> Tuple[int, ...]:
        return normalize_vector(self.plucker())


# constructions -------------------------------------------------------------------

def join_map(n: int, a: int, d: int) -> PluckerMap:
    """Lines joining v_a(x) and v_{d-a}(x) placed in complementary subspaces."""
    if not 0 <= a <= d - a:
        raise ValueError("need 0 <= a <= d/2")
    A = monomial_basis(n, a)
    B = monomial_basis(n, d - a)
    N = len(A) + len(B) - 1
    coords = {}
    for i, ma in enumerate(A):
        for j, mb in enumerate(B):
            coords[(i, len(A) + j)] = Form.monomial(tuple(x + y for x, y in zip(ma, mb)))
    return PluckerMap.normalized(n, N, d, coords)


def _complementary_minors(pres: FreePresentation) -> Dict[Pair, Form]:
    rows = range(len(pres.f0))
    out = {}
    for r, t in combinations(rows, 2):
        keep = [k for k in rows if k not in (r, t)]
        out[(r, t)] = form_det([[pres.A1[k][c] for c in range(len(pres.f1))] for k in keep], pres.nvars)
    return out


def plucker_symbolic_det(pres: FreePresentation, sections: Optional[SectionBasis] = None) -> PluckerMap:
    """``p_ij = det[s_i | s_j | A1]`` expanded along the two section columns."""
    if pres.f2 or len(pres.f1) != len(pres.f0) - 2:
        raise ShapeMismatch("determinant construction needs a length-1 presentation with |F1| = |F0| - 2")
    sections = sections if sections is not None else h0_basis(pres)
    minors = _complementary_minors(pres)
    h = len(sections)
    coords = {}
    for i, j in combinations(range(h), 2):
        si, sj = sections.reps[i], sections.reps[j]
        total = None
        for (r, t), M in minors.items():
            if not M:
                continue
            two = si[r] * sj[t] - si[t] * sj[r] if (si[r] or si[t]) and (sj[r] or sj[t]) else None
            if not two:
                continue
            term = two * M
            if (r + t) % 2 == 0:
                term = -term
            total = term if total is None else total + term
        if total:
            coords[(i, j)] = total
    if not coords:
        raise VGLabError("all Pluecker coordinates vanish")
    degs = {f.degree for f in coords.values()}
    if degs != {pres.c1}:
        raise DegreeMismatch(f"coordinate degrees {sorted(degs)} differ from c1 = {pres.c1}")
    return PluckerMap.normalized(pres.n, h - 1, pres.c1, coords)


def quotient_line_at(pres: FreePresentation, sections: SectionBasis, x) -> LineInPN:
    """The fibre quotient of the sections at ``x`` as a line in P^N."""
    E = evaluation_matrix(pres, sections, x)
    if len(E) != 2 or matrix_rank(E) < 2:
        raise NotGloballyGeneratedAt(x)
    return LineInPN(tuple(E[0]), tuple(E[1]))


def _scaled_samples(pres, sections, points):
    out = []
    for x in points:
        out.append(quotient_line_at(pres, sections, x).plucker())
    return out


def plucker_interpolated(
    pres: FreePresentation,
    sections: Optional[SectionBasis] = None,
    degree: Optional[int] = None,
    seed: int = 0,
    holdout: int = 20,
) -> PluckerMap:
    """Recover the Pluecker forms from pointwise quotient lines.

    Pointwise vectors are only known up to scale.  A reference coordinate
    ``r`` and a partner ``c`` are fitted jointly from the cross relation
    ``P_r(x) w_c(x) = P_c(x) w_r(x)``; when the two forms are coprime the
    solution is unique up to one scalar, which fixes the scale at every
    sample.  Every coordinate is then interpolated and checked on holdout
    points.
    """
    sections = sections if sections is not None else h0_basis(pres)
    degree = pres.c1 if degree is None else degree
    n = pres.n
    if degree < 0:
        raise InterpolationInconsistent("negative degree requested")
    D = comb(n + degree, n)
    K = 2 * D + 4
    rng = derive_rng(seed, "plucker-interpolation", degree)
    pts = random_points(rng, n, K + holdout)
    train, test = pts[:K], pts[K:]
    W = _scaled_samples(pres, sections, train)
    pairs = pair_index(len(sections) - 1)
    live = [k for k in range(len(pairs)) if any(w[k] for w in W)]
    if not live:
        raise InterpolationInconsistent("pointwise Pluecker vectors vanish")
    mons = monomial_basis(n, degree)
    V = [evaluation_row(mons, x.coords) for x in train]
    live_sorted = sorted(live, key=lambda k: sum(1 for w in W if not w[k]))
    r = live_sorted[0]
    solution = None
    for c in live_sorted[1:]:
        M = [[V[k][m] * W[k][c] for m in range(D)] + [-V[k][m] * W[k][r] for m in range(D)] for k in range(K)]
        rp = rank_mod_p(M)
        if rp is not None and rp < 2 * D - 1 and matrix_rank(M) < 2 * D - 1:
            continue
        ker = kernel_basis(M, 2 * D)
        if len(ker) == 1:
            solution = (c, ker[0])
            break
    if solution is None and len(live) > 1:
        raise InterpolationInconsistent(f"no pair of coordinates fits degree-{degree} forms")
    if solution is None:
        # one live coordinate: scale it to 1 and let interpolation decide
        lam = [1 / w[r] for w in W]
    else:
        c, vec = solution
        Pr, Pc = vec[:D], vec[D:]
        lam = []
        for k, w in enumerate(W):
            if w[r]:
                lam.append(sum(a * b for a, b in zip(V[k], Pr)) / w[r])
            elif w[c]:
                lam.append(sum(a * b for a, b in zip(V[k], Pc)) / w[c])
            else:
                lam.append(None)
    keep = [k for k in range(K) if lam[k] is not None]
    cols = [[lam[k] * W[k][j] for k in keep] for j in live]
    try:
        forms = interpolate_forms(n, degree, [train[k] for k in keep], cols)
    except (InconsistentSamples, Underdetermined) as exc:
        raise InterpolationInconsistent(str(exc)) from None
    coords = {pairs[j]: f for j, f in zip(live, forms) if f}
    if not coords:
        raise InterpolationInconsistent("interpolated coordinates vanish")
    result = PluckerMap.normalized(n, len(sections) - 1, degree, coords)
    for y in test:
        got = result.projective_value(y)
        want = quotient_line_at(pres, sections, y).plucker_normalized()
        if got != want:
            raise InterpolationInconsistent(f"holdout point {y} disagrees with the interpolated map")
    return result


def plucker_map(pres: FreePresentation, seed: int = 0) -> PluckerMap:
    """Determinant construction when the shape allows it, otherwise interpolation."""
    sections = h0_basis(pres)
    if not pres.f2 and len(pres.f1) == len(pres.f0) - 2:
        return plucker_symbolic_det(pres, sections)
    return plucker_interpolated(pres, sections, seed=seed)


# checks -----------------------------------------------------------------------------

def plucker_relations(pm: PluckerMap):
    """Yield ``((i,j,k,l), value)`` for the three-term quadrics."""
    zero = Form.zero(pm.nvars, 2 * pm.d)
    present = set(pm.coords)
    for i, j, k, l in combinations(range(pm.N + 1), 4):
        val = zero
        for (a, b), (c, d), sign in (((i, j), (k, l), 1), ((i, k), (j, l), -1), ((i, l), (j, k), 1)):
            if (a, b) in present and (c, d) in present:
                term = pm.coords[(a, b)] * pm.coords[(c, d)]
                val = val + term if sign > 0 else val - term
        yield (i, j, k, l), val


def verify_plucker_relations(pm: PluckerMap) -> bool:
    return all(not val for _, val in plucker_relations(pm))


def first_failed_relation(pm: PluckerMap):
    for idx, val in plucker_relations(pm):
        if val:
            return idx
    return None


@dataclass
class Verdict:
    ok: bool
    checked: int
    witness: object = None

    def to_dict(self):
        w = self.witness
        if isinstance(w, ProjPoint):
            w = str(w)
        elif isinstance(w, tuple):
            w = [str(p) for p in w]
        return {"ok": self.ok, "checked": self.checked, "witness": w}


@dataclass
class EmbeddingReport:
    base_point_free: Verdict
    injective: Verdict
    immersion: Verdict

    @property
    def ok(self):
        return self.base_point_free.ok and self.injective.ok and self.immersion.ok

    def to_dict(self):
        return {
            "base_point_free": self.base_point_free.to_dict(),
            "injective": self.injective.to_dict(),
            "immersion": self.immersion.to_dict(),
        }

    def format(self) -> str:
        lines = []
        for name, v in (("base_point_free", self.base_point_free), ("injective", self.injective), ("immersion", self.immersion)):
            line = f"{name}: {'pass' if v.ok else 'FAIL'} ({v.checked} checked)"
            if v.witness is not None:
                line += f" witness={v.to_dict()['witness']}"
            lines.append(line)
        return "\n".join(lines)


def _symmetric_partner(rng, x: ProjPoint) -> ProjPoint:
    """Image of ``x`` under a random coordinate permutation or sign change."""
    c = list(x.coords)
    for _ in range(16):
        if rng.random() < 0.5:
            perm = list(range(len(c)))
            rng.shuffle(perm)
            y = [c[p] for p in perm]
        else:
            y = [v if rng.random() < 0.5 else -v for v in c]
        y = ProjPoint(y)
        if y != x:
            return y
    return random_point(rng, x.n, avoid=lambda p: p == x)


def check_embedding(
    pm: PluckerMap,
    seed: int = 0,
    bpf_samples: int = 200,
    pairs: int = 100,
    immersion_samples: int = 50,
) -> EmbeddingReport:
    """Sampled base-point-freeness, injectivity and immersion verdicts.

    Half of the injectivity pairs are random; the other half pair a point
    with a coordinate permutation or sign flip of itself, where symmetric
    maps collide.  All sampled images are also pooled, so any collision
    among the sampled points is reported.
    """
    n = pm.n
    rng = derive_rng(seed, "embedding", "bpf")
    seen: Dict[Tuple[int, ...], ProjPoint] = {}
    collision = None

    def record(x, val):
        nonlocal collision
        if val is None or collision is not None:
            return
        other = seen.setdefault(val, x)
        if other != x:
            collision = (other, x)

    bpf = Verdict(True, 0)
    for x in random_points(rng, n, bpf_samples):
        val = pm.projective_value(x)
        bpf.checked += 1
        if val is None:
            bpf = Verdict(False, bpf.checked, x)
            break
        record(x, val)

    rng = derive_rng(seed, "embedding", "pairs")
    inj = Verdict(True, 0)
    for k in range(pairs):
        x = random_point(rng, n)
        y = _symmetric_partner(rng, x) if k % 2 else random_point(rng, n, avoid=lambda p: p == x)
        vx, vy = pm.projective_value(x), pm.projective_value(y)
        inj.checked += 1
        record(x, vx)
        record(y, vy)
        if vx is not None and vx == vy:
            inj = Verdict(False, inj.checked, (x, y))
            break
    if inj.ok and collision is not None:
        inj = Verdict(False, inj.checked, collision)

    rng = derive_rng(seed, "embedding", "immersion")
    imm = Verdict(True, 0)
    for x in random_points(rng, n, immersion_samples):
        imm.checked += 1
        if matrix_rank(pm.jacobian(x)) != n + 1:
            imm = Verdict(False, imm.checked, x)
            break
    return EmbeddingReport(bpf, inj, imm)
