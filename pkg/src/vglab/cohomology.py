"""Exact sheaf cohomology of bundles given by free presentations.

Line bundles on P^n only have cohomology in degrees 0 and n.  For a
presentation ``F2 -> F1 -> F0`` the hypercohomology spectral sequence
therefore has two nonzero rows, each a complex of explicit matrices:

* row 0: multiplication maps on ``H^0(O(d))`` (monomial bases);
* row n: the Serre-dual action on ``H^n(O(d)) = H^0(O(-d-n-1))^*``, i.e. the
  transposed multiplication matrices on dual monomial bases.

For ``n >= 2`` it degenerates at E2.  On P^1 a d2 differential could connect
the rows of a length-2 presentation; that situation is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Tuple

from .errors import DegenerateLine, UnsupportedResolutionLength, VGLabError
from .forms import Form, monomial_basis, monomial_index
from .linalg import left_kernel_basis, matrix_rank, rref, transpose
from .points import ProjPoint, points_on_line
from .presentation import FreePresentation


class NotExact(VGLabError):
    pass


def h0_line(n: int, a: int) -> int:
    return comb(a + n, n) if a >= 0 else 0


def hn_line(n: int, a: int) -> int:
    return comb(-a - 1, n) if a <= -n - 1 else 0


def line_bundle_cohomology(n: int, a: int) -> List[int]:
    h = [0] * (n + 1)
    h[0] += h0_line(n, a)
    h[n] += hn_line(n, a)
    return h


def mult_matrix(f: Form, src_deg: int, n: int) -> List[List[Fraction]]:
    """Matrix of ``g -> f*g`` from degree ``src_deg`` to ``src_deg + deg f``."""
    tgt_deg = src_deg + f.degree
    src = monomial_basis(n, src_deg)
    tidx = monomial_index(n, tgt_deg)
    M = [[0] * len(src) for _ in range(len(tidx))]
    for j, a in enumerate(src):
        for e, c in f.terms.items():
            M[tidx[tuple(x + y for x, y in zip(a, e))]][j] = c
    return M


def _block_map(A, src_degs, tgt_degs, n, block_dims, block):
    rows_per = [block_dims(d) for d in tgt_degs]
    cols_per = [block_dims(d) for d in src_degs]
    M = [[0] * sum(cols_per) for _ in range(sum(rows_per))]
    r0 = 0
    for i, d_t in enumerate(tgt_degs):
        c0 = 0
        for j, d_s in enumerate(src_degs):
            f = A[i][j]
            if f and rows_per[i] and cols_per[j]:
                B = block(f, d_s, d_t)
                for r, row in enumerate(B):
                    tgt = M[r0 + r]
                    for c, v in enumerate(row):
                        if v:
                            tgt[c0 + c] = v
            c0 += cols_per[j]
        r0 += rows_per[i]
    return M


def h0_map(A, src_degs, tgt_degs, n: int, m: int = 0):
    """H^0 of ``A: (+) O(src) -> (+) O(tgt)`` after twisting by ``m``."""
    return _block_map(
        A,
        [d + m for d in src_degs],
        [d + m for d in tgt_degs],
        n,
        lambda d: h0_line(n, d),
        lambda f, ds, dt: mult_matrix(f, ds, n),
    )


def hn_map(A, src_degs, tgt_degs, n: int, m: int = 0):
    """H^n of the same map, on bases dual to monomials of degree ``-d-n-1``."""
    return _block_map(
        A,
        [d + m for d in src_degs],
        [d + m for d in tgt_degs],
        n,
        lambda d: hn_line(n, d),
        lambda f, ds, dt: transpose(mult_matrix(f, -dt - n - 1, n)),
    )


def _rank(M) -> int:
    return matrix_rank(M) if M and M[0] else 0


def cohomology_row(pres: FreePresentation, m: int) -> Tuple[int, ...]:
    """``(h^0, ..., h^n)`` of ``E(m)`` for the cokernel ``E`` of ``pres``."""
    n = pres.n
    A1, A2 = pres.A1, pres.A2
    f0, f1, f2 = pres.f0, pres.f1, pres.f2
    h = [0] * (n + 1)

    def dims(fn, degs):
        return sum(fn(n, d + m) for d in degs)

    # row q = 0
    a1 = _rank(h0_map(A1, f1, f0, n, m)) if f1 else 0
    a2 = _rank(h0_map(A2, f2, f1, n, m)) if f2 else 0
    z1 = dims(h0_line, f1) - a1 - a2
    z2 = dims(h0_line, f2) - a2
    if z1 or z2:
        raise NotExact(f"H^0 row of the presentation is not exact at twist {m}")
    h[0] += dims(h0_line, f0) - a1

    # row q = n
    b1 = _rank(hn_map(A1, f1, f0, n, m)) if f1 else 0
    b2 = _rank(hn_map(A2, f2, f1, n, m)) if f2 else 0
    top = dims(hn_line, f0) - b1
    mid = dims(hn_line, f1) - b1 - b2
    low = dims(hn_line, f2) - b2
    h[n] += top
    if n >= 2:
        h[n - 1] += mid
        h[n - 2] += low
    else:
        h[0] += mid
        if low:
            raise UnsupportedResolutionLength("length-2 presentation on P^1 with a live d2 differential")
    return tuple(h)


@dataclass
class CohomologyTable:
    n: int
    rows: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    def h(self, i: int, m: int) -> int:
        return self.rows[m][i]

    def chi(self, m: int) -> int:
        return sum((-1) ** i * v for i, v in enumerate(self.rows[m]))

    def twists(self):
        return sorted(self.rows)

    def to_dict(self):
        return {str(m): list(self.rows[m]) for m in self.twists()}

    def format(self) -> str:
        head = "m    " + " ".join(f"h{i:<4d}" for i in range(self.n + 1))
        lines = [head]
        for m in self.twists():
            lines.append(f"{m:<4d} " + " ".join(f"{v:<5d}" for v in self.rows[m]))
        return "\n".join(lines)


def cohomology_table(pres: FreePresentation, m_range: Iterable[int]) -> CohomologyTable:
    if pres.f2 and pres.n < 2:
        raise UnsupportedResolutionLength("length-2 presentations need n >= 2")
    table = CohomologyTable(pres.n)
    for m in m_range:
        table.rows[m] = cohomology_row(pres, m)
    return table


def h0(pres: FreePresentation, m: int = 0) -> int:
    return cohomology_row(pres, m)[0]


# sections --------------------------------------------------------------------

@dataclass
class SectionBasis:
    """Coset representatives of ``H^0(E)`` inside ``H^0(F0)``.

    Each representative is a column of Forms (one per summand of F0); the
    relations span the image of ``H^0(F1)``.
    """

    f0: Tuple[int, ...]
    reps: List[List[Form]]
    relations: List[List[Form]]
    labels: List[Tuple[int, Tuple[int, ...]]]

    def __len__(self):
        return len(self.reps)

    def evaluate(self, x) -> List[List[Fraction]]:
        """|F0| x h0 matrix of section values at ``x``."""
        coords = getattr(x, "coords", x)
        cols = [[f.eval(coords) for f in rep] for rep in self.reps]
        return transpose(cols) if cols else [[] for _ in self.f0]


def h0_basis(pres: FreePresentation) -> SectionBasis:
    n, nv = pres.n, pres.nvars
    if pres.f2:
        extra = sum(hn_line(n, d) for d in pres.f2) - (
            _rank(hn_map(pres.A2, pres.f2, pres.f1, n)) if n >= 1 else 0
        )
        if n == 2 and extra:
            raise UnsupportedResolutionLength("H^0 has classes not represented in H^0(F0)")
    coords: List[Tuple[int, Tuple[int, ...]]] = []
    for i, d in enumerate(pres.f0):
        for mono in monomial_basis(n, d) if d >= 0 else ():
            coords.append((i, mono))
    rel_matrix = h0_map(pres.A1, pres.f1, pres.f0, n) if pres.f1 else []
    relation_vectors = transpose(rel_matrix) if rel_matrix and rel_matrix[0] else []
    pivots: List[int] = []
    if relation_vectors:
        _, pivots = rref(relation_vectors)
    pset = set(pivots)

    def column(vec_items):
        col = [Form.zero(nv, max(d, 0)) for d in pres.f0]
        for (i, mono), c in vec_items:
            col[i] = col[i] + Form.monomial(mono, c)
        return col

    reps, labels = [], []
    for k, lab in enumerate(coords):
        if k not in pset:
            reps.append(column([(lab, 1)]))
            labels.append(lab)
    relations = [column([(coords[k], c) for k, c in enumerate(v) if c]) for v in relation_vectors]
    return SectionBasis(pres.f0, reps, relations, labels)


def fiber_functionals(pres: FreePresentation, x) -> List[List[Fraction]]:
    """Basis of linear functionals on F0(x) vanishing on the image of A1(x).

    These identify the fibre ``E(x) = F0(x) / im A1(x)`` with the row space.
    """
    if not pres.f1:
        return [[Fraction(int(i == j)) for i in range(len(pres.f0))] for j in range(len(pres.f0))]
    return left_kernel_basis(pres.eval_A1(x), len(pres.f0))


def evaluation_matrix(pres: FreePresentation, sections: SectionBasis, x) -> List[List[Fraction]]:
    """Rows: fibre coordinates; columns: sections evaluated at ``x``."""
    Y = fiber_functionals(pres, x)
    S = sections.evaluate(x)
    return [[sum(y[i] * S[i][k] for i in range(len(y))) for k in range(len(sections))] for y in Y]


# restriction to lines ----------------------------------------------------------

@dataclass(frozen=True)
class SplittingType:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    def as_tuple(self):
        return (self.a, self.b)

    def __str__(self):
        return f"O({self.a})+O({self.b})"


def split_ladder(a: int, b: int, m: int) -> int:
    return max(a + m + 1, 0) + max(b + m + 1, 0)


LINE_PARAMS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (3, -1), (1, 3), (2, -3), (5, 2)]


def restrict_to_line(pres: FreePresentation, P, Q, ladder=range(-4, 1)) -> SplittingType:
    """Splitting type of the rank-2 bundle on the line through P and Q.

    Uses the ``h^0(E|_l(m))`` ladder: the first twist with sections is ``-b``.
    """
    if pres.rank != 2:
        raise ValueError("splitting types are computed for rank-2 bundles")
    P = getattr(P, "coords", P)
    Q = getattr(Q, "coords", Q)
    if ProjPoint(P) == ProjPoint(Q):
        raise ValueError("a line needs two distinct points")
    if pres.f2:
        raise UnsupportedResolutionLength("restriction to lines needs a length-1 presentation")
    for x in points_on_line(P, Q, LINE_PARAMS):
        if not pres.is_locally_free_at(x):
            raise DegenerateLine(f"cokernel is not locally free at {x} on the line", witness=x)
    on_line = pres.restrict_to_line(P, Q)
    c1 = pres.c1
    lo = -(c1 - min(pres.f0)) - 1
    if h0(on_line, lo) > 0:
        raise DegenerateLine("restriction has torsion: cokernel not locally free on the line")
    m = lo
    while True:
        m += 1
        if h0(on_line, m) > 0:
            break
    st = SplittingType(c1 + m, -m)
    for t in ladder:
        got = h0(on_line, t)
        if got != split_ladder(st.a, st.b, t):
            raise DegenerateLine(f"h0 ladder {got} at twist {t} inconsistent with {st}")
    return st
