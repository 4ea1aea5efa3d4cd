"""Free presentations ``F2 -> F1 -> F0 -> E -> 0`` by sums of line bundles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from .chow import ChowClass, ChernData, chern_data, chern_line_sum, chow_inv, chow_mul
from .errors import VGLabError
from .forms import Form, monomial_basis, monomial_index
from .linalg import matrix_rank, normalize_vector
from .points import derive_rng, random_points

FormMatrix = List[List[Form]]


class InvalidPresentation(VGLabError, ValueError):
    pass


def form_det(M: Sequence[Sequence[Form]], nvars: int) -> Form:
    """Determinant of a square matrix of forms by Laplace expansion over columns.

    Partial expansions are memoised on the set of rows already used, so the
    cost is ``O(2^k k)`` form products for a ``k x k`` matrix.
    """
    k = len(M)
    if k == 0:
        return Form.const(nvars, 1)
    layer = {0: Form.const(nvars, 1)}
    for col in range(k):
        nxt = {}
        for used, val in layer.items():
            if not val:
                continue
            sign = -1 if col % 2 else 1
            for r in range(k):
                bit = 1 << r
                if used & bit:
                    sign = -sign
                    continue
                entry = M[r][col]
                if entry:
                    term = val * entry
                    if sign < 0:
                        term = -term
                    key = used | bit
                    nxt[key] = nxt[key] + term if key in nxt else term
        layer = nxt
    full = (1 << k) - 1
    if full in layer:
        return layer[full]
    deg = sum(max(f.degree for f in (M[r][c] for r in range(k))) for c in range(k))
    return Form.zero(nvars, deg)


def _entry(nvars: int, f, degree: int) -> Form:
    if isinstance(f, Form):
        if f and f.degree != degree:
            raise InvalidPresentation(f"entry {f} has degree {f.degree}, expected {degree}")
        if not f:
            return Form.zero(nvars, max(degree, 0))
        return f
    if f == 0:
        return Form.zero(nvars, max(degree, 0))
    if degree != 0:
        raise InvalidPresentation(f"constant entry {f} where degree {degree} is required")
    return Form.const(nvars, f)


@dataclass(frozen=True)
class FreePresentation:
    """``0 -> F2 --A2--> F1 --A1--> F0 -> E -> 0`` on P^n.

    ``A1[i][j]`` maps the j-th summand O(f1[j]) to the i-th summand O(f0[i]) and
    is homogeneous of degree ``f0[i] - f1[j]``; likewise for ``A2``.
    """

    n: int
    f0: Tuple[int, ...]
    f1: Tuple[int, ...] = ()
    f2: Tuple[int, ...] = ()
    A1: Tuple[Tuple[Form, ...], ...] = ()
    A2: Tuple[Tuple[Form, ...], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        nv = self.n + 1
        f0, f1, f2 = tuple(self.f0), tuple(self.f1), tuple(self.f2)
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)
        A1 = self._normalize_matrix(self.A1, f1, f0, "A1")
        A2 = self._normalize_matrix(self.A2, f2, f1, "A2")
        object.__setattr__(self, "A1", A1)
        object.__setattr__(self, "A2", A2)
        if f2:
            for i in range(len(f0)):
                for k in range(len(f2)):
                    acc = Form.zero(nv, f0[i] - f2[k] if f0[i] >= f2[k] else 0)
                    for j in range(len(f1)):
                        acc = acc + A1[i][j] * A2[j][k]
                    if acc:
                        raise InvalidPresentation("A1 * A2 is not zero")
        if self.rank < 0:
            raise InvalidPresentation("negative rank")

    def _normalize_matrix(self, A, src, tgt, label):
        nv = self.n + 1
        if not src:
            return tuple(() for _ in tgt) if tgt else ()
        if len(A) != len(tgt) or any(len(row) != len(src) for row in A):
            raise InvalidPresentation(f"{label} must be {len(tgt)}x{len(src)}")
        out = []
        for i, row in enumerate(A):
            out_row = []
            for j, f in enumerate(row):
                if isinstance(f, Form) and f.nvars != nv:
                    raise InvalidPresentation(f"{label}[{i}][{j}] lives in {f.nvars} variables")
                d = tgt[i] - src[j]
                e = _entry(nv, f, d)
                if d < 0 and e:
                    raise InvalidPresentation(f"{label}[{i}][{j}] must vanish (negative degree)")
                out_row.append(e)
            out.append(tuple(out_row))
        return tuple(out)

    # basic invariants ---------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def rank(self) -> int:
        return len(self.f0) - len(self.f1) + len(self.f2)

    @property
    def length(self) -> int:
        return 2 if self.f2 else (1 if self.f1 else 0)

    def chern_class(self) -> ChowClass:
        c = chow_mul(chern_line_sum(self.n, self.f0), chern_line_sum(self.n, self.f2))
        return chow_mul(c, chow_inv(chern_line_sum(self.n, self.f1)))

    def chern(self) -> ChernData:
        return chern_data(self.chern_class(), self.rank)

    @property
    def c1(self) -> int:
        return sum(self.f0) - sum(self.f1) + sum(self.f2)

    def matrix1(self) -> FormMatrix:
        return [list(r) for r in self.A1]

    def eval_A1(self, x) -> List[List[Fraction]]:
        coords = getattr(x, "coords", x)
        return [[f.eval(coords) for f in row] for row in self.A1]

    def eval_A2(self, x) -> List[List[Fraction]]:
        coords = getattr(x, "coords", x)
        return [[f.eval(coords) for f in row] for row in self.A2]

    # constructions ------------------------------------------------------
    def twist(self, k: int) -> "FreePresentation":
        return FreePresentation(
            self.n,
            tuple(d + k for d in self.f0),
            tuple(d + k for d in self.f1),
            tuple(d + k for d in self.f2),
            self.A1,
            self.A2,
            name=f"{self.name}({k:+d})" if self.name else "",
        )

    def direct_sum(self, other: "FreePresentation") -> "FreePresentation":
        if self.n != other.n:
            raise InvalidPresentation("direct sum across different ambient spaces")
        return FreePresentation(
            self.n,
            self.f0 + other.f0,
            self.f1 + other.f1,
            self.f2 + other.f2,
            _block_diag(self.A1, other.A1, self.f0, self.f1, other.f0, other.f1, self.nvars),
            _block_diag(self.A2, other.A2, self.f1, self.f2, other.f1, other.f2, self.nvars),
        )

    def restrict(self, images: Sequence[Form]) -> "FreePresentation":
        """Pull back along a linear map given by the images of ``x0..xn``."""
        m = images[0].nvars - 1
        sub = lambda A: [[f.substitute(images) if f else Form.zero(m + 1, f.degree) for f in row] for row in A]
        return FreePresentation(m, self.f0, self.f1, self.f2, sub(self.A1), sub(self.A2))

    def restrict_to_line(self, P: Sequence, Q: Sequence) -> "FreePresentation":
        s, t = Form.var(2, 0), Form.var(2, 1)
        images = [s.scale(p) + t.scale(q) for p, q in zip(P, Q)]
        return self.restrict(images)

    # local freeness -----------------------------------------------------
    def expected_rank_A1(self) -> int:
        return len(self.f1) - len(self.f2)

    def rank_at(self, x) -> int:
        if not self.f1:
            return 0
        return matrix_rank(self.eval_A1(x))

    def is_locally_free_at(self, x) -> bool:
        if self.rank_at(x) != self.expected_rank_A1():
            return False
        if self.f2:
            return matrix_rank(self.eval_A2(x)) == len(self.f2)
        return True

    def sampled_local_freeness(self, seed: int = 0, samples: int = 50):
        """First sampled point where the cokernel fails to be locally free."""
        rng = derive_rng(seed, "local-freeness", self.f0, self.f1, self.f2)
        for x in random_points(rng, self.n, samples):
            if not self.is_locally_free_at(x):
                return x
        return None

    def maximal_minors(self) -> List[Form]:
        k = len(self.f1)
        out = []
        for rows in combinations(range(len(self.f0)), k):
            out.append(form_det([[self.A1[r][c] for c in range(k)] for r in rows], self.nvars))
        return out

    def is_locally_free(self) -> bool:
        """Exact test for length <= 1: the maximal minors have no common zero.

        The minors generate an ideal without projective zeros iff it contains
        every form of degree ``(n+1)(D-1)+1``, D the largest minor degree.
        """
        if self.f2:
            raise InvalidPresentation("exact local freeness test needs a length-1 presentation")
        if not self.f1:
            return True
        minors = [f for f in self.maximal_minors() if f]
        if not minors:
            return False
        if any(f.degree == 0 for f in minors):
            return True
        return ideal_contains_degree(minors, self.n)

    # minimality ---------------------------------------------------------
    def minimalize(self) -> "FreePresentation":
        """Cancel unit (nonzero constant) entries until none remain."""
        pres = self
        while True:
            nxt = pres._cancel_one()
            if nxt is None:
                return pres
            pres = nxt

    def _cancel_one(self):
        for i in range(len(self.f0)):
            for j in range(len(self.f1)):
                f = self.A1[i][j]
                if f and f.degree == 0 and self.f0[i] == self.f1[j]:
                    return self._cancel_A1(i, j)
        for j in range(len(self.f1)):
            for k in range(len(self.f2)):
                f = self.A2[j][k]
                if f and f.degree == 0 and self.f1[j] == self.f2[k]:
                    return self._cancel_A2(j, k)
        return None

    def _cancel_A1(self, i, j):
        A1 = [list(r) for r in self.A1]
        A2 = [list(r) for r in self.A2]
        c = next(iter(A1[i][j].terms.values()))
        # column ops on F1 clear row i; A2 picks up the inverse row operation
        for l in range(len(self.f1)):
            if l != j and A1[i][l]:
                ratio = A1[i][l].scale(1 / c)
                for r in range(len(self.f0)):
                    A1[r][l] = A1[r][l] - A1[r][j] * ratio
                for k in range(len(self.f2)):
                    A2[j][k] = A2[j][k] + ratio * A2[l][k]
        keep0 = [r for r in range(len(self.f0)) if r != i]
        keep1 = [l for l in range(len(self.f1)) if l != j]
        return FreePresentation(
            self.n,
            tuple(self.f0[r] for r in keep0),
            tuple(self.f1[l] for l in keep1),
            self.f2,
            [[A1[r][l] for l in keep1] for r in keep0],
            [[A2[l][k] for k in range(len(self.f2))] for l in keep1],
            name=self.name,
        )

    def _cancel_A2(self, j, k):
        A1 = [list(r) for r in self.A1]
        A2 = [list(r) for r in self.A2]
        c = next(iter(A2[j][k].terms.values()))
        # row ops on F1 clear column k of A2; A1 picks up the inverse column op
        for l in range(len(self.f1)):
            if l != j and A2[l][k]:
                ratio = A2[l][k].scale(1 / c)
                for m in range(len(self.f2)):
                    A2[l][m] = A2[l][m] - ratio * A2[j][m]
                for r in range(len(self.f0)):
                    A1[r][j] = A1[r][j] + A1[r][l] * ratio
        keep1 = [l for l in range(len(self.f1)) if l != j]
        keep2 = [m for m in range(len(self.f2)) if m != k]
        return FreePresentation(
            self.n,
            self.f0,
            tuple(self.f1[l] for l in keep1),
            tuple(self.f2[m] for m in keep2),
            [[A1[r][l] for l in keep1] for r in range(len(self.f0))],
            [[A2[l][m] for m in keep2] for l in keep1],
            name=self.name,
        )

    def is_minimal(self) -> bool:
        return self._cancel_one() is None

    # degeneracy probing -------------------------------------------------
    def linear_entries(self) -> List[Form]:
        """Distinct linear entries of A1 up to scale; their zero lines are where
        rank conditions on the fibre most often fail."""
        seen = {}
        for row in self.A1:
            for f in row:
                if f and f.degree == 1:
                    key = normalize_vector([f.terms.get(e, 0) for e in monomial_basis(self.n, 1)])
                    seen.setdefault(key, f)
        return list(seen.values())

    def describe(self) -> str:
        def s(ds):
            return "+".join(f"O({d})" for d in ds) if ds else "0"
        parts = [s(self.f0)]
        if self.f1:
            parts.insert(0, s(self.f1))
        if self.f2:
            parts.insert(0, s(self.f2))
        return " -> ".join(parts)


def _block_diag(A, B, rowsA, colsA, rowsB, colsB, nvars):
    out = []
    for i, row in enumerate(A if colsA else [()] * len(rowsA)):
        out.append(list(row) + [Form.zero(nvars, max(rowsA[i] - d, 0)) for d in colsB])
    for i, row in enumerate(B if colsB else [()] * len(rowsB)):
        out.append([Form.zero(nvars, max(rowsB[i] - d, 0)) for d in colsA] + list(row))
    if not colsA and not colsB:
        return ()
    return out


def ideal_contains_degree(gens: Sequence[Form], n: int, degree: int | None = None) -> bool:
    """Whether the ideal generated by ``gens`` contains all forms of ``degree``.

    With the default degree this decides (exactly) whether the generators have
    no common zero in P^n over the algebraic closure.
    """
    if degree is None:
        top = max(g.degree for g in gens)
        degree = (n + 1) * (top - 1) + 1
    idx = monomial_index(n, degree)
    rows = []
    for g in gens:
        if g.degree > degree:
            continue
        for mono in monomial_basis(n, degree - g.degree):
            row = {}
            for e, c in g.terms.items():
                row[idx[tuple(a + b for a, b in zip(e, mono))]] = c
            rows.append(row)
    dense = [[r.get(i, 0) for i in range(len(idx))] for r in rows]
    return matrix_rank(dense) == len(idx)


def presentation_from_columns(n, f0, f1, columns) -> FreePresentation:
    """Build A1 from a list of columns (one per F1 summand)."""
    A1 = [[columns[j][i] for j in range(len(f1))] for i in range(len(f0))]
    return FreePresentation(n, tuple(f0), tuple(f1), (), A1)


def zero_matrix(nvars, rows, cols):
    return [[Form.zero(nvars, max(r - c, 0)) for c in cols] for r in rows]
