"""Recover homogeneous forms from their values at rational points."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import InconsistentSamples, Underdetermined
from .forms import Form, form_from_vector, monomial_basis
from .linalg import rref


def evaluation_row(monomials, coords) -> List[Fraction]:
    row = []
    for e in monomials:
        t = Fraction(1)
        for x, k in zip(coords, e):
            if k:
                t *= x ** k
        row.append(t)
    return row


def interpolate_forms(
    n: int,
    d: int,
    points: Sequence,
    columns: Sequence[Sequence],
    margin: int = 1,
) -> List[Form]:
    """Fit one degree-``d`` form per value column, sharing a single elimination.

    ``columns[k][i]`` is the value of the k-th form at ``points[i]`` (taken at
    the point's stored affine representative).
    """
    mons = monomial_basis(n, d)
    D = len(mons)
    if len(points) < D + margin:
        raise Underdetermined(f"{len(points)} samples cannot determine a form in a {D}-dimensional space")
    V = [evaluation_row(mons, getattr(p, "coords", p)) for p in points]
    aug = [V[i] + [col[i] for col in columns] for i in range(len(points))]
    R, pivots = rref(aug)
    if any(pc >= D for pc in pivots):
        raise InconsistentSamples(f"no degree-{d} form matches the samples")
    if len(pivots) < D:
        raise Underdetermined("sample points are not in general position for this degree")
    out = []
    for k in range(len(columns)):
        out.append(form_from_vector(n, d, [R[i][D + k] for i in range(D)]))
    return out


def interpolate_form(n: int, d: int, samples: Sequence[Tuple[object, object]], margin: int = 1) -> Form:
    points = [p for p, _ in samples]
    values = [Fraction(v) for _, v in samples]
    return interpolate_forms(n, d, points, [values], margin)[0]
