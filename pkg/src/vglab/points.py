"""Rational points of projective space and the seeded random source."""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Tuple

from .errors import SamplingExhausted
from .linalg import normalize_vector

COORD_BOUND = 9
MAX_ATTEMPTS = 64


class ProjPoint:
    """A point of P^n stored in projective normal form.

    Coordinates are coprime integers with the first nonzero entry positive,
    so equality of points is equality of coordinate tuples.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        c = normalize_vector(list(coords))
        if not any(c):
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in c))

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(str(int(x)) for x in self.coords) + ")"

    def to_list(self):
        return [int(x) for x in self.coords]


def parse_point(text: str) -> ProjPoint:
    s = text.strip().strip("()[]")
    sep = ":" if ":" in s else ","
    return ProjPoint(Fraction(t) for t in s.split(sep))


def derive_rng(seed: int, *labels) -> random.Random:
    """Independent deterministic stream for (seed, labels)."""
    key = ":".join([str(int(seed))] + [str(x) for x in labels]).encode()
    digest = hashlib.sha256(key).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_point(
    rng: random.Random,
    n: int,
    avoid: Callable[[ProjPoint], bool] | None = None,
    bound: int = COORD_BOUND,
) -> ProjPoint:
    """Integer point of P^n with coordinates in ``[-bound, bound]``.

    Points for which ``avoid`` returns True are redrawn, at most
    ``MAX_ATTEMPTS`` times.
    """
    for _ in range(MAX_ATTEMPTS):
        v = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if not any(v):
            continue
        p = ProjPoint(v)
        if avoid is None or not avoid(p):
            return p
    raise SamplingExhausted(f"no admissible point of P^{n} after {MAX_ATTEMPTS} draws")


def random_points(rng, n, count, avoid=None, bound=COORD_BOUND):
    return [random_point(rng, n, avoid, bound) for _ in range(count)]


def points_on_line(P: Sequence, Q: Sequence, params: Iterable[Tuple[int, int]]):
    """Points ``s*P + t*Q`` for the given ``(s, t)`` pairs."""
    out = []
    for s, t in params:
        v = [s * a + t * b for a, b in zip(P, Q)]
        if any(v):
            out.append(ProjPoint(v))
    return out
