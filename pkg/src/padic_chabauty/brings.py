"""Bring's curve: the genus-4 curve in P^4 cut out by

    x1 + ... + x5 = 0,   x1^2 + ... + x5^2 = 0,   x1^3 + ... + x5^3 = 0.

Its quadratic points, the quotient by a transposition onto the plane cubic
E', the isomorphism E' -> E: y^2 + 5x^3 + 5x^2 + 4 = 0, and a bounded search
for quadratic points.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import CubicCurve
from .errors import AtInfinity, FieldMismatch, InvalidInput, InvalidRatio, MapsToInfinity
from .exactfield import QuadElement, is_squarefree

# y^2 = -5x^3 - 5x^2 - 4
E_CURVE = CubicCurve((Fraction(-4), Fraction(0), Fraction(-5), Fraction(-5)))
E_RATIONAL_POINTS = (None, (Fraction(-2), Fraction(4)), (Fraction(-2), Fraction(-4)))


def _as_quad(c, d: int) -> QuadElement:
    if isinstance(c, QuadElement):
        if c.d != d:
            raise FieldMismatch(f"coordinate in Q(sqrt {c.d}), expected Q(sqrt {d})")
        return c
    return QuadElement(Fraction(c), 0, d)


class ProjPoint5:
    """A point of P^4 with coordinates in Q(sqrt d), scaled so the first
    nonzero coordinate is 1."""

    def __init__(self, coords, d: int = -1):
        if len(coords) != 5:
            raise InvalidInput("a point of P^4 needs five coordinates")
        cs = [_as_quad(c, d) for c in coords]
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise InvalidInput("all coordinates are zero")
        inv = lead.inverse()
        self.d = d
        self.coords = tuple(c * inv for c in cs)

    def __eq__(self, other):
        return isinstance(other, ProjPoint5) and self.d == other.d and self.coords == other.coords

    def __hash__(self):
        return hash((self.d, self.coords))

    def __repr__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def key(self) -> tuple:
        return tuple(c.key() for c in self.coords)

    def permute(self, perm) -> ProjPoint5:
        """Coordinate ``i`` of the result is coordinate ``perm[i]`` of self."""
        return ProjPoint5([self.coords[j] for j in perm], self.d)

    def conj(self) -> ProjPoint5:
        return ProjPoint5([c.conj() for c in self.coords], self.d)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def point(*coords, d: int = -1) -> ProjPoint5:
    """Convenience constructor; string coordinates use the ``a+b*s`` syntax."""
    from .exactfield import parse
    return ProjPoint5([parse(c, d) if isinstance(c, str) else c for c in coords], d)


KNOWN_POINTS = (point(1, "s", -1, "-s", 0), point(1, "-s", -1, "s", 0))


def power_sums(pt: ProjPoint5) -> tuple:
    xs = pt.coords
    return (sum(xs, QuadElement(0, 0, pt.d)),
            sum((x * x for x in xs), QuadElement(0, 0, pt.d)),
            sum((x * x * x for x in xs), QuadElement(0, 0, pt.d)))


def verify_brings(pt: ProjPoint5) -> bool:
    return all(not s for s in power_sums(pt))


def s5_orbit(pt: ProjPoint5, with_conjugation: bool = True) -> set[ProjPoint5]:
    images = {pt.permute(perm) for perm in itertools.permutations(range(5))}
    if with_conjugation:
        images |= {q.conj() for q in images}
    return images


# -- the quotient E' and the isomorphism to E ------------------------------------


def eprime_equation(x, y):
    """Left side of E': the complete homogeneous cubic h3(x, y, 1)."""
    return (x ** 3 + y ** 3 + 1 + x * x * y + y * y * x + x * x + y * y + x * y + x + y)


def quotient_to_eprime(pt: ProjPoint5, swapped: tuple[int, int]):
    """Image on E' under the quotient by the transposition of ``swapped``.

    The three other coordinates, in index order, are projected to P^2 and
    dehomogenized by the last of them.
    """
    i, j = swapped
    if i == j or not (0 <= i < 5 and 0 <= j < 5):
        raise InvalidInput(f"bad transposition {swapped}")
    a, b, c = (pt.coords[k] for k in range(5) if k not in (i, j))
    if not c:
        raise AtInfinity("third projected coordinate is zero")
    return (a / c, b / c)


def eprime_to_e(pt):
    x, y = pt
    den = 1 + 2 * x + 2 * y
    if not den:
        raise MapsToInfinity("1 + 2x + 2y = 0")
    return (2 / den, 4 * (y - x) / den)


def e_equation(x, y):
    return y * y + 5 * x ** 3 + 5 * x * x + 4


def to_e(pt: ProjPoint5, swapped: tuple[int, int]):
    """Composite quotient map to E; ``None`` is the point at infinity."""
    try:
        return eprime_to_e(quotient_to_eprime(pt, swapped))
    except MapsToInfinity:
        return None


def trace_on_e(pt: ProjPoint5, swapped: tuple[int, int]):
    """``P_E + conj(P_E)`` on E, a point that must be rational.

    The image of a single quadratic point is generally only defined over
    the quadratic field; the sum with its conjugate descends to E(Q).
    """
    P = to_e(pt, swapped)
    Q = None if P is None else (P[0].conj(), P[1].conj())
    S = E_CURVE.add(P, Q)
    if S is None:
        return None
    x, y = S
    if not (x.is_rational() and y.is_rational()):
        raise InvalidInput(f"trace {S} is not rational")
    return (x.a, y.a)


# -- the trace/norm constraints --------------------------------------------------


def _tn(z) -> Fraction:
    if isinstance(z, QuadElement):
        return z.trace() + 4 * z.norm()
    z = Fraction(z)
    return 2 * z + 4 * z * z


def trace_norm_constraint(x, y) -> bool:
    """``Tr y + 4 Nm y == Tr x + 4 Nm x``."""
    if isinstance(x, QuadElement) and isinstance(y, QuadElement) and x.d != y.d:
        raise FieldMismatch(f"Q(sqrt {x.d}) and Q(sqrt {y.d})")
    return _tn(y) == _tn(x)


def s3_factors(x1, x2, x3) -> list[Fraction]:
    """The six factors ``T(a/c) - T(b/c)`` over orderings (a, b, c) of the triple."""
    out = []
    for a, b, c in itertools.permutations((x1, x2, x3)):
        if not c:
            raise InvalidRatio("a ratio has zero denominator")
        out.append(_tn(a / c) - _tn(b / c))
    return out


def s3_product_constraint(x1, x2, x3) -> bool:
    return math.prod(s3_factors(x1, x2, x3)) == 0


def s3_filter(pt: ProjPoint5) -> bool:
    """Every triple of nonzero coordinates satisfies the product constraint."""
    nonzero = [c for c in pt.coords if c]
    return all(s3_product_constraint(*t) for t in itertools.combinations(nonzero, 3))


# -- the bounded search ----------------------------------------------------------


def fundamental_discriminant(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def fields_up_to(D: int) -> list[int]:
    """Squarefree ``d != 1`` with ``|disc Q(sqrt d)| <= D``."""
    return [d for d in range(-D, D + 1)
            if d not in (0, 1) and is_squarefree(d) and abs(fundamental_discriminant(d)) <= D]


def height_values(H: int) -> list[Fraction]:
    return sorted({Fraction(n, m) for n in range(-H, H + 1) for m in range(1, H + 1)})


def _within(c: QuadElement, H: int) -> bool:
    return all(abs(q.numerator) <= H and q.denominator <= H for q in (c.a, c.b))


def canonical(pt: ProjPoint5) -> ProjPoint5:
    """Representative of the S5 x conjugation orbit.

    Preference: last coordinate zero, then the shape ``(1: u: -1: -u: 0)``,
    then the smallest coordinate key.
    """
    def score(q):
        c = q.coords
        shape = c[2] == -c[0] and c[3] == -c[1]
        return (bool(c[4]), not shape, q.key())
    return min(s5_orbit(pt), key=score)


@dataclass
class SearchResult:
    disc_bound: int
    height_bound: int
    fields: list
    candidates: int
    orbits: list
    representatives: list
    orbit_sizes: list

    def to_json(self) -> dict:
        return {
            "disc_bound": self.disc_bound,
            "height_bound": self.height_bound,
            "fields": self.fields,
            "candidates_checked": self.candidates,
            "orbits": [{"d": o.d, "point": o.to_json(), "size": n}
                       for o, n in zip(self.orbits, self.orbit_sizes)],
            "representatives": [r.to_json() for r in self.representatives],
        }


def _search_field(d: int, H: int, rational_only: bool = False):
    """Points ``(x1: x2: x3: x4: 1)`` over Q(sqrt d) with bounded coordinates.

    x1 and x2 run over the box; x3 + x4 and x3*x4 then follow from the first
    two power sums, and the third power sum is checked before any square
    root is taken.  Everything is scaled by L = lcm(1..H) so the inner loop
    runs on integer pairs ``(a, b) = a + b sqrt d``.
    """
    L = math.lcm(*range(1, H + 1))
    vals = height_values(H)
    box = [(int(a * L), int(b * L)) for a in vals for b in ([0] if rational_only else vals)]

    def mul(u, v):
        return (u[0] * v[0] + d * u[1] * v[1], u[0] * v[1] + u[1] * v[0])

    powers = [(u, mul(u, u), mul(mul(u, u), u)) for u in box]
    found, checked = [], 0
    one = QuadElement(1, 0, d)
    for (u, u2, u3), (v, v2, v3) in itertools.product(powers, repeat=2):
        checked += 1
        s = (-L - u[0] - v[0], -u[1] - v[1])
        p2 = (-L * L - u2[0] - v2[0], -u2[1] - v2[1])
        p3 = (-L ** 3 - u3[0] - v3[0], -u3[1] - v3[1])
        # x3^3 + x4^3 = s^3 - 3 e s with 2e = s^2 - p2, i.e. 3 s p2 - s^3 = 2 p3
        s2 = mul(s, s)
        lhs = mul(s, (3 * p2[0] - s2[0], 3 * p2[1] - s2[1]))
        if lhs != (2 * p3[0], 2 * p3[1]):
            continue
        S = QuadElement(Fraction(s[0], L), Fraction(s[1], L), d)
        P2 = QuadElement(Fraction(p2[0], L * L), Fraction(p2[1], L * L), d)
        root = (2 * P2 - S * S).sqrt()
        if root is None:
            continue
        x1 = QuadElement(Fraction(u[0], L), Fraction(u[1], L), d)
        x2 = QuadElement(Fraction(v[0], L), Fraction(v[1], L), d)
        x3, x4 = (S + root) / 2, (S - root) / 2
        if not (_within(x3, H) and _within(x4, H)):
            continue
        rational = all(c.is_rational() for c in (x1, x2, x3, x4))
        if rational != rational_only:
            continue
        pt = ProjPoint5([x1, x2, x3, x4, one], d)
        if s3_filter(pt) and verify_brings(pt):
            found.append(pt)
    return found, checked


def bounded_quadratic_search(D: int, H: int, threads: int | None = None) -> SearchResult:
    """All quadratic points of bounded height, up to S5 and conjugation.

    ``D`` bounds ``|disc K|`` and ``H`` bounds numerators and denominators
    of the rational coordinates of each coordinate ``a + b sqrt d``.
    """
    if D < 1 or H < 1:
        raise InvalidInput("bounds must be at least 1")
    fields = fields_up_to(D)
    if threads is None:
        threads = max(1, int(os.environ.get("CHABAUTY_THREADS", "1") or 1))
    if fields:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda d: _search_field(d, H), fields))
    else:
        # no quadratic field is small enough: look for rational points only
        parts = [_search_field(-1, H, rational_only=True)]
    orbits = {}
    candidates = 0
    for found, checked in parts:
        candidates += checked
        for pt in found:
            rep = canonical(pt)
            orbits[(rep.d, rep.key())] = rep
    reps_sorted = [orbits[k] for k in sorted(orbits)]
    shown = []
    for rep in reps_sorted:
        for q in sorted({rep, rep.conj()}, key=lambda q: q.key(), reverse=True):
            shown.append(q)
    sizes = [len(s5_orbit(r)) for r in reps_sorted]
    return SearchResult(D, H, fields, candidates, reps_sorted, shown, sizes)
