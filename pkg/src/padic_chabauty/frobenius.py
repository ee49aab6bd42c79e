"""Frobenius on the de Rham cohomology of odd-degree hyperelliptic curves.

For ``y^2 = Q(x)`` with Q monic of odd degree ``2g+1`` the basis is
``w_i = x^i dx/(2y)``, ``i < 2g``.  The Frobenius lift ``x -> x^p`` pulls
``w_i`` back to ``sum_j M[i][j] w_j + d f_i``; :func:`frobenius_matrix`
returns ``M`` together with the exact functions ``f_i``, which Coleman
integration between residue disks needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

from . import poly
from .errors import (InvalidModel, NormalizationUnavailable, PrecisionExhausted,
                     UnsupportedModel)
from .hyperelliptic import HyperellipticModel, check_good_reduction
from .padic import PadicNumber, check_prime, valuation


@dataclass(frozen=True)
class OddModel:
    """Monic odd-degree ``y^2 = Q(x)`` with p-integral coefficients, constant first."""

    coefficients: tuple
    p: int
    N: int = 10

    def __post_init__(self):
        coeffs = tuple(poly.make(self.coefficients))
        object.__setattr__(self, "coefficients", coeffs)
        check_prime(self.p)
        d = len(coeffs) - 1
        if d not in (3, 5):
            raise InvalidModel(f"odd model must have degree 3 or 5, got {d}")
        if coeffs[-1] != 1:
            raise InvalidModel("odd model must be monic")
        if not check_good_reduction(self.curve, self.p):
            raise InvalidModel(f"bad reduction at {self.p}")

    @property
    def curve(self) -> HyperellipticModel:
        return HyperellipticModel(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2


@dataclass(frozen=True)
class CoordinateChange:
    """Birational map from a genus-1 (or odd) model onto a monic odd model.

    ``forward`` sends ``(u, v)`` to ``(U, V)``, returning ``None`` for the point
    at infinity.  ``differential_factors[i]`` is the constant ``c`` with
    ``u^i du/(2v) = c * U^i dU/(2V)``; for a Weierstrass source the
    differential is the invariant ``dx/(2y + a1 x + a3)``.
    """

    source: str
    target: HyperellipticModel
    forward: Callable
    differential_factors: tuple
    description: str

    def __call__(self, point):
        return self.forward(point)


def _scale_odd(coeffs, source: str) -> tuple[HyperellipticModel, CoordinateChange]:
    """``U = a u``, ``V = a^((d-1)/2) v`` for odd degree d with leading coefficient a."""
    d = len(coeffs) - 1
    a = coeffs[-1]
    target = HyperellipticModel(tuple(coeffs[j] * a ** (d - 1 - j) for j in range(d + 1)))
    e = (d - 1) // 2

    def forward(pt):
        if pt is None:
            return None
        u, v = pt
        return (u * a, v * a ** e)

    factors = tuple(a ** ((d - 3) // 2 - i) for i in range(d - 1))
    return target, CoordinateChange(source, target, forward, factors,
                                    f"U = {a}*u, V = {a}^{e}*v")


def _rational_roots(coeffs) -> list[Fraction]:
    """Rational roots by the rational root theorem (integer-scaled)."""
    den = math.lcm(*[Fraction(c).denominator for c in coeffs])
    ints = [int(Fraction(c) * den) for c in coeffs]
    # strip zero roots first
    roots = []
    while ints and ints[0] == 0:
        ints = ints[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for den_ in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, den_)
                if r not in roots and poly.evaluate(ints, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def to_odd_model(model: HyperellipticModel, p: int | None = None,
                 N: int = 10) -> tuple[OddModel | HyperellipticModel, CoordinateChange]:
    """Normalize a genus-1 (or odd quintic) model to a monic odd model.

    Cubics and quintics are rescaled.  Quartics are sent to a cubic by moving
    a rational root of the quartic to infinity.  Returns an :class:`OddModel`
    when ``p`` is given, else the target :class:`HyperellipticModel`.
    """
    coeffs = model.poly
    d = model.degree
    if d % 2 == 1:
        target, change = _scale_odd(coeffs, str(model))
    elif d == 4:
        roots = _rational_roots(coeffs)
        if not roots:
            raise NormalizationUnavailable("quartic has no rational root to send to infinity")
        r = roots[0]
        b = poly.taylor_shift(coeffs, r)
        b1, b2, b3, b4 = b[1], b[2], b[3], b[4]
        cubic = poly.make([b1 * b1 * b4, b1 * b3, b2, 1])
        target = HyperellipticModel(tuple(cubic))

        def forward(pt, r=r, b1=b1):
            if pt is None:
                raise NormalizationUnavailable("points at infinity of a quartic are not mapped")
            u, v = pt
            w = u - r
            if w == 0:
                return None
            return (b1 / w, b1 * v / (w * w))

        change = CoordinateChange(str(model), target, forward, (Fraction(-1),),
                                  f"Z = {b1}/(u - {r}), H = {b1}*v/(u - {r})^2")
    else:
        raise NormalizationUnavailable(f"degree {d} has no odd normalization here")
    if p is None:
        return target, change
    return OddModel(target.coefficients, p, N), change


def from_weierstrass(a1, a2, a3, a4, a6) -> tuple[HyperellipticModel, CoordinateChange]:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` to a monic cubic.

    With ``eta = 2y + a1 x + a3`` the curve is ``eta^2 = 4x^3 + b2 x^2 + 2 b4 x + b6``;
    then ``U = 4x``, ``V = 4 eta``.
    """
    a1, a2, a3, a4, a6 = map(Fraction, (a1, a2, a3, a4, a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    target = HyperellipticModel((16 * b6, 8 * b4, b2, Fraction(1)))

    def forward(pt):
        if pt is None:
            return None
        x, y = pt
        return (4 * x, 4 * (2 * y + a1 * x + a3))

    # dx/eta = 2 * dU/(2V)
    return target, CoordinateChange("weierstrass", target, forward, (Fraction(2),),
                                    "U = 4x, V = 4(2y + a1*x + a3)")


def weierstrass_j(a1, a2, a3, a4, a6) -> Fraction:
    a1, a2, a3, a4, a6 = map(Fraction, (a1, a2, a3, a4, a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise InvalidModel("singular Weierstrass equation")
    return c4 ** 3 / disc


def j_invariant(model: HyperellipticModel) -> Fraction:
    """j-invariant of a cubic model ``y^2 = c3 x^3 + c2 x^2 + c1 x + c0``."""
    if model.degree != 3:
        model = to_odd_model(model)[0]
    c0, c1, c2, c3 = model.coefficients
    # y^2 = c3 x^3 + ... is isomorphic to Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2
    return weierstrass_j(0, c2, 0, c1 * c3, c0 * c3 * c3)


# -- Kedlaya's algorithm -----------------------------------------------------


def _reducer(p: int, K: int) -> Callable[[Fraction], Fraction]:
    """Map a rational to a canonical representative modulo p^K."""
    def red(c: Fraction) -> Fraction:
        if c == 0:
            return c
        v = valuation(c, p)
        if v >= K:
            return Fraction(0)
        unit = c / Fraction(p) ** v
        mod = p ** (K - v)
        u = unit.numerator * pow(unit.denominator, -1, mod) % mod
        return Fraction(u) * Fraction(p) ** v
    return red


def _red_poly(a, red):
    return poly.trim(red(c) for c in a)


def _mul_red(a, b, red):
    return _red_poly(poly.mul(a, b), red)


def _binom_half(k: int) -> Fraction:
    """binomial(-1/2, k)."""
    return Fraction((-1) ** k * math.comb(2 * k, k), 4 ** k)


@dataclass
class FrobeniusData:
    """Frobenius matrix ``M`` with ``phi^* w_i = sum_j M[i][j] w_j + d f_i``.

    ``exact_parts[i]`` maps ``m`` to a polynomial ``F_m`` with
    ``f_i = sum_m F_m(x) y^(1-2m)``.  ``precision`` is the certified number
    of p-adic digits of every matrix entry.
    """

    model: OddModel
    matrix: list
    exact_parts: list
    precision: int
    working_precision: int
    basis: str = "x^i dx/(2y)"
    checks: dict = field(default_factory=dict)
    reference_parts: list | None = None

    @property
    def p(self) -> int:
        return self.model.p

    @property
    def genus(self) -> int:
        return self.model.genus

    def entry(self, i: int, j: int) -> PadicNumber:
        return self.matrix[i][j]

    def f_value(self, i: int, x: PadicNumber, y: PadicNumber) -> PadicNumber:
        """Value of the exact part ``f_i`` at a point.

        The value is capped at the number of digits on which the two
        Kedlaya runs agree.
        """
        total = self._f(self.exact_parts[i], x, y)
        if self.reference_parts is not None:
            diff = total - self._f(self.reference_parts[i], x, y)
            cap = min(self.precision, diff.valuation)
            if cap < total.precision:
                total = total.with_precision(cap)
        return total

    def _f(self, parts, x, y):
        total = PadicNumber.zero(self.p, self.working_precision + 10)
        yinv = y.inverse()
        for m, F in parts.items():
            total = total + poly.evaluate(F, x) * (y if m == 0 else yinv ** (2 * m - 1))
        return total

    def charpoly(self) -> list[int]:
        """Integer characteristic polynomial ``det(T - M)``, constant term first."""
        L = self.zeta_numerator()
        return list(reversed(L))

    def zeta_numerator(self) -> list[int]:
        """``L(T) = det(1 - T M)`` rounded to integers, constant term first."""
        return _round_numerator(self)

    def trace(self) -> int:
        return -self.zeta_numerator()[1]


def _kedlaya(model: OddModel, K: int) -> tuple[list, list]:
    p = model.p
    Q = list(model.coefficients)
    d = model.degree
    g = model.genus
    red = _reducer(p, K)
    dQ = poly.derivative(Q)
    one, U, V = poly.xgcd(Q, dQ)
    if one != [1]:
        raise InvalidModel("Q is not squarefree")
    U, V = _red_poly(U, red), _red_poly(V, red)
    Qp = [Fraction(0)] * (p * d + 1)
    for j, c in enumerate(Q):
        Qp[p * j] = c
    E = poly.sub(Qp, poly.power(Q, p))
    E = _red_poly(E, red)
    kmax = K + math.ceil(math.log(2 * p * K + 2, p)) + 2
    matrix, parts = [], []
    for i in range(2 * g):
        levels: dict[int, list] = {}
        Ek = [Fraction(1)]
        base = [Fraction(0)] * (p * (i + 1) - 1) + [Fraction(1)]
        for k in range(kmax + 1):
            coef = p * _binom_half(k)
            if valuation(coef, p) + k < K + 2:
                m = (p * (2 * k + 1) - 1) // 2
                term = _red_poly(poly.scale(poly.mul(base, Ek), coef), red)
                levels[m] = poly.add(levels.get(m, []), term)
            Ek = _mul_red(Ek, E, red)
        f: dict[int, list] = {}
        for m in range(max(levels), 0, -1):
            A = levels.pop(m, [])
            if not A:
                continue
            AV = _mul_red(A, V, red)
            T, S = poly.divmod_poly(AV, Q)
            R = poly.add(_mul_red(A, U, red), _mul_red(T, dQ, red))
            B = _red_poly(poly.scale(S, Fraction(1, 1 - 2 * m)), red)
            f[m] = poly.add(f.get(m, []), B)
            lower = poly.sub(R, poly.scale(poly.derivative(B), 2))
            levels[m - 1] = _red_poly(poly.add(levels.get(m - 1, []), lower), red)
        A = levels.get(0, [])
        horiz: list = []
        while len(A) - 1 >= 2 * g:
            n = len(A) - 1
            k = n - 2 * g
            c = red(A[-1] / (2 * k + d))
            xk = [Fraction(0)] * k + [c]
            xk1 = [Fraction(0)] * (k - 1) + [2 * k * c] if k >= 1 else []
            sub = poly.add(poly.mul(xk1, Q), poly.mul(xk, dQ))
            A = _red_poly(poly.sub(A, sub), red)
            A = A[:n] if len(A) > n else A
            horiz = poly.add(horiz, xk)
        f[0] = horiz
        row = [(A[j] if j < len(A) else Fraction(0)) for j in range(2 * g)]
        matrix.append(row)
        parts.append({m: F for m, F in f.items() if F})
    return matrix, parts


def _agreement(a: list, b: list, p: int) -> int:
    worst = math.inf
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            worst = min(worst, valuation(x - y, p))
    return worst


def working_precision(N: int, p: int) -> int:
    return N + math.ceil(math.log(2 * N, p)) + 2


def frobenius_matrix(model: OddModel, N: int | None = None, attempts: int = 4) -> FrobeniusData:
    """Frobenius matrix certified to ``N`` digits by agreement of two runs.

    The algorithm runs at ``N_work`` and ``N_work + 2``; the number of digits
    on which the two matrices agree is the certified precision.  The working
    precision is raised until that reaches ``N``.
    """
    N = model.N if N is None else N
    p = model.p
    K = working_precision(N, p)
    low = _kedlaya(model, K)
    for _ in range(attempts):
        high = _kedlaya(model, K + 2)
        agree = _agreement(low[0], high[0], p)
        if agree >= N:
            break
        low, K = high, K + 2
    else:
        raise PrecisionExhausted(
            f"Frobenius matrix only certified to {agree} digits, {N} requested",
            shortfall=N - agree)
    certified = int(min(agree, K)) if agree != math.inf else K
    g = model.genus
    matrix = [[PadicNumber.from_rational(c, p, certified) for c in row] for row in high[0]]
    data = FrobeniusData(model, matrix, high[1], certified, K + 2, reference_parts=low[1])
    det = _det([[c for c in row] for row in high[0]])
    data.checks["det_valuation"] = valuation(det, p) if det else None
    if data.checks["det_valuation"] != g:
        raise PrecisionExhausted(f"det(M) has valuation {data.checks['det_valuation']}, expected {g}")
    return data


def _det(m):
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(sign)
        for i, j in enumerate(perm):
            prod *= m[i][j]
        total += prod
    return total


def _char_coefficients(m) -> list[Fraction]:
    """Coefficients of ``det(1 - T m)``, constant first, over Q."""
    n = len(m)
    out = [Fraction(0)] * (n + 1)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        # product of (delta_ij - T m_ij) entries
        prod = [Fraction(sign)]
        for i, j in enumerate(perm):
            factor = [Fraction(1 if i == j else 0), -m[i][j]]
            prod = poly.mul(prod, factor) if prod else []
        for k, c in enumerate(prod):
            out[k] += c
    return out


def _round_numerator(data: FrobeniusData) -> list[int]:
    p, g = data.p, data.genus
    m = [[c.to_fraction() for c in row] for row in data.matrix]
    coeffs = _char_coefficients(m)
    out = [1]
    min_val = min(c.valuation for row in data.matrix for c in row)
    for k in range(1, g + 1):
        # coefficient of T^k is a sum of k-fold products of entries
        prec = data.precision + (k - 1) * min(min_val, 0)
        bound = math.comb(2 * g, k) * math.isqrt(p ** k) + math.comb(2 * g, k)
        mod = p ** prec
        if mod <= 2 * bound:
            raise PrecisionExhausted(
                f"coefficient of T^{k} needs more than {prec} digits to round",
                shortfall=math.ceil(math.log(2 * bound + 1, p)) - prec + 1)
        c = coeffs[k]
        val = c.numerator * pow(c.denominator, -1, mod) % mod
        if val > mod // 2:
            val -= mod
        out.append(val)
    # functional equation: a_{2g-k} = p^(g-k) a_k
    for k in range(g + 1, 2 * g + 1):
        out.append(p ** (k - g) * out[2 * g - k])
    return out


def point_counts(L: list[int], p: int, kmax: int) -> list[int]:
    """``#X(F_{p^k})`` for ``k = 1..kmax`` from ``L(T)`` via Newton's identities."""
    n = len(L) - 1
    # power sums s_k of the reciprocal roots alpha with L(T) = prod(1 - alpha T)
    e = [(-1) ** k * L[k] for k in range(n + 1)]
    s = [0] * (kmax + 1)
    for k in range(1, kmax + 1):
        total = (-1) ** (k - 1) * k * (e[k] if k <= n else 0)
        for i in range(1, k):
            total += (-1) ** (i - 1) * (e[i] if i <= n else 0) * s[k - i]
        s[k] = total
    return [p ** k + 1 - s[k] for k in range(1, kmax + 1)]


def satisfies_functional_equation(L: list[int], p: int) -> bool:
    """``p^g T^(2g) L(1/(pT)) = L(T)``."""
    n = len(L) - 1
    g = n // 2
    return all(L[n - k] * p ** k == L[k] * p ** g for k in range(n + 1))


def zeta_numerator(fdata: FrobeniusData) -> list[int]:
    return fdata.zeta_numerator()


def _check_unsupported(model: HyperellipticModel) -> None:
    if model.degree % 2 == 0:
        raise UnsupportedModel("Frobenius engine handles odd-degree models only")
