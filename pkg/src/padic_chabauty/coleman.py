"""Coleman integration of the basis differentials ``x^i dx/(2y)``.

Within a residue disk integrals are formal antiderivatives of a power
series (tiny integrals).  Between disks on an odd model the Frobenius
matrix gives the integrals between Teichmueller points (route A).  Even
bielliptic sextics push both holomorphic differentials down to their
elliptic quotients (route B):

    dx/(2y)   = -1/2 f2^*(du/2v)      x dx/(2y) = 1/2 f1^*(du/2v)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (DiskMismatch, InvalidInput, NotAUnit, PrecisionExhausted, UnsupportedDisk,
                     UnsupportedModel)
from .frobenius import FrobeniusData, OddModel, frobenius_matrix, to_odd_model
from .hyperelliptic import (HyperellipticModel, ResidueDisk, differential_series, disk_of,
                            parameter, _root_lift)
from .padic import PadicNumber, hensel_sqrt, teichmuller
from .series import TruncatedSeries


@dataclass(frozen=True)
class Differential:
    """``sum c_i x^i dx/(2y)`` with coefficients c_i in Q or Q_p."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(
            c if isinstance(c, PadicNumber) else Fraction(c) for c in self.coefficients))

    @classmethod
    def basis(cls, i: int, size: int) -> Differential:
        return cls(tuple(1 if j == i else 0 for j in range(size)))

    def is_holomorphic(self, genus: int) -> bool:
        return all(_is_zero(c) for c in self.coefficients[genus:])

    def __add__(self, other: Differential) -> Differential:
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return Differential(tuple(x + y for x, y in zip(a, b)))

    def scale(self, c) -> Differential:
        return Differential(tuple(c * x for x in self.coefficients))

    def pair(self, values) -> PadicNumber:
        """Contract with a vector of basis integrals."""
        total = None
        for c, v in zip(self.coefficients, values):
            if _is_zero(c):
                continue
            term = v * c
            total = term if total is None else total + term
        if total is None:
            total = values[0] * 0
        return total

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if _is_zero(c):
                continue
            mono = "dx/(2y)" if i == 0 else ("x dx/(2y)" if i == 1 else f"x^{i} dx/(2y)")
            parts.append(f"{c}*{mono}")
        return " + ".join(parts) or "0"


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, PadicNumber) else c == 0


DX_OVER_Y = Differential((2, 0))
X_DX_OVER_Y = Differential((0, 2))


@dataclass
class IntegralValue:
    value: PadicNumber
    start: object
    end: object
    differential: Differential | None
    provenance: str

    def __str__(self) -> str:
        return str(self.value)


# -- tiny integrals --------------------------------------------------------------


@lru_cache(maxsize=256)
def integral_series(model: HyperellipticModel, disk: ResidueDisk, i: int, p: int, N: int,
                    M: int) -> TruncatedSeries:
    """Antiderivative of ``x^i dx/(2y)`` in the disk's uniformizer, vanishing at t = 0."""
    return differential_series(model, disk, i, p, N, M).formal_integrate()


def _disk_and_parameter(model, point, p, N, disk=None):
    if point is None:
        if model.degree % 2 == 0:
            raise UnsupportedDisk("even-degree models have no single point at infinity")
        d = ResidueDisk(p, "infinite", None, None)
        if disk is not None and disk != d:
            raise DiskMismatch("point at infinity is not in this disk")
        return d, PadicNumber.zero(p, N + 10)
    d = disk_of(model, point, p)
    if disk is not None and d != disk:
        raise DiskMismatch(f"endpoint lies in disk {d.label()}, not {disk.label()}")
    return d, parameter(model, d, point, p, N + 10)


def tiny_vector(model: HyperellipticModel, P, Q, p: int, N: int, M: int = 12,
                size: int | None = None) -> list[PadicNumber]:
    """``[int_P^Q x^i dx/(2y)]`` for two points of one residue disk."""
    disk, tP = _disk_and_parameter(model, P, p, N)
    _, tQ = _disk_and_parameter(model, Q, p, N, disk)
    size = 2 * model.genus if size is None else size
    out = []
    for i in range(size):
        I = integral_series(model, disk, i, p, N, M)
        out.append(I.evaluate(tQ) - I.evaluate(tP))
    return out


def tiny_integral(omega: Differential, P, Q, model: HyperellipticModel, p: int, N: int,
                  M: int = 12) -> IntegralValue:
    vec = tiny_vector(model, P, Q, p, N, M, size=len(omega.coefficients))
    return IntegralValue(omega.pair(vec), P, Q, omega, "tiny")


# -- route A: odd models ----------------------------------------------------------


@lru_cache(maxsize=64)
def cached_frobenius(coefficients: tuple, p: int, N: int) -> FrobeniusData:
    return frobenius_matrix(OddModel(coefficients, p, N))


def teichmuller_point(model: HyperellipticModel, point, p: int, N: int):
    """The Frobenius-fixed point of the residue disk of an ordinary point."""
    disk = disk_of(model, point, p)
    if disk.kind != "ordinary":
        raise UnsupportedDisk(f"Teichmueller points need an ordinary disk, got {disk.kind}")
    x = teichmuller(PadicNumber.from_rational(disk.x0, p, N), N) if disk.x0 else \
        PadicNumber.zero(p, N)
    y = hensel_sqrt(model.g(x), branch=disk.y0)
    return (x, y.with_precision(min(N, y.precision)))


def _solve(matrix, rhs):
    """Gaussian elimination over Q_p with partial pivoting on valuation."""
    n = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = min(range(col, n),
                    key=lambda r: a[r][col].valuation if not a[r][col].is_zero() else 10 ** 9)
        if a[pivot][col].is_zero():
            raise PrecisionExhausted("singular system at working precision")
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                factor = a[r][col] / a[col][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def odd_basis_integrals(model: HyperellipticModel, P, Q, p: int, N: int,
                        M: int = 12) -> list[PadicNumber]:
    """Route A on a monic odd model: all 2g basis integrals from P to Q."""
    fdata = cached_frobenius(model.coefficients, p, N)
    g2 = 2 * model.genus
    Pt, fP = _teichmuller_data(model, disk_of(model, P, p), p, N)
    Qt, fQ = _teichmuller_data(model, disk_of(model, Q, p), p, N)
    delta = [b - a for a, b in zip(fP, fQ)]
    one = PadicNumber.from_rational(1, p, fdata.precision + 10)
    system = [[(one if i == j else one * 0) - fdata.matrix[i][j] for j in range(g2)]
              for i in range(g2)]
    middle = _solve(system, delta)
    head = tiny_vector(model, P, Pt, p, N, M, g2)
    tail = tiny_vector(model, Qt, Q, p, N, M, g2)
    return [h + m + t for h, m, t in zip(head, middle, tail)]


@lru_cache(maxsize=512)
def _teichmuller_data(model: HyperellipticModel, disk: ResidueDisk, p: int, N: int):
    """Teichmueller point of a disk and the Frobenius primitives f_i there."""
    fdata = cached_frobenius(model.coefficients, p, N)
    x = teichmuller(PadicNumber.from_rational(disk.x0, p, N + 2), N + 2) if disk.x0 else \
        PadicNumber.zero(p, N + 2)
    y = hensel_sqrt(model.g(x), branch=disk.y0)
    point = (x, y.with_precision(min(N + 2, y.precision)))
    return point, tuple(fdata.f_value(i, *point) for i in range(2 * model.genus))


def anchor_integrals(model: HyperellipticModel, R, p: int, N: int,
                     M: int = 12) -> list[PadicNumber]:
    """``[int_inf^R x^i dx/(2y)]`` for ``i < g`` on a monic odd model.

    Since sigma fixes infinity and negates the basis,
    ``int_inf^R = 1/2 int_{sigma R}^R`` for R in an ordinary disk.  Weierstrass
    points are fixed by sigma, so their integrals from infinity vanish and a
    tiny integral finishes the job.
    """
    g = model.genus
    if R is None:
        return [PadicNumber.zero(p, N)] * g
    disk = disk_of(model, R, p)
    if disk.kind == "ordinary":
        sigmaR = (R[0], -R[1])
        return [v / 2 for v in odd_basis_integrals(model, sigmaR, R, p, N, M)[:g]]
    if disk.kind == "weierstrass":
        W = (_root_lift(model, disk.x0, p, N + 5), PadicNumber.zero(p, N + 5))
        return tiny_vector(model, W, R, p, N, M, g)
    return tiny_vector(model, None, R, p, N, M, g)


def elliptic_log_odd(model: HyperellipticModel, R, p: int, N: int, M: int = 12) -> PadicNumber:
    """``int_inf^R dx/(2y)`` on a monic cubic."""
    return anchor_integrals(model, R, p, N, M)[0]


def elliptic_log(E: HyperellipticModel, Q, p: int, N: int, M: int = 12) -> PadicNumber:
    """``log_E(Q) = int_inf^Q du/(2v)`` on a genus-1 model.

    The integral is computed on the monic odd model and scaled back.  For a
    quartic model the base point is the point sent to infinity.
    """
    if E.genus != 1:
        raise UnsupportedModel("elliptic_log needs a genus-1 model")
    odd, change = to_odd_model(E)
    image = change(Q) if Q is not None else None
    return elliptic_log_odd(odd, image, p, N, M) * change.differential_factors[0]


# -- route B: bielliptic sextics ----------------------------------------------------


def bielliptic_basis_integrals(model: HyperellipticModel, P, Q, p: int, N: int,
                               M: int = 12) -> list[PadicNumber]:
    from .bielliptic import BiellipticModel

    bm = BiellipticModel.from_hyperelliptic(model)
    C1, C2 = bm.quotient_curves()
    logs = {}
    for quotient in (C1, C2):
        vals = []
        for pt in (P, Q):
            image = quotient.push(pt)
            vals.append(elliptic_log(quotient.curve, image, p, N, M))
        logs[quotient.which] = vals[1] - vals[0]
    # dx/(2y) = -1/2 f2^*(du/2v);  x dx/(2y) = 1/2 f1^*(du/2v)
    return [-logs["f2"] / 2, logs["f1"] / 2]


def _check_good_endpoint(model: HyperellipticModel, point, p: int) -> None:
    if point is None:
        raise UnsupportedDisk("endpoint at infinity")
    kind = disk_of(model, point, p).kind
    if kind != "ordinary":
        raise UnsupportedDisk(f"endpoint lies in a {kind} disk")


def basis_integrals(P, Q, model: HyperellipticModel, p: int, N: int,
                    M: int = 12) -> list[IntegralValue]:
    """``int_P^Q x^i dx/(2y)`` for the basis differentials.

    Odd models return all ``2g`` values (route A).  Bielliptic even sextics
    return the ``g`` holomorphic values (route B).
    """
    _check_good_endpoint(model, P, p)
    _check_good_endpoint(model, Q, p)
    if model.degree % 2 == 1:
        odd, change = to_odd_model(model)
        values = odd_basis_integrals(odd, change(P), change(Q), p, N, M)
        values = [v * c for v, c in zip(values, change.differential_factors)]
        provenance = "frobenius"
    elif model.degree == 6 and model.is_even():
        values = bielliptic_basis_integrals(model, P, Q, p, N, M)
        provenance = "pushforward"
    else:
        raise UnsupportedModel("between-disk integrals need an odd model or a bielliptic sextic")
    return [IntegralValue(v, P, Q, Differential.basis(i, len(values)), provenance)
            for i, v in enumerate(values)]


def _disk_or_none(model, point, p):
    if point is None:
        return ResidueDisk(p, "infinite", None, None)
    return disk_of(model, point, p)


def integrate(omega: Differential, P, Q, model: HyperellipticModel, p: int, N: int,
              M: int = 12) -> IntegralValue:
    """``int_P^Q omega``; a tiny integral when P and Q share a disk.

    ``None`` stands for the point at infinity of an odd model.  On odd
    models holomorphic integrals with an endpoint outside the ordinary
    disks go through :func:`anchor_integrals`.
    """
    dP, dQ = _disk_or_none(model, P, p), _disk_or_none(model, Q, p)
    if dP == dQ:
        return tiny_integral(omega, P, Q, model, p, N, M)
    if dP.kind == "ordinary" and dQ.kind == "ordinary":
        vals = basis_integrals(P, Q, model, p, N, M)
        return IntegralValue(omega.pair([v.value for v in vals]), P, Q, omega,
                             vals[0].provenance)
    if model.degree % 2 == 0:
        raise UnsupportedDisk("endpoints outside ordinary disks need an odd model")
    if not omega.is_holomorphic(model.genus):
        raise UnsupportedDisk("integrals from infinity need a holomorphic differential")
    odd, change = to_odd_model(model)
    ends = []
    for pt in (P, Q):
        image = None if pt is None else change(pt)
        vals = anchor_integrals(odd, image, p, N, M)
        ends.append([v * c for v, c in zip(vals, change.differential_factors)])
    diff = [b - a for a, b in zip(ends[0], ends[1])]
    return IntegralValue(omega.pair(diff), P, Q, omega, "frobenius")


def divisor_pairing(D, omega: Differential, model: HyperellipticModel, p: int, N: int,
                    M: int = 12, basepoint=None) -> PadicNumber:
    """``<[D], omega>`` for a degree-zero divisor given as ``[(multiplicity, point)]``."""
    if sum(m for m, _ in D) != 0:
        raise InvalidInput("divisor must have degree zero")
    base = D[0][1] if basepoint is None else basepoint
    total = PadicNumber.zero(p, N + 20)
    for mult, pt in D:
        if mult:
            total = total + integrate(omega, base, pt, model, p, N, M).value * mult
    return total
