"""The Chabauty-Coleman driver.

Given Mordell-Weil generators (supplied from outside), find a holomorphic
differential that kills them, expand its integral from a rational base
point in each residue disk, and collect the zeros.  The zeros are the
p-adic points ``X(Q_p)_1``; those recognizable as rational or quadratic
points are reported as such.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .coleman import Differential, integral_series, integrate
from .errors import (BoundInapplicable, ChabautyError, InvalidInput, NotChabautyApplicable,
                     PrecisionExhausted, UnsupportedDisk)
from .hyperelliptic import (HyperellipticModel, ResidueDisk, check_good_reduction,
                            classify_disks, count_points, infinite_expansion,
                            lift_disk_center, local_parametrization, recognize,
                            apply_involution)
from .padic import PadicNumber
from .series import TruncatedSeries, find_zeros


@dataclass
class MordellWeilInput:
    """Rank and free generators of J(Q), as degree-zero divisors ``[(mult, point)]``."""

    rank: int
    generators: list = field(default_factory=list)
    torsion_order: int | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidInput("rank must be nonnegative")
        if len(self.generators) != self.rank:
            raise InvalidInput(f"{len(self.generators)} generators given for rank {self.rank}")
        for D in self.generators:
            if sum(m for m, _ in D) != 0:
                raise InvalidInput("generators must be degree-zero divisors")


def coleman_bound(model: HyperellipticModel, p: int) -> int:
    """``#X(F_p) + 2g - 2``, valid for good p > 2g."""
    g = model.genus
    if p <= 2 * g:
        raise BoundInapplicable(f"p = {p} does not exceed 2g = {2 * g}")
    if not check_good_reduction(model, p):
        raise BoundInapplicable(f"bad reduction at {p}")
    return count_points(model, p) + 2 * g - 2


def pairing_matrix(model, p, mw: MordellWeilInput, N: int, M: int = 12) -> list[list]:
    """``<D_j, x^i dx/(2y)>`` for generators j and holomorphic i."""
    g = model.genus
    rows = []
    for D in mw.generators:
        base = D[0][1]
        row = [PadicNumber.zero(p, N + 20) for _ in range(g)]
        for mult, pt in D:
            if not mult:
                continue
            for i in range(g):
                val = integrate(Differential.basis(i, g), base, pt, model, p, N, M).value
                row[i] = row[i] + val * mult
        rows.append(row)
    return rows


def annihilator_space(model, p, mw: MordellWeilInput, N: int, M: int = 12) -> list[Differential]:
    """Basis of holomorphic differentials pairing to zero with every generator."""
    g = model.genus
    if mw.rank >= g:
        raise NotChabautyApplicable(f"rank {mw.rank} is not below the genus {g}")
    if mw.rank == 0:
        return [Differential.basis(i, g) for i in range(g)]
    rows = pairing_matrix(model, p, mw, N, M)
    return _kernel(rows, g, p, mw.rank)


def _kernel(rows, g, p, rank):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(g):
        best = None
        for i in range(r, len(rows)):
            c = rows[i][col]
            if not c.is_zero() and (best is None or c.valuation < rows[best][col].valuation):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        rows[r] = [c / piv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    if len(pivots) != rank:
        raise PrecisionExhausted(
            f"pairing matrix has numerical rank {len(pivots)}, expected {rank}; "
            "the generators may be dependent or precision too low")
    free = [c for c in range(g) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * g
        vec[f] = Fraction(1)
        for row_index, pc in enumerate(pivots):
            entry = -rows[row_index][f]
            vec[pc] = Fraction(0) if entry.is_zero() else entry
        basis.append(Differential(tuple(vec)))
    return basis


def annihilating_differential(model, p, mw: MordellWeilInput, N: int,
                              M: int = 12) -> Differential:
    """First kernel vector, normalized so its first nonzero coefficient is 1.

    Entries that vanish at working precision are set to exactly zero.
    """
    return annihilator_space(model, p, mw, N, M)[0]


# -- per-disk locus ------------------------------------------------------------


@dataclass
class LocusPoint:
    T: PadicNumber
    x: object
    y: object
    status: str
    minpoly: tuple | None = None

    def to_json(self) -> dict:
        def fmt(v):
            if v is None:
                return None
            return str(v) if not isinstance(v, PadicNumber) else v.to_json()
        out = {"T": self.T.to_json(), "status": self.status, "x": fmt(self.x), "y": fmt(self.y)}
        if self.minpoly is not None:
            out["minpoly_y"] = list(self.minpoly)
        return out


@dataclass
class DiskLocus:
    disk: ResidueDisk
    series: TruncatedSeries
    constant: PadicNumber
    strassman: int
    points: list
    clusters: list

    def to_json(self) -> dict:
        return {
            "disk": self.disk.label(),
            "kind": self.disk.kind,
            "series_pT": [c.to_json() for c in self.series.coeffs],
            "series_order": self.series.order,
            "strassman_count": self.strassman,
            "zeros": [pt.to_json() for pt in self.points],
            "clusters": [{"center": str(c), "radius_exponent": e, "multiplicity": m}
                         for c, e, m in self.clusters],
        }


def _omega_series(model, disk, omega: Differential, p, N, M) -> TruncatedSeries:
    total = None
    for i, c in enumerate(omega.coefficients):
        if (c.is_zero() if isinstance(c, PadicNumber) else c == 0):
            continue
        term = integral_series(model, disk, i, p, N, M).scale(c)
        total = term if total is None else total + term
    if total is None:
        raise InvalidInput("zero differential")
    return total


def _disk_center(model, disk, p, N):
    if disk.kind == "infinite":
        if model.degree % 2 == 0:
            raise UnsupportedDisk("infinite disks of even-degree models are not parametrized")
        return None
    return tuple(lift_disk_center(disk, model, p, N))


def _point_at(model, disk, t: PadicNumber, p, N, M):
    """Curve point with uniformizer value t."""
    if disk.kind == "infinite":
        if t.is_zero():
            return None
        h = infinite_expansion(model, p, N, M)
        return (t ** -2, h.evaluate(t) * t ** -model.degree)
    x_ser, y_ser = local_parametrization(disk, model, p, N, M)
    return (x_ser.evaluate(t), y_ser.evaluate(t))


def disk_locus(model: HyperellipticModel, p: int, disk: ResidueDisk, omega: Differential,
               basepoint, N: int, M: int = 12, height_cutoff: int = 10 ** 6) -> DiskLocus:
    """``I(pT) = int_b^{P(pT)} omega`` on one disk, with its zeros.

    ``I(t) = int_b^center omega + int_center^{P(t)} omega``; the centre is the
    lifted reduction point (infinity for the infinite disk of an odd model).
    """
    center = _disk_center(model, disk, p, N)
    constant = integrate(omega, basepoint, center, model, p, N, M).value
    tiny = _omega_series(model, disk, omega, p, N, M)
    coeffs = [constant + tiny.coeffs[0]] + tiny.coeffs[1:]
    I = TruncatedSeries(coeffs, p, tiny.tail).substitute_pT()
    count = I.strassman_count()
    zeros = find_zeros(I)
    points = []
    for T in zeros.zeros:
        t = T * p
        pt = _point_at(model, disk, t, p, N, M)
        if pt is None:
            points.append(LocusPoint(T, None, None, "rational-infinity"))
            continue
        rec = recognize(model, pt[0], pt[1], height_cutoff)
        points.append(LocusPoint(T, rec.x, rec.y, rec.status, rec.minpoly))
    return DiskLocus(disk, I, constant, count, points, zeros.clusters)


# -- the full run ----------------------------------------------------------------


@dataclass
class ChabautyReport:
    prime: int
    precision: int
    order: int
    differential: Differential
    loci: list
    rational_points: list
    algebraic_points: list
    unrecognized: list
    coleman_bound: int | None
    bound_note: str
    partial: bool
    errors: dict
    closed_under_involutions: bool
    timing: float = 0.0

    @property
    def total_zeros(self) -> int:
        return sum(len(l.points) for l in self.loci)

    def to_json(self) -> dict:
        def pt(p):
            return ["inf"] if p is None else [str(p[0]), str(p[1])]
        return {
            "prime": self.prime,
            "precision": self.precision,
            "series_order": self.order,
            "differential": [str(c) for c in self.differential.coefficients],
            "disks": [l.to_json() for l in self.loci],
            "rational_points": [pt(p) for p in self.rational_points],
            "algebraic_points": [{"x": str(x), "minpoly_y": list(mp)}
                                 for x, mp in self.algebraic_points],
            "unrecognized": self.unrecognized,
            "total_zeros": self.total_zeros,
            "coleman_bound": self.coleman_bound,
            "bound_note": self.bound_note,
            "partial": self.partial,
            "errors": self.errors,
            "closed_under_involutions": self.closed_under_involutions,
        }


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CHABAUTY_THREADS", "1")))
    except ValueError:
        return 1


def _involution_closed(model, points) -> bool:
    affine = {p for p in points if p is not None}
    names = ["sigma"] + (["w", "wsigma"] if model.is_even() else [])
    for p in affine:
        for name in names:
            if tuple(apply_involution(model, name, p)) not in affine:
                return False
    return True


def run(model: HyperellipticModel, p: int, mw: MordellWeilInput, basepoint, N: int = 11,
        M: int = 12, omega: Differential | None = None,
        height_cutoff: int = 10 ** 6) -> ChabautyReport:
    """Sweep every residue disk and classify the zeros of the locus function."""
    start = time.perf_counter()
    if not check_good_reduction(model, p):
        raise BoundInapplicable(f"bad reduction at {p}")
    if omega is None:
        omega = annihilating_differential(model, p, mw, N, M)
    disks = classify_disks(model, p)

    def work(disk):
        try:
            return disk, disk_locus(model, p, disk, omega, basepoint, N, M, height_cutoff), None
        except ChabautyError as exc:
            return disk, None, f"{type(exc).__name__}: {exc}"

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(work, disks))
    results.sort(key=lambda r: r[0].sort_key())
    loci, errors = [], {}
    rational, algebraic, unrecognized = [], [], []
    for disk, locus, err in results:
        if err:
            errors[disk.label()] = err
            continue
        loci.append(locus)
        for pt in locus.points:
            if pt.status == "rational":
                rational.append((pt.x, pt.y))
            elif pt.status == "rational-infinity":
                rational.append(None)
            elif pt.status == "algebraic":
                algebraic.append((pt.x, pt.minpoly))
            else:
                unrecognized.append({"disk": disk.label(), **pt.to_json()})
    rational = sorted(set(rational), key=lambda q: (q is not None, q))
    algebraic = sorted(set(algebraic))
    try:
        bound, note = coleman_bound(model, p), "p > 2g: Coleman bound applies"
    except BoundInapplicable as exc:
        bound, note = None, f"{exc}; per-disk Strassman counts certify the zero count"
    return ChabautyReport(p, N, M, omega, loci, rational, algebraic, unrecognized, bound, note,
                          bool(errors), errors, _involution_closed(model, rational),
                          time.perf_counter() - start)
