"""Numerical boundary limits and kernel-positivity certificates.

Nontangential limits are taken along the vertical path z_k = x0 + i t0 2^-k
and accelerated with a second-order Richardson table; for rational functions
the vertical path already realizes every nontangential limit.  On top of the
limit machinery sit the Caratheodory-Julia consistency check (four limit
quantities that must agree when the boundary derivative exists), sampled
negative-squares counts of Nevanlinna kernels, the bordered-kernel solution
criterion, the half-plane-to-disk Cayley conjugation, and the boundary value
of a Blaschke-product kernel diagonal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._sections import (
    DEFAULT_GRID,
    GridConfig,
    max_negative_count,
    span_of,
    upper_half_grid,
)
from .algebra import (
    EXACT_I,
    Polynomial,
    RationalFunction,
    as_complex,
)
from .errors import InvalidDataError, NotNevanlinnaError, PoleError
from .problem import PickSystem
from .transform import Parameter


class LimitKind(Enum):
    VALUE = "value"
    DERIVATIVE = "derivative"
    RESIDUAL = "residual"
    KERNEL_DIAGONAL = "kernel_diagonal"


@dataclass(frozen=True)
class LimitEstimate:
    """Tagged boundary-limit estimate with its extrapolation history."""

    kind: LimitKind
    status: str  # "finite" | "infinite" | "dne"
    value: complex | None
    approximants: tuple
    converged: bool
    error_estimate: float | None

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.status == "infinite"

    @property
    def real(self) -> float:
        if not self.is_finite:
            raise ValueError(f"limit is {self.status}, not finite")
        return float(self.value.real)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": _complex_json(self.value) if self.is_finite else self.status_token(),
            "approximants": [_complex_json(a) for a in self.approximants[-5:]],
            "discrepancy": self.error_estimate,
        }

    def status_token(self) -> str:
        return {"infinite": "inf", "dne": "dne"}[self.status]


def _complex_json(z):
    if z is None:
        return None
    z = complex(z)
    return z.real if abs(z.imag) <= 1e-12 * max(1.0, abs(z)) else [z.real, z.imag]


DIVERGENCE_WINDOW = 5
DIVERGENCE_FACTOR = 10.0
SPREAD_TOL = 1e-3


def nt_limit(
    f: RationalFunction,
    x0,
    kind: LimitKind = LimitKind.VALUE,
    t0: float = 0.5,
    max_steps: int = 40,
    tol: float = 1e-9,
) -> LimitEstimate:
    """Boundary limit of a rational function along the vertical path.

    ``kind`` selects the evaluated quantity: the value f(z), the derivative
    f'(z), the residual (z-x0) f(z), or the kernel diagonal Im f(z)/Im z.
    The raw samples feed a ratio-2 Richardson table of order 2; the limit is
    declared finite only when consecutive extrapolants agree within ``tol``.
    Monotone growth by 10x over five consecutive steps is tagged infinite,
    and a non-growing tail with relative spread above 1e-3 does not exist.
    """
    x0 = float(x0)
    target = f.derivative() if kind is LimitKind.DERIVATIVE else f

    def sample(z: complex) -> complex:
        if kind is LimitKind.RESIDUAL:
            return (z - x0) * as_complex(target.eval(z))
        if kind is LimitKind.KERNEL_DIAGONAL:
            return as_complex(target.eval(z)).imag / z.imag
        return as_complex(target.eval(z))

    raw: list = []
    r1: list = []
    r2: list = []
    agree = 0
    for k in range(max_steps + 1):
        z = complex(x0, t0 * 2.0 ** (-k))
        try:
            value = sample(z)
        except PoleError:
            continue
        if not np.isfinite(value):
            continue
        raw.append(value)
        if len(raw) >= 2:
            r1.append(2.0 * raw[-1] - raw[-2])
        if len(r1) >= 2:
            r2.append((4.0 * r1[-1] - r1[-2]) / 3.0)
        if _diverging(raw):
            return LimitEstimate(kind, "infinite", None, tuple(raw), False, None)
        if len(r2) >= 2:
            err = abs(r2[-1] - r2[-2])
            if err <= tol * max(1.0, abs(r2[-1])):
                agree += 1
                if agree >= 2:
                    return LimitEstimate(kind, "finite", r2[-1], tuple(r2), True, err)
            else:
                agree = 0
    if not r2:
        return LimitEstimate(kind, "dne", None, tuple(raw), False, None)
    tail = r2[-5:]
    scale = max(1.0, max(abs(v) for v in tail))
    spread = (max(v.real for v in tail) - min(v.real for v in tail)) + (
        max(v.imag for v in tail) - min(v.imag for v in tail)
    )
    if spread <= SPREAD_TOL * scale:
        err = abs(r2[-1] - r2[-2]) if len(r2) >= 2 else None
        return LimitEstimate(kind, "finite", r2[-1], tuple(r2), False, err)
    return LimitEstimate(kind, "dne", None, tuple(r2), False, None)


def _diverging(raw) -> bool:
    if len(raw) < DIVERGENCE_WINDOW + 1:
        return False
    window = [abs(v) for v in raw[-(DIVERGENCE_WINDOW + 1) :]]
    if window[-1] < 1e3:
        return False
    growing = all(window[i + 1] > window[i] for i in range(DIVERGENCE_WINDOW))
    return growing and window[-1] >= DIVERGENCE_FACTOR * window[0]


@dataclass(frozen=True)
class CJReport:
    """Four boundary-derivative limits that must agree with each other.

    On the bounded route the quadruple is (kernel diagonal twice -- the
    lim inf variant is certified as implied -- the derivative limit, and the
    difference quotient).  On the unbounded route all four are expressed on
    the residual scale: the kernel-diagonal limits of -1/f enter through
    s -> -1/s so that they match the residual and -(z-x0)^2 f' limits.
    """

    theorem: str  # "bounded" | "unbounded"
    estimates: dict
    max_discrepancy: float | None
    consistent: bool

    def to_json(self) -> dict:
        return {
            "route": self.theorem,
            "estimates": {k: v.to_json() for k, v in self.estimates.items()},
            "max_discrepancy": self.max_discrepancy,
            "consistent": self.consistent,
        }


def caratheodory_julia_check(f: RationalFunction, x0) -> CJReport:
    """Cross-check the boundary value/derivative limits of f at a real point."""
    x0f = float(x0)
    try:
        f.eval(complex(x0f, 0.0))
        bounded = True
    except PoleError:
        bounded = False
    if bounded:
        value = nt_limit(f, x0f, LimitKind.VALUE)
        kernel = nt_limit(f, x0f, LimitKind.KERNEL_DIAGONAL)
        deriv = nt_limit(f, x0f, LimitKind.DERIVATIVE)
        if value.is_finite:
            shifted = (f - RationalFunction.constant(value.value.real)) / RationalFunction(
                Polynomial((-x0f, 1.0))
            )
            quotient = nt_limit(shifted, x0f, LimitKind.VALUE)
        else:
            quotient = LimitEstimate(LimitKind.VALUE, value.status, None, (), False, None)
        estimates = {
            "kernel_diagonal_liminf": kernel,
            "kernel_diagonal": kernel,
            "derivative": deriv,
            "difference_quotient": quotient,
        }
        return _finish_cj("bounded", estimates)
    inverted = RationalFunction.constant(-1) / f
    kernel = nt_limit(inverted, x0f, LimitKind.KERNEL_DIAGONAL)
    residual = nt_limit(f, x0f, LimitKind.RESIDUAL)
    z_shift = RationalFunction(Polynomial((-x0f, 1.0)))
    weighted = RationalFunction.constant(-1) * z_shift * z_shift * f.derivative()
    tilde_residual = nt_limit(weighted, x0f, LimitKind.VALUE)
    if kernel.is_finite and abs(kernel.value) > 1e-13:
        flipped = LimitEstimate(
            kernel.kind,
            "finite",
            -1.0 / kernel.value,
            tuple(-1.0 / a for a in kernel.approximants if abs(a) > 1e-13),
            kernel.converged,
            kernel.error_estimate,
        )
    else:
        flipped = LimitEstimate(kernel.kind, "dne", None, kernel.approximants, False, None)
    estimates = {
        "kernel_diagonal_liminf": flipped,
        "kernel_diagonal": flipped,
        "residual": residual,
        "weighted_derivative": tilde_residual,
    }
    return _finish_cj("unbounded", estimates)


def _finish_cj(route, estimates) -> CJReport:
    finite = [e for e in estimates.values() if e.is_finite]
    if len(finite) < len(estimates):
        return CJReport(route, estimates, None, False)
    values = [complex(e.value) for e in finite]
    worst = max(abs(a - b) for a in values for b in values)
    return CJReport(route, estimates, float(worst), True)


def kernel_negative_squares(
    f: RationalFunction,
    grid=None,
    config: GridConfig = DEFAULT_GRID,
    span=None,
) -> int:
    """Sampled negative-squares lower bound of the Nevanlinna kernel of f."""
    if grid is None:
        if span is None:
            span = span_of(f.real_poles(), fallback=(-1.0, 1.0))
        grid = _pole_free_grid(f, span, config)
    points = list(grid)
    vals = [as_complex(f.eval(z)) for z in points]
    m = len(points)
    full = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            full[i, j] = (vals[j] - np.conj(vals[i])) / (points[j] - np.conj(points[i]))
    full = (full + full.conj().T) / 2.0
    return max_negative_count(full, config, block=1)


def _pole_free_grid(f: RationalFunction, span, config) -> list:
    avoid = ()
    if f.den.degree >= 1:
        roots = np.roots(f.den.to_complex_array()[::-1])
        avoid = tuple(r for r in roots if r.imag > 1e-9)
    points = []
    for z in upper_half_grid(span, config, avoid=avoid):
        try:
            f.eval(z)
        except PoleError:
            continue
        points.append(z)
    return points


def fmi_check(
    sys: PickSystem,
    w: RationalFunction,
    grid=None,
    config: GridConfig = DEFAULT_GRID,
) -> int:
    """Sampled negative count of the bordered solution kernel.

    The Pick matrix P sits in every section; sample points append the column
    (zI-X)^(-1) (w(z) E* - C*) and the Nevanlinna kernel of w.  A candidate
    solving the master interpolation problem yields exactly kappa.
    """
    if grid is None:
        grid = _pole_free_grid(w, span_of(sys.X), config)
    points = list(grid)
    n, m = sys.n, len(points)
    x = np.array([float(v) for v in sys.X])
    e = np.array([float(v) for v in sys.E])
    c = np.array([float(v) for v in sys.C])
    wvals = [as_complex(w.eval(z)) for z in points]
    full = np.zeros((n + m, n + m), dtype=complex)
    full[:n, :n] = sys.P.to_numpy()
    cols = [(wvals[j] * e - c) / (points[j] - x) for j in range(m)]
    for j in range(m):
        full[:n, n + j] = cols[j]
        full[n + j, :n] = np.conj(cols[j])
        for i in range(m):
            full[n + i, n + j] = (wvals[j] - np.conj(wvals[i])) / (
                points[j] - np.conj(points[i])
            )
    full = (full + full.conj().T) / 2.0
    return max_negative_count(full, config, block=1, fixed=n)


_CAYLEY_CHECK_SEED = 20260809


def cayley_transform(w, verify: bool = True) -> RationalFunction:
    """Conjugate a half-plane function to the disk: S = beta o w o beta^(-1).

    ``w`` may be a rational function or a parameter (the infinite parameter
    maps to the constant 1).  The output has complex coefficients in general.
    The kernel correspondence between w and S is spot-checked numerically at
    seeded point pairs unless ``verify`` is false.
    """
    if isinstance(w, Parameter):
        if w.is_infinite:
            return RationalFunction.constant(1)
        w = w.as_rational()
    if w.is_constant and w.constant_value() == -EXACT_I:
        raise NotNevanlinnaError("the constant -i admits no disk conjugation")
    # beta^(-1)(zeta) = i (1 + zeta) / (1 - zeta), so beta(beta^(-1)) = id
    inner = RationalFunction(Polynomial((EXACT_I, EXACT_I)), Polynomial((1, -1)))
    g = w.compose(inner)
    denom = g + RationalFunction.constant(EXACT_I)
    if denom.is_zero:
        raise NotNevanlinnaError("the constant -i admits no disk conjugation")
    s = (g - RationalFunction.constant(EXACT_I)) / denom
    if verify:
        _verify_cayley_kernel(w, s)
    return s


def _verify_cayley_kernel(w: RationalFunction, s: RationalFunction, pairs: int = 20):
    rng = random.Random(_CAYLEY_CHECK_SEED)
    checked = 0
    attempts = 0
    while checked < pairs and attempts < 20 * pairs:
        attempts += 1
        z1 = complex(rng.uniform(-2, 2), rng.uniform(0.2, 1.5))
        z2 = complex(rng.uniform(-2, 2), rng.uniform(0.2, 1.5))
        try:
            w1, w2 = as_complex(w.eval(z1)), as_complex(w.eval(z2))
            beta1, beta2 = (z1 - 1j) / (z1 + 1j), (z2 - 1j) / (z2 + 1j)
            s1, s2 = as_complex(s.eval(beta1)), as_complex(s.eval(beta2))
        except PoleError:
            continue
        if abs(beta1 - beta2) < 1e-8 or min(abs(w1 + 1j), abs(w2 + 1j)) < 1e-8:
            continue
        lhs = (1 - s1 * np.conj(s2)) / (1 - beta1 * np.conj(beta2))
        phi1 = 2.0 / ((w1 + 1j) * (1 - beta1))
        phi2 = 2.0 / ((w2 + 1j) * (1 - beta2))
        k_w = (w1 - np.conj(w2)) / (z1 - np.conj(z2))
        rhs = phi1 * k_w * np.conj(phi2)
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(lhs - rhs) > 1e-8 * scale:
            raise ArithmeticError(
                f"disk/half-plane kernel correspondence failed at ({z1}, {z2})"
            )
        checked += 1


def blaschke_boundary_value(zeros, t0) -> float:
    """Boundary limit of the Blaschke-product kernel diagonal at |t0| = 1.

    Computed as the extrapolated radial limit of (1-|b(z)|^2)/(1-|z|^2) and
    cross-checked against the closed form (1-|c|^2)/|1-t0 conj(c)|^2 when the
    product has a single factor.  The limit is finite and positive.
    """
    zeros = [complex(c) for c in zeros]
    if any(abs(c) >= 1.0 for c in zeros):
        raise InvalidDataError("Blaschke zeros must lie strictly inside the unit disk")
    t0 = complex(t0)
    if abs(abs(t0) - 1.0) > 1e-12:
        raise InvalidDataError("boundary point must lie on the unit circle")

    def b(z: complex) -> complex:
        out = 1.0 + 0.0j
        for c in zeros:
            out *= (z - c) / (1.0 - z * np.conj(c))
        return out

    raw = []
    r1: list = []
    r2: list = []
    result = None
    for k in range(60):
        s = 2.0 ** (-k)
        z = t0 * (1.0 - s)
        denom = 2.0 * s - s * s  # 1 - |z|^2 without cancellation
        raw.append((1.0 - abs(b(z)) ** 2) / denom)
        if len(raw) >= 2:
            r1.append(2.0 * raw[-1] - raw[-2])
        if len(r1) >= 2:
            r2.append((4.0 * r1[-1] - r1[-2]) / 3.0)
        if len(r2) >= 2 and abs(r2[-1] - r2[-2]) <= 1e-10 * max(1.0, abs(r2[-1])):
            result = r2[-1]
            break
    if result is None:
        result = r2[-1]
    result = float(np.real(result))
    if len(zeros) == 1:
        c = zeros[0]
        closed = (1.0 - abs(c) ** 2) / abs(1.0 - t0 * np.conj(c)) ** 2
        if abs(result - closed) > 1e-8 * max(1.0, closed):
            raise ArithmeticError("Blaschke boundary limit disagrees with closed form")
    return result
