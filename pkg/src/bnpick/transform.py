"""Extended Nevanlinna-class parameters and the linear-fractional transform.

A parameter is a finite real constant, the adjoined infinity, or a rational
function with real coefficients.  Applying the resolvent by

    w = (Theta11 phi + Theta12) / (Theta21 phi + Theta22)

(with w = Theta11/Theta21 for phi = infinity) produces the candidate
interpolants; membership of a rational parameter in the Nevanlinna class is
certified by sampling its kernel for positive semidefiniteness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._sections import DEFAULT_GRID, GridConfig, enumerate_sections, span_of, upper_half_grid
from .algebra import Polynomial, RationalFunction, as_complex, polynomial_gcd, scalar_from_json, scalar_to_json
from .errors import DegenerateTransformError, NotNevanlinnaError, PoleError
from .resolvent import RationalMatrix2x2

NEVANLINNA_EIG_SLACK = 1e-10


@dataclass(frozen=True)
class Parameter:
    """Finite real constant, infinity, or a real-coefficient rational function."""

    kind: str
    value: object = None
    func: RationalFunction | None = None

    @staticmethod
    def constant(value) -> "Parameter":
        if isinstance(value, float):
            return Parameter("const", value=value)
        return Parameter("const", value=Fraction(value))

    @staticmethod
    def infinity() -> "Parameter":
        return Parameter("inf")

    @staticmethod
    def rational(func: RationalFunction) -> "Parameter":
        if not func.is_real():
            raise NotNevanlinnaError(
                "rational parameters must have real coefficients; complex-"
                "coefficient functions are not admitted"
            )
        return Parameter("rational", func=func)

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"

    def as_rational(self) -> RationalFunction:
        """Finite parameter as a rational function (constants included)."""
        if self.kind == "const":
            return RationalFunction.constant(self.value)
        if self.kind == "rational":
            return self.func
        raise ValueError("the infinite parameter has no rational form")

    @staticmethod
    def from_json(obj) -> "Parameter":
        kind = obj.get("type")
        if kind == "inf":
            return Parameter.infinity()
        if kind == "const":
            return Parameter.constant(scalar_from_json(obj["value"]))
        if kind == "rational":
            return Parameter.rational(RationalFunction.from_json(obj))
        raise ValueError(f"unknown parameter type {kind!r}")

    def to_json(self) -> dict:
        if self.kind == "inf":
            return {"type": "inf"}
        if self.kind == "const":
            return {"type": "const", "value": scalar_to_json(self.value)}
        doc = self.func.to_json()
        return {"type": "rational", "num": doc["num"], "den": doc["den"]}

    def __repr__(self):
        if self.kind == "inf":
            return "Parameter(inf)"
        if self.kind == "const":
            return f"Parameter({self.value})"
        return f"Parameter({self.func})"


@dataclass(frozen=True)
class NevanlinnaWitness:
    """Offending kernel section: sample points and the negative eigenvalue."""

    points: tuple
    eigenvalue: float


@dataclass(frozen=True)
class NevanlinnaCheck:
    ok: bool
    witness: NevanlinnaWitness | None = None

    def __bool__(self):
        return self.ok


def _kernel_matrix(func: RationalFunction, points) -> np.ndarray:
    vals = [as_complex(func.eval(z)) for z in points]
    m = len(points)
    out = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            out[i, j] = (vals[j] - np.conj(vals[i])) / (points[j] - np.conj(points[i]))
    return (out + out.conj().T) / 2.0


def is_nevanlinna(
    phi: Parameter, config: GridConfig = DEFAULT_GRID, span=None
) -> NevanlinnaCheck:
    """Sampled positivity certificate of the Nevanlinna kernel.

    Constants and infinity pass trivially.  For rational parameters the
    kernel (phi(z) - phi(w)*) / (z - conj(w)) is sampled over finite sections
    of a fixed grid; the first section with an eigenvalue below the slack is
    returned as a witness.  Grid points hitting a pole of phi are skipped.
    """
    if phi.kind in ("const", "inf"):
        return NevanlinnaCheck(True)
    func = phi.func
    if span is None:
        span = span_of(func.real_poles(), fallback=(-1.0, 1.0))
    avoid = _upper_poles(func)
    points = []
    for z in upper_half_grid(span, config, avoid=avoid):
        try:
            func.eval(z)
        except PoleError:
            continue
        points.append(z)
    full = _kernel_matrix(func, points)
    for subset in enumerate_sections(len(points), config):
        section = full[np.ix_(subset, subset)]
        eigs = np.linalg.eigvalsh(section)
        scale = max(1.0, float(np.abs(eigs).max(initial=0.0)))
        if eigs[0] < -NEVANLINNA_EIG_SLACK * scale:
            witness = NevanlinnaWitness(
                points=tuple(points[i] for i in subset),
                eigenvalue=float(eigs[0]),
            )
            return NevanlinnaCheck(False, witness)
    return NevanlinnaCheck(True)


def _upper_poles(func: RationalFunction):
    if func.den.degree < 1:
        return ()
    roots = np.roots(func.den.to_complex_array()[::-1])
    return tuple(r for r in roots if r.imag > 1e-9)


def _polynomial_lcm(polys):
    acc = Polynomial.one()
    for p in polys:
        if p.degree < 1:
            continue
        if acc.degree < 1:
            acc = p.monic()
            continue
        g = polynomial_gcd(acc, p)
        acc = (acc * p.divmod(g)[0]).monic()
    return acc


def apply_lft(theta: RationalMatrix2x2, phi: Parameter) -> RationalFunction:
    """Linear-fractional transform of a parameter by the resolvent.

    Denominators are cleared before forming the quotient so the exact lane
    stays polynomial-sized.  An identically vanishing denominator means the
    transform degenerates to the constant infinity, which is rejected.
    """
    e = theta.entries
    if phi.is_infinite:
        if e[1][0].is_zero:
            raise DegenerateTransformError("transform of infinity is identically infinite")
        return e[0][0] / e[1][0]
    rf = phi.as_rational()
    p, q = rf.num, rf.den
    if all(e[i][j].exact for i in range(2) for j in range(2)) and rf.exact:
        common = _polynomial_lcm([e[i][j].den for i in range(2) for j in range(2)])
        cleared = [
            [e[i][j].num * common.divmod(e[i][j].den)[0] for j in range(2)]
            for i in range(2)
        ]
    else:
        cleared = [
            [
                e[i][j].num
                * e[i][1 - j].den
                * e[1 - i][0].den
                * e[1 - i][1].den
                for j in range(2)
            ]
            for i in range(2)
        ]
    num = cleared[0][0] * p + cleared[0][1] * q
    den = cleared[1][0] * p + cleared[1][1] * q
    if den.is_zero:
        raise DegenerateTransformError(
            "parameter sends the transform to the constant infinity"
        )
    return RationalFunction(num, den)


def lft_compose(a: RationalMatrix2x2, b: RationalMatrix2x2) -> RationalMatrix2x2:
    """Matrix product with entrywise canonical simplification.

    Transform composition turns into the product: applying the composed
    matrix equals applying ``a`` after ``b``.
    """
    return a @ b
