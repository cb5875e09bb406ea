"""Interpolation data and the structured Pick system built from it.

The data set prescribes, at distinct real nodes, either a target value and a
derivative bound (regular nodes) or a residue (singular nodes).  The
associated Pick matrix P collects divided differences, derivative bounds and
residues in a fixed block layout with the regular nodes first; together with
the node diagonal X and the rows E and C it satisfies the Lyapunov identity

    P X - X P = E* C - C* E

exactly on the exact backend.  The count of negative eigenvalues of P is the
index of the generalized Nevanlinna class in which solutions live.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    EXACT_I,
    EXACT_ZERO,
    GaussianRational,
    HermitianMatrix,
    Inertia,
    hermitian_inertia,
    matrix_inverse,
    scalar_from_json,
    scalar_to_json,
)
from .errors import InvalidDataError


class _Infinity:
    """Tagged extended-real infinity; deliberately not a float."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INFINITY = _Infinity()


def is_infinite(value) -> bool:
    return value is INFINITY


# Fixed 2x2 signature matrix [[0, -i], [i, 0]]; J* = J and J^2 = I.
SIGNATURE_J = (
    (EXACT_ZERO, -EXACT_I),
    (EXACT_I, EXACT_ZERO),
)


def _as_real_scalar(value, to_float: bool):
    if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
        raise InvalidDataError(f"expected a real number, got {value!r}")
    if to_float:
        return float(value)
    return Fraction(value) if not isinstance(value, float) else value


@dataclass(frozen=True)
class InterpolationData:
    """Nodes with targets, derivative bounds and residues, regular first.

    ``nodes`` holds all n nodes with the ``ell`` regular ones leading;
    ``values`` and ``derivative_bounds`` have length ell, ``residues`` length
    n - ell.  Exact (Fraction) and float data never mix: one float anywhere
    switches the whole instance to the float backend.
    """

    nodes: tuple
    values: tuple
    derivative_bounds: tuple
    residues: tuple
    input_order: tuple | None = None

    def __post_init__(self):
        raw = (
            list(self.nodes)
            + list(self.values)
            + list(self.derivative_bounds)
            + list(self.residues)
        )
        to_float = any(isinstance(v, float) for v in raw)
        conv = lambda seq: tuple(_as_real_scalar(v, to_float) for v in seq)
        object.__setattr__(self, "nodes", conv(self.nodes))
        object.__setattr__(self, "values", conv(self.values))
        object.__setattr__(self, "derivative_bounds", conv(self.derivative_bounds))
        object.__setattr__(self, "residues", conv(self.residues))
        if len(self.values) != len(self.derivative_bounds):
            raise InvalidDataError("values and derivative bounds must pair up")
        if len(self.values) + len(self.residues) != len(self.nodes):
            raise InvalidDataError("node count must equal regular + singular count")
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidDataError("interpolation nodes must be pairwise distinct")
        if any(not xi for xi in self.residues):
            raise InvalidDataError("residues must be nonzero")

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def ell(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.nodes)

    def is_regular(self, i: int) -> bool:
        return i < self.ell

    @staticmethod
    def from_json(obj) -> "InterpolationData":
        try:
            regular = obj.get("regular", [])
            singular = obj.get("singular", [])
            nodes = [scalar_from_json(r["x"]) for r in regular]
            nodes += [scalar_from_json(s["x"]) for s in singular]
            values = [scalar_from_json(r["w"]) for r in regular]
            bounds = [scalar_from_json(r["gamma"]) for r in regular]
            residues = [scalar_from_json(s["xi"]) for s in singular]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidDataError(f"malformed problem document: {exc}") from exc
        order = None
        if "nodes" in obj:
            listed = [scalar_from_json(x) for x in obj["nodes"]]
            if sorted(map(float, listed)) != sorted(map(float, nodes)):
                raise InvalidDataError("'nodes' does not match regular/singular entries")
            order = tuple(listed.index(x) for x in nodes)
        return InterpolationData(
            nodes=tuple(nodes),
            values=tuple(values),
            derivative_bounds=tuple(bounds),
            residues=tuple(residues),
            input_order=order,
        )

    def to_json(self) -> dict:
        return {
            "regular": [
                {
                    "x": scalar_to_json(self.nodes[i]),
                    "w": scalar_to_json(self.values[i]),
                    "gamma": scalar_to_json(self.derivative_bounds[i]),
                }
                for i in range(self.ell)
            ],
            "singular": [
                {
                    "x": scalar_to_json(self.nodes[self.ell + k]),
                    "xi": scalar_to_json(self.residues[k]),
                }
                for k in range(self.n - self.ell)
            ],
        }


def build_pick(data: InterpolationData) -> HermitianMatrix:
    """Pick matrix of the data: divided differences over the regular block,
    coupling entries xi_j / (x_j - x_i), and -xi on the singular diagonal."""
    n, ell = data.n, data.ell
    x, w, gamma, xi = data.nodes, data.values, data.derivative_bounds, data.residues
    rows = [[None] * n for _ in range(n)]
    for i in range(ell):
        for j in range(ell):
            rows[i][j] = gamma[i] if i == j else (w[j] - w[i]) / (x[j] - x[i])
    for i in range(ell):
        for k in range(n - ell):
            j = ell + k
            val = xi[k] / (x[j] - x[i])
            rows[i][j] = val
            rows[j][i] = val
    for k in range(n - ell):
        for m in range(n - ell):
            rows[ell + k][ell + m] = -xi[k] if k == m else 0 * xi[k]
    return HermitianMatrix(rows)


@dataclass(frozen=True)
class PickSystem:
    """Pick matrix with its companion matrices and derived quantities.

    The derived block (inverse, tilde rows, eta, diagonal of the inverse) is
    present exactly when P is invertible at the declared rank tolerance; a
    singular P is a legitimate state handled by the degenerate solver.
    """

    data: InterpolationData
    P: HermitianMatrix
    X: tuple
    E: tuple
    C: tuple
    inertia: Inertia
    kappa: int
    rank_tol: float
    p_inv: tuple | None = None
    tilde_e: tuple | None = None
    tilde_c: tuple | None = None
    eta: tuple | None = None
    tilde_p_diag: tuple | None = None

    J = SIGNATURE_J

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def ell(self) -> int:
        return self.data.ell

    @property
    def exact(self) -> bool:
        return self.data.exact

    @property
    def invertible(self) -> bool:
        return self.inertia.zeros == 0

    def p_inv_entry(self, i: int, j: int):
        return self.p_inv[i][j]


def _real_part(value):
    if isinstance(value, GaussianRational):
        if not value.is_real:
            raise InvalidDataError("expected a real entry")
        return value.re
    if isinstance(value, complex):
        return value.real
    return value


def build_system(data: InterpolationData, rank_tol: float = 1e-9) -> PickSystem:
    """Assemble P, X, E, C and, when P is invertible, the derived block."""
    P = build_pick(data)
    inertia = hermitian_inertia(P, rank_tol)
    n, ell = data.n, data.ell
    one = Fraction(1) if data.exact else 1.0
    zero = Fraction(0) if data.exact else 0.0
    E = tuple(one if i < ell else zero for i in range(n))
    C = tuple(data.values[i] if i < ell else data.residues[i - ell] for i in range(n))
    system = dict(
        data=data,
        P=P,
        X=tuple(data.nodes),
        E=E,
        C=C,
        inertia=inertia,
        kappa=inertia.negatives,
        rank_tol=rank_tol,
    )
    if inertia.zeros == 0:
        inv_rows = matrix_inverse(P)
        p_inv = tuple(tuple(_real_part(x) for x in row) for row in inv_rows)
        tilde_e = tuple(
            sum((E[i] * p_inv[i][j] for i in range(n)), start=zero) for j in range(n)
        )
        tilde_c = tuple(
            sum((C[i] * p_inv[i][j] for i in range(n)), start=zero) for j in range(n)
        )
        eta = tuple(
            (tilde_c[i] / tilde_e[i]) if tilde_e[i] else INFINITY for i in range(n)
        )
        system.update(
            p_inv=p_inv,
            tilde_e=tilde_e,
            tilde_c=tilde_c,
            eta=eta,
            tilde_p_diag=tuple(p_inv[i][i] for i in range(n)),
        )
    return PickSystem(**system)


@dataclass(frozen=True)
class LyapunovReport:
    """Entrywise residual of P X - X P - (E* C - C* E)."""

    max_abs: object
    location: tuple | None
    is_zero: bool
    exact: bool

    def to_json(self):
        return {
            "max_abs": scalar_to_json(self.max_abs),
            "location": list(self.location) if self.location else None,
            "is_zero": self.is_zero,
        }


def check_lyapunov(sys: PickSystem, P: HermitianMatrix | None = None) -> LyapunovReport:
    """Residual of the Lyapunov identity; exact zero on the exact backend.

    ``P`` overrides the system matrix, which lets callers probe how a
    perturbed matrix breaks the identity.
    """
    P = P if P is not None else sys.P
    if not isinstance(P, HermitianMatrix):
        P = HermitianMatrix(P)
    n = sys.n
    x, e, c = sys.X, sys.E, sys.C
    worst = None
    location = None
    for i in range(n):
        for j in range(n):
            p_ij = _real_part(P.entry(i, j))
            res = p_ij * (x[j] - x[i]) - (e[i] * c[j] - c[i] * e[j])
            mag = abs(res)
            if worst is None or mag > worst:
                worst, location = mag, (i, j)
    is_zero = not worst
    return LyapunovReport(
        max_abs=worst if worst is not None else 0,
        location=location if not is_zero else None,
        is_zero=is_zero,
        exact=sys.exact and P.exact,
    )


def negative_squares(sys: PickSystem) -> int:
    """Count of negative eigenvalues of the Pick matrix."""
    return sys.kappa
