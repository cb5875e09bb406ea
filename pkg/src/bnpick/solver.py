"""End-to-end solution machinery.

For an invertible Pick matrix the solution set is the image of the extended
Nevanlinna parameters under the resolvent transform; each parameter is
classified at every node into one of six conditions per family (family "C"
where the derived row entry te_i is nonzero, family "Ctilde" where it
vanishes), and the condition index determines the boundary behavior of the
transformed function at that node.  Indices 4-6 each cost one negative
square: a parameter meeting them at k nodes produces a function of class
index kappa - k, and k can never exceed kappa.

For a singular Pick matrix the problem has a unique solution in closed form
built from any kernel vector of P.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .algebra import HermitianMatrix, Polynomial, RationalFunction, exact_kernel_basis, hermitian_inertia
from ._sections import DEFAULT_GRID, GridConfig
from .boundary import LimitKind, fmi_check, kernel_negative_squares, nt_limit
from .errors import (
    InconsistentClassificationError,
    NoSolutionRepresentationError,
    NotNevanlinnaError,
    UnclassifiableParameterError,
)
from .problem import INFINITY, InterpolationData, PickSystem, build_system, is_infinite
from .resolvent import RationalMatrix2x2, build_theta
from .transform import Parameter, apply_lft, is_nevanlinna

THRESHOLD_TOL = 1e-7
VERIFY_TOL = 1e-6


@dataclass(frozen=True)
class ConditionLabel:
    """Condition family and index of a parameter at one node (1-based)."""

    node: int
    family: str  # "C" | "Ctilde"
    index: int  # 1..6
    phi_value: object = None
    phi_derivative: object = None
    phi_residual: object = None
    exact: bool = False

    @property
    def loses_square(self) -> bool:
        return self.index >= 4

    @property
    def problem1_compatible(self) -> bool:
        return self.index <= 2

    @property
    def problem2_compatible(self) -> bool:
        return self.index <= 3


@dataclass(frozen=True)
class PredictedOutcome:
    """Predicted boundary behavior of the transformed function at a node."""

    kind: str
    node_kind: str  # "regular" | "singular"
    description: str


@dataclass(frozen=True)
class NodeVerification:
    ok: bool
    margin: float | None
    details: dict


@dataclass(frozen=True)
class NodeReport:
    node: int
    label: ConditionLabel
    predicted: PredictedOutcome
    verification: NodeVerification | None = None

    def to_json(self) -> dict:
        doc = {
            "node": self.node,
            "family": self.label.family,
            "index": self.label.index,
            "predicted": self.predicted.description,
        }
        if self.verification is not None:
            doc["verified"] = self.verification.ok
            doc["margin"] = self.verification.margin
        return doc


@dataclass(frozen=True)
class ClassificationReport:
    """Per-node labels with lost-squares accounting."""

    nodes: tuple
    k: int
    kappa: int

    @property
    def class_index(self) -> int:
        return self.kappa - self.k

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "k": self.k,
            "class_index": self.class_index,
        }


class Feasibility(Enum):
    INFEASIBLE = "infeasible"
    UNIQUE_PARAMETER = "unique_parameter"
    INFINITELY_MANY = "infinitely_many"


@dataclass(frozen=True)
class SolutionBundle:
    """Either the resolvent parameterization or the unique degenerate solution."""

    kind: str  # "parameterized" | "unique"
    kappa: int
    problem_kind: int
    theta: RationalMatrix2x2 | None = None
    w: RationalFunction | None = None
    verification: dict | None = None

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "kappa": self.kappa, "problem": self.problem_kind}
        if self.theta is not None:
            doc["theta"] = self.theta.to_json()
        if self.w is not None:
            doc["w"] = self.w.to_json()
        if self.verification is not None:
            doc["verification"] = self.verification
        return doc


def _phi_limits_exact(phi: Parameter):
    """Exact boundary behavior of constant / infinite parameters."""
    if phi.kind == "const":
        return phi.value, 0, 0
    return INFINITY, None, INFINITY


def classify_parameter(
    sys: PickSystem, phi: Parameter, i: int, tol: float = THRESHOLD_TOL
) -> ConditionLabel:
    """Condition label of a parameter at node i (0-based input index).

    Constants and infinity classify exactly; rational parameters classify
    through numerical boundary limits with thresholds compared at ``tol``,
    ties resolving to the equality condition (index 5 or 6 by the sign of
    the diagonal entry of the inverse Pick matrix).
    """
    if not sys.invertible:
        raise ValueError("classification requires an invertible Pick matrix")
    te = sys.tilde_e[i]
    tc = sys.tilde_c[i]
    x_i = sys.X[i]
    p_ii = sys.tilde_p_diag[i]
    family = "C" if te else "Ctilde"

    if phi.kind in ("const", "inf"):
        value, deriv, residual = _phi_limits_exact(phi)
        if family == "C":
            eta = sys.eta[i]
            if is_infinite(value):
                matches_eta = False
            elif isinstance(value, Fraction) and sys.exact:
                matches_eta = value == eta
            else:
                matches_eta = abs(float(value) - float(eta)) <= tol * max(1.0, abs(float(eta)))
            if not matches_eta:
                index = 1
            else:
                # constant at the critical value: derivative is exactly 0
                index = _index_from_derivative(0, -p_ii / (te * te), p_ii, exact=True)
        else:
            if not is_infinite(value):
                index = 1
            else:
                # infinite parameter: -1/phi_residual = 0 exactly
                index = _index_from_inverse_residual(0, -p_ii / (tc * tc), p_ii, exact=True)
        return ConditionLabel(i + 1, family, index, value, deriv, residual, exact=True)

    func = phi.func
    value = nt_limit(func, x_i, LimitKind.VALUE)
    if family == "C":
        eta = float(sys.eta[i]) if not is_infinite(sys.eta[i]) else None
        if not value.is_finite or eta is None or abs(value.value.real - eta) > tol * max(
            1.0, abs(eta)
        ):
            index = 1
            deriv = residual = None
        else:
            deriv = nt_limit(func, x_i, LimitKind.DERIVATIVE)
            residual = None
            if deriv.is_infinite:
                index = 2
            elif not deriv.is_finite:
                return _unclassifiable(i, family, value, deriv, None)
            else:
                tau = float(-p_ii / (te * te))
                index = _index_from_derivative(deriv.value.real, tau, p_ii, tol=tol)
        return ConditionLabel(i + 1, family, index, value, deriv, residual)

    if value.is_finite or value.status == "dne":
        return ConditionLabel(i + 1, family, 1, value)
    residual = nt_limit(func, x_i, LimitKind.RESIDUAL)
    if not residual.is_finite:
        return _unclassifiable(i, family, value, None, residual)
    r = residual.value.real
    if abs(r) <= 1e-9:
        index = 2
    else:
        tau = float(-p_ii / (tc * tc))
        index = _index_from_inverse_residual(-1.0 / r, tau, p_ii, tol=tol)
    return ConditionLabel(i + 1, family, index, value, None, residual)


def _unclassifiable(i, family, value, deriv, residual):
    raise UnclassifiableParameterError(
        f"boundary limits of the parameter at node {i + 1} are inconclusive",
        estimates={"value": value, "derivative": deriv, "residual": residual},
    )


def _index_from_derivative(d, tau, p_ii, tol=THRESHOLD_TOL, exact=False):
    """Index among 3..6 for a parameter matching eta with derivative d."""
    if exact:
        if d == tau:
            return 6 if not p_ii else 5
        return 3 if d > tau else 4
    if abs(d - tau) <= tol:
        if p_ii < 0:
            return 5
        if not p_ii:
            return 6
        return 3
    return 3 if d > tau else 4


def _index_from_inverse_residual(s, tau, p_ii, tol=THRESHOLD_TOL, exact=False):
    """Index among 2..6 for an unbounded parameter with s = -1/phi_residual."""
    if exact:
        if s == tau:
            return 6 if not p_ii else 5
        return 3 if s > tau else 4
    if abs(s - tau) <= tol:
        if p_ii < 0:
            return 5
        if not p_ii:
            return 6
        return 3
    return 3 if s > tau else 4


_REGULAR_DESCRIPTIONS = {
    "exact": "w(x_i) = w_i and w'(x_i) = gamma_i",
    "strict_below": "w(x_i) = w_i and -inf < w'(x_i) < gamma_i",
    "strict_above": "w(x_i) = w_i and gamma_i < w'(x_i) < inf",
    "maybe_missed": (
        "w(x_i) fails to exist, or differs from w_i, or equals w_i with "
        "an infinite kernel diagonal"
    ),
    "missed": "w(x_i) exists and w(x_i) != w_i",
}

_SINGULAR_DESCRIPTIONS = {
    "exact": "w_res(x_i) = xi_i",
    "strict_below": "-inf < -1/w_res(x_i) < -1/xi_i",
    "strict_above": "-1/xi_i < -1/w_res(x_i) < inf",
    "zero_residual": "w_res(x_i) = 0",
}


def predict_behavior(label: ConditionLabel, node_kind: str) -> PredictedOutcome:
    """Map a condition label to the boundary behavior of the transform.

    Indices 1-2 give the prescribed data back exactly; 3 and 4 keep the
    value but push the derivative (or inverse residual) strictly below or
    above its bound; 5 and 6 lose the interpolation condition: at regular
    nodes index 5 has a three-way outcome and 6 misses the value, at
    singular nodes both kill the residual.
    """
    if node_kind not in ("regular", "singular"):
        raise ValueError(f"unknown node kind {node_kind!r}")
    idx = label.index
    if node_kind == "regular":
        kind = {1: "exact", 2: "exact", 3: "strict_below", 4: "strict_above",
                5: "maybe_missed", 6: "missed"}[idx]
        return PredictedOutcome(kind, node_kind, _REGULAR_DESCRIPTIONS[kind])
    kind = {1: "exact", 2: "exact", 3: "strict_below", 4: "strict_above",
            5: "zero_residual", 6: "zero_residual"}[idx]
    return PredictedOutcome(kind, node_kind, _SINGULAR_DESCRIPTIONS[kind])


def lost_squares(labels, kappa: int):
    """Count k of square-losing labels and the resulting class index kappa - k."""
    k = sum(1 for lab in labels if lab.loses_square)
    if k > kappa:
        raise InconsistentClassificationError(
            f"{k} square-losing nodes exceed the budget kappa = {kappa}; "
            "the parameter cannot be a Nevanlinna function"
        )
    return k, kappa - k


def classify_all(sys: PickSystem, phi: Parameter) -> ClassificationReport:
    nodes = []
    labels = []
    for i in range(sys.n):
        label = classify_parameter(sys, phi, i)
        kind = "regular" if sys.data.is_regular(i) else "singular"
        nodes.append(NodeReport(i + 1, label, predict_behavior(label, kind)))
        labels.append(label)
    k, _ = lost_squares(labels, sys.kappa)
    return ClassificationReport(tuple(nodes), k, sys.kappa)


def verify_outcome(
    sys: PickSystem,
    w: RationalFunction,
    node_index: int,
    outcome: PredictedOutcome,
    tol: float = VERIFY_TOL,
) -> NodeVerification:
    """Numerically confirm a predicted outcome at one node (0-based index).

    Equalities must hold within ``tol``; strict inequalities must hold with
    margin above ``tol``.  The reported margin is the worst equality error
    or the inequality slack, whichever applies.
    """
    x_i = sys.X[node_index]
    if sys.data.is_regular(node_index):
        w_i = float(sys.data.values[node_index])
        gamma_i = float(sys.data.derivative_bounds[node_index])
        value = nt_limit(w, x_i, LimitKind.VALUE)
        deriv = nt_limit(w, x_i, LimitKind.DERIVATIVE)
        details = {"value": value, "derivative": deriv}
        value_err = abs(value.value.real - w_i) if value.is_finite else float("inf")
        if outcome.kind == "exact":
            deriv_err = abs(deriv.value.real - gamma_i) if deriv.is_finite else float("inf")
            err = max(value_err, deriv_err)
            return NodeVerification(err <= tol, err, details)
        if outcome.kind in ("strict_below", "strict_above"):
            if not (value_err <= tol and deriv.is_finite):
                return NodeVerification(False, None, details)
            slack = (gamma_i - deriv.value.real) if outcome.kind == "strict_below" else (
                deriv.value.real - gamma_i
            )
            return NodeVerification(slack > tol, slack, details)
        if outcome.kind == "missed":
            return NodeVerification(value_err > tol, value_err, details)
        if outcome.kind == "maybe_missed":
            kernel = nt_limit(w, x_i, LimitKind.KERNEL_DIAGONAL)
            details["kernel_diagonal"] = kernel
            ok = (
                value.status == "dne"
                or value.is_infinite
                or value_err > tol
                or kernel.is_infinite
            )
            return NodeVerification(ok, value_err, details)
        raise ValueError(f"unexpected outcome kind {outcome.kind!r}")

    xi_i = float(sys.data.residues[node_index - sys.ell])
    residual = nt_limit(w, x_i, LimitKind.RESIDUAL)
    details = {"residual": residual}
    if not residual.is_finite:
        return NodeVerification(False, None, details)
    r = residual.value.real
    if outcome.kind == "exact":
        err = abs(r - xi_i)
        return NodeVerification(err <= tol, err, details)
    if outcome.kind == "zero_residual":
        return NodeVerification(abs(r) <= tol, abs(r), details)
    if abs(r) <= tol:
        return NodeVerification(False, None, details)
    bound = -1.0 / xi_i
    slack = (bound - (-1.0 / r)) if outcome.kind == "strict_below" else ((-1.0 / r) - bound)
    return NodeVerification(slack > tol, slack, details)


def classify_and_verify(
    sys: PickSystem,
    phi: Parameter,
    config: GridConfig = DEFAULT_GRID,
    tol: float = VERIFY_TOL,
):
    """Classify phi, transform it, and confirm every predicted outcome.

    Returns the classification report (with per-node verification attached),
    the transformed function, and its sampled negative-squares count, which
    must equal the predicted class index kappa - k.
    """
    check = is_nevanlinna(phi, config)
    if not check.ok:
        raise NotNevanlinnaError("parameter kernel is not positive", check.witness)
    theta = build_theta(sys)
    w = apply_lft(theta, phi)
    report = classify_all(sys, phi)
    verified_nodes = []
    for node in report.nodes:
        verification = verify_outcome(sys, w, node.node - 1, node.predicted, tol)
        verified_nodes.append(
            NodeReport(node.node, node.label, node.predicted, verification)
        )
    sampled = kernel_negative_squares(w, config=config, span=(min(map(float, sys.X)), max(map(float, sys.X))))
    report = ClassificationReport(tuple(verified_nodes), report.k, report.kappa)
    return report, w, sampled


def feasibility_miss_set(sys: PickSystem, subset) -> Feasibility:
    """Can a parameter lose its squares exactly on this node subset?

    Decided by the principal submatrix of the inverse Pick matrix over the
    subset: any positive eigenvalue is infeasible, negative definite leaves
    infinitely many parameters, negative semidefinite and singular exactly
    one.  Nodes are 0-based here.
    """
    if not sys.invertible:
        raise ValueError("miss-set feasibility requires an invertible Pick matrix")
    subset = list(subset)
    if not subset:
        return Feasibility.INFINITELY_MANY
    block = [[sys.p_inv[i][j] for j in subset] for i in subset]
    inertia = hermitian_inertia(HermitianMatrix(block), sys.rank_tol)
    if inertia.positives:
        return Feasibility.INFEASIBLE
    if inertia.zeros:
        return Feasibility.UNIQUE_PARAMETER
    return Feasibility.INFINITELY_MANY


def equivalence_check(sys: PickSystem) -> bool:
    """True when relaxing equalities to inequalities changes nothing.

    Holds exactly when every diagonal entry of the inverse Pick matrix is
    positive, so no parameter can lose a square anywhere.
    """
    if not sys.invertible:
        raise ValueError("equivalence check requires an invertible Pick matrix")
    return all(p > 0 for p in sys.tilde_p_diag)


def solve_degenerate(sys: PickSystem) -> RationalFunction:
    """Unique solution for a singular Pick matrix, from a kernel vector y:

        w(z) = (y* (zI-X)^(-1) C*) / (y* (zI-X)^(-1) E*).

    The result does not depend on the kernel vector; with nullity above one
    every basis vector is tried and the results are required to agree.
    """
    if sys.invertible:
        raise ValueError("Pick matrix is invertible; use the resolvent instead")
    if sys.exact:
        basis = exact_kernel_basis([list(row) for row in sys.P.rows])
        vectors = [[v.re for v in vec] for vec in basis]
    else:
        arr = sys.P.to_numpy().real
        _, s, vh = np.linalg.svd(arr)
        scale = max(1.0, s[0]) * sys.rank_tol
        vectors = [vh[i].tolist() for i in range(len(s)) if s[i] <= scale]
    if not vectors:
        raise NoSolutionRepresentationError("no kernel vector found for singular P")
    candidates = []
    for y in vectors:
        partial = [
            Polynomial.from_real_roots([x for j, x in enumerate(sys.X) if j != i])
            for i in range(sys.n)
        ]
        num = Polynomial(())
        den = Polynomial(())
        for i in range(sys.n):
            num = num + partial[i].scale(y[i] * sys.C[i])
            den = den + partial[i].scale(y[i] * sys.E[i])
        if den.is_zero:
            raise NoSolutionRepresentationError(
                "degenerate closed form has an identically zero denominator"
            )
        candidates.append(RationalFunction(num, den))
    first = candidates[0]
    for other in candidates[1:]:
        agree = (first == other) if sys.exact else first.isclose(other, 1e-8)
        if not agree:
            raise NoSolutionRepresentationError(
                "kernel vectors produced different unique solutions"
            )
    return first


def solve(
    data: InterpolationData,
    rank_tol: float = 1e-9,
    config: GridConfig = DEFAULT_GRID,
    verify: bool = True,
) -> SolutionBundle:
    """Full pipeline: build the system, branch on invertibility.

    Invertible P yields the resolvent whose transform parameterizes all
    solutions; singular P yields the unique closed-form solution together
    with a numerical verification report (boundary limits at every node and
    the sampled bordered-kernel count, which must equal kappa).
    """
    sys = build_system(data, rank_tol)
    if sys.invertible:
        theta = build_theta(sys)
        return SolutionBundle(
            kind="parameterized", kappa=sys.kappa, problem_kind=3, theta=theta
        )
    w = solve_degenerate(sys)
    verification = None
    if verify:
        verification = verify_candidate(sys, w)
    return SolutionBundle(
        kind="unique", kappa=sys.kappa, problem_kind=3, w=w, verification=verification
    )


def verify_candidate(
    sys: PickSystem,
    w: RationalFunction,
    tol: float = 1e-8,
    config: GridConfig = DEFAULT_GRID,
) -> dict:
    """Per-node boundary-limit checks of a candidate plus kernel counts.

    Each regular node checks the value and derivative limits against the
    prescribed pair (equality for the value, equality/upper-bound for the
    derivative); each singular node checks the residual limit.  The report
    also carries the sampled bordered-kernel count and the plain kernel
    count of w.
    """
    nodes = []
    for i in range(sys.n):
        x_i = sys.X[i]
        if sys.data.is_regular(i):
            w_i = float(sys.data.values[i])
            gamma_i = float(sys.data.derivative_bounds[i])
            value = nt_limit(w, x_i, LimitKind.VALUE)
            deriv = nt_limit(w, x_i, LimitKind.DERIVATIVE)
            value_err = abs(value.value.real - w_i) if value.is_finite else float("inf")
            deriv_err = abs(deriv.value.real - gamma_i) if deriv.is_finite else float("inf")
            p1 = value_err <= tol and deriv_err <= tol
            p2 = value_err <= tol and deriv.is_finite and deriv.value.real <= gamma_i + tol
            nodes.append(
                {
                    "node": i + 1,
                    "kind": "regular",
                    "checks": {"value": value, "derivative": deriv},
                    "errors": {"value": value_err, "derivative": deriv_err},
                    "problem1": p1,
                    "problem2": p2,
                }
            )
        else:
            xi_i = float(sys.data.residues[i - sys.ell])
            residual = nt_limit(w, x_i, LimitKind.RESIDUAL)
            res_err = abs(residual.value.real - xi_i) if residual.is_finite else float("inf")
            p1 = res_err <= tol
            p2 = (
                residual.is_finite
                and abs(residual.value.real) > tol
                and -1.0 / residual.value.real <= -1.0 / xi_i + tol
            )
            nodes.append(
                {
                    "node": i + 1,
                    "kind": "singular",
                    "checks": {"residual": residual},
                    "errors": {"residual": res_err},
                    "problem1": p1,
                    "problem2": p2,
                }
            )
    fmi = fmi_check(sys, w, config=config)
    sampled = kernel_negative_squares(
        w, config=config, span=(min(map(float, sys.X)), max(map(float, sys.X)))
    )
    return {
        "nodes": nodes,
        "fmi_count": fmi,
        "kappa": sys.kappa,
        "kernel_negative_squares": sampled,
        "is_problem3_solution": fmi == sys.kappa,
    }
