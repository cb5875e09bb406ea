"""Walkthrough: boundary interpolation with two regular nodes.

Prescribe values and derivative bounds at x = 0 and x = 1:

    w(0) = 0,  w'(0) <= -1,      w(1) = 1,  w'(1) <= 1.

The Pick matrix has one negative eigenvalue, so interpolants live in the
class with one negative square and every solution is a linear-fractional
transform of a Nevanlinna parameter.
"""

import json
from pathlib import Path

import bnpick as b

problem = json.loads((Path(__file__).parent / "ex101.json").read_text())
data = b.InterpolationData.from_json(problem)
system = b.build_system(data)

print("Pick matrix P:")
for row in system.P.rows:
    print("   ", [str(v) for v in row])
print("inertia:", system.inertia, "-> kappa =", system.kappa)
print("Lyapunov residual is exactly zero:", b.check_lyapunov(system).is_zero)

print("\nderived rows:")
print("  tilde_e =", [str(v) for v in system.tilde_e])
print("  tilde_c =", [str(v) for v in system.tilde_c])
print("  eta     =", [str(v) for v in system.eta])
print("  diag of inverse:", [str(v) for v in system.tilde_p_diag])

theta = b.build_theta(system)
print("\nresolvent Theta(z):")
for i in range(2):
    for j in range(2):
        print(f"  Theta[{i}][{j}] = {theta.entry(i, j)}")
print("det Theta =", theta.det())
junit = b.check_j_unitarity(theta)
print("J-unitary on the real line (symbolic):", junit.symbolic_zero,
      "| sampled residual:", f"{junit.max_residual:.2e}")
print("negative squares of the resolvent kernel:",
      b.kernel_theta_negative_squares(system, theta))

print("\napplying parameters:")
for phi in (b.Parameter.infinity(),
            b.Parameter.rational(b.RationalFunction.x()),
            b.Parameter.constant(0)):
    report, w, sampled = b.classify_and_verify(system, phi)
    labels = [(n.label.family, n.label.index) for n in report.nodes]
    confirmed = all(n.verification.ok for n in report.nodes)
    print(f"  phi = {phi!r}")
    print(f"    w = {w}")
    print(f"    conditions {labels}, lost squares k = {report.k}, "
          f"class index {report.class_index}, sampled {sampled}, "
          f"predictions confirmed: {confirmed}")

print("\nwhich nodes can a parameter miss?")
for subset, name in (([0], "{x1}"), ([1], "{x2}"), ([0, 1], "{x1, x2}")):
    print(f"  {name}: {b.feasibility_miss_set(system, subset).value}")
print("equality and inequality problems coincide:", b.equivalence_check(system))
