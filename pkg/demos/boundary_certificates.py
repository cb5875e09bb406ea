"""Tour of the boundary-limit and kernel-positivity machinery.

Everything the solver certifies numerically is available directly: vertical
nontangential limits with Richardson acceleration, Nevanlinna-kernel
sampling, the disk conjugation, and Blaschke boundary values.
"""

import bnpick as b
from bnpick.boundary import LimitKind

z = b.RationalFunction.x()
neg_recip = b.RationalFunction([-1], [0, 1])  # -1/z

print("nontangential limits along the vertical path:")
f = b.RationalFunction([1, 2], [-1, 2])  # (2z+1)/(2z-1)
for kind, x0 in ((LimitKind.VALUE, -0.5), (LimitKind.DERIVATIVE, -0.5),
                 (LimitKind.RESIDUAL, 0.5)):
    est = b.nt_limit(f, x0, kind)
    print(f"  {kind.value:12s} at {x0:+.1f}: {est.value.real:+.9f} "
          f"(error estimate {est.error_estimate:.1e})")

print("\nkernel positivity sampling:")
for name, func in (("z", z), ("-1/z", neg_recip), ("(2z+1)/(2z-1)", f)):
    print(f"  negative squares of K for {name}: {b.kernel_negative_squares(func)}")

phi = b.Parameter.rational(b.RationalFunction([0, 0, 1]))  # z^2
check = b.is_nevanlinna(phi)
print(f"  z^2 in the Nevanlinna class: {check.ok} "
      f"(witness eigenvalue {check.witness.eigenvalue:.2f} "
      f"at {check.witness.points[0]:.2f})")

print("\ndisk conjugation (Cayley):")
for name, func in (("0", b.RationalFunction.constant(0)), ("z", z), ("-1/z", neg_recip)):
    print(f"  w = {name:5s} -> S = {b.cayley_transform(func)}")
print("  w = inf   -> S =", b.cayley_transform(b.Parameter.infinity()))

print("\nBlaschke boundary values of the kernel diagonal:")
for zeros, t0 in (([0], 1), ([0.5], 1), ([0, 0], 1j), ([0.5, -1 / 3], 1)):
    print(f"  zeros {zeros} at t0 = {t0}: {b.blaschke_boundary_value(zeros, t0):.6f}")

print("\nboundary-derivative agreement for w = -1/z at 0 (pole route):")
report = b.caratheodory_julia_check(neg_recip, 0.0)
for name, est in report.estimates.items():
    print(f"  {name:24s} {est.value.real:+.9f}")
print("consistent:", report.consistent)
