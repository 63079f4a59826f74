"""A path from the identity to diag(2, 1, 1), which is not in PSL_3(Q)."""

from cremona import ProjMatrix, det_class, linear, specialize
from cremona.paths import connect_linear_plan, replay

h = ProjMatrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
cls = det_class(h)
print("canonical lift", h, "det", cls.witness, "cube:", cls.in_psl)

plan = connect_linear_plan(h)
for step in plan.steps:
    print(f"  {step.kind}: {step.inputs}")
nu = replay(plan)
print("nu(0) identity:", specialize(nu, 0).is_identity())
print("nu(1) == h:", specialize(nu, 1) == linear(h))
print("nu(1/2) =", specialize(nu, "1/2"))
