"""Join the identity of P^2 to the standard quadratic involution by a family over Q."""

from cremona import connect, identity, specialize, standard_involution, verify_family

sigma = standard_involution(2)
result = connect(identity(2), sigma)

print("chosen point:", result.point)
for step in result.plan.steps:
    print(f"  {step.kind:24s} x-degree {step.family.x_degree}, t-degree {step.family.t_degree}")

nu = result.family
print(f"nu has x-degree {nu.x_degree} and t-degree {nu.t_degree}")
print("first component:", nu.components[0])
print("nu(0) is the identity:", specialize(nu, 0).is_identity())
print("nu(1) is sigma:", specialize(nu, 1).same_as(sigma))

report = verify_family(nu, ["0", "1", "-1", "2", "1/2", "7/3"])
for s in report.samples:
    print(f"  t = {str(s.t):4s} degree {s.degree}  ok={s.ok}")
