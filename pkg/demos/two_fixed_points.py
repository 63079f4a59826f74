"""The quadratic map fixing [0:1:0] and [0:0:1], and the linear limits of its rescalings."""

from cremona import Point, conj_limit, derivative_at_fixed_point, specialize, twoderivatives_gadget

for lam in (2, 3, 5):
    g = twoderivatives_gadget(lam, 2)
    print(f"lambda = {lam}: g = {g}")
    for p in (Point.of([0, 1, 0]), Point.of([0, 0, 1])):
        rho = conj_limit(g, p)
        print(f"  at {p}: rho(0) = {specialize(rho, 0)}")
        print(f"           derivative matrix {derivative_at_fixed_point(g, p)}")
        print(f"           rho(1) == g: {specialize(rho, 1) == g}")
