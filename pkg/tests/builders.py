"""Random inputs for the test suite (seeded, so runs are reproducible)."""

from __future__ import annotations

import random

from gmpy2 import mpq

from cremona import linalg
from cremona.families import conj_limit, constant_family
from cremona.fields import QQ
from cremona.lingroup import psl_path
from cremona.maps import (
    CremonaMap,
    Point,
    ProjMatrix,
    compose,
    dejonquieres_h,
    linear,
    normalize_tuple,
    standard_involution,
    twoderivatives_gadget,
)
from cremona.polynomials import poly_ring


def random_scalar(rng, h=5, nonzero=False):
    while True:
        num = rng.randint(-h, h)
        den = rng.randint(1, h)
        if num or not nonzero:
            return mpq(num, den)


def random_invertible(rng, m, h=3):
    while True:
        M = [[mpq(rng.randint(-h, h)) for _ in range(m)] for _ in range(m)]
        if linalg.det(QQ, M):
            return M


def random_sl(rng, m, h=10):
    """Integer matrix of height <= h with its first row scaled to force det 1."""
    while True:
        M = [[mpq(rng.randint(-h, h)) for _ in range(m)] for _ in range(m)]
        d = linalg.det(QQ, M)
        if d:
            M[0] = [a / d for a in M[0]]
            return M


def random_linear_map(rng, n, h=3):
    return linear(ProjMatrix(random_invertible(rng, n + 1, h)))


def random_poly(rng, ring, variables, max_deg, terms=3, h=4):
    """Random polynomial in the listed variables, no constant term."""
    out = ring.zero()
    for _ in range(terms):
        exps = [0] * ring.nvars
        deg = rng.randint(1, max_deg)
        for _ in range(deg):
            exps[rng.choice(variables)] += 1
        out = out + ring.monomial(exps, coeff=random_scalar(rng, h))
    return out


def triangular_map(rng, n, max_deg=2):
    """Certified map fixing [1:0:...:0] whose affine part is triangular.

    Affine form: x_i -> c_i x_i + P_i(x_1, ..., x_{i-1}); the inverse comes
    from back substitution.
    """
    ring = poly_ring(QQ, n + 1, False)
    x = ring.gens()
    forward = []
    coeffs = []
    for i in range(1, n + 1):
        c = random_scalar(rng, 3, nonzero=True)
        coeffs.append(c)
        P = random_poly(rng, ring, list(range(1, i)), max_deg) if i > 1 else ring.zero()
        forward.append(x[i].scale(c) + P)
    backward = []
    for k, i in enumerate(range(1, n + 1)):
        # x_i = (y_i - P_i(x_<i)) / c_i with x_<i already expressed through y
        P = forward[k] - x[i].scale(coeffs[k])
        images = [x[0]] + backward + [x[j] for j in range(i, n + 1)]
        images = images[: n + 1]
        Pb = P.substitute(images)
        backward.append((x[i] - Pb).scale(1 / coeffs[k]))
    return CremonaMap(_homogenize(ring, forward), _homogenize(ring, backward)).certify()


def _homogenize(ring, affine):
    d = max(max(f.degree() for f in affine), 1)
    x0 = ring.var(0)
    return [x0**d] + [f.homogenize(d) for f in affine]


def random_certified_map(rng, n=2):
    """Products of linear maps with the standard involution or the gadget."""
    kind = rng.choice(["linear", "sigma", "gadget", "triangular"] + (["h"] if n >= 3 else []))
    if kind == "linear":
        return random_linear_map(rng, n)
    if kind == "sigma":
        return compose(random_linear_map(rng, n, 2), standard_involution(n))
    if kind == "gadget":
        lam = rng.choice([2, 3, 5, -1, mpq(1, 2)])
        return compose(twoderivatives_gadget(lam, n), random_linear_map(rng, n, 2))
    if kind == "h":
        return compose(dejonquieres_h(n), random_linear_map(rng, n, 2))
    return triangular_map(rng, n)


def random_family(rng, n=2):
    """One of: constant, a conjugation-limit family of a gadget, a straight SL path."""
    kind = rng.choice(["constant", "gadget", "path", "sigma"])
    if kind == "constant":
        return constant_family(random_certified_map(rng, n))
    if kind == "gadget":
        lam = rng.choice([2, 3, 5, mpq(1, 3)])
        which = rng.choice([1, 2])
        p = Point.of([1 if i == which else 0 for i in range(n + 1)])
        return conj_limit(twoderivatives_gadget(lam, n), p)
    if kind == "sigma":
        return conj_limit(standard_involution(n), Point.of([1] * (n + 1)))
    return psl_path(random_sl(rng, n + 1, 3), random_sl(rng, n + 1, 3)).family


def graded_formula_family(g):
    """[x0^d : sum_j t^(j-1) x0^(d-j) p_ij] from the graded pieces of the affine chart."""
    ring = g.ring.with_param()
    t = ring.t()
    x0 = ring.var(0)
    comps = [c.promote() for c in g.components]
    d = g.degree
    assert comps[0] == x0**d
    out = [x0**d]
    for c in comps[1:]:
        affine = c.dehomogenize(0)
        acc = ring.zero()
        for j in range(1, affine.degree() + 1):
            acc = acc + (t ** (j - 1)) * (x0 ** (d - j)) * affine.graded_component(j).promote()
        out.append(acc)
    return normalize_tuple(out)
