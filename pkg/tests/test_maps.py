import random

import pytest

from cremona.errors import (
    DimensionMismatch,
    IndeterminateAtPoint,
    InvalidParameter,
    MissingInverse,
    NotFixed,
    ZeroTuple,
)
from cremona.fields import QQ, prime_field
from cremona.maps import (
    INDETERMINATE,
    SINGULAR,
    CremonaMap,
    Point,
    ProjMatrix,
    compose,
    compose_all,
    dejonquieres_h,
    derivative_at_fixed_point,
    evaluate,
    identity,
    is_local_iso_at,
    linear,
    normalize,
    scaling_g_a,
    standard_involution,
    twoderivatives_gadget,
    verify_certificate,
)
from cremona.polynomials import poly_ring

from builders import random_certified_map, random_poly, triangular_map

R = poly_ring(QQ, 3)
x0, x1, x2 = R.gens()
SIGMA = standard_involution(2)


def M(text, field=QQ):
    return CremonaMap.parse(text, field)


def test_normalize_examples():
    f = normalize([x0**2 * x1 * x2, x0 * x1**2 * x2, x0 * x1 * x2**2])
    assert f.is_identity()
    assert normalize([x0.scale(2), x1.scale(2), x2.scale(2)]).is_identity()
    g = M("[x1*x2 : x0*x2 : x0*x1]")
    assert normalize(g.components) == g
    with pytest.raises(ZeroTuple):
        normalize([R.zero()] * 3)


def test_normalize_leading_coefficient_is_one():
    f = normalize([x0.scale(-3) + x1, x1.scale(6), x2])
    lead = f.components[0].leading_coefficient()
    assert lead == QQ.one


def test_sigma_squared_is_identity():
    assert compose(SIGMA, SIGMA).is_identity()


def test_compose_with_identity():
    g = twoderivatives_gadget(3, 2)
    assert compose(g, identity(2)) == g
    assert compose(identity(2), g) == g


@pytest.mark.parametrize("a", [2, 3])
def test_conjugated_scaling(a):
    h = dejonquieres_h(3)
    out = compose_all(h, scaling_g_a(a, 3), h.inverse_map())
    assert out.same_as(M(f"[x0 : {a}*x1 : x2 : x3]"))
    assert out.certified


def test_verify_certificate_examples():
    assert verify_certificate(SIGMA)
    assert verify_certificate(identity(3))
    squares = "[x0^2 : x1^2 : x2^2]"
    for claimed in ("[x0^2 : x1^2 : x2^2]", "[x0 : x1 : x2]", "[x1*x2 : x0*x2 : x0*x1]"):
        f = CremonaMap.parse(f"{squares} ;; inverse={claimed}", certify=False)
        assert not verify_certificate(f)
    with pytest.raises(MissingInverse):
        verify_certificate(M(squares))


def test_evaluate_examples():
    assert evaluate(SIGMA, Point.of([1, 1, 1])) == Point.of([1, 1, 1])
    assert evaluate(SIGMA, Point.of([0, 0, 1])) is INDETERMINATE
    p = Point.of([3, -1, 5])
    assert evaluate(identity(2), p) == p


def test_points_are_projective():
    assert Point.of([2, 4, 6]) == Point.of([1, 2, 3])
    assert Point.parse("[0:-2:4]") == Point.of([0, 1, -2])


def test_gadget_formula():
    assert twoderivatives_gadget(2, 2) == M("[x0*(x1+2*x2)+x1*x2 : x1*(x1+x2) : x2*(x1+x2)]")


def test_dejonquieres_formula():
    assert dejonquieres_h(3) == M("[x0^2 : x0*x1 : x1*x2 : x0*x3]")


def test_linear_identity_matrix():
    assert linear(ProjMatrix.identity(2)).is_identity()


def test_constructor_parameter_checks():
    with pytest.raises(InvalidParameter):
        twoderivatives_gadget(0, 2)
    with pytest.raises(InvalidParameter):
        scaling_g_a(2, 2)
    with pytest.raises(InvalidParameter):
        dejonquieres_h(2)
    with pytest.raises(InvalidParameter):
        twoderivatives_gadget(2, 1)


@pytest.mark.parametrize("lam", [2, 3, 5])
@pytest.mark.parametrize("n", [2, 3])
def test_gadget_fixes_both_points(lam, n):
    g = twoderivatives_gadget(lam, n)
    assert g.certified
    for i in (1, 2):
        p = Point.of([1 if j == i else 0 for j in range(n + 1)])
        assert evaluate(g, p) == p


def test_gadget_derivatives():
    g = twoderivatives_gadget(2, 2)
    assert derivative_at_fixed_point(g, Point.of([0, 0, 1])) == M("[2*x0+x1 : x1 : x2]").matrix()
    assert derivative_at_fixed_point(g, Point.of([0, 1, 0])) == M("[x0+x2 : x1 : x2]").matrix()
    assert derivative_at_fixed_point(identity(2), Point.of([2, 3, 7])) == ProjMatrix.identity(2)


def test_derivative_errors():
    with pytest.raises(NotFixed):
        derivative_at_fixed_point(SIGMA, Point.of([1, 2, 3]))
    with pytest.raises(IndeterminateAtPoint):
        derivative_at_fixed_point(SIGMA, Point.of([0, 0, 1]))


def test_derivative_singular():
    # [x0^2 : x1^2 : x0 x2] fixes [1:0:0] but squashes x1 there
    f = CremonaMap.parse("[x0^2 : x1^2 : x0*x2]", certify=False)
    assert derivative_at_fixed_point(f, Point.of([1, 0, 0])) is SINGULAR


def test_local_iso_examples():
    assert is_local_iso_at(SIGMA, Point.of([1, 1, 1]))
    assert not is_local_iso_at(SIGMA, Point.of([1, 1, 0]))
    assert is_local_iso_at(identity(2), Point.of([0, 5, 1]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(SIGMA, identity(3))


def test_prime_field_maps():
    F = prime_field(7)
    s = standard_involution(2, F)
    assert compose(s, s).is_identity()
    g = twoderivatives_gadget(3, 2, F)
    assert g.certified


def test_print_parse_roundtrip():
    rng = random.Random(2)
    for n in (2, 3):
        for _ in range(20):
            f = random_certified_map(rng, n)
            back = CremonaMap.parse(str(f))
            assert back == f and back.inverse == f.inverse and back.certified


# properties ----------------------------------------------------------------


def test_normalize_idempotent():
    rng = random.Random(21)
    for _ in range(500):
        d = rng.randint(1, 3)
        common = random_poly(rng, R, [0, 1, 2], 2) or R.one()
        comps = []
        for _ in range(3):
            f = R.zero()
            for _ in range(rng.randint(1, 3)):
                exps = [0, 0, 0]
                for _ in range(d):
                    exps[rng.randrange(3)] += 1
                f = f + R.monomial(exps, coeff=rng.randint(-3, 3))
            comps.append(f)
        if not any(comps) or not common.is_homogeneous():
            continue
        raw = [c * common for c in comps]
        once = normalize(raw)
        assert normalize(once.components) == once


def test_compose_associative():
    rng = random.Random(22)
    for n in (2, 3):
        for _ in range(8):
            f, g, h = (random_certified_map(rng, n) for _ in range(3))
            assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_certified_composites_verify():
    rng = random.Random(23)
    for _ in range(15):
        f = compose(random_certified_map(rng, 2), random_certified_map(rng, 2))
        assert f.certified and verify_certificate(f)
        assert compose(f.inverse_map(), f).is_identity()


def test_evaluate_respects_composition():
    rng = random.Random(24)
    checked = 0
    for _ in range(60):
        f, g = random_certified_map(rng, 2), random_certified_map(rng, 2)
        coords = [rng.randint(-4, 4) for _ in range(3)]
        if not any(coords):
            continue
        p = Point.of(coords)
        q = evaluate(g, p)
        if q is INDETERMINATE:
            continue
        r = evaluate(f, q)
        if r is INDETERMINATE:
            continue
        fg = evaluate(compose(f, g), p)
        if fg is INDETERMINATE:
            continue  # the composite's tuple may have lost a common factor vanishing at p
        assert fg == r
        checked += 1
    assert checked > 20


def test_derivative_chain_rule():
    rng = random.Random(25)
    e0 = Point.of([1, 0, 0, 0])
    for _ in range(15):
        f, g = triangular_map(rng, 3), triangular_map(rng, 3)
        Df = derivative_at_fixed_point(f, e0)
        Dg = derivative_at_fixed_point(g, e0)
        assert derivative_at_fixed_point(compose(f, g), e0) == Df @ Dg


def test_chain_rule_at_shared_fixed_point_off_chart():
    g1, g2 = twoderivatives_gadget(2, 2), twoderivatives_gadget(5, 2)
    for p in (Point.of([0, 1, 0]), Point.of([0, 0, 1])):
        D = derivative_at_fixed_point(compose(g1, g2), p)
        assert D == derivative_at_fixed_point(g1, p) @ derivative_at_fixed_point(g2, p)
