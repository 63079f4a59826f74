import random

import pytest
from gmpy2 import mpq

from cremona import linalg
from cremona.errors import DeterminantNotOne, SizeMismatch
from cremona.families import specialize, verify_family
from cremona.fields import QQ, FieldScalar, nth_power_class, prime_field
from cremona.lingroup import (
    Transvection,
    TransvectionWord,
    det_class,
    diagonal_block,
    psl_path,
    sl_decompose,
    t_matrix_det,
    transvection_to_point,
    word_length_bound,
)
from cremona.maps import Point, ProjMatrix, linear

from builders import random_invertible, random_sl


def I(m):
    return linalg.identity(QQ, m)


def diag(*entries):
    m = len(entries)
    return [[mpq(entries[i]) if i == j else mpq(0) for j in range(m)] for i in range(m)]


def test_word_length_values():
    assert [word_length_bound(m) for m in (2, 3, 4)] == [6, 14, 24]


@pytest.mark.parametrize("lam", [2, 3, -1, mpq(1, 2)])
def test_four_factor_identity(lam):
    lam = mpq(lam)
    block = diagonal_block(2, 1, 2, lam)
    assert [tv.triple() for tv in block] == [
        (1, 2, FieldScalar(QQ, lam - 1)),
        (2, 1, FieldScalar(QQ, 1)),
        (1, 2, FieldScalar(QQ, 1 / lam - 1)),
        (2, 1, FieldScalar(QQ, -lam)),
    ]
    assert TransvectionWord(2, block).product() == diag(lam, 1 / lam)


def test_decompose_identity_is_padding():
    for m in (2, 3, 4):
        w = sl_decompose(I(m))
        assert len(w) == word_length_bound(m)
        assert all(tv.lam == 0 for tv in w.factors)


def test_decompose_diagonal_uses_block():
    w = sl_decompose(diag(3, mpq(1, 3)))
    nonzero = [tv for tv in w.factors if tv.lam]
    assert [tv.triple() for tv in nonzero] == [tv.triple() for tv in diagonal_block(2, 1, 2, mpq(3))]


def test_decompose_small_example():
    M = [[mpq(2), mpq(1)], [mpq(1), mpq(1)]]
    w = sl_decompose(M)
    assert w.product() == M and len(w) == 6


def test_decompose_rejects_bad_det():
    with pytest.raises(DeterminantNotOne):
        sl_decompose(diag(2, 1))


def test_decompose_roundtrip_random():
    rng = random.Random(50)
    for m in (2, 3, 4):
        for _ in range(60):
            M = random_sl(rng, m)
            w = sl_decompose(M)
            assert w.product() == M and len(w) == word_length_bound(m)


def test_decompose_over_prime_field():
    F = prime_field(7)
    M = [[2, 3, 0], [1, 4, 1], [0, 0, 1]]
    d = linalg.det(F, M)
    M[0] = [F.mul(a, F.inv(d)) for a in M[0]]
    w = sl_decompose(M, F)
    assert w.product() == M


def test_transvection_matrix_and_inverse():
    tv = Transvection(3, 1, 3, mpq(5))
    prod = linalg.matmul(QQ, tv.matrix(), tv.inverse().matrix())
    assert prod == I(3)


def test_psl_path_examples():
    assert psl_path(I(3), I(3)).family == linear_family_of(I(3))
    B = I(3)
    B[0][1] = mpq(1)
    path = psl_path(I(3), B)
    assert str(path.family).split(" ;; ")[0] == "[x0 + x1*t : x1 : x2]"


def linear_family_of(M):
    from cremona.families import constant_family

    return constant_family(linear(ProjMatrix(M)))


def test_psl_path_random_endpoints_and_det():
    rng = random.Random(51)
    for m in (2, 3):
        for _ in range(10):
            A, B = random_sl(rng, m, 4), random_sl(rng, m, 4)
            path = psl_path(A, B)
            assert specialize(path.family, 0) == linear(ProjMatrix(A))
            assert specialize(path.family, 1) == linear(ProjMatrix(B))
            one = path.t_matrix[0][0].ring.one()
            assert t_matrix_det(path.t_matrix) == one
            assert verify_family(path.family).all_ok


def test_psl_path_errors():
    with pytest.raises(SizeMismatch):
        psl_path(I(2), I(3))
    with pytest.raises(DeterminantNotOne):
        psl_path(I(2), diag(1, 2))


def test_det_class_examples():
    assert det_class(ProjMatrix(I(3))).in_psl
    cls = det_class(ProjMatrix(diag(8, 1, 1)))
    # canonical lift is diag(1, 1/8, 1/8)
    assert cls.in_psl and cls.root**3 == cls.witness == FieldScalar(QQ, mpq(1, 64))
    assert not det_class(ProjMatrix(diag(2, 1))).in_psl


def test_det_class_scale_invariant_and_multiplicative():
    rng = random.Random(52)
    for m in (2, 3):
        for _ in range(40):
            P = ProjMatrix(random_invertible(rng, m))
            Q = ProjMatrix(random_invertible(rng, m))
            c = mpq(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice([1, -1])
            scaled = ProjMatrix([[c * a for a in r] for r in P.lift()])
            assert det_class(scaled).in_psl == det_class(P).in_psl
            wp, wq = det_class(P).witness, det_class(Q).witness
            expected, _ = nth_power_class(wp * wq, m)
            assert det_class(P @ Q).in_psl == expected


def test_transvection_to_point_examples():
    p = Point.of([1, 0, 0])
    assert len(transvection_to_point(p, p)) == 0
    w = transvection_to_point(Point.of([1, 0, 0]), Point.of([1, 1, 0]))
    assert (2, 1, FieldScalar(QQ, 1)) in w.triples()


def test_transvection_to_point_random():
    rng = random.Random(53)
    for n in (1, 2, 3):
        for _ in range(100):
            cq = [rng.randint(-3, 3) for _ in range(n + 1)]
            cp = [rng.randint(-3, 3) for _ in range(n + 1)]
            if not any(cq) or not any(cp):
                continue
            q, p = Point.of(cq), Point.of(cp)
            w = transvection_to_point(q, p)
            assert len(w) <= 2 * (n + 1)
            assert ProjMatrix(w.product()).apply(q) == p
