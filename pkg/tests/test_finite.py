from itertools import product

import pytest

from cremona.errors import UnsupportedFieldSize
from cremona.finite import (
    SUPPORTED_ORDERS,
    conjugacy_class,
    is_simple,
    normal_closure,
    pgl2_enumerate,
    small_field,
)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_small_field_axioms(q):
    F = small_field(q)
    els = range(q)
    for a, b in product(els, els):
        assert F.add[a][b] == F.add[b][a] and F.mul[a][b] == F.mul[b][a]
    for a, b, c in product(els, els, els):
        assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
        assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]
    for a in range(1, q):
        assert F.mul[a][F.inv(a)] == 1
    # the multiplicative group is cyclic of order q-1
    orders = []
    for a in range(1, q):
        x, k = a, 1
        while x != 1:
            x, k = F.mul[x][a], k + 1
        orders.append(k)
    assert max(orders) == q - 1


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_pgl2_order_and_table(q):
    G = pgl2_enumerate(q)
    assert G.order == q**3 - q
    assert G.closed() and G.spot_check_associative()
    assert all(G.mul(i, G.inverses[i]) == G.identity for i in range(G.order))


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_pgl_equals_psl_iff_char_two(q):
    G = pgl2_enumerate(q)
    assert G.pgl_equals_psl == (q in (2, 4, 8))
    if not G.pgl_equals_psl:
        assert 2 * len(G.psl) == G.order


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_simplicity(q):
    assert is_simple(pgl2_enumerate(q)) == (q in (4, 8))


def test_small_examples():
    assert pgl2_enumerate(2).order == 6
    assert pgl2_enumerate(4).order == 60
    assert pgl2_enumerate(5).order == 120


def test_psl_is_normal_in_pgl3():
    G = pgl2_enumerate(3)
    x = next(i for i in G.psl if i != G.identity)
    assert normal_closure(G, x) <= G.psl
    for i in G.psl:
        assert conjugacy_class(G, i) <= G.psl


def test_unsupported_order():
    for q in (6, 11, 16):
        with pytest.raises(UnsupportedFieldSize):
            pgl2_enumerate(q)
