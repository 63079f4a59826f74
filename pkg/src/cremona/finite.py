"""PGL_2 over the fields with q <= 9 elements, as explicit multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import UnsupportedFieldSize

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# q -> (p, k, modulus coefficients low degree first, monic of degree k)
_EXTENSIONS = {
    4: (2, 2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),  # x^2 + 1
}


@dataclass(frozen=True)
class SmallField:
    """F_q with elements 0..q-1 (base-p digit vectors) and full operation tables."""

    q: int
    p: int
    add: tuple
    mul: tuple

    @property
    def elements(self):
        return range(self.q)

    def neg(self, a):
        return next(b for b in range(self.q) if self.add[a][b] == 0)

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul[a][b] == 1)

    def sub(self, a, b):
        return self.add[a][self.neg(b)]


@lru_cache(maxsize=None)
def small_field(q: int) -> SmallField:
    if q not in SUPPORTED_ORDERS:
        raise UnsupportedFieldSize(f"q={q} is not one of {SUPPORTED_ORDERS}")
    if q not in _EXTENSIONS:
        add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
        return SmallField(q, q, add, mul)
    p, k, modulus = _EXTENSIONS[q]

    def digits(a):
        return [(a // p**i) % p for i in range(k)]

    def pack(v):
        return sum(c * p**i for i, c in enumerate(v))

    def polymul(u, v):
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                prod[i + j] = (prod[i + j] + a * b) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i, mc in enumerate(modulus):
                    prod[d - k + i] = (prod[d - k + i] - c * mc) % p
        return prod[:k]

    add = tuple(tuple(pack([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)) for a in range(q))
    mul = tuple(tuple(pack(polymul(digits(a), digits(b))) for b in range(q)) for a in range(q))
    return SmallField(q, p, add, mul)


@dataclass(frozen=True)
class FiniteGroupTable:
    """Elements (canonical 2x2 matrices a,b,c,d) with index-based multiplication."""

    q: int
    elements: tuple
    table: tuple
    identity: int
    inverses: tuple
    psl: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def closed(self) -> bool:
        n = self.order
        return all(0 <= x < n for row in self.table for x in row)

    def spot_check_associative(self, samples: int = 500) -> bool:
        import random

        rng = random.Random(self.q)
        n = self.order
        for _ in range(samples):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                return False
        return True

    @property
    def pgl_equals_psl(self) -> bool:
        return len(self.psl) == self.order


def _canonical(F: SmallField, m):
    lead = next(x for x in m if x)
    inv = F.inv(lead)
    return tuple(F.mul[x][inv] for x in m)


def pgl2_enumerate(q: int) -> FiniteGroupTable:
    F = small_field(q)
    mul, add = F.mul, F.add
    elems = []
    for m in product(range(q), repeat=4):
        a, b, c, d = m
        det = F.sub(mul[a][d], mul[b][c])
        if det and next(x for x in m if x) == 1:
            elems.append(m)
    index = {m: i for i, m in enumerate(elems)}

    def matmul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return (
            add[mul[a][e]][mul[b][g]],
            add[mul[a][f]][mul[b][h]],
            add[mul[c][e]][mul[d][g]],
            add[mul[c][f]][mul[d][h]],
        )

    table = tuple(tuple(index[_canonical(F, matmul(x, y))] for y in elems) for x in elems)
    ident = index[(1, 0, 0, 1)]
    inverses = tuple(row.index(ident) for row in table)
    squares = {mul[x][x] for x in range(1, q)}
    psl = frozenset(i for i, (a, b, c, d) in enumerate(elems) if F.sub(mul[a][d], mul[b][c]) in squares)
    return FiniteGroupTable(q, tuple(elems), table, ident, inverses, psl)


def conjugacy_class(G: FiniteGroupTable, x: int) -> frozenset:
    T, inv = G.table, G.inverses
    return frozenset(T[T[inv[g]][x]][g] for g in range(G.order))


def generated_subgroup(G: FiniteGroupTable, gens) -> frozenset:
    T = G.table
    seen = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            row = T[a]
            for g in gens:
                b = row[g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def normal_closure(G: FiniteGroupTable, x: int) -> frozenset:
    return generated_subgroup(G, conjugacy_class(G, x))


def is_simple(G: FiniteGroupTable) -> bool:
    """Every non-identity element has the whole group as normal closure."""
    if G.order == 1:
        return False
    done = set()
    for x in range(G.order):
        if x == G.identity or x in done:
            continue
        cls = conjugacy_class(G, x)
        done |= cls
        if len(generated_subgroup(G, cls)) != G.order:
            return False
    return True
