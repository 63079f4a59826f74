"""Explicit families joining two Cremona maps over Q."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd

from . import linalg
from .errors import (
    DimensionMismatch,
    InvalidParameter,
    MissingInverse,
    NoSuitableAlpha,
    NotLocalIso,
    SearchExhausted,
    UnsupportedField,
)
from .families import (
    Family,
    conj_limit,
    constant_family,
    family_inverse,
    family_product,
    identity_family,
    product_of,
    specialize,
)
from .fields import QQ
from .lingroup import det_class, psl_path, transvection_to_point
from .maps import (
    INDETERMINATE,
    SINGULAR,
    CremonaMap,
    Point,
    ProjMatrix,
    compose,
    compose_all,
    coordinate_point,
    derivative_at_fixed_point,
    evaluate,
    is_local_iso_at,
    linear,
    twoderivatives_gadget,
)

DEFAULT_HEIGHT_BOUND = 64


# point search ---------------------------------------------------------------------


def _value_order(h):
    """0, 1, -1, 2, -2, ..., h, -h."""
    out = [0]
    for k in range(1, h + 1):
        out += [k, -k]
    return out


def height_batches(bound: int):
    """(lo, hi] ranges: [0,1], (1,2], (2,4], ... capped at bound."""
    lo, hi = 0, 1
    while lo < bound:
        hi = min(hi, bound)
        yield lo, hi
        lo, hi = hi, hi * 2


def enumerate_points(n: int, bound: int = DEFAULT_HEIGHT_BOUND):
    """Primitive integer points of P^n, first nonzero coordinate positive.

    Batches of growing height; inside a batch the order is by the position of
    the first nonzero coordinate, then lexicographic with values ordered
    0, 1, -1, 2, -2, ...
    """
    for lo, hi in height_batches(bound):
        vals = _value_order(hi)
        for k in range(n + 1):
            for lead in range(1, hi + 1):
                for rest in itertools.product(vals, repeat=n - k):
                    v = (0,) * k + (lead,) + rest
                    h = max(abs(x) for x in v)
                    if not lo < h <= hi and not (lo == 0 and h <= hi):
                        continue
                    g = 0
                    for x in v:
                        g = gcd(g, x)
                    if g == 1:
                        yield v


def find_local_iso_point(g: CremonaMap, height_bound: int = DEFAULT_HEIGHT_BOUND) -> Point:
    if not g.field.is_rational:
        raise UnsupportedField("point search runs over Q only")
    if g.inverse is None:
        raise MissingInverse("point search needs a certified map")
    for v in enumerate_points(g.n, height_bound):
        p = Point.of(v, g.field)
        if is_local_iso_at(g, p):
            return p
    raise SearchExhausted(f"no point of height <= {height_bound} works")


# commutators ----------------------------------------------------------------------


def _frame_matrix(p: Point, q: Point) -> ProjMatrix:
    """A matrix sending p to e0 and (when q != p) q to e1."""
    field = p.field
    m = len(p.coords)
    cols = [list(p.coords)]
    if q != p:
        cols.append(list(q.coords))
    for k in range(m):
        cand = cols + [[field.one if i == k else field.zero for i in range(m)]]
        if len(cand) > m:
            break
        # keep e_k when it stays independent of the columns so far
        if _rank(field, cand) == len(cand):
            cols = cand
    B = [[cols[c][r] for c in range(m)] for r in range(m)]
    return ProjMatrix(linalg.inverse(field, B), field)


def _rank(field, vectors):
    M = [list(v) for v in vectors]
    rank = 0
    cols = len(M[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = field.inv(M[rank][c])
        for r in range(len(M)):
            if r != rank and M[r][c]:
                fct = field.mul(M[r][c], inv)
                M[r] = [field.sub(a, field.mul(fct, b)) for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _scalar_tangent_action(D: ProjMatrix, beta: ProjMatrix) -> bool:
    """D fixes beta^-1(e0); test whether it acts on the tangent space there as a scalar."""
    field = D.field
    M = (beta @ D @ beta.inverse()).rows
    m = len(M)
    c = M[1][1]
    return all(M[i][j] == (c if i == j else field.zero) for i in range(1, m) for j in range(1, m))


@dataclass(frozen=True)
class CommutatorResult:
    alpha: ProjMatrix
    g: CremonaMap
    derivative: ProjMatrix
    generator: tuple  # (i, j, lam) in the adapted frame, 0-based indices


def commutator_fixer(f: CremonaMap, p: Point, max_param: int = 20) -> CommutatorResult:
    """alpha in PSL fixing p and f(p) with g = alpha^-1 f^-1 alpha f having D_p(g) != I."""
    if f.inverse is None:
        raise MissingInverse("commutator_fixer needs a certified map")
    if f.is_identity():
        raise InvalidParameter("f must be nontrivial")
    if not is_local_iso_at(f, p):
        raise NotLocalIso(f"f is not a local isomorphism at {p}")
    field = f.field
    q = evaluate(f, p)
    beta = _frame_matrix(p, q)
    beta_inv = beta.inverse()
    m = f.n + 1
    if q == p and _scalar_tangent_action(derivative_at_fixed_point(f, p), beta):
        # every alpha fixing p commutes with a scalar, so D_p(g) = I whatever alpha is
        raise NoSuitableAlpha(f"the derivative of f at {p} is scalar; no commutator can be nontrivial")
    jmin = 1 if q == p else 2
    finv = f.inverse_map()
    for i in range(m):
        for j in range(jmin, m):
            if i == j:
                continue
            for lam in range(1, max_param + 1):
                E = linalg.identity(field, m)
                E[i][j] = field.coerce(lam)
                alpha = beta_inv @ ProjMatrix(E, field) @ beta
                a = linear(alpha)
                g = compose_all(a.inverse_map(), finv, a, f)
                if evaluate(g, p) != p or not is_local_iso_at(g, p):
                    continue
                D = derivative_at_fixed_point(g, p)
                if D is SINGULAR or D.is_identity():
                    continue
                return CommutatorResult(alpha, g, D, (i, j, lam))
    raise NoSuitableAlpha(f"no transvection parameter up to {max_param} works")


# plans ----------------------------------------------------------------------------

LINEAR_PSL = "LinearPSLSegment"
GADGET = "DetClassGadgetSegment"
CONJ_LIMIT = "ConjLimitSegment"
CONSTANT = "ConstantConjugation"


@dataclass(frozen=True)
class PathStep:
    kind: str
    inputs: dict
    family: Family

    def to_dict(self):
        return {
            "kind": self.kind,
            "inputs": self.inputs,
            "x_degree": self.family.x_degree,
            "t_degree": self.family.t_degree,
        }


@dataclass
class PathPlan:
    """Ordered steps; the family is their pointwise product, first step outermost."""

    n: int
    steps: list = dc_field(default_factory=list)

    def add(self, kind, inputs, family):
        self.steps.append(PathStep(kind, inputs, family))

    def extend(self, other: "PathPlan"):
        self.steps.extend(other.steps)

    def to_dict(self):
        return {"steps": [s.to_dict() for s in self.steps]}


def replay(plan: PathPlan) -> Family:
    """Recompute the product of the recorded step families."""
    if not plan.steps:
        return identity_family(plan.n)
    return product_of(*[s.family for s in plan.steps])


def _raw(M):
    return [list(r) for r in M.rows]


def _scaled(field, M, c):
    return [[field.mul(a, c) for a in r] for r in M]


def _psl_segment(field, A, B):
    return psl_path(A, B, field).family


def connect_linear_plan(h: ProjMatrix) -> PathPlan:
    field = h.field
    m = h.size
    n = m - 1
    plan = PathPlan(n)
    ident = linalg.identity(field, m)
    cls = det_class(h)
    if cls.in_psl:
        H = _scaled(field, _raw(h), field.inv(cls.root.value))
        plan.add(LINEAR_PSL, {"target": str(h)}, _psl_segment(field, ident, H))
        return plan
    if n < 2:
        raise InvalidParameter("the determinant gadget needs n >= 2")
    lam = cls.witness.value
    gadget = twoderivatives_gadget(lam, n, field)
    rho1 = conj_limit(gadget, coordinate_point(n, 1, field))
    rho2 = conj_limit(gadget, coordinate_point(n, 2, field))
    r1 = specialize(rho1, 0)
    r2 = specialize(rho2, 0)
    A = family_product(rho1, constant_family(r1.inverse_map()))
    B = family_product(rho2, constant_family(r2.inverse_map()))
    C = family_product(family_inverse(A), B)
    to_r1 = _psl_segment(field, ident, _raw(r1.matrix()))
    D = family_product(family_inverse(C), to_r1)
    plan.add(GADGET, {"lambda": field.format(lam), "target": str(r2.matrix())}, D)
    # remainder rho2(0)^-1 h has determinant 1 with these lifts
    R = linalg.identity(field, m)
    R[0][0] = lam
    R[0][1] = field.one
    rest = linalg.matmul(field, linalg.inverse(field, R), _raw(h))
    plan.add(LINEAR_PSL, {"target": str(ProjMatrix(rest, field))}, _psl_segment(field, ident, rest))
    return plan


def connect_linear(h: ProjMatrix) -> Family:
    """Family from the identity (t=0) to the linear map h (t=1)."""
    return replay(connect_linear_plan(h))


@dataclass(frozen=True)
class Connection:
    family: Family
    plan: PathPlan
    point: Point | None = None


def connect(f: CremonaMap, g: CremonaMap, height_bound: int = DEFAULT_HEIGHT_BOUND) -> Connection:
    """A family nu over Q with nu(0) = f and nu(1) = g."""
    if f.n != g.n:
        raise DimensionMismatch(f"P^{f.n} vs P^{g.n}")
    if not f.field.is_rational or not g.field.is_rational:
        raise UnsupportedField("connect needs an infinite field; only Q is supported")
    if f.n < 2:
        raise InvalidParameter("connect needs n >= 2")
    if f.inverse is None or g.inverse is None:
        raise MissingInverse("connect needs certified maps")
    n = f.n
    field = f.field
    h = compose(g, f.inverse_map())
    plan = PathPlan(n)
    if h.is_linear():
        plan.extend(connect_linear_plan(h.matrix()))
        plan.add(CONSTANT, {"map": str(f)}, constant_family(f))
        return Connection(replay(plan), plan)

    p = find_local_iso_point(h, height_bound)
    hp = evaluate(h, p)
    word = transvection_to_point(hp, p)
    alpha = ProjMatrix(word.product(), field) if len(word) else ProjMatrix.identity(n, field)
    ah = compose(linear(alpha), h)
    rho = conj_limit(ah, p)
    r0 = specialize(rho, 0)
    P1 = family_product(rho, constant_family(r0.inverse_map()))

    plan.extend(connect_linear_plan(alpha.inverse()))
    plan.add(CONJ_LIMIT, {"point": str(p), "alpha": str(alpha)}, P1)
    plan.extend(connect_linear_plan(r0.matrix()))
    plan.add(CONSTANT, {"map": str(f)}, constant_family(f))
    return Connection(replay(plan), plan, p)
