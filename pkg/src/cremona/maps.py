"""Birational maps of P^n given by normalised tuples of forms with certified inverses."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    DegenerateComposition,
    DimensionMismatch,
    DomainMismatch,
    IndeterminateAtPoint,
    InvalidParameter,
    MissingInverse,
    NotFixed,
    ZeroTuple,
)
from .fields import QQ, FieldDescriptor, FieldScalar
from .gcd import multi_gcd
from .parsing import parse_matrix_rows, parse_point_text, parse_poly, split_map_text
from .polynomials import MultiPoly, divide_exact, poly_ring


class _Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    __str__ = __repr__


#: result of evaluating a map at one of its indeterminacy points
INDETERMINATE = _Sentinel("Indeterminate")
#: result of asking for the derivative where the Jacobian is not invertible
SINGULAR = _Sentinel("Singular")


# points ---------------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    """A point of P^n(k); coordinates are raw values scaled so the first nonzero one is 1."""

    field: FieldDescriptor
    coords: tuple

    @classmethod
    def of(cls, coords, field: FieldDescriptor = QQ) -> "Point":
        raw = [field.coerce(c) for c in coords]
        lead = next((c for c in raw if c), None)
        if lead is None:
            raise InvalidParameter("the zero vector is not a projective point")
        inv = field.inv(lead)
        return cls(field, tuple(field.mul(c, inv) for c in raw))

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor = QQ) -> "Point":
        return cls.of([field.parse_raw(s) for s in parse_point_text(text)], field)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def chart_index(self) -> int:
        return next(i for i, c in enumerate(self.coords) if c)

    def scalars(self):
        return [FieldScalar(self.field, c) for c in self.coords]

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def coordinate_point(n: int, i: int, field: FieldDescriptor = QQ) -> Point:
    return Point.of([1 if j == i else 0 for j in range(n + 1)], field)


# projective matrices ---------------------------------------------------------


class ProjMatrix:
    """An element of PGL_{n+1}(k), stored as its canonical lift (first nonzero entry 1)."""

    __slots__ = ("field", "rows")

    def __init__(self, rows, field: FieldDescriptor = QQ):
        raw = [[field.coerce(a) for a in r] for r in rows]
        m = len(raw)
        if m == 0 or any(len(r) != m for r in raw):
            raise InvalidParameter("a projective matrix must be square")
        if not linalg.det(field, raw):
            raise InvalidParameter("matrix is not invertible")
        lead = next(a for r in raw for a in r if a)
        inv = field.inv(lead)
        self.field = field
        self.rows = tuple(tuple(field.mul(a, inv) for a in r) for r in raw)

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor = QQ) -> "ProjMatrix":
        return cls([[field.parse_raw(e) for e in row] for row in parse_matrix_rows(text)], field)

    @classmethod
    def identity(cls, n: int, field: FieldDescriptor = QQ) -> "ProjMatrix":
        return cls(linalg.identity(field, n + 1), field)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    def lift(self):
        return [list(r) for r in self.rows]

    def det(self) -> FieldScalar:
        """Determinant of the canonical lift."""
        return FieldScalar(self.field, linalg.det(self.field, self.rows))

    def inverse(self) -> "ProjMatrix":
        return ProjMatrix(linalg.inverse(self.field, self.rows), self.field)

    def __matmul__(self, other: "ProjMatrix") -> "ProjMatrix":
        return ProjMatrix(linalg.matmul(self.field, self.rows, other.rows), self.field)

    def apply(self, p: Point) -> Point:
        return Point.of(linalg.matvec(self.field, self.rows, p.coords), self.field)

    def is_identity(self) -> bool:
        return linalg.is_scalar_multiple_of_identity(self.field, self.rows)

    def __eq__(self, other):
        return isinstance(other, ProjMatrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "; ".join(", ".join(str(a) for a in r) for r in self.rows)

    def __repr__(self):
        return f"ProjMatrix({self})"


# tuples ---------------------------------------------------------------------


def _linear_forms(ring, rows):
    gens = ring.gens()
    out = []
    for r in rows:
        terms = {}
        for a, x in zip(r, gens):
            if a:
                (m, _), = x.terms.items()
                terms[m] = a
        out.append(MultiPoly(ring, terms))
    return tuple(out)


def check_tuple(components):
    components = tuple(components)
    if not components:
        raise ZeroTuple("empty tuple")
    ring = components[0].ring
    if len(components) != ring.nvars:
        raise DimensionMismatch(f"{len(components)} components for {ring.nvars} variables")
    degs = set()
    for c in components:
        if c.ring is not ring:
            raise DomainMismatch("components live in different rings")
        degs |= c.x_degrees()
    if not degs:
        raise ZeroTuple("all components vanish")
    if len(degs) != 1:
        raise InvalidParameter("components are not homogeneous of one common degree")
    return components


def normalize_tuple(components):
    """Divide by the gcd of the components and make the first nonzero coefficient 1."""
    components = check_tuple(components)
    g = multi_gcd(components)
    if not g.is_constant():
        components = tuple(divide_exact(c, g) for c in components)
    first = next(c for c in components if c.terms)
    lc = first.leading_coefficient()
    if lc != 1:
        inv = first.field.inv(lc)
        components = tuple(c.scale(inv) for c in components)
    return components


def compose_tuples(F, G):
    """Raw composite F(G): substitute the components of G into those of F."""
    return tuple(f.substitute(G) for f in F)


def is_identity_tuple(C) -> bool:
    """True iff the tuple is proportional to (x0, ..., xn) by a nonzero polynomial."""
    ring = C[0].ring
    k = next((i for i, c in enumerate(C) if c.terms), None)
    if k is None:
        return False
    uk = ring.x_unit[k]
    ck = C[k]
    for i, ci in enumerate(C):
        if i == k:
            continue
        if ci.mul_monomial(uk).terms != ck.mul_monomial(ring.x_unit[i]).terms:
            return False
    return True


def format_tuple(components) -> str:
    return "[" + " : ".join(str(c) for c in components) + "]"


# maps -----------------------------------------------------------------------


class CremonaMap:
    """Projective class of a tuple of forms, optionally with a certified inverse tuple.

    Build maps with :func:`normalize`, :meth:`parse` or the constructors below;
    ``certified`` is only ever set after the inverse has been checked (or when
    both inputs of a composition were certified).
    """

    __slots__ = ("components", "inverse", "certified")

    def __init__(self, components, inverse=None, certified=False, _normalized=False):
        comps = tuple(components) if _normalized else normalize_tuple(components)
        if comps[0].ring.param:
            raise DomainMismatch("use Family for maps with t in their coefficients")
        inv = None
        if inverse is not None:
            inv = tuple(inverse) if _normalized else normalize_tuple(inverse)
            if inv[0].ring is not comps[0].ring:
                raise DomainMismatch("inverse lives in a different ring")
        self.components = comps
        self.inverse = inv
        self.certified = bool(certified) and inv is not None

    # basic data

    @property
    def ring(self):
        return self.components[0].ring

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, CremonaMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def same_as(self, other: "CremonaMap") -> bool:
        """Equality as elements of Bir(P^n) (canonical tuples agree)."""
        return self.components == other.components

    def is_identity(self) -> bool:
        return self.components == tuple(self.ring.gens())

    def is_linear(self) -> bool:
        return self.degree == 1

    def inverse_map(self) -> "CremonaMap":
        if self.inverse is None:
            raise MissingInverse("map carries no inverse")
        return CremonaMap(self.inverse, self.components, self.certified, _normalized=True)

    def certify(self) -> "CremonaMap":
        """Return the map with ``certified`` set when its inverse verifies."""
        ok = verify_certificate(self)
        return CremonaMap(self.components, self.inverse, ok, _normalized=True)

    def matrix(self) -> ProjMatrix:
        if self.degree != 1:
            raise InvalidParameter("map is not linear")
        ring = self.ring
        rows = [[c.terms.get(u, ring.field.zero) for u in ring.x_unit] for c in self.components]
        return ProjMatrix(rows, ring.field)

    # text

    def __str__(self):
        s = format_tuple(self.components)
        if self.inverse is not None:
            s += " ;; inverse=" + format_tuple(self.inverse)
        return s

    def __repr__(self):
        return f"CremonaMap({format_tuple(self.components)})"

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor = QQ, n: int | None = None, certify=True):
        comps, inv = split_map_text(text)
        if n is not None and len(comps) != n + 1:
            raise DimensionMismatch(f"expected {n + 1} components, got {len(comps)}")
        ring = poly_ring(field, len(comps), False)
        F = [parse_poly(c, ring) for c in comps]
        G = [parse_poly(c, ring) for c in inv] if inv is not None else None
        if G is not None and len(G) != len(F):
            raise DimensionMismatch("inverse has a different number of components")
        f = cls(F, G)
        return f.certify() if (certify and G is not None) else f

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "components": [str(c) for c in self.components],
            "inverse": None if self.inverse is None else [str(c) for c in self.inverse],
            "certified": self.certified,
        }


def normalize(components) -> CremonaMap:
    """Normalised, uncertified map from a raw tuple of forms."""
    return CremonaMap(components)


def compose(f: CremonaMap, g: CremonaMap) -> CremonaMap:
    """f o g (apply g first)."""
    if f.ring is not g.ring:
        if f.n != g.n:
            raise DimensionMismatch(f"P^{f.n} vs P^{g.n}")
        raise DomainMismatch("maps over different fields")
    raw = compose_tuples(f.components, g.components)
    if all(not c.terms for c in raw):
        raise DegenerateComposition("composite tuple vanishes identically")
    inv = None
    certified = False
    if f.inverse is not None and g.inverse is not None:
        inv_raw = compose_tuples(g.inverse, f.inverse)
        if any(c.terms for c in inv_raw):
            inv = normalize_tuple(inv_raw)
            certified = f.certified and g.certified
    return CremonaMap(normalize_tuple(raw), inv, certified, _normalized=True)


def compose_all(*maps: CremonaMap) -> CremonaMap:
    """maps[0] o maps[1] o ... (the last map is applied first)."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


def verify_certificate(f: CremonaMap) -> bool:
    """Check that both composites with the stored inverse are the identity."""
    if f.inverse is None:
        raise MissingInverse("no inverse to verify")
    if len(f.inverse) != len(f.components):
        return False
    return is_identity_tuple(compose_tuples(f.components, f.inverse)) and is_identity_tuple(
        compose_tuples(f.inverse, f.components)
    )


def evaluate(f: CremonaMap, p: Point):
    """Image of p, or :data:`INDETERMINATE`."""
    if p.n != f.n:
        raise DimensionMismatch("point and map live in different dimensions")
    vals = [c.evaluate(p.coords) for c in f.components]
    if not any(vals):
        return INDETERMINATE
    return Point.of(vals, f.field)


def evaluate_tuple(components, p: Point):
    vals = [c.evaluate(p.coords) for c in components]
    if not any(vals):
        return INDETERMINATE
    return Point.of(vals, p.field)


# charts and derivatives ----------------------------------------------------------


def chart_matrix(p: Point) -> ProjMatrix:
    """A matrix beta with beta(p) = [1:0:...:0].

    The first nonzero coordinate of p is swapped into position 0; if p is not a
    coordinate point, a unipotent translation then clears the other
    coordinates.
    """
    field = p.field
    m = len(p.coords)
    c = p.chart_index()
    perm = linalg.identity(field, m)
    perm[0], perm[c] = perm[c], perm[0]
    q = linalg.matvec(field, perm, p.coords)
    trans = linalg.identity(field, m)
    inv0 = field.inv(q[0])
    for i in range(1, m):
        if q[i]:
            trans[i][0] = field.neg(field.mul(q[i], inv0))
    return ProjMatrix(linalg.matmul(field, trans, perm), field)


def linear(M: ProjMatrix) -> CremonaMap:
    ring = poly_ring(M.field, M.size, False)
    comps = normalize_tuple(_linear_forms(ring, M.rows))
    inv = normalize_tuple(_linear_forms(ring, linalg.inverse(M.field, M.rows)))
    return CremonaMap(comps, inv, True, _normalized=True)


def conjugate_by_linear(f: CremonaMap, beta: ProjMatrix) -> CremonaMap:
    """beta o f o beta^-1."""
    b = linear(beta)
    return compose(compose(b, f), b.inverse_map())


def derivative_at_fixed_point(f: CremonaMap, p: Point):
    """Projective linear map with the same derivative as f at the fixed point p.

    Returns :data:`SINGULAR` when the chart Jacobian is not invertible.
    """
    image = evaluate(f, p)
    if image is INDETERMINATE:
        raise IndeterminateAtPoint(f"{p} is an indeterminacy point")
    if image != p:
        raise NotFixed(f"{p} is sent to {image}")
    beta = chart_matrix(p)
    g = conjugate_by_linear(f, beta) if not beta.is_identity() else f
    field = f.field
    ring = g.ring
    d = g.degree
    u0 = ring.x_unit[0]
    top = d * u0
    c0 = g.components[0].terms.get(top)
    assert c0, "conjugated map must not vanish at [1:0:...:0]"
    m = len(p.coords)
    inv_c0 = field.inv(c0)
    jac = [[field.zero] * m for _ in range(m)]
    jac[0][0] = field.one
    for i in range(1, m):
        comp = g.components[i].terms
        for j in range(1, m):
            a = comp.get((d - 1) * u0 + ring.x_unit[j])
            if a:
                jac[i][j] = field.mul(a, inv_c0)
    if not linalg.det(field, jac):
        return SINGULAR
    D = ProjMatrix(jac, field)
    return beta.inverse() @ D @ beta


def _chart_jacobian_det(components, p: Point, q: Point):
    """Determinant of the affine Jacobian of the tuple at p, in the charts of p and q."""
    field = p.field
    c = p.chart_index()
    e = q.chart_index()
    vals = [comp.evaluate(p.coords) for comp in components]
    m = len(components)
    grads = [[comp.diff(j).evaluate(p.coords) for j in range(m)] for comp in components]
    Fe = vals[e]
    rows = []
    for k in range(m):
        if k == e:
            continue
        row = []
        for j in range(m):
            if j == c:
                continue
            row.append(field.sub(field.mul(grads[k][j], Fe), field.mul(vals[k], grads[e][j])))
        rows.append(row)
    if not rows:
        return field.one
    return linalg.det(field, rows)


def is_local_iso_at(f: CremonaMap, p: Point) -> bool:
    """Whether the certified map f restricts to an isomorphism near p."""
    if f.inverse is None:
        raise MissingInverse("local isomorphism test needs the inverse")
    q = evaluate(f, p)
    if q is INDETERMINATE:
        return False
    back = evaluate_tuple(f.inverse, q)
    if back is INDETERMINATE or back != p:
        return False
    return bool(_chart_jacobian_det(f.components, p, q))


# named constructions -------------------------------------------------------------


def identity(n: int, field: FieldDescriptor = QQ) -> CremonaMap:
    gens = tuple(poly_ring(field, n + 1, False).gens())
    return CremonaMap(gens, gens, True, _normalized=True)


def standard_involution(n: int = 2, field: FieldDescriptor = QQ) -> CremonaMap:
    """[prod_{j != i} x_j]_i, the standard involution of degree n."""
    if n < 1:
        raise InvalidParameter("n must be at least 1")
    ring = poly_ring(field, n + 1, False)
    comps = []
    for i in range(n + 1):
        comps.append(ring.monomial([0 if j == i else 1 for j in range(n + 1)]))
    comps = normalize_tuple(comps)
    return CremonaMap(comps, comps, True, _normalized=True).certify()


def scaling_g_a(a, n: int = 3, field: FieldDescriptor = QQ) -> CremonaMap:
    """[x0 : a x1 : x2/a : x3 : ... : xn]."""
    if n < 3:
        raise InvalidParameter("g_a is defined for n >= 3")
    a = field.coerce(a)
    if not a:
        raise InvalidParameter("a must be nonzero")
    diag = [field.one] * (n + 1)
    diag[1] = a
    diag[2] = field.inv(a)
    rows = [[diag[i] if i == j else field.zero for j in range(n + 1)] for i in range(n + 1)]
    return linear(ProjMatrix(rows, field))


def dejonquieres_h(n: int = 3, field: FieldDescriptor = QQ) -> CremonaMap:
    """[x0 : x1 : x2 x1/x0 : x3 : ...] homogenised, with its quadratic inverse."""
    if n < 3:
        raise InvalidParameter("h is defined for n >= 3")
    ring = poly_ring(field, n + 1, False)
    x = ring.gens()
    comps = [x[0] * x[0], x[0] * x[1], x[1] * x[2]] + [x[0] * x[i] for i in range(3, n + 1)]
    inv = [x[0] * x[1], x[1] * x[1], x[0] * x[2]] + [x[1] * x[i] for i in range(3, n + 1)]
    return CremonaMap(comps, inv).certify()


def twoderivatives_gadget(lam, n: int = 2, field: FieldDescriptor = QQ) -> CremonaMap:
    """The map x0 -> (x0 (x1 + lam x2) + x1 x2) / (x1 + x2), other coordinates fixed.

    It fixes [0:1:0:...] and [0:0:1:0:...]; its inverse solves the x0 equation.
    """
    if n < 2:
        raise InvalidParameter("the gadget needs n >= 2")
    lam = field.coerce(lam)
    if not lam:
        raise InvalidParameter("lambda must be nonzero")
    ring = poly_ring(field, n + 1, False)
    x = ring.gens()
    s = x[1] + x[2]
    comps = [x[0] * (x[1] + x[2].scale(lam)) + x[1] * x[2]] + [x[i] * s for i in range(1, n + 1)]
    s_inv = x[1] + x[2].scale(lam)
    inv = [x[0] * s - x[1] * x[2]] + [x[i] * s_inv for i in range(1, n + 1)]
    f = CremonaMap(comps, inv).certify()
    if not f.certified:
        raise InvalidParameter("gadget inverse failed to verify")
    return f


def parse_map(text: str, field: FieldDescriptor = QQ, n: int | None = None) -> CremonaMap:
    return CremonaMap.parse(text, field, n)


def parse_point(text: str, field: FieldDescriptor = QQ) -> Point:
    return Point.parse(text, field)
