"""One-parameter families of Cremona maps: tuples of forms with coefficients in k[t]."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    CremonaError,
    DegenerateSpecialization,
    DimensionMismatch,
    DomainMismatch,
    MissingInverse,
    NotFixed,
    NotLocalIso,
)
from .fields import QQ, FieldDescriptor, FieldScalar
from .maps import (
    INDETERMINATE,
    CremonaMap,
    Point,
    ProjMatrix,
    chart_matrix,
    compose,
    compose_tuples,
    conjugate_by_linear,
    evaluate,
    format_tuple,
    is_identity_tuple,
    is_local_iso_at,
    linear,
    normalize_tuple,
    verify_certificate,
)
from .parsing import parse_poly, split_map_text
from .polynomials import poly_ring


class Family:
    """A map over k[t]: ``components`` and ``inverse`` are tuples in a parameter ring.

    ``sample_checked`` lists the t-values at which the specialised pair has
    been verified as mutually inverse.  Products remember their leaf factors
    (``factors``), which lets a specialisation be certified factor by factor.
    """

    __slots__ = ("components", "inverse", "sample_checked", "factors")

    def __init__(self, components, inverse, sample_checked=(), _normalized=False, factors=None):
        comps = tuple(c.promote() for c in components)
        inv = tuple(c.promote() for c in inverse)
        if not _normalized:
            comps = normalize_tuple(comps)
            inv = normalize_tuple(inv)
        if comps[0].ring is not inv[0].ring:
            raise DomainMismatch("family and inverse live in different rings")
        self.components = comps
        self.inverse = inv
        self.sample_checked = tuple(sample_checked)
        self.factors = tuple(factors) if factors else None

    def leaves(self):
        return self.factors or (self,)

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
    def x_degree(self) -> int:
        return max(c.degree() for c in self.components)

    @property
    def t_degree(self) -> int:
        return max(c.t_degree() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, Family) and self.components == other.components and self.inverse == other.inverse

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return format_tuple(self.components) + " ;; inverse=" + format_tuple(self.inverse)

    def __repr__(self):
        return f"Family(x-degree {self.x_degree}, t-degree {self.t_degree})"

    def with_samples(self, samples) -> "Family":
        merged = list(self.sample_checked)
        for s in samples:
            if s not in merged:
                merged.append(s)
        return Family(self.components, self.inverse, merged, _normalized=True, factors=self.factors)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "components": [str(c) for c in self.components],
            "inverse": [str(c) for c in self.inverse],
            "x_degree": self.x_degree,
            "t_degree": self.t_degree,
            "sample_checked": [str(s) for s in self.sample_checked],
        }

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor = QQ, n: int | None = None) -> "Family":
        comps, inv = split_map_text(text)
        if inv is None:
            raise MissingInverse("a family needs an ';; inverse=[...]' clause")
        if n is not None and len(comps) != n + 1:
            raise DimensionMismatch(f"expected {n + 1} components, got {len(comps)}")
        if len(inv) != len(comps):
            raise DimensionMismatch("inverse has a different number of components")
        ring = poly_ring(field, len(comps), True)
        return cls([parse_poly(c, ring) for c in comps], [parse_poly(c, ring) for c in inv])


def constant_family(f: CremonaMap) -> Family:
    if f.inverse is None:
        raise MissingInverse("constant family needs the inverse of its map")
    return Family(f.components, f.inverse, _normalized=True)


def identity_family(n: int, field: FieldDescriptor = QQ) -> Family:
    gens = tuple(poly_ring(field, n + 1, True).gens())
    return Family(gens, gens, _normalized=True)


def _specialize_tuple(components, a):
    vals = tuple(c.specialize_t(a) for c in components)
    if all(not v.terms for v in vals):
        return None
    return normalize_tuple(vals)


# Above this product of degrees the two composites are not expanded; a
# product family is then certified through its factors instead.
DIRECT_DEGREE_LIMIT = 16


def specialize(nu: Family, a, verify: bool = True) -> CremonaMap:
    """The map nu(a), carrying the specialised inverse (checked unless ``verify`` is off)."""
    return _specialize(nu, a, verify)[0]


def _specialize(nu: Family, a, verify: bool):
    field = nu.field
    a = field.coerce(a)
    comps = _specialize_tuple(nu.components, a)
    inv = _specialize_tuple(nu.inverse, a)
    if comps is None or inv is None:
        raise DegenerateSpecialization(f"all components vanish at t={field.format(a)}")
    f = CremonaMap(comps, inv, False, _normalized=True)
    if not verify:
        return f, None
    big = f.degree * max(c.degree() for c in inv) > DIRECT_DEGREE_LIMIT
    if big and nu.factors:
        method = "factors"
        ok = _chain_matches(nu.factors, a, comps, inv)
    else:
        method = "direct"
        ok = verify_certificate(f)
    if not ok:
        raise DegenerateSpecialization(f"inverse fails to verify at t={field.format(a)}")
    return CremonaMap(comps, inv, True, _normalized=True), method


def _chain_matches(factors, a, comps, inv) -> bool:
    """nu(a) and its inverse equal the composite of the certified factor specialisations."""
    maps = [specialize(leaf, a) for leaf in factors]
    composite = maps[-1]
    for f in reversed(maps[:-1]):
        composite = compose(f, composite)
    return composite.certified and composite.components == comps and composite.inverse == inv


def family_product(nu1: Family, nu2: Family) -> Family:
    """Pointwise composite: (nu1 * nu2)(a) = nu1(a) o nu2(a)."""
    if nu1.n != nu2.n:
        raise DimensionMismatch(f"P^{nu1.n} vs P^{nu2.n}")
    if nu1.ring is not nu2.ring:
        raise DomainMismatch("families over different fields")
    comps = normalize_tuple(compose_tuples(nu1.components, nu2.components))
    inv = normalize_tuple(compose_tuples(nu2.inverse, nu1.inverse))
    return Family(comps, inv, _normalized=True, factors=nu1.leaves() + nu2.leaves())


def product_of(*families: Family) -> Family:
    out = families[-1]
    for nu in reversed(families[:-1]):
        out = family_product(nu, out)
    return out


def family_inverse(nu: Family) -> Family:
    factors = None
    if nu.factors:
        factors = tuple(family_inverse(leaf) for leaf in reversed(nu.factors))
    return Family(nu.inverse, nu.components, _normalized=True, factors=factors)


def is_symbolically_inverse(nu: Family) -> bool:
    """Both composites with the stored inverse are the identity over k(t)."""
    return is_identity_tuple(compose_tuples(nu.components, nu.inverse)) and is_identity_tuple(
        compose_tuples(nu.inverse, nu.components)
    )


# conjugation limits ------------------------------------------------------------


def _scaled_conjugate(components, ring):
    """[t G0(x0, t x') : G1(x0, t x') : ...], normalised over k[t, x]."""
    t = ring.t()
    gens = ring.gens()
    images = [gens[0]] + [t * x for x in gens[1:]]
    raw = [c.promote().substitute(images) for c in components]
    raw[0] = t * raw[0]
    return normalize_tuple(raw)


def _linear_forms_param(ring, rows):
    gens = ring.gens()
    out = []
    for r in rows:
        acc = ring.zero()
        for a, x in zip(r, gens):
            if a:
                acc = acc + x.scale(a)
        out.append(acc)
    return out


def conj_limit(g: CremonaMap, p: Point) -> Family:
    """The family rho(t) = nu(t)^-1 o g o nu(t) for scalings nu(t) centred at p.

    rho(1) = g and rho(0) is the linear part of g at p.
    """
    if g.inverse is None:
        raise MissingInverse("conj_limit needs a certified map")
    image = evaluate(g, p)
    if image is INDETERMINATE or image != p:
        raise NotFixed(f"{p} is not a fixed point")
    if not is_local_iso_at(g, p):
        raise NotLocalIso(f"map is not a local isomorphism at {p}")
    beta = chart_matrix(p)
    trivial_chart = beta.is_identity()
    gc = g if trivial_chart else conjugate_by_linear(g, beta)
    ring = g.ring.with_param()
    comps = _scaled_conjugate(gc.components, ring)
    inv = _scaled_conjugate(gc.inverse, ring)
    if not trivial_chart:
        fwd = _linear_forms_param(ring, beta.rows)
        back = _linear_forms_param(ring, beta.inverse().rows)
        comps = normalize_tuple(compose_tuples(compose_tuples(back, comps), fwd))
        inv = normalize_tuple(compose_tuples(compose_tuples(back, inv), fwd))
    return Family(comps, inv, _normalized=True)


def linear_family_at_zero(nu: Family) -> ProjMatrix:
    """Matrix of nu(0), which must be linear."""
    return specialize(nu, 0).matrix()


def normalized_to_start(nu: Family) -> Family:
    """nu o const(nu(0))^-1, so that the result starts at the identity."""
    start = specialize(nu, 0)
    return family_product(nu, constant_family(start.inverse_map()))


# verification -------------------------------------------------------------------


@dataclass
class SampleResult:
    t: FieldScalar
    ok: bool
    degree: int | None = None
    error: str | None = None
    method: str | None = None

    def to_dict(self):
        return {"t": str(self.t), "ok": self.ok, "degree": self.degree, "method": self.method, "error": self.error}


@dataclass
class FamilyReport:
    family: Family
    samples: list = dc_field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(s.ok for s in self.samples)

    @property
    def failures(self):
        return [s for s in self.samples if not s.ok]

    def to_dict(self):
        return {
            "all_ok": self.all_ok,
            "samples": [s.to_dict() for s in self.samples],
            "x_degree": self.family.x_degree,
            "t_degree": self.family.t_degree,
        }


STANDARD_SAMPLES = ("0", "1", "-1", "2", "1/2")


def verify_family(nu: Family, samples=STANDARD_SAMPLES) -> FamilyReport:
    """Specialise at each sample and check the certificate there; failures are recorded, not raised."""
    field = nu.field
    results = []
    passed = []
    for s in samples:
        a = FieldScalar(field, field.coerce(s))
        try:
            f, method = _specialize(nu, a.value, True)
        except CremonaError as exc:
            results.append(SampleResult(a, False, None, f"{type(exc).__name__}: {exc}"))
            continue
        results.append(SampleResult(a, True, f.degree, None, method))
        passed.append(a)
    return FamilyReport(nu.with_samples(passed), results)
