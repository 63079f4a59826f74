"""Multivariate polynomial gcd.

The algorithm is the classical recursive one: pick a main variable, split
off the content (gcd of the coefficients, computed recursively), and run the
subresultant PRS on the primitive parts.  Two cheap exact reductions run
first:

* monomial content is split off by taking minimum exponents;
* for every variable v a modular image (other variables specialised at a
  point where both leading coefficients in v survive, coefficients reduced
  mod a word-size prime) bounds deg_v of the gcd from above.  A bound of 0
  means the gcd is free of v, which reduces the problem to the contents.

Images only ever supply upper bounds, so the result never depends on the
choice of primes or points.
"""

from __future__ import annotations

import random

from .polynomials import MASK, MultiPoly, divide_exact, poly_arith_ring

_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


# variables are (shift, unit) pairs: x_i -> (x_shift[i], x_unit[i]), t -> (0, 1)

def _ring_vars(ring):
    out = list(zip(ring.x_shift, ring.x_unit))
    if ring.param:
        out.append((0, 1))
    return out


def _present_vars(f: MultiPoly):
    present = []
    for v in _ring_vars(f.ring):
        s = v[0]
        if any((m >> s) & MASK for m in f.terms):
            present.append(v)
    return present


def _split(f: MultiPoly, v):
    """Coefficients of f as a polynomial in v: {k: MultiPoly free of v}."""
    s, unit = v
    parts = {}
    for m, c in f.terms.items():
        k = (m >> s) & MASK
        parts.setdefault(k, {})[m - k * unit] = c
    return {k: MultiPoly(f.ring, d) for k, d in parts.items()}


def _join(ring, coeffs, v):
    s, unit = v
    out = {}
    for k, c in enumerate(coeffs):
        if c is None or not c.terms:
            continue
        for m, a in c.terms.items():
            out[m + k * unit] = a
    return MultiPoly(ring, out)


def _monomial_content(f: MultiPoly):
    ring = f.ring
    mins = None
    for m in f.terms:
        exps = [(m >> s) & MASK for s, _ in _ring_vars(ring)]
        mins = exps if mins is None else [min(a, b) for a, b in zip(mins, exps)]
        if not any(mins):
            return 0
    return sum(e * unit for e, (_, unit) in zip(mins, _ring_vars(ring)))


def _min_monomial(ring, a: int, b: int) -> int:
    return sum(
        min((a >> s) & MASK, (b >> s) & MASK) * unit for s, unit in _ring_vars(ring)
    )


def _strip_monomial(f: MultiPoly):
    m = _monomial_content(f)
    if not m:
        return 0, f
    return m, MultiPoly(f.ring, {k - m: c for k, c in f.terms.items()})


# modular images -----------------------------------------------------------


def _reduce_coeff(c, P, rational):
    if rational:
        den = int(c.denominator) % P
        if den == 0:
            return None
        return int(c.numerator) * pow(den, -1, P) % P
    return c % P


def _image(f: MultiPoly, v, point, P):
    """Dense list (low degree first) of f mod P with every variable but v evaluated."""
    s_v = v[0]
    rational = f.field.is_rational
    cache = [dict() for _ in point]
    out = {}
    for m, c in f.terms.items():
        val = _reduce_coeff(c, P, rational)
        if val is None:
            return None
        for idx, (s, a) in enumerate(point):
            e = (m >> s) & MASK
            if e:
                tab = cache[idx]
                pw = tab.get(e)
                if pw is None:
                    pw = tab[e] = pow(a, e, P)
                val = val * pw % P
        k = (m >> s_v) & MASK
        out[k] = (out.get(k, 0) + val) % P
    deg = max(out)
    return [out.get(k, 0) for k in range(deg + 1)]


def _strip(a):
    while a and not a[-1]:
        a.pop()
    return a


def _gcd_degree_mod(a, b, P):
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        # a mod b
        inv = pow(b[-1], -1, P)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            q = a[-1] * inv % P
            off = len(a) - 1 - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - q * b[i]) % P
            _strip(a)
        a, b = b, a
    return len(a) - 1


def _degree_bound(f: MultiPoly, g: MultiPoly, v, tries=2):
    """Upper bound on deg_v gcd(f, g) from modular images, or None."""
    others = [w for w in _ring_vars(f.ring) if w != v]
    df = max((m >> v[0]) & MASK for m in f.terms)
    dg = max((m >> v[0]) & MASK for m in g.terms)
    field = f.field
    primes = _PRIMES if field.is_rational else (field.p,)
    rng = random.Random(df * 1000003 + dg)
    best = None
    ok = 0
    for attempt in range(12):
        P = primes[attempt % len(primes)]
        point = [(s, rng.randrange(1, P) if P > 2 else rng.randrange(P)) for s, _ in others]
        fi = _image(f, v, point, P)
        gi = _image(g, v, point, P)
        if fi is None or gi is None:
            continue
        if len(fi) - 1 != df or len(gi) - 1 != dg or not fi[-1] or not gi[-1]:
            continue
        d = _gcd_degree_mod(fi, gi, P)
        best = d if best is None else min(best, d)
        ok += 1
        if best == 0 or ok >= tries:
            break
    return best


def _joint_degree_bound(polys, v, tries=2):
    """Upper bound on deg_v of the gcd of all polys (None when no good image was found)."""
    others = [w for w in _ring_vars(polys[0].ring) if w != v]
    degs = [max((m >> v[0]) & MASK for m in p.terms) for p in polys]
    field = polys[0].field
    primes = _PRIMES if field.is_rational else (field.p,)
    rng = random.Random(sum(degs) * 1000003 + len(polys))
    best = None
    ok = 0
    for attempt in range(12):
        P = primes[attempt % len(primes)]
        point = [(s, rng.randrange(1, P) if P > 2 else rng.randrange(P)) for s, _ in others]
        first = _image(polys[0], v, point, P)
        # only the first image needs full degree: it pins the gcd's leading coefficient
        if first is None or len(first) - 1 != degs[0] or not first[-1]:
            continue
        acc = first
        for p in polys[1:]:
            img = _image(p, v, point, P)
            if img is None:
                acc = None
                break
            acc = _gcd_mod(acc, img, P)
            if len(acc) == 1:
                break
        if acc is None:
            continue
        d = len(acc) - 1
        best = d if best is None else min(best, d)
        ok += 1
        if best == 0 or ok >= tries:
            break
    return best


def _gcd_mod(a, b, P):
    a, b = _strip(list(a)), _strip(list(b))
    if not b:
        return a or [0]
    while b:
        inv = pow(b[-1], -1, P)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            q = a[-1] * inv % P
            off = len(a) - 1 - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - q * b[i]) % P
            _strip(a)
        a, b = b, a
    return a


# main entry points ------------------------------------------------------------


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalised to leading coefficient 1 (0 if both vanish)."""
    ring = poly_arith_ring(f, g)
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    mf, f1 = _strip_monomial(f)
    mg, g1 = _strip_monomial(g)
    m = _min_monomial(ring, mf, mg)
    core = _gcd_nomono(f1, g1)
    if m:
        core = core.mul_monomial(m)
    return core.monic()


def multi_gcd(polys) -> MultiPoly:
    polys = list(polys)
    if not polys:
        raise ValueError("multi_gcd of an empty list")
    ring = poly_arith_ring(*polys)
    nonzero = [p for p in polys if p.terms]
    if not nonzero:
        return ring.zero()
    if len(nonzero) == 1:
        return nonzero[0].monic()
    mono = None
    stripped = []
    for p in nonzero:
        m, q = _strip_monomial(p)
        mono = m if mono is None else _min_monomial(ring, mono, m)
        stripped.append(q)
    core = _joint_gcd(stripped)
    if mono:
        core = core.mul_monomial(mono)
    return core.monic()


def _joint_gcd(polys):
    """gcd of monomial-content-free polynomials, using joint degree bounds first."""
    ring = polys[0].ring
    if any(p.is_constant() for p in polys):
        return ring.one()
    present = set(_present_vars(polys[0]))
    for p in polys[1:]:
        present &= set(_present_vars(p))
    for v in _ring_vars(ring):
        if v not in present:
            # the gcd cannot involve v: pass to the coefficients in v
            return _gcd_list([c for p in polys for c in _split(p, v).values()])
    for v in sorted(present):
        if _joint_degree_bound(polys, v) == 0:
            return _gcd_list([c for p in polys for c in _split(p, v).values()])
    polys = sorted(polys, key=len)
    acc = polys[0]
    for p in polys[1:]:
        if acc.is_constant():
            break
        acc = poly_gcd(acc, p)
    return acc.monic()


def _gcd_list(polys):
    polys = sorted((p for p in polys if p.terms), key=len)
    acc = polys[0]
    for p in polys[1:]:
        if acc.is_constant():
            return acc.ring.one()
        acc = poly_gcd(acc, p)
    return acc.monic()


def _gcd_nomono(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ring = f.ring
    if f.is_constant() or g.is_constant():
        return ring.one()
    if f.monic() == g.monic():
        return f.monic()
    vf, vg = _present_vars(f), _present_vars(g)
    for v in vf:
        if v not in vg:
            return _gcd_list([g, *_split(f, v).values()])
    for v in vg:
        if v not in vf:
            return _gcd_list([f, *_split(g, v).values()])

    candidates = []
    for v in vf:
        b = _degree_bound(f, g, v)
        if b == 0:
            # gcd is free of v: it is the gcd of the two contents
            return _gcd_list([*_split(f, v).values(), *_split(g, v).values()])
        deg = max(max((m >> v[0]) & MASK for m in f.terms), max((m >> v[0]) & MASK for m in g.terms))
        candidates.append((deg, v))
    _, v = min(candidates)

    fc, gc = _split(f, v), _split(g, v)
    cf = _gcd_list(list(fc.values()))
    cg = _gcd_list(list(gc.values()))
    c = poly_gcd(cf, cg)
    A = _to_dense(fc, cf)
    B = _to_dense(gc, cg)
    h = _subresultant_pp(A, B)
    result = _join(ring, h, v)
    return (c * result).monic()


def _to_dense(parts, content):
    deg = max(parts)
    out = [None] * (deg + 1)
    for k, c in parts.items():
        q = divide_exact(c, content)
        assert q is not None
        out[k] = q
    zero = content.ring.zero()
    return [zero if c is None else c for c in out]


def _trim(a):
    while len(a) > 1 and not a[-1].terms:
        a.pop()
    return a


def _prem(A, B):
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B over the coefficient ring."""
    r = list(A)
    db = len(B) - 1
    lcB = B[-1]
    e = len(A) - len(B) + 1
    while len(r) - 1 >= db and any(c.terms for c in r):
        lr = r[-1]
        off = len(r) - 1 - db
        r = [c * lcB for c in r]
        for i in range(db + 1):
            r[off + i] = r[off + i] - lr * B[i]
        r.pop()
        _trim(r)
        e -= 1
        if len(r) == 1 and not r[0].terms:
            break
    if e > 0 and any(c.terms for c in r):
        f = lcB**e
        r = [c * f for c in r]
    return r


def _primitive_part(a):
    cont = _gcd_list([c for c in a if c.terms])
    if cont.is_constant():
        lead = a[-1].leading_coefficient()
        inv = a[-1].field.inv(lead)
        return [c.scale(inv) for c in a]
    return [divide_exact(c, cont) for c in a]


def _subresultant_pp(A, B):
    """Primitive part of gcd(A, B) for primitive A, B in R[v] (dense lists, R = coefficient ring)."""
    if len(A) < len(B):
        A, B = B, A
    one = A[0].ring.one()
    if len(B) == 1:
        return [one]
    g = one
    h = one
    while True:
        delta = len(A) - len(B)
        R = _prem(A, B)
        if len(R) == 1 and not R[0].terms:
            return _primitive_part(B)
        if len(R) == 1:
            return [one]
        denom = g * h**delta
        A, B = B, [divide_exact(c, denom) for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = divide_exact(g**delta, h ** (delta - 1))
