"""Univariate polynomial algebra over finite-field contexts.

Polynomials are tuples of coefficient tuples, ascending in the
variable, with no trailing zero coefficients; the zero polynomial is
the empty tuple. The module covers ring arithmetic, gcd, separability,
squarefree and distinct-degree decomposition, and complete root
extraction including roots living in proper extensions of the
coefficient field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gf
from .gf import (ContextMismatch, EmbeddingMap, FieldCtx, FieldElement,
                 element_sort_key)

SCAN_MAX = 512          # exhaustive root scan below this field size
CHAR2_SCAN_MAX = 1 << 16

_X = ((), (1,))         # the polynomial T
_ONE = ((1,),)


class BudgetExceeded(Exception):
    """Root extraction would need an ambient extension beyond the budget."""

    def __init__(self, required_degree: int):
        super().__init__(f"roots require ambient degree {required_degree} over the prime field")
        self.required_degree = required_degree


# ----------------------------------------------------------------------
# raw polynomial arithmetic
# ----------------------------------------------------------------------

def _trim(cs) -> tuple:
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def _deg(cs) -> int:
    return len(cs) - 1


def _add(ctx, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = ctx.add(out[i], c)
    return _trim(out)


def _neg(ctx, f):
    return tuple(ctx.neg(c) for c in f)


def _sub(ctx, f, g):
    return _add(ctx, f, _neg(ctx, g))


def _scale(ctx, f, c):
    if not c:
        return ()
    if c == (1,):
        return f
    return tuple(ctx.mul(c, x) for x in f)


def _mul(ctx, f, g):
    if not f or not g:
        return ()
    out = [()] * (len(f) + len(g) - 1)
    add, mul = ctx.add, ctx.mul
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                if gj:
                    out[i + j] = add(out[i + j], mul(fi, gj))
    return _trim(out)


def _divmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = _deg(b)
    if _deg(a) < db:
        return (), a
    inv_lead = ctx.inv(b[-1])
    rem = list(a)
    quo = [()] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c:
            c = ctx.mul(c, inv_lead)
            quo[k - db] = c
            for j in range(db + 1):
                if b[j]:
                    rem[k - db + j] = ctx.sub(rem[k - db + j], ctx.mul(c, b[j]))
    return _trim(quo), _trim(rem[:db])


def _rem(ctx, a, b):
    return _divmod(ctx, a, b)[1]


def _monic(ctx, f):
    if not f or f[-1] == (1,):
        return f
    return _scale(ctx, f, ctx.inv(f[-1]))


def _gcd(ctx, f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _rem(ctx, f, g)
    return _monic(ctx, f)


def _derivative(ctx, f):
    return _trim(ctx.smul(i, f[i]) for i in range(1, len(f)))


def _eval(ctx, f, x):
    acc = ()
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def _compose_linear(ctx, f, c):
    out = []
    ci = (1,)
    for coeff in f:
        out.append(ctx.mul(coeff, ci))
        ci = ctx.mul(ci, c)
    return _trim(out)


def _pow_mod(ctx, base, n: int, mod):
    r = _rem(ctx, _ONE, mod)
    base = _rem(ctx, base, mod)
    while n:
        if n & 1:
            r = _rem(ctx, _mul(ctx, r, base), mod)
        base = _rem(ctx, _mul(ctx, base, base), mod)
        n >>= 1
    return r


def _lift(emap: EmbeddingMap, f):
    return _trim(emap.apply(c) for c in f)


def _lift_prime(dst: FieldCtx, int_coeffs) -> tuple:
    """Lift a GF(p) polynomial with integer coefficients into dst."""
    return _trim(dst.scalar(c) for c in int_coeffs)


# ----------------------------------------------------------------------
# squarefree and distinct-degree structure
# ----------------------------------------------------------------------

def _pth_root_poly(ctx, f):
    """Inverse of g -> g(T^p) for polynomials with zero derivative."""
    p = ctx.p
    e = p ** (ctx.s - 1)  # coefficient-level p-th root exponent
    return _trim(ctx.pow(f[i], e) for i in range(0, len(f), p))


def _sqf_list(ctx, f) -> list[tuple[tuple, int]]:
    """Monic squarefree decomposition [(factor, multiplicity), ...]."""
    p = ctx.p
    out = []
    f = _monic(ctx, f)
    if _deg(f) < 1:
        return out
    df = _derivative(ctx, f)
    if not df:
        for g, m in _sqf_list(ctx, _pth_root_poly(ctx, f)):
            out.append((g, m * p))
        return out
    c = _gcd(ctx, f, df)
    w = _divmod(ctx, f, c)[0]
    i = 1
    while _deg(w) > 0:
        y = _gcd(ctx, w, c)
        z = _divmod(ctx, w, y)[0]
        if _deg(z) > 0:
            out.append((z, i))
        w = y
        c = _divmod(ctx, c, y)[0]
        i += 1
    if _deg(c) > 0:
        for g, m in _sqf_list(ctx, _pth_root_poly(ctx, c)):
            out.append((g, m * p))
    return out


def _ddf(ctx, g) -> list[tuple[tuple, int]]:
    """Distinct-degree split of a monic squarefree g: [(product, degree)]."""
    out = []
    q = ctx.order
    h = _rem(ctx, _X, g)
    d = 0
    while _deg(g) >= 2 * (d + 1):
        d += 1
        h = _pow_mod(ctx, h, q, g)
        part = _gcd(ctx, _sub(ctx, h, _X), g)
        if _deg(part) > 0:
            out.append((part, d))
            g = _divmod(ctx, g, part)[0]
            h = _rem(ctx, h, g)
    if _deg(g) > 0:
        out.append((g, _deg(g)))
    return out


# ----------------------------------------------------------------------
# root extraction
# ----------------------------------------------------------------------

def _quad_roots_split(ctx, f) -> list[tuple]:
    """Both roots of a monic squarefree quadratic known to split in ctx."""
    c0, c1 = f[0], f[1]
    delta = ctx.sub(ctx.mul(c1, c1), ctx.smul(4, c0))
    root = _sqrt_fast(ctx, delta)
    half = ctx.inv(ctx.scalar(2))
    r1 = ctx.mul(ctx.sub(root, c1), half)
    r2 = ctx.mul(ctx.neg(ctx.add(root, c1)), half)
    return [r1, r2]


def _split_roots(ctx, h) -> list[tuple]:
    """Distinct roots of a monic squarefree polynomial that splits in ctx."""
    out = []
    stack = [_monic(ctx, h)]
    e = (ctx.order - 1) // 2
    while stack:
        f = stack.pop()
        d = _deg(f)
        if d <= 0:
            continue
        if d == 1:
            out.append(ctx.neg(f[0]))
            continue
        if d == 2 and ctx.p != 2:
            out.extend(_quad_roots_split(ctx, f))
            continue
        if ctx.order <= SCAN_MAX or (ctx.p == 2 and ctx.order <= CHAR2_SCAN_MAX):
            out.extend(x for x in ctx.elements() if not _eval(ctx, f, x))
            continue
        if ctx.p == 2:
            raise NotImplementedError(
                "root extraction in characteristic 2 beyond 2^16 elements")
        # deterministic sweep: gcd(f, (T+u)^((q-1)/2) - 1) for shifts u
        for u in ctx.elements():
            w = _pow_mod(ctx, _trim((u, (1,))), e, f)
            part = _gcd(ctx, _sub(ctx, w, _ONE), f)
            dp = _deg(part)
            if 0 < dp < d:
                stack.append(part)
                stack.append(_divmod(ctx, f, part)[0])
                break
        else:  # pragma: no cover - impossible for split squarefree input
            raise RuntimeError("root splitting sweep exhausted the field")
    return out


def _any_root(ctx, h) -> tuple:
    """One root of a polynomial that splits completely in ctx."""
    f = _monic(ctx, h)
    e = (ctx.order - 1) // 2
    while True:
        d = _deg(f)
        if d == 1:
            return ctx.neg(f[0])
        if d == 2 and ctx.p != 2:
            return min(_quad_roots_split(ctx, f), key=element_sort_key)
        if ctx.order <= SCAN_MAX or (ctx.p == 2 and ctx.order <= CHAR2_SCAN_MAX):
            return next(x for x in ctx.elements() if not _eval(ctx, f, x))
        if ctx.p == 2:
            raise NotImplementedError(
                "root extraction in characteristic 2 beyond 2^16 elements")
        for u in ctx.elements():
            w = _pow_mod(ctx, _trim((u, (1,))), e, f)
            part = _gcd(ctx, _sub(ctx, w, _ONE), f)
            dp = _deg(part)
            if 0 < dp < d:
                other = _divmod(ctx, f, part)[0]
                f = part if _deg(part) <= _deg(other) else other
                break
        else:  # pragma: no cover
            raise RuntimeError("root splitting sweep exhausted the field")


def _roots_in_ctx(ctx, g) -> list[tuple]:
    """Distinct roots of an arbitrary nonzero g lying inside ctx."""
    g = _monic(ctx, g)
    if _deg(g) < 1:
        return []
    t = _pow_mod(ctx, _X, ctx.order, g)
    h = _gcd(ctx, _sub(ctx, t, _X), g)
    if _deg(h) < 1:
        return []
    return _split_roots(ctx, h)


_EMB_CACHE: dict[tuple[str, str], EmbeddingMap] = {}


def _left_inverse(p: int, columns: list[tuple], s: int) -> tuple:
    """Left inverse of the column matrix over GF(p), via row reduction.

    columns are length-s vectors spanning an r-dimensional image; the
    result maps image vectors back to their r coordinates.
    """
    r = len(columns)
    rows = []
    for i in range(s):
        row = [col[i] if i < len(col) else 0 for col in columns]
        row += [0] * r
        rows.append(row)
    for i in range(s):
        rows[i] += [1 if j == i else 0 for j in range(s)]
    # reduce the s x (r + s) system [M | I]
    pivot_row = 0
    pivots = []
    for col in range(r):
        sel = next((i for i in range(pivot_row, s) if rows[i][col] % p), None)
        if sel is None:
            raise ValueError("embedding matrix is singular")
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = pow(rows[pivot_row][col], -1, p)
        rows[pivot_row] = [(v * inv) % p for v in rows[pivot_row]]
        for i in range(s):
            if i != pivot_row and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[pivot_row])]
        pivots.append(pivot_row)
        pivot_row += 1
    # L row k = the I-part of the row whose pivot is column k
    lmat = []
    for k in range(r):
        lmat.append(tuple(rows[pivots[k]][r:]))
    return tuple(lmat)


class _HalfAux:
    """Quadratic-subfield structure of GF(p^s) for s even: the subfield
    context, embedding, linear section, and a square root of a lifted
    non-residue."""

    __slots__ = ("sub", "emb", "lmat", "nonres", "theta", "theta_inv", "half")

    def __init__(self, ctx: FieldCtx):
        sub = gf.make_extension(ctx.p, ctx.s // 2)
        emb = find_embedding(sub, ctx)
        columns = [emb.apply(sub.canon([0] * j + [1])) for j in range(sub.s)]
        self.sub = sub
        self.emb = emb
        self.lmat = _left_inverse(ctx.p, columns, ctx.s)
        self.nonres = next(x for x in sub.nonzero_elements()
                           if not _is_square_fast(sub, x))
        self.theta = ctx.sqrt(emb.apply(self.nonres))
        self.theta_inv = ctx.inv(self.theta)
        self.half = ctx.inv(ctx.scalar(2))

    def section(self, y: tuple) -> tuple:
        """Coordinates of a subfield member y in the subfield context."""
        sub = self.sub
        out = []
        for row in self.lmat:
            acc = 0
            for c, v in zip(y, row):
                if c:
                    acc += c * v
            out.append(acc % sub.p)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)


_HALF_AUX: dict[str, _HalfAux] = {}


def _half_aux(ctx: FieldCtx) -> _HalfAux:
    aux = _HALF_AUX.get(ctx.label)
    if aux is None:
        aux = _HalfAux(ctx)
        _HALF_AUX[ctx.label] = aux
    return aux


def _descent_ok(ctx: FieldCtx) -> bool:
    return ctx.p != 2 and ctx.s % 2 == 0 and ctx.order > gf.TABLE_MAX


def _is_square_fast(ctx: FieldCtx, a: tuple) -> bool:
    """Square test, descending through quadratic subfields when cheap."""
    if not a or ctx.p == 2:
        return True
    if not _descent_ok(ctx):
        return ctx.is_square(a)
    aux = _half_aux(ctx)
    norm = ctx.mul(a, ctx._frobenius_fast(a, ctx.s // 2))
    return _is_square_fast(aux.sub, aux.section(norm))


def _sqrt_fast(ctx: FieldCtx, a: tuple) -> tuple:
    """Square root via the quadratic subfield; falls back to the field's
    own routine for small, odd-degree or characteristic-2 contexts."""
    if not a:
        return ()
    if not _descent_ok(ctx):
        return ctx.sqrt(a)
    aux = _half_aux(ctx)
    sub = aux.sub
    xq = ctx._frobenius_fast(a, ctx.s // 2)
    u = ctx.mul(ctx.add(a, xq), aux.half)
    w = ctx.mul(ctx.sub(a, xq), aux.half)  # the theta-component times theta
    u_s = aux.section(u)
    v_s = aux.section(ctx.mul(w, aux.theta_inv))
    if not v_s:
        # a lies in the subfield itself
        if _is_square_fast(sub, u_s):
            return aux.emb.apply(_sqrt_fast(sub, u_s))
        quot = sub.mul(u_s, sub.inv(aux.nonres))
        return ctx.mul(aux.theta, aux.emb.apply(_sqrt_fast(sub, quot)))
    norm = sub.sub(sub.mul(u_s, u_s),
                   sub.mul(aux.nonres, sub.mul(v_s, v_s)))
    if not _is_square_fast(sub, norm):
        raise ValueError("element is not a square")
    n = _sqrt_fast(sub, norm)
    half_s = sub.inv(sub.scalar(2))
    h = sub.mul(sub.add(u_s, n), half_s)
    if not _is_square_fast(sub, h):
        n = sub.neg(n)
        h = sub.mul(sub.add(u_s, n), half_s)
    a_s = _sqrt_fast(sub, h)
    b_s = sub.mul(v_s, sub.inv(sub.add(a_s, a_s)))
    root = ctx.add(aux.emb.apply(a_s), ctx.mul(aux.theta, aux.emb.apply(b_s)))
    if ctx.mul(root, root) != a:  # pragma: no cover - defensive
        raise ValueError("element is not a square")
    return root


def find_embedding(src: FieldCtx, dst: FieldCtx) -> EmbeddingMap:
    """The canonical embedding of src into dst.

    Among the conjugate images of the source generator, the one that is
    smallest in canonical element order is chosen, so the result is
    deterministic and cached.
    """
    key = (src.label, dst.label)
    cached = _EMB_CACHE.get(key)
    if cached is not None:
        return cached
    if src.p != dst.p:
        raise ContextMismatch(
            f"cannot embed characteristic {src.p} into characteristic {dst.p}")
    if dst.s % src.s:
        raise ContextMismatch(
            f"GF({src.p}^{src.s}) does not embed into GF({dst.p}^{dst.s}): "
            f"{src.s} does not divide {dst.s}")
    if src == dst:
        gen = (0, 1) if src.s > 1 else ()
        gen = src.canon(gen)
    else:
        modulus = _lift_prime(dst, src.modulus)
        r = _any_root(dst, modulus)
        orbit = []
        x = r
        for _ in range(src.s):
            orbit.append(x)
            x = dst.frobenius(x)
        gen = min(orbit, key=element_sort_key)
    emap = gf.make_embedding(src, dst, gen)
    _EMB_CACHE[key] = emap
    return emap


def _all_roots_raw(ctx: FieldCtx, f, max_ambient_degree: int):
    """All roots of f with multiplicity, in the smallest viable extension.

    Returns (ambient, lift_map_or_None, [(root, multiplicity), ...]) with
    roots sorted canonically; raises BudgetExceeded when the required
    ambient degree over the prime field is beyond the budget.
    """
    d = _deg(f)
    if d < 1:
        raise ValueError("roots of a constant polynomial are undefined")
    if d == 1:
        root = ctx.mul(ctx.neg(f[0]), ctx.inv(f[1]))
        return ctx, None, [(root, 1)]
    if d == 2 and ctx.p != 2:
        c0, c1, c2 = f[0], f[1], f[2]
        delta = ctx.sub(ctx.mul(c1, c1), ctx.smul(4, ctx.mul(c0, c2)))
        half = ctx.inv(ctx.add(c2, c2))
        if not delta:
            return ctx, None, [(ctx.mul(ctx.neg(c1), half), 2)]
        if ctx.is_square(delta):
            root = ctx.sqrt(delta)
            pairs = [(ctx.mul(ctx.sub(root, c1), half), 1),
                     (ctx.mul(ctx.neg(ctx.add(root, c1)), half), 1)]
            pairs.sort(key=lambda rm: element_sort_key(rm[0]))
            return ctx, None, pairs
        required = 2 * ctx.s
        if required > max_ambient_degree:
            raise BudgetExceeded(required)
        amb = gf.make_extension(ctx.p, required)
        emap = find_embedding(ctx, amb)
        root = amb.sqrt(emap.apply(delta))
        c1a = emap.apply(c1)
        halfa = emap.apply(half)
        pairs = [(amb.mul(amb.sub(root, c1a), halfa), 1),
                 (amb.mul(amb.neg(amb.add(root, c1a)), halfa), 1)]
        pairs.sort(key=lambda rm: element_sort_key(rm[0]))
        return amb, emap, pairs
    plans = []
    need = {ctx.s}
    for g, mult in _sqf_list(ctx, f):
        d = _deg(g)
        if d == 1:
            plans.append(("lin", g, mult))
        elif d == 2 and ctx.p != 2:
            c0, c1 = g[0], g[1]
            delta = ctx.sub(ctx.mul(c1, c1), ctx.smul(4, c0))
            if ctx.is_square(delta):
                plans.append(("quad", g, mult))
            else:
                need.add(2 * ctx.s)
                plans.append(("quad_ext", g, mult))
        else:
            parts = _ddf(ctx, g)
            need.update(ctx.s * dd for _, dd in parts)
            plans.append(("ddf", parts, mult))
    required = math.lcm(*need)
    if required > max_ambient_degree:
        raise BudgetExceeded(required)
    if required == ctx.s:
        amb, emap = ctx, None
    else:
        amb = gf.make_extension(ctx.p, required)
        emap = find_embedding(ctx, amb)
    up = emap.apply if emap else (lambda t: t)
    pairs = []
    for kind, payload, mult in plans:
        if kind == "lin":
            root = ctx.mul(ctx.neg(payload[0]), ctx.inv(payload[1]))
            pairs.append((up(root), mult))
        elif kind == "quad":
            pairs.extend((up(r), mult) for r in _quad_roots_split(ctx, payload))
        elif kind == "quad_ext":
            lifted = _lift(emap, payload)
            pairs.extend((r, mult) for r in _quad_roots_split(amb, lifted))
        else:
            for part, dd in payload:
                if dd == 1:
                    pairs.extend((up(r), mult) for r in _split_roots(ctx, part))
                else:
                    lifted = _lift(emap, part)
                    pairs.extend((r, mult) for r in _split_roots(amb, lifted))
    pairs.sort(key=lambda rm: element_sort_key(rm[0]))
    return amb, emap, pairs


# ----------------------------------------------------------------------
# public wrappers
# ----------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over a field context."""

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        raw = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.ctx != ctx:
                    raise ContextMismatch("coefficient from a different context")
                raw.append(c.coeffs)
            elif isinstance(c, int):
                raw.append(ctx.scalar(c))
            else:
                raw.append(ctx.canon(c))
        self.data = _trim(raw)

    @classmethod
    def _raw(cls, ctx: FieldCtx, data: tuple) -> "Poly":
        po = object.__new__(cls)
        po.ctx = ctx
        po.data = data
        return po

    @property
    def degree(self) -> int:
        return len(self.data) - 1

    @property
    def is_zero(self) -> bool:
        return not self.data

    @property
    def coeffs(self) -> tuple:
        return tuple(FieldElement._raw(self.ctx, c) for c in self.data)

    def coeff(self, i: int) -> FieldElement:
        c = self.data[i] if 0 <= i < len(self.data) else ()
        return FieldElement._raw(self.ctx, c)

    def _peer(self, other) -> tuple:
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch("polynomials over different contexts")
        return other.data

    def __add__(self, other):
        return Poly._raw(self.ctx, _add(self.ctx, self.data, self._peer(other)))

    def __sub__(self, other):
        return Poly._raw(self.ctx, _sub(self.ctx, self.data, self._peer(other)))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return poly_scale(self, other)
        return Poly._raw(self.ctx, _mul(self.ctx, self.data, self._peer(other)))

    def __neg__(self):
        return Poly._raw(self.ctx, _neg(self.ctx, self.data))

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ctx == other.ctx
                and self.data == other.data)

    def __hash__(self):
        return hash((self.ctx.label, self.data))

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.ctx != self.ctx:
            raise ContextMismatch("evaluation point from a different context")
        return FieldElement._raw(self.ctx, _eval(self.ctx, self.data, x.coeffs))

    def monic(self) -> "Poly":
        return Poly._raw(self.ctx, _monic(self.ctx, self.data))

    def derivative(self) -> "Poly":
        return Poly._raw(self.ctx, _derivative(self.ctx, self.data))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<poly {format_poly(self)} over {self.ctx.label}>"

    def to_json(self) -> list:
        return [list(c) for c in self.data]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "Poly":
        return cls(ctx, data)


def poly_from_ints(ctx: FieldCtx, int_coeffs) -> Poly:
    return Poly(ctx, list(int_coeffs))


def format_poly(f: Poly, generator: str = "d", var: str = "T") -> str:
    """Render a polynomial as text, e.g. '(d+2)*T+1'."""
    if f.is_zero:
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.data[i]
        if not c:
            continue
        if len(c) == 1:
            ctext = str(c[0])
            plain_one = c[0] == 1
        else:
            ctext = f"({gf.format_element(c, generator)})"
            plain_one = False
        if i == 0:
            terms.append(ctext)
        else:
            xpart = var if i == 1 else f"{var}^{i}"
            terms.append(xpart if plain_one else f"{ctext}*{xpart}")
    return "+".join(terms)


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial realized in an ambient extension field."""

    ambient: FieldCtx
    lift: EmbeddingMap | None
    pairs: tuple  # ((coeff_tuple, multiplicity), ...) sorted canonically

    @property
    def roots(self) -> tuple:
        return tuple((FieldElement._raw(self.ambient, r), m) for r, m in self.pairs)

    def distinct(self) -> tuple:
        return tuple(FieldElement._raw(self.ambient, r) for r, _ in self.pairs)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.pairs)


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_scale(f: Poly, c: FieldElement) -> Poly:
    if c.ctx != f.ctx:
        raise ContextMismatch("scalar from a different context")
    return Poly._raw(f.ctx, _scale(f.ctx, f.data, c.coeffs))


def compose_linear(f: Poly, c: FieldElement) -> Poly:
    """The polynomial T -> f(c*T)."""
    if c.ctx != f.ctx:
        raise ContextMismatch("scalar from a different context")
    return Poly._raw(f.ctx, _compose_linear(f.ctx, f.data, c.coeffs))


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    data = a._peer(b)
    q, r = _divmod(a.ctx, a.data, data)
    return Poly._raw(a.ctx, q), Poly._raw(a.ctx, r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    data = a._peer(b)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    return Poly._raw(a.ctx, _gcd(a.ctx, a.data, data))


def is_separable(f: Poly) -> bool:
    """Whether f has no repeated roots (gcd with its derivative is 1)."""
    if f.degree < 1:
        raise ValueError("separability is undefined for constant polynomials")
    df = _derivative(f.ctx, f.data)
    if not df:
        return False
    return _deg(_gcd(f.ctx, f.data, df)) == 0


def factor_degree_profile(f: Poly) -> tuple[int, ...]:
    """Degrees of the irreducible factors of f, with multiplicity, sorted."""
    if f.degree < 1:
        raise ValueError("factor profile is undefined for constant polynomials")
    profile = []
    for g, mult in _sqf_list(f.ctx, f.data):
        for part, dd in _ddf(f.ctx, g):
            profile.extend([dd] * ((_deg(part) // dd) * mult))
    return tuple(sorted(profile))


def lift_poly(f: Poly, emap: EmbeddingMap) -> Poly:
    if f.ctx != emap.src:
        raise ContextMismatch("polynomial does not live over the map's source")
    return Poly._raw(emap.dst, _lift(emap, f.data))


def distinct_roots_in(g: Poly, K: FieldCtx, emap: EmbeddingMap | None = None) -> list[FieldElement]:
    """All distinct roots of g lying in K, in canonical order.

    Computed as gcd(g, T^|K| - T) with the power reduced modulo g by
    repeated squaring, followed by root extraction from the resulting
    squarefree fully-split factor.
    """
    if emap is None:
        emap = find_embedding(g.ctx, K)
    elif emap.src != g.ctx or emap.dst != K:
        raise ContextMismatch("embedding map is inconsistent with the contexts")
    lifted = _lift(emap, g.data)
    if _deg(lifted) < 1:
        return []
    roots = _roots_in_ctx(K, lifted)
    roots.sort(key=element_sort_key)
    return [FieldElement._raw(K, r) for r in roots]


def all_roots(g: Poly, max_ambient_degree: int = 16) -> RootSet:
    """Every root of g with multiplicity, in the smallest ambient field.

    The ambient degree over the prime field is the lcm of the
    coefficient-field degree times the irreducible factor degrees; if it
    exceeds max_ambient_degree, BudgetExceeded(required_degree) is
    raised.
    """
    amb, emap, pairs = _all_roots_raw(g.ctx, g.data, max_ambient_degree)
    return RootSet(ambient=amb, lift=emap, pairs=tuple(pairs))
