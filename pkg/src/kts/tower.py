"""Certification of recursively defined Kummer-type tower equations.

A tower candidate over GF(q) is the data (m, alpha, f) for the recursion
y^m = (x^m - alpha*f(x) + alpha) / f(x), or more generally a coprime
pair (b1, b2) with deg b1 = m for y^m = b1(x)/b2(x). The certification
pipeline checks the splitting hypotheses, saturates the finite closure
set S0 (zeros of b1 and b2, closed under taking roots of
sigma_gamma(T) = b2(T)*gamma^m - b1(T) for every member gamma), and
derives the exact rational lower bound 2m/(|S0|-1) for the tower limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import gf, poly
from .gf import ContextMismatch, EmbeddingMap, FieldCtx, FieldElement, element_sort_key
from .poly import BudgetExceeded, Poly, _all_roots_raw, _lift, _sub, _scale, find_embedding


class ShapeError(ValueError):
    """The defining data does not have the required polynomial shape."""


class DegenerateBound(ValueError):
    """The limit bound 2m/(|S0|-1) is undefined for |S0| <= 1."""


class ClosureStatus:
    CLOSED = "closed"
    EXCEEDED_SIZE = "exceeded_size"
    EXCEEDED_DEGREE = "exceeded_degree"


@dataclass(frozen=True)
class ClosureLimits:
    """Budgets for the closure computation."""

    max_size: int = 64
    max_ambient_degree: int = 16


DEFAULT_LIMITS = ClosureLimits()


# ----------------------------------------------------------------------
# defining data
# ----------------------------------------------------------------------

class KummerSpec:
    """Defining data (field, m, alpha, f) of a Kummer-type recursion.

    alpha must be a nonzero element of the field and f a nonzero
    polynomial over it. Arithmetic hypotheses (q = 1 mod m, shape and
    splitting conditions) are diagnosed by certify(), not enforced here,
    so that search candidates can be constructed and then rejected.
    """

    __slots__ = ("field", "m", "alpha", "f")

    def __init__(self, field: FieldCtx, m: int, alpha: FieldElement, f: Poly):
        if not isinstance(m, int) or m < 2:
            raise ValueError(f"m must be an integer >= 2, got {m}")
        if alpha.ctx != field:
            raise ContextMismatch("alpha does not belong to the base field")
        if f.ctx != field:
            raise ContextMismatch("f is not defined over the base field")
        if alpha.is_zero:
            raise ValueError("alpha must be nonzero")
        if f.is_zero:
            raise ValueError("f must be nonzero")
        self.field = field
        self.m = m
        self.alpha = alpha
        self.f = f

    def encode(self) -> tuple:
        return (self.alpha.coeffs, self.f.data)

    def __eq__(self, other):
        return (isinstance(other, KummerSpec) and self.field == other.field
                and self.m == other.m and self.alpha == other.alpha
                and self.f == other.f)

    def __hash__(self):
        return hash((self.field.label, self.m, self.encode()))

    def __repr__(self):
        return (f"KummerSpec(q={self.field.order}, m={self.m}, "
                f"alpha={self.alpha}, f={self.f})")

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "m": self.m,
            "alpha": self.alpha.to_json(),
            "f": self.f.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "KummerSpec":
        ctx = gf.ctx_from_descriptor(data["field"])
        return cls(ctx, int(data["m"]),
                   FieldElement.from_json(ctx, data["alpha"]),
                   Poly.from_json(ctx, data["f"]))


class RecursionSpec:
    """General recursion data y^m = b1(x)/b2(x) with deg b1 = m."""

    __slots__ = ("field", "m", "b1", "b2", "coprime", "violations")

    def __init__(self, field: FieldCtx, m: int, b1: Poly, b2: Poly,
                 strict: bool = True):
        if not isinstance(m, int) or m < 2:
            raise ValueError(f"m must be an integer >= 2, got {m}")
        if b1.ctx != field or b2.ctx != field:
            raise ContextMismatch("b1/b2 are not defined over the base field")
        if b1.is_zero or b2.is_zero:
            raise ShapeError("b1 and b2 must be nonzero")
        violations = []
        if b1.degree != m:
            violations.append(f"deg b1 must equal m={m}, got {b1.degree}")
        if math.gcd(m, b2.degree) != 1:
            violations.append(
                f"gcd(m, deg b2) must be 1, got gcd({m}, {b2.degree})")
        if field.order % m != 1:
            violations.append(f"q must be 1 mod m: {field.order} mod {m} != 1")
        coprime = poly.poly_gcd(b1, b2).degree == 0
        if not coprime:
            violations.append("b1 and b2 must be coprime polynomials")
        if strict and violations:
            raise ShapeError("; ".join(violations))
        self.field = field
        self.m = m
        self.b1 = b1
        self.b2 = b2
        self.coprime = coprime
        self.violations = tuple(violations)

    def __repr__(self):
        return f"RecursionSpec(q={self.field.order}, m={self.m}, b1={self.b1}, b2={self.b2})"


def to_recursion(spec: KummerSpec) -> RecursionSpec:
    """The recursion pair b1 = T^m - alpha*f + alpha, b2 = f."""
    ctx = spec.field
    if spec.f.degree >= spec.m:
        raise ShapeError(
            f"deg f must be smaller than m: deg f = {spec.f.degree}, m = {spec.m}")
    a = spec.alpha.coeffs
    xm = poly._trim([()] * spec.m + [(1,)])
    b1 = _sub(ctx, xm, _scale(ctx, spec.f.data, a))
    b1 = poly._add(ctx, b1, (a,))
    return RecursionSpec(ctx, spec.m, Poly._raw(ctx, b1), spec.f, strict=False)


def _t_pow_m_plus_alpha(spec: KummerSpec) -> Poly:
    data = poly._trim([spec.alpha.coeffs] + [()] * (spec.m - 1) + [(1,)])
    return Poly._raw(spec.field, data)


# ----------------------------------------------------------------------
# hypothesis checks
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SplitCheck:
    """Outcome of the splitting hypotheses for a Kummer candidate."""

    gcd_m_q: bool
    gcd_condition: bool
    splits: bool
    disjoint_zero_sets: bool
    roots_found: int
    split_bound: int | None

    @property
    def passed(self) -> bool:
        return (self.gcd_m_q and self.gcd_condition and self.splits
                and self.disjoint_zero_sets)

    def place_bound(self, level: int) -> int:
        """Rational-place lower bound m^(level+1) + 1 at tower level i."""
        if self.split_bound is None:
            raise ValueError("splitting hypotheses did not pass")
        return places_lower_bound(self.split_bound, 1, self.split_bound ** level)


_SPLIT_ROOT_CACHE: dict[tuple, int] = {}


def _count_roots_of_tm_alpha(spec: KummerSpec) -> int:
    key = (spec.field.label, spec.m, spec.alpha.coeffs)
    hit = _SPLIT_ROOT_CACHE.get(key)
    if hit is None:
        tm = _t_pow_m_plus_alpha(spec)
        hit = len(poly.distinct_roots_in(tm, spec.field))
        _SPLIT_ROOT_CACHE[key] = hit
    return hit


def check_splitting(spec: KummerSpec) -> SplitCheck:
    """Check that T^m + alpha splits simply in GF(q), away from f's zeros.

    Records gcd(m, q) = 1, gcd(m, deg f) = 1, that T^m + alpha has
    exactly m distinct roots in the base field, and that f shares no
    zero with T^m + alpha. When everything passes, the splitting bound m
    holds, with place counts at least m^(i+1) + 1 at level i.
    """
    q = spec.field.order
    gcd_m_q = math.gcd(spec.m, q) == 1
    gcd_condition = math.gcd(spec.m, spec.f.degree) == 1
    found = _count_roots_of_tm_alpha(spec)
    splits = found == spec.m
    disjoint = poly.poly_gcd(spec.f, _t_pow_m_plus_alpha(spec)).degree == 0
    passed = gcd_m_q and gcd_condition and splits and disjoint
    return SplitCheck(gcd_m_q, gcd_condition, splits, disjoint, found,
                      spec.m if passed else None)


def sigma(rec, gamma: FieldElement) -> Poly:
    """The predecessor polynomial b2(T)*gamma^m - b1(T) over gamma's field."""
    if isinstance(rec, KummerSpec):
        rec = to_recursion(rec)
    amb = gamma.ctx
    emap = find_embedding(rec.field, amb)
    b1 = _lift(emap, rec.b1.data)
    b2 = _lift(emap, rec.b2.data)
    gm = amb.pow(gamma.coeffs, rec.m)
    return Poly._raw(amb, _sub(amb, _scale(amb, b2, gm), b1))


# ----------------------------------------------------------------------
# closure computation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureResult:
    """A computed closure set with its ambient field and run statistics."""

    status: str
    ambient: FieldCtx
    element_coeffs: tuple
    generations: int
    seed_size: int
    base_map: EmbeddingMap | None

    @property
    def size(self) -> int:
        return len(self.element_coeffs)

    @property
    def elements(self) -> tuple:
        return tuple(FieldElement._raw(self.ambient, c) for c in self.element_coeffs)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "size": self.size,
            "ambient_degree": self.ambient.s,
            "ambient_modulus": list(self.ambient.modulus),
            "elements": [list(c) for c in self.element_coeffs],
            "generations": self.generations,
            "seed_size": self.seed_size,
        }


class _SizeExceeded(Exception):
    pass


class _ClosureEngine:
    """Worklist saturation of the closure set, generation by generation.

    The ambient field starts at the base field and is enlarged lazily to
    the compositum whenever a root escapes, re-embedding all state. A
    budget overrun aborts the run immediately; the partial element list
    is reported for diagnostics only.
    """

    def __init__(self, rec: RecursionSpec, limits: ClosureLimits):
        self.rec = rec
        self.limits = limits
        self.amb = rec.field
        self.base_map = None
        self.b1 = rec.b1.data
        self.b2 = rec.b2.data
        self.members = {}
        self.queue = []
        self.batch = []

    def _grow(self, new_amb: FieldCtx, emap: EmbeddingMap) -> None:
        up = emap.apply
        self.members = {up(x): None for x in self.members}
        self.queue = [up(x) for x in self.queue]
        self.batch = [up(x) for x in self.batch]
        self.b1 = _lift(emap, self.b1)
        self.b2 = _lift(emap, self.b2)
        if self.base_map is None:
            self.base_map = emap
        else:
            self.base_map = gf.compose_embeddings(self.base_map, emap)
        self.amb = new_amb

    def _roots(self, data) -> list[tuple]:
        amb, emap, pairs = _all_roots_raw(self.amb, data, self.limits.max_ambient_degree)
        if amb is not self.amb:
            self._grow(amb, emap)
        return [r for r, _ in pairs]

    def _absorb(self, roots) -> None:
        for r in roots:
            if r not in self.members:
                self.members[r] = None
                self.queue.append(r)
        if len(self.members) > self.limits.max_size:
            raise _SizeExceeded

    def run(self) -> ClosureResult:
        status = None
        generations = 0
        seed_size = 0
        try:
            try:
                if len(self.b1) > 1:
                    self._absorb(self._roots(self.b1))
                if len(self.b2) > 1:
                    self._absorb(self._roots(self.b2))
            finally:
                seed_size = len(self.members)
            while self.queue:
                generations += 1
                self.batch = sorted(self.queue, key=element_sort_key)
                self.queue = []
                for i in range(len(self.batch)):
                    gamma = self.batch[i]
                    gm = self.amb.pow(gamma, self.rec.m)
                    self._absorb(self._roots(
                        _sub(self.amb, _scale(self.amb, self.b2, gm), self.b1)))
            status = ClosureStatus.CLOSED
        except BudgetExceeded:
            status = ClosureStatus.EXCEEDED_DEGREE
        except _SizeExceeded:
            status = ClosureStatus.EXCEEDED_SIZE
        elements = tuple(sorted(self.members, key=element_sort_key))
        return ClosureResult(status, self.amb, elements, generations,
                             seed_size, self.base_map)


def compute_closure(rec: RecursionSpec, limits: ClosureLimits = DEFAULT_LIMITS) -> ClosureResult:
    """Minimal closed superset of the zeros of b1 and b2.

    Seeds with the distinct zeros of b1 and b2, then repeatedly adds all
    roots of sigma_gamma for newly seen gamma until stable (status
    "closed") or a budget is exhausted ("exceeded_size" when the set
    outgrows max_size, "exceeded_degree" when a root would need an
    ambient extension beyond max_ambient_degree over the prime field).
    """
    return _ClosureEngine(rec, limits).run()


def verify_closure(rec: RecursionSpec, result: ClosureResult) -> bool:
    """Re-check a closed result element by element, independently.

    For small ambient fields the roots of b1, b2 and every sigma_gamma
    are recovered by exhaustive evaluation plus repeated division, so
    the check does not rely on the root-finding pipeline.
    """
    if result.status != ClosureStatus.CLOSED:
        raise ValueError("only closed results can be verified")
    amb = result.ambient
    emap = find_embedding(rec.field, amb)
    b1 = _lift(emap, rec.b1.data)
    b2 = _lift(emap, rec.b2.data)
    members = set(result.element_coeffs)

    def roots_by_scan(data) -> set | None:
        # peel off linear factors found by scanning; None if it does not split
        rem = data
        found = set()
        for x in amb.elements():
            while len(rem) > 1 and not poly._eval(amb, rem, x):
                found.add(x)
                rem = poly._divmod(amb, rem, ((amb.neg(x)), (1,)))[0]
            if len(rem) <= 1:
                break
        return found if len(rem) <= 1 else None

    if amb.order <= (1 << 16):
        extract = roots_by_scan
    else:  # pragma: no cover - closed results at desk scale are small
        def extract(data):
            a2, _, pairs = _all_roots_raw(amb, data, amb.s)
            return {r for r, _ in pairs} if a2 is amb else None

    for data in (b1, b2):
        if len(data) > 1:
            roots = extract(data)
            if roots is None or not roots <= members:
                return False
    for gamma in result.element_coeffs:
        gm = amb.pow(gamma, rec.m)
        roots = extract(_sub(amb, _scale(amb, b2, gm), b1))
        if roots is None or not roots <= members:
            return False
    return True


def closure_is_minimal(rec: RecursionSpec, result: ClosureResult) -> bool:
    """Whether removing any non-seed element breaks closedness."""
    if result.status != ClosureStatus.CLOSED:
        raise ValueError("only closed results can be tested for minimality")
    amb = result.ambient
    emap = find_embedding(rec.field, amb)
    b1 = _lift(emap, rec.b1.data)
    b2 = _lift(emap, rec.b2.data)
    seeds = set()
    for data in (b1, b2):
        if len(data) > 1:
            _, _, pairs = _all_roots_raw(amb, data, amb.s)
            seeds.update(r for r, _ in pairs)
    rootmap = {}
    for gamma in result.element_coeffs:
        gm = amb.pow(gamma, rec.m)
        _, _, pairs = _all_roots_raw(
            amb, _sub(amb, _scale(amb, b2, gm), b1), amb.s)
        rootmap[gamma] = {r for r, _ in pairs}
    for victim in result.element_coeffs:
        if victim in seeds:
            continue
        regrown = any(victim in rootmap[g] for g in result.element_coeffs
                      if g != victim)
        if not regrown:
            return False
    return True


# ----------------------------------------------------------------------
# bounds
# ----------------------------------------------------------------------

def lambda_bound(m: int, s0_size: int) -> Fraction:
    """Lower bound 2m/(|S0| - 1) for the tower limit, as a reduced fraction."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if s0_size <= 1:
        raise DegenerateBound(
            f"the bound 2m/(|S0|-1) is undefined for |S0| = {s0_size}")
    return Fraction(2 * m, s0_size - 1)


def places_lower_bound(split_size: int, cram_size: int, ext_degree: int) -> int:
    """Rational-place count bound: ext_degree*split_size + cram_size."""
    if split_size < 0 or cram_size < 0 or ext_degree < 0:
        raise ValueError("arguments must be nonnegative")
    return ext_degree * split_size + cram_size


# ----------------------------------------------------------------------
# equivalence under scaling
# ----------------------------------------------------------------------

def transform(spec: KummerSpec, c: FieldElement) -> KummerSpec:
    """The equivalent data (c^-m * alpha, f(c*T)) for nonzero c."""
    if c.ctx != spec.field:
        raise ContextMismatch("scaling constant from a different field")
    if c.is_zero:
        raise ValueError("scaling constant must be nonzero")
    ctx = spec.field
    beta = ctx.mul(ctx.pow(c.coeffs, -spec.m), spec.alpha.coeffs)
    g = poly._compose_linear(ctx, spec.f.data, c.coeffs)
    return KummerSpec(ctx, spec.m, FieldElement._raw(ctx, beta),
                      Poly._raw(ctx, g))


def _transform_raw(ctx: FieldCtx, m: int, alpha: tuple, f: tuple, c: tuple) -> tuple:
    beta = ctx.mul(ctx.pow(c, -m), alpha)
    return beta, poly._compose_linear(ctx, f, c)


def _encode_raw(alpha: tuple, f: tuple) -> tuple:
    return (element_sort_key(alpha),
            tuple(element_sort_key(c) for c in f))


@dataclass(frozen=True, order=True)
class EquivalenceKey:
    """Canonical encoding of the minimal scaling-orbit representative."""

    field_label: str
    m: int
    encoding: tuple
    code: str = dc_field(compare=False)

    def __str__(self):
        return self.code


def _orbit_raw(ctx: FieldCtx, m: int, alpha: tuple, f: tuple):
    for c in ctx.nonzero_elements():
        yield _transform_raw(ctx, m, alpha, f, c)


def canonical_key(spec: KummerSpec) -> EquivalenceKey:
    """Orbit-invariant key: the minimal encoding over all scalings.

    Two specs related by some scaling constant in GF(q)* get equal keys;
    the number of scalings fixing the data is (q-1)/orbit size.
    """
    ctx = spec.field
    best = None
    best_pair = None
    for beta, g in _orbit_raw(ctx, spec.m, spec.alpha.coeffs, spec.f.data):
        enc = _encode_raw(beta, g)
        if best is None or enc < best:
            best = enc
            best_pair = (beta, g)
    beta, g = best_pair
    code = (f"m={spec.m};alpha={gf.format_element(beta)};"
            f"f={poly.format_poly(Poly._raw(ctx, g))}")
    return EquivalenceKey(ctx.label, spec.m, best, code)


def canonical_representative(spec: KummerSpec) -> KummerSpec:
    """The orbit member whose encoding is minimal."""
    ctx = spec.field
    best = None
    best_pair = None
    for beta, g in _orbit_raw(ctx, spec.m, spec.alpha.coeffs, spec.f.data):
        enc = _encode_raw(beta, g)
        if best is None or enc < best:
            best = enc
            best_pair = (beta, g)
    beta, g = best_pair
    return KummerSpec(ctx, spec.m, FieldElement._raw(ctx, beta), Poly._raw(ctx, g))


def orbit_size(spec: KummerSpec) -> int:
    """Number of distinct equation data in the scaling orbit."""
    seen = {t for t in _orbit_raw(spec.field, spec.m, spec.alpha.coeffs, spec.f.data)}
    return len(seen)


def verify_equivalence(a: KummerSpec, b: KummerSpec) -> FieldElement | None:
    """A witness c with transform(a, c) = b, or None if unrelated."""
    if a.field != b.field:
        raise ContextMismatch("specs live over different fields")
    if a.m != b.m:
        raise ValueError(f"specs have different exponents: {a.m} != {b.m}")
    target = (b.alpha.coeffs, b.f.data)
    ctx = a.field
    for c in ctx.nonzero_elements():
        if _transform_raw(ctx, a.m, a.alpha.coeffs, a.f.data, c) == target:
            return FieldElement._raw(ctx, c)
    return None


def closure_transform_check(spec: KummerSpec, c: FieldElement,
                            limits: ClosureLimits = DEFAULT_LIMITS) -> bool:
    """Whether S0 of the c-scaled data equals c^-1 * S0 of the original."""
    res_a = compute_closure(to_recursion(spec), limits)
    res_b = compute_closure(to_recursion(transform(spec, c)), limits)
    if res_a.status != ClosureStatus.CLOSED or res_b.status != ClosureStatus.CLOSED:
        raise ValueError("both closures must be closed for the scaling check")
    degree = math.lcm(res_a.ambient.s, res_b.ambient.s)
    if degree == res_a.ambient.s:
        common = res_a.ambient
    elif degree == res_b.ambient.s:
        common = res_b.ambient
    else:
        common = gf.make_extension(spec.field.p, degree)
    map_a = find_embedding(res_a.ambient, common)
    map_b = find_embedding(res_b.ambient, common)
    base_to_common = find_embedding(spec.field, common)
    c_inv = base_to_common.apply(spec.field.inv(c.coeffs))
    scaled = {common.mul(c_inv, map_a.apply(x)) for x in res_a.element_coeffs}
    other = {map_b.apply(x) for x in res_b.element_coeffs}
    return scaled == other


# ----------------------------------------------------------------------
# certification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TowerChecks:
    """The certification hypotheses, individually recorded."""

    q_mod_m: bool
    splits: bool
    disjoint_zero_sets: bool
    separable_f: bool
    gcd_condition: bool
    coprime_b1_b2: bool

    @property
    def all_passed(self) -> bool:
        return all((self.q_mod_m, self.splits, self.disjoint_zero_sets,
                    self.separable_f, self.gcd_condition, self.coprime_b1_b2))

    def to_json(self) -> dict:
        return {
            "q_mod_m": self.q_mod_m,
            "splits": self.splits,
            "disjoint_zero_sets": self.disjoint_zero_sets,
            "separable_f": self.separable_f,
            "gcd_condition": self.gcd_condition,
            "coprime_b1_b2": self.coprime_b1_b2,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TowerChecks":
        return cls(**{k: bool(data[k]) for k in (
            "q_mod_m", "splits", "disjoint_zero_sets", "separable_f",
            "gcd_condition", "coprime_b1_b2")})


@dataclass(frozen=True)
class TowerReport:
    """Full certification record for one tower candidate."""

    spec: KummerSpec
    checks: TowerChecks
    closure: ClosureResult | None
    split_bound: int | None
    lambda_bound: Fraction | None
    certified: bool
    canonical_key: EquivalenceKey
    optimal: bool | None = None
    shape_error: str | None = None

    @property
    def s0_size(self) -> int | None:
        """Size of the closure set; defined only for closed results."""
        if self.closure is not None and self.closure.status == ClosureStatus.CLOSED:
            return self.closure.size
        return None

    def to_json(self) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "checks": self.checks.to_json(),
            "closure": self.closure.to_json() if self.closure else None,
            "certified": self.certified,
            "canonical_key": self.canonical_key.code,
        }
        if self.split_bound is not None:
            out["split_bound"] = self.split_bound
        if self.lambda_bound is not None:
            out["lambda_bound"] = {"num": self.lambda_bound.numerator,
                                   "den": self.lambda_bound.denominator}
        if self.optimal is not None:
            out["optimal"] = self.optimal
        if self.shape_error is not None:
            out["shape_error"] = self.shape_error
        return out

    @classmethod
    def from_json(cls, data: dict) -> "TowerReport":
        spec = KummerSpec.from_json(data["spec"])
        closure = None
        if data.get("closure") is not None:
            cj = data["closure"]
            amb = gf.make_extension(spec.field.p, int(cj["ambient_degree"]),
                                    cj.get("ambient_modulus"))
            closure = ClosureResult(
                status=cj["status"], ambient=amb,
                element_coeffs=tuple(amb.canon(e) for e in cj["elements"]),
                generations=int(cj["generations"]),
                seed_size=int(cj["seed_size"]), base_map=None)
        lam = None
        if "lambda_bound" in data:
            lam = Fraction(data["lambda_bound"]["num"], data["lambda_bound"]["den"])
        return cls(
            spec=spec,
            checks=TowerChecks.from_json(data["checks"]),
            closure=closure,
            split_bound=data.get("split_bound"),
            lambda_bound=lam,
            certified=bool(data["certified"]),
            canonical_key=canonical_key(spec),
            optimal=data.get("optimal"),
            shape_error=data.get("shape_error"),
        )

    def __eq__(self, other):
        return isinstance(other, TowerReport) and self.to_json() == other.to_json()


def certify(spec: KummerSpec, limits: ClosureLimits = DEFAULT_LIMITS,
            run_closure: bool = True) -> TowerReport:
    """Run every hypothesis check plus the closure computation.

    The closure is attempted even when hypothesis checks fail, for
    diagnostic value (disable with run_closure=False). Certification
    requires all checks to pass and the closure to be closed; only then
    are the splitting bound and the exact limit bound attached.
    """
    ctx = spec.field
    sc = check_splitting(spec)
    q_mod_m = ctx.order % spec.m == 1
    separable = spec.f.degree >= 1 and poly.is_separable(spec.f)
    shape_error = None
    closure = None
    coprime = False
    try:
        rec = to_recursion(spec)
    except ShapeError as exc:
        shape_error = str(exc)
        rec = None
    if rec is not None:
        coprime = rec.coprime
        if run_closure:
            closure = compute_closure(rec, limits)
    checks = TowerChecks(q_mod_m, sc.splits, sc.disjoint_zero_sets,
                         separable, sc.gcd_condition, coprime)
    certified = (checks.all_passed and shape_error is None
                 and closure is not None
                 and closure.status == ClosureStatus.CLOSED)
    lam = None
    split_bound = None
    optimal = None
    if certified:
        lam = lambda_bound(spec.m, closure.size)
        split_bound = spec.m
        root = math.isqrt(ctx.order)
        if root * root == ctx.order:
            optimal = lam == root - 1
    return TowerReport(spec=spec, checks=checks, closure=closure,
                       split_bound=split_bound, lambda_bound=lam,
                       certified=certified, canonical_key=canonical_key(spec),
                       optimal=optimal, shape_error=shape_error)
