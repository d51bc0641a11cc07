"""Bundled reference fixtures with known expected outcomes.

Each fixture runs a certification, closure, or search and compares the
result against frozen golden values. The CLI `reproduce` command and
the acceptance tests drive these.
"""

from __future__ import annotations

from fractions import Fraction

from . import search, tower
from .gf import FieldCtx, FieldElement, make_extension
from .poly import Poly
from .search import SearchConfig, run_search
from .tower import ClosureStatus, KummerSpec, RecursionSpec


def field_9() -> FieldCtx:
    """GF(9) presented with generator relation d^2+2d+2 = 0."""
    return make_extension(3, 2, (2, 2, 1))


def field_25() -> FieldCtx:
    """GF(25) presented with generator relation d^2+4d+2 = 0."""
    return make_extension(5, 2, (2, 4, 1))


def field_81() -> FieldCtx:
    """GF(81) presented with generator relation d^4+2d^3+2 = 0."""
    return make_extension(3, 4, (2, 0, 0, 2, 1))


def spec_ex1(ctx: FieldCtx | None = None) -> KummerSpec:
    """The optimal GF(9) tower equation: m=2, alpha=1, f=T."""
    ctx = ctx or field_9()
    return KummerSpec(ctx, 2, FieldElement(ctx, 1), Poly(ctx, [0, 1]))


def spec_ex2(ctx: FieldCtx | None = None) -> KummerSpec:
    """The second GF(9) tower equation: m=2, alpha=1, f=T+1."""
    ctx = ctx or field_9()
    return KummerSpec(ctx, 2, FieldElement(ctx, 1), Poly(ctx, [1, 1]))


def recursion_ex25() -> RecursionSpec:
    """The GF(25) recursion y^2 = (x^2+(d+2)x) / ((d+2)x+1).

    Matches the alpha = 4 form: the numerator is T^2 - 4*f(T) + 4 for
    f = (d+2)T + 1.
    """
    ctx = field_25()
    b1 = Poly(ctx, [0, (2, 1), 1])   # T^2 + (d+2)T
    b2 = Poly(ctx, [1, (2, 1)])
    return RecursionSpec(ctx, 2, b1, b2)


def alpha_ex81(ctx: FieldCtx | None = None) -> FieldElement:
    ctx = ctx or field_81()
    return FieldElement(ctx, (1, 0, 2, 2))  # 2d^3+2d^2+1


def spec_ex81_i() -> KummerSpec:
    """New tower I over GF(81): f = (2d^3+2d^2+2)T + (d^3+d^2+2)."""
    ctx = field_81()
    return KummerSpec(ctx, 2, alpha_ex81(ctx),
                      Poly(ctx, [(2, 0, 1, 1), (2, 0, 2, 2)]))


def spec_ex81_j() -> KummerSpec:
    """New tower J over GF(81): f = (d^3+d^2)T + (2d^3+2d^2)."""
    ctx = field_81()
    return KummerSpec(ctx, 2, alpha_ex81(ctx),
                      Poly(ctx, [(0, 0, 2, 2), (0, 0, 1, 1)]))


def table1_rows() -> list[KummerSpec]:
    """Six scaled variants of the spec_ex1 equation."""
    ctx = field_9()
    rows = [
        ((1, 1), [0, (2, 1)]),   # alpha=d+1,  f=(d+2)T
        ((1, 1), [0, (1, 2)]),   # alpha=d+1,  f=(2d+1)T
        ((2,), [0, (1, 1)]),     # alpha=2,    f=(d+1)T
        ((2, 2), [0, (0, 2)]),   # alpha=2d+2, f=2dT
        ((1,), [0, 2]),          # alpha=1,    f=2T
        ((2, 2), [0, (0, 1)]),   # alpha=2d+2, f=dT
    ]
    return [KummerSpec(ctx, 2, FieldElement(ctx, a), Poly(ctx, f))
            for a, f in rows]


EXPECTED = {
    "ex1": {"s0_size": 3, "s0": [[], [1], [2]], "lambda": Fraction(2),
            "split_bound": 2},
    "ex2": {"s0_size": 7,
            "s0": [[], [1], [2], [0, 1], [0, 2], [1, 2], [2, 1]],
            "lambda": Fraction(2, 3)},
    "ex25": {"s0_size": 5,
             "s0": [[], [1, 3], [2, 1], [3, 4], [4, 2]],
             "lambda": Fraction(1)},
    "ex81": {"passing": 8, "classes": 4, "new_s0_size": 9,
             "new_lambda": Fraction(1, 2)},
    "search9": {"classes": 2},
    "search25": {"classes": 1, "passing": 24},
}


def _check(label, got, want, messages) -> bool:
    ok = got == want
    messages.append(f"  {'ok ' if ok else 'FAIL'} {label}: got {got!r}"
                    + ("" if ok else f", expected {want!r}"))
    return ok


def check_ex1(limits=tower.DEFAULT_LIMITS) -> tuple[bool, list[str]]:
    report = tower.certify(spec_ex1(), limits)
    want = EXPECTED["ex1"]
    msgs = []
    ok = _check("certified", report.certified, True, msgs)
    ok &= _check("s0 size", report.s0_size, want["s0_size"], msgs)
    ok &= _check("s0", [list(c) for c in report.closure.element_coeffs],
                 want["s0"], msgs)
    ok &= _check("lambda bound", report.lambda_bound, want["lambda"], msgs)
    ok &= _check("split bound", report.split_bound, want["split_bound"], msgs)
    ok &= _check("optimal", report.optimal, True, msgs)
    return ok, msgs


def check_ex2(limits=tower.DEFAULT_LIMITS) -> tuple[bool, list[str]]:
    report = tower.certify(spec_ex2(), limits)
    want = EXPECTED["ex2"]
    msgs = []
    ok = _check("certified", report.certified, True, msgs)
    ok &= _check("s0 size", report.s0_size, want["s0_size"], msgs)
    ok &= _check("s0", [list(c) for c in report.closure.element_coeffs],
                 want["s0"], msgs)
    ok &= _check("lambda bound", report.lambda_bound, want["lambda"], msgs)
    return ok, msgs


def check_ex25(limits=tower.DEFAULT_LIMITS) -> tuple[bool, list[str]]:
    result = tower.compute_closure(recursion_ex25(), limits)
    want = EXPECTED["ex25"]
    msgs = []
    ok = _check("status", result.status, ClosureStatus.CLOSED, msgs)
    ok &= _check("s0 size", result.size, want["s0_size"], msgs)
    ok &= _check("s0", sorted([list(c) for c in result.element_coeffs]),
                 sorted(want["s0"]), msgs)
    ok &= _check("lambda bound", tower.lambda_bound(2, result.size),
                 want["lambda"], msgs)
    return ok, msgs


def search_config_81(jobs: int = 1) -> SearchConfig:
    ctx = field_81()
    return SearchConfig(field=ctx, m=2, f_degree=1,
                        alpha_filter=(alpha_ex81(ctx),), parallelism=jobs)


def check_ex81(limits=tower.DEFAULT_LIMITS, jobs: int = 1) -> tuple[bool, list[str]]:
    outcome = run_search(search_config_81(jobs))
    want = EXPECTED["ex81"]
    msgs = []
    ok = _check("passing equations", outcome.passing_equations, want["passing"], msgs)
    ok &= _check("classes", len(outcome.classes), want["classes"], msgs)
    known = [tower.canonical_key(spec_ex1(field_81())),
             tower.canonical_key(spec_ex2(field_81()))]
    part = search.classify_new(outcome, known)
    ok &= _check("known classes", len(part.known), 2, msgs)
    ok &= _check("new classes", len(part.new), 2, msgs)
    for entry in part.new:
        ok &= _check(f"new class {entry.key.code} s0 size",
                     entry.report.s0_size, want["new_s0_size"], msgs)
        ok &= _check(f"new class {entry.key.code} lambda",
                     entry.report.lambda_bound, want["new_lambda"], msgs)
    new_keys = {(e.key.field_label, e.key.m, e.key.encoding) for e in part.new}
    for name, spec in (("I", spec_ex81_i()), ("J", spec_ex81_j())):
        k = tower.canonical_key(spec)
        ok &= _check(f"tower {name} among new classes",
                     (k.field_label, k.m, k.encoding) in new_keys, True, msgs)
    return ok, msgs


def check_table1(limits=tower.DEFAULT_LIMITS) -> tuple[bool, list[str]]:
    base = spec_ex1()
    msgs = []
    ok = True
    for i, row in enumerate(table1_rows(), 1):
        witness = tower.verify_equivalence(base, row)
        ok &= _check(f"row {i} witness exists", witness is not None, True, msgs)
        if witness is not None:
            ok &= _check(f"row {i} scaled closure matches",
                         tower.closure_transform_check(base, witness, limits),
                         True, msgs)
    return ok, msgs


def check_search9(limits=tower.DEFAULT_LIMITS, jobs: int = 1) -> tuple[bool, list[str]]:
    cfg = SearchConfig(field=field_9(), m=2, f_degree=1, parallelism=jobs)
    outcome = run_search(cfg)
    msgs = []
    ok = _check("classes", len(outcome.classes), EXPECTED["search9"]["classes"], msgs)
    keys = {(e.key.field_label, e.key.m, e.key.encoding) for e in outcome.classes}
    for name, spec in (("ex1", spec_ex1()), ("ex2", spec_ex2())):
        k = tower.canonical_key(spec)
        ok &= _check(f"{name} class found",
                     (k.field_label, k.m, k.encoding) in keys, True, msgs)
    return ok, msgs


def check_search25(limits=tower.DEFAULT_LIMITS, jobs: int = 1) -> tuple[bool, list[str]]:
    cfg = SearchConfig(field=field_25(), m=2, f_degree=1, parallelism=jobs)
    outcome = run_search(cfg)
    want = EXPECTED["search25"]
    msgs = []
    ok = _check("classes", len(outcome.classes), want["classes"], msgs)
    ok &= _check("passing equations", outcome.passing_equations, want["passing"], msgs)
    if outcome.classes:
        ok &= _check("class s0 size", outcome.classes[0].report.s0_size, 5, msgs)
    return ok, msgs


FIXTURES = {
    "ex1": check_ex1,
    "ex2": check_ex2,
    "ex25": check_ex25,
    "ex81": check_ex81,
    "table1": check_table1,
    "search9": check_search9,
    "search25": check_search25,
}
