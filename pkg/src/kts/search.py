"""Exhaustive search over defining equations for good tower candidates.

Enumerates all (alpha, f) pairs over a field, groups them into scaling
orbits, certifies one representative per orbit, and collects the
certified equivalence classes together with rejection statistics. The
output is deterministic: independent of worker count and identical
across runs.
"""

from __future__ import annotations

import itertools
import json
import math
import zlib
from dataclasses import dataclass

from . import gf, poly, tower
from .gf import FieldCtx, FieldElement
from .poly import Poly
from .tower import (ClosureLimits, ClosureStatus, DEFAULT_LIMITS,
                    EquivalenceKey, KummerSpec, ShapeError, TowerReport)

# rejection categories, checked in this order; "budget" counts closure
# budget exhaustion separately from hypothesis failures
CATEGORIES = ("q_mod_m", "gcd_condition", "shape", "splits",
              "disjoint_zero_sets", "separable_f", "coprime_b1_b2")


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one exhaustive search."""

    field: FieldCtx
    m: int
    f_degree: int
    alpha_filter: tuple | None = None
    limits: ClosureLimits = DEFAULT_LIMITS
    dedup: bool = True
    parallelism: int = 1

    def alphas(self):
        if self.alpha_filter is not None:
            out = []
            for a in self.alpha_filter:
                c = a.coeffs if isinstance(a, FieldElement) else self.field.canon(a)
                if not c:
                    raise ValueError("alpha filter entries must be nonzero")
                out.append(c)
            return out
        return list(self.field.nonzero_elements())

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "m": self.m,
            "f_degree": self.f_degree,
            "alpha_filter": (None if self.alpha_filter is None
                             else [list(a) for a in self.alphas()]),
            "max_s0": self.limits.max_size,
            "max_ambient_degree": self.limits.max_ambient_degree,
            "dedup": self.dedup,
        }


def _candidate_data(cfg: SearchConfig):
    """Raw (alpha, f_coeffs) pairs in deterministic order."""
    ctx = cfg.field
    lowers = list(ctx.elements())
    leads = list(ctx.nonzero_elements())
    for alpha in cfg.alphas():
        for lead in leads:
            for low in itertools.product(lowers, repeat=cfg.f_degree):
                yield alpha, low + (lead,)


def enumerate_candidates(cfg: SearchConfig):
    """All candidate specs: alpha in GF(q)* (or the filter), f of exact
    degree f_degree with arbitrary nonzero leading coefficient."""
    ctx = cfg.field
    for alpha, f_data in _candidate_data(cfg):
        yield KummerSpec(ctx, cfg.m, FieldElement._raw(ctx, alpha),
                         Poly._raw(ctx, f_data))


def candidate_count(cfg: SearchConfig) -> int:
    q = cfg.field.order
    n_alpha = len(cfg.alphas()) if cfg.alpha_filter is not None else q - 1
    return n_alpha * (q - 1) * q ** cfg.f_degree


def _categorize(spec: KummerSpec, limits: ClosureLimits) -> str:
    """First failed hypothesis, "budget", or "pass".

    Hypotheses are checked before the closure is attempted, so rejected
    candidates never pay for a saturation run.
    """
    ctx = spec.field
    if ctx.order % spec.m != 1:
        return "q_mod_m"
    if math.gcd(spec.m, spec.f.degree) != 1:
        return "gcd_condition"
    if spec.f.degree >= spec.m:
        return "shape"
    sc = tower.check_splitting(spec)
    if not sc.splits:
        return "splits"
    if not sc.disjoint_zero_sets:
        return "disjoint_zero_sets"
    if not poly.is_separable(spec.f):
        return "separable_f"
    rec = tower.to_recursion(spec)
    if not rec.coprime:
        return "coprime_b1_b2"
    closure = tower.compute_closure(rec, limits)
    if closure.status != ClosureStatus.CLOSED:
        return "budget"
    return "pass"


def _categorize_raw(args) -> tuple[int, str]:
    idx, descriptor, m, alpha, f_data, max_size, max_deg = args
    ctx = gf.ctx_from_descriptor(descriptor)
    spec = KummerSpec(ctx, m, FieldElement._raw(ctx, tuple(alpha)),
                      Poly._raw(ctx, tuple(tuple(c) for c in f_data)))
    return idx, _categorize(spec, ClosureLimits(max_size, max_deg))


@dataclass(frozen=True)
class ClassEntry:
    """One certified equivalence class found by a search."""

    key: EquivalenceKey
    report: TowerReport
    count: int  # enumerated equations in this class

    def to_json(self) -> dict:
        return {"key": self.key.code, "count": self.count,
                "report": self.report.to_json()}


@dataclass
class SearchOutcome:
    """Aggregated result of run_search."""

    config: SearchConfig
    total_candidates: int
    passing_equations: int
    classes: list[ClassEntry]
    rejected_by: dict[str, int]
    exceeded_budget: int

    def class_keys(self) -> list[EquivalenceKey]:
        return [c.key for c in self.classes]

    def to_json_obj(self) -> dict:
        return {
            "config": self.config.to_json(),
            "total_candidates": self.total_candidates,
            "passing_equations": self.passing_equations,
            "classes": [c.to_json() for c in self.classes],
            "rejected_by": dict(sorted(self.rejected_by.items())),
            "exceeded_budget": self.exceeded_budget,
        }

    def to_json(self) -> str:
        """Canonical serialization; byte-identical across runs and workers."""
        return json.dumps(self.to_json_obj(), sort_keys=True,
                          separators=(",", ":"))

    def to_csv(self) -> str:
        """Flat table: one row per class."""
        lines = ["key,alpha,f,s0_size,lambda_num,lambda_den,orbit_size"]
        for entry in self.classes:
            rep = entry.report
            lam = rep.lambda_bound
            alpha_text = gf.format_element(rep.spec.alpha)
            f_text = poly.format_poly(rep.spec.f)
            lines.append(",".join([
                _csv_quote(entry.key.code),
                _csv_quote(alpha_text),
                _csv_quote(f_text),
                str(rep.s0_size),
                str(lam.numerator), str(lam.denominator),
                str(entry.count),
            ]))
        return "\n".join(lines) + "\n"


def _csv_quote(text: str) -> str:
    if any(ch in text for ch in ",\"\n"):
        return '"' + text.replace('"', '""') + '"'
    return text


def _class_sort_key(entry: ClassEntry):
    lam = entry.report.lambda_bound
    return (-lam, entry.key, entry.report.spec.encode())


def _shard_of(code: str, jobs: int) -> int:
    return zlib.crc32(code.encode("utf-8")) % jobs


def run_search(cfg: SearchConfig) -> SearchOutcome:
    """Certify every candidate equation and collect certified classes.

    With dedup on, candidates are grouped by scaling orbit first and one
    representative per orbit is certified; counts are reported in
    candidate units (orbit sizes folded in). Budget exhaustion is
    tracked apart from hypothesis failures, since the certification
    conditions are sufficient, not necessary.
    """
    ctx = cfg.field
    limits = cfg.limits
    rejected = {}
    exceeded = 0
    passing = 0
    classes: list[ClassEntry] = []
    total = 0

    if cfg.dedup:
        alphas_in_scope = set(cfg.alphas()) if cfg.alpha_filter is not None else None
        seen = set()
        orbits = []  # (key, representative raw pair, in-scope count)
        for alpha, f_data in _candidate_data(cfg):
            total += 1
            if (alpha, f_data) in seen:
                continue
            members = set()
            best_enc = None
            best_pair = None
            for c in ctx.nonzero_elements():
                pair = tower._transform_raw(ctx, cfg.m, alpha, f_data, c)
                members.add(pair)
                enc = tower._encode_raw(*pair)
                if best_enc is None or enc < best_enc:
                    best_enc = enc
                    best_pair = pair
            if alphas_in_scope is None:
                in_scope = members
            else:
                in_scope = {pr for pr in members if pr[0] in alphas_in_scope}
            seen.update(in_scope)
            code = (f"m={cfg.m};alpha={gf.format_element(best_pair[0])};"
                    f"f={poly.format_poly(Poly._raw(ctx, best_pair[1]))}")
            key = EquivalenceKey(ctx.label, cfg.m, best_enc, code)
            orbits.append((key, best_pair, len(in_scope)))

        verdicts = _run_orbit_verdicts(cfg, orbits)
        for (key, pair, count), verdict in zip(orbits, verdicts):
            if verdict == "pass":
                passing += count
                spec = KummerSpec(ctx, cfg.m, FieldElement._raw(ctx, pair[0]),
                                  Poly._raw(ctx, pair[1]))
                report = tower.certify(spec, limits)
                classes.append(ClassEntry(key, report, count))
            elif verdict == "budget":
                exceeded += count
            else:
                rejected[verdict] = rejected.get(verdict, 0) + count
    else:
        for spec in enumerate_candidates(cfg):
            total += 1
            verdict = _categorize(spec, limits)
            if verdict == "pass":
                passing += 1
                report = tower.certify(spec, limits)
                classes.append(ClassEntry(tower.canonical_key(spec), report, 1))
            elif verdict == "budget":
                exceeded += 1
            else:
                rejected[verdict] = rejected.get(verdict, 0) + 1

    classes.sort(key=_class_sort_key)
    return SearchOutcome(config=cfg, total_candidates=total,
                         passing_equations=passing, classes=classes,
                         rejected_by=rejected, exceeded_budget=exceeded)


def _run_orbit_verdicts(cfg: SearchConfig, orbits) -> list[str]:
    """Verdict per orbit representative, optionally across workers.

    Orbits are sharded by a stable hash of the class key so each lands
    on one worker; the merged result does not depend on the worker
    count.
    """
    ctx = cfg.field
    jobs = max(1, cfg.parallelism)
    if jobs == 1 or len(orbits) < 2 * jobs:
        out = []
        for _, pair, _ in orbits:
            spec = KummerSpec(ctx, cfg.m, FieldElement._raw(ctx, pair[0]),
                              Poly._raw(ctx, pair[1]))
            out.append(_categorize(spec, cfg.limits))
        return out

    tasks = []
    descriptor = ctx.descriptor()
    for idx, (key, pair, _) in enumerate(orbits):
        shard = _shard_of(key.code, jobs)
        tasks.append((shard, (idx, descriptor, cfg.m, list(pair[0]),
                              [list(c) for c in pair[1]],
                              cfg.limits.max_size,
                              cfg.limits.max_ambient_degree)))
    verdicts: list[str | None] = [None] * len(orbits)
    try:
        import multiprocessing
        mp = multiprocessing.get_context("fork")
        with mp.Pool(processes=jobs) as pool:
            for idx, verdict in pool.imap_unordered(
                    _categorize_raw, [t for _, t in tasks], chunksize=16):
                verdicts[idx] = verdict
    except (ImportError, OSError):  # pragma: no cover - no fork support
        for _, task in tasks:
            idx, verdict = _categorize_raw(task)
            verdicts[idx] = verdict
    return verdicts  # type: ignore[return-value]


@dataclass(frozen=True)
class Partition:
    known: tuple[ClassEntry, ...]
    new: tuple[ClassEntry, ...]


def classify_new(outcome: SearchOutcome, known: list[EquivalenceKey]) -> Partition:
    """Split the outcome's classes into already-known and new ones."""
    known_set = {(k.field_label, k.m, k.encoding) for k in known}
    old, fresh = [], []
    for entry in outcome.classes:
        ident = (entry.key.field_label, entry.key.m, entry.key.encoding)
        (old if ident in known_set else fresh).append(entry)
    return Partition(tuple(old), tuple(fresh))
