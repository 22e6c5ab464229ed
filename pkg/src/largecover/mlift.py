"""
Search for the least m at which a 2-handle satisfies the m-lift condition,
and the cover-degree thresholds that follow from it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

from .cover import (
    AnalysisError,
    MissingGenerator,
    NotB1One,
    Presentation,
    StaggeredRelator,
    cover_presentation,
    is_fibered,
    lift_curve_class,
    normalize_with_trace,
    staggered_rewrite,
    surgery_bound,
)
from .diagram import DualCurves, PlanarDiagram, realize
from .whitehead import Multiword, diskbusting, independence_test
from .words import to_string


@dataclass(frozen=True)
class Config:
    max_m: int = 8
    # number of disjoint disks tried for each condition-4 index
    cond4_bound: int = 4
    jobs: int = 1

    def __post_init__(self):
        if self.max_m < 1:
            raise ValueError("max_m must be at least 1")
        if self.cond4_bound < 1:
            raise ValueError("cond4_bound must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


@dataclass(frozen=True)
class ConditionResult:
    m: int
    cond1: bool
    cond2: bool
    cond3: tuple[bool, ...]
    cond4: tuple[str, ...]
    # disk classes used for condition 4, one entry per index (None when absent)
    cond4_disks: tuple[tuple[int, ...] | None, ...] = ()

    def __post_init__(self):
        if len(self.cond3) != self.m - 1 or len(self.cond4) != self.m - 1:
            raise ValueError("per-index lists must have length m - 1")

    @property
    def passed(self) -> bool:
        return self.cond1 and self.cond2 and all(self.cond3) and all(c == PASS for c in self.cond4)

    @property
    def blocked_by_cond4(self) -> bool:
        return (
            self.cond1
            and self.cond2
            and all(self.cond3)
            and UNDETERMINED in self.cond4
            and FAIL not in self.cond4
        )

    def summary(self) -> str:
        c3 = "".join("T" if c else "F" for c in self.cond3) or "-"
        c4 = "".join(c[0].upper() for c in self.cond4) or "-"
        return f"m={self.m} c1={'T' if self.cond1 else 'F'} c2={'T' if self.cond2 else 'F'} c3={c3} c4={c4}"


def threshold(k: int, m: int) -> int:
    return max(m + k - 1, 2 * k - 2)


def check_conditions(
    s: StaggeredRelator,
    d: PlanarDiagram | None,
    m: int,
    cfg: Config = Config(),
    cond1: bool | None = None,
) -> ConditionResult:
    """
    Evaluate the four conditions at ``m``.  ``d`` must carry the normalized
    relator; without it condition 4 cannot be certified and is reported
    undetermined.  ``cond1`` may be passed in when already known.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if cond1 is None:
        cond1 = diskbusting(Multiword(2, (s.source,))).busting
    n = m + s.k - 1
    cover = cover_presentation(s, n)
    full = Multiword(n, cover.relators)
    cond2 = diskbusting(full).busting
    duals = DualCurves(d) if d is not None else None
    classes = (
        [lift_curve_class(d, s, n, j, duals) for j in range(1, m + 1)] if d is not None else None
    )
    cond3, cond4, disks = [], [], []
    for i in range(1, m):
        rest = Multiword(n, cover.relators[: i - 1] + cover.relators[i:])
        res = diskbusting(rest, cfg.cond4_bound)
        cond3.append(not res.busting)
        if res.busting:
            cond4.append(FAIL)
            disks.append(None)
            continue
        outcome, used = UNDETERMINED, None
        if classes is not None:
            for w in (res.witness,) + res.alternatives:
                if independence_test(w.disk_class, classes[i:]):
                    outcome, used = PASS, w.disk_class
                    break
        if used is None:
            used = res.witness.disk_class
        cond4.append(outcome)
        disks.append(used)
    return ConditionResult(m, cond1, cond2, tuple(cond3), tuple(cond4), tuple(disks))


@dataclass
class MliftReport:
    name: str
    status: str
    geometric: bool | None = None
    b1_ok: bool | None = None
    fibered: bool | None = None
    k: int | None = None
    m_found: int | None = None
    n_threshold: int | None = None
    surface_genus: int | None = None
    surgery_n_min: int | None = None
    trail: list[ConditionResult] = field(default_factory=list)
    normalized_relator: str | None = None
    substitution: str | None = None
    mu: str | None = None
    message: str | None = None

    def __post_init__(self):
        if (self.m_found is None) != (self.n_threshold is None):
            raise ValueError("n_threshold is present exactly when m is found")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["trail"] = [
            {
                "m": c.m,
                "cond1": c.cond1,
                "cond2": c.cond2,
                "cond3": list(c.cond3),
                "cond4": list(c.cond4),
                "cond4_disks": [list(v) if v is not None else None for v in c.cond4_disks],
            }
            for c in self.trail
        ]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MliftReport":
        d = dict(d)
        d["trail"] = [
            ConditionResult(
                t["m"],
                t["cond1"],
                t["cond2"],
                tuple(t["cond3"]),
                tuple(t["cond4"]),
                tuple(tuple(v) if v is not None else None for v in t["cond4_disks"]),
            )
            for t in d.get("trail", [])
        ]
        return cls(**d)

    def trail_text(self) -> str:
        return "; ".join(c.summary() for c in self.trail)


def find_min_m(
    p: Presentation,
    cfg: Config = Config(),
    checker: Callable[..., ConditionResult] = check_conditions,
) -> MliftReport:
    """
    Full pipeline for one presentation.  Fibered inputs stop right after the
    staggered rewrite: no Whitehead computation is run for them.
    """
    report = MliftReport(p.name, status="error")
    try:
        norm = normalize_with_trace(p)
    except NotB1One as e:
        report.status, report.b1_ok, report.message = NotB1One.status, False, str(e)
        return report
    report.b1_ok = True
    q = norm.presentation
    report.normalized_relator = to_string(q.relator, 2)
    report.substitution = repr(norm.substitution)
    try:
        s = staggered_rewrite(q)
    except MissingGenerator as e:
        report.status, report.message = MissingGenerator.status, str(e)
        return report
    report.k = s.k
    report.surface_genus = s.k - 1
    report.mu = s.mu_text()
    report.fibered = is_fibered(s)
    if report.fibered:
        report.status = "fibered"
        return report

    original = realize(p.relator)
    report.geometric = bool(original)
    if not original:
        report.status = "not-realizable"
        report.message = f"no planar diagram after {original.nodes_searched} search nodes"
        return report
    d = realize(q.relator)
    d = d if d else None
    if d is None:
        report.message = "normalized relator has no planar diagram; condition 4 undetermined"

    cond1 = diskbusting(Multiword(2, (s.source,))).busting
    blocked = False
    for m in range(1, cfg.max_m + 1):
        res = checker(s, d, m, cfg, cond1=cond1)
        report.trail.append(res)
        if res.passed:
            report.m_found = m
            report.n_threshold = threshold(s.k, m)
            break
        blocked = blocked or res.blocked_by_cond4
        if not cond1:
            break
    if report.m_found is not None:
        report.status = "ok"
        if q.meridian is not None and q.longitude is not None:
            try:
                report.surgery_n_min, _ = surgery_bound(s.k, report.m_found, q)
            except ValueError as e:
                report.message = f"surgery bound unavailable: {e}"
    else:
        report.status = "cond4-undetermined" if blocked else "m-exhausted"
    return report


def analyze_safely(p: Presentation, cfg: Config = Config()) -> MliftReport:
    """``find_min_m`` with analysis errors folded into the report."""
    try:
        return find_min_m(p, cfg)
    except AnalysisError as e:
        return MliftReport(p.name, status=e.status, message=str(e))
