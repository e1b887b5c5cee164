"""Exhaustive theorem harness, boundary counters and the sign-dynamics tracer."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .eigen import (
    SCHEMA,
    RationalFunction,
    SpectrumReport,
    d_symbolic_all,
    jt_evaluate,
    spectrum_report,
)
from .enumeration import TreeStream
from .poly import (
    IntPolynomial,
    SturmCounter,
    isolate_roots,
    product,
    rational_str,
    refine_interval,
    squarefree_part,
)
from .tree import SubdividedEdge, Tree, is_subdivided_edge, parse_tree, root_at

INTERVAL = (Fraction(-2), Fraction(2))
MIN_DISTINCT = 4


# ---------------------------------------------------------------------------
# theorem harness
# ---------------------------------------------------------------------------


@dataclass
class Violation:
    n: int
    index: int
    tree: Tree
    distinct_in_interval: int
    report: SpectrumReport

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "index": self.index,
            "tree": self.tree.to_record(),
            "distinct_in_interval": self.distinct_in_interval,
            "report": self.report.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Violation":
        return cls(
            n=data["n"],
            index=data["index"],
            tree=parse_tree(data["tree"]),
            distinct_in_interval=data["distinct_in_interval"],
            report=SpectrumReport.from_json(data["report"]),
        )


@dataclass
class VerificationReport:
    n_max: int
    k: int
    trees_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    min_distinct_in_interval: int | None = None
    per_n: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0
    checkpoint: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, n: int, index: int, t: Tree) -> None:
        rep = spectrum_report(t)
        distinct = rep.distinct_in_open_m2_2
        self.trees_checked += 1
        self.per_n[n] = self.per_n.get(n, 0) + 1
        if self.min_distinct_in_interval is None or distinct < self.min_distinct_in_interval:
            self.min_distinct_in_interval = distinct
        if distinct < MIN_DISTINCT or rep.is_integral:
            self.violations.append(Violation(n, index, t, distinct, rep))

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two partial reports; commutative and associative."""
        if (self.n_max, self.k) != (other.n_max, other.k):
            raise ValueError("cannot merge reports for different runs")
        mins = [m for m in (self.min_distinct_in_interval, other.min_distinct_in_interval) if m is not None]
        per_n = dict(self.per_n)
        for n, c in other.per_n.items():
            per_n[n] = per_n.get(n, 0) + c
        return VerificationReport(
            n_max=self.n_max,
            k=self.k,
            trees_checked=self.trees_checked + other.trees_checked,
            violations=sorted(self.violations + other.violations, key=lambda v: (v.n, v.index)),
            min_distinct_in_interval=min(mins) if mins else None,
            per_n=dict(sorted(per_n.items())),
            elapsed=max(self.elapsed, other.elapsed),
            checkpoint=max((c for c in (self.checkpoint, other.checkpoint) if c), default=None),
        )

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "verification",
            "n_max": self.n_max,
            "k": self.k,
            "trees_checked": self.trees_checked,
            "per_n": {str(n): c for n, c in sorted(self.per_n.items())},
            "violations": [v.to_json() for v in self.violations],
            "min_distinct_in_interval": self.min_distinct_in_interval,
            "checkpoint": None if self.checkpoint is None else list(self.checkpoint),
            "elapsed": self.elapsed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        if data.get("schema") != SCHEMA or data.get("kind") != "verification":
            raise ValueError("not a verification report")
        cp = data.get("checkpoint")
        return cls(
            n_max=data["n_max"],
            k=data["k"],
            trees_checked=data["trees_checked"],
            violations=[Violation.from_json(v) for v in data["violations"]],
            min_distinct_in_interval=data["min_distinct_in_interval"],
            per_n={int(n): c for n, c in data["per_n"].items()},
            elapsed=data["elapsed"],
            checkpoint=None if cp is None else (cp[0], cp[1]),
        )


def _verify_slice(args: tuple[int, int, int, int, int, int]) -> VerificationReport:
    n_max, k, n, start, shard, shards = args
    rep = VerificationReport(n_max, k)
    stream = TreeStream(n, min_subdivided=k, start=start, shard=shard, shards=shards)
    for i, t in stream.indexed():
        rep.record(n, i, t)
    return rep


def _save(path: Path, rep: VerificationReport) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(rep.to_json(), indent=2))
    os.replace(tmp, path)


def verify_theorem(
    n_max: int,
    k: int = 7,
    jobs: int = 1,
    checkpoint_path: str | Path | None = None,
    checkpoint_every: int = 500,
) -> VerificationReport:
    """Check every tree on k..n_max vertices whose longest subdivided edge has >= k vertices.

    A tree violates the claim if it has fewer than four distinct eigenvalues
    in (-2, 2) or is integral.  Violations are collected, never raised.
    The checkpoint stores (n, next index) so an interrupted run resumes
    exactly where it stopped.
    """
    t0 = time.perf_counter()
    path = Path(checkpoint_path) if checkpoint_path else None
    report = VerificationReport(n_max, k)
    if path is not None and path.exists():
        saved = VerificationReport.from_json(json.loads(path.read_text()))
        if (saved.n_max, saved.k) != (n_max, k):
            raise ValueError(f"checkpoint {path} belongs to a different run")
        report = saved
    first_n, first_index = report.checkpoint if report.checkpoint else (k, 0)
    done_before = report.elapsed
    for n in range(max(first_n, k), n_max + 1):
        start = first_index if n == first_n else 0
        if jobs > 1:
            tasks = [(n_max, k, n, start, j, jobs) for j in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(_verify_slice, tasks):
                    report = report.merge(part)
        else:
            stream = TreeStream(n, min_subdivided=k, start=start)
            for i, t in stream.indexed():
                report.record(n, i, t)
                if path is not None and (i + 1) % checkpoint_every == 0:
                    report.checkpoint = (n, i + 1)
                    report.elapsed = done_before + time.perf_counter() - t0
                    _save(path, report)
        report.checkpoint = (n + 1, 0)
        if path is not None:
            report.elapsed = done_before + time.perf_counter() - t0
            _save(path, report)
    report.elapsed = done_before + time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# theta = +-2 boundary counts
# ---------------------------------------------------------------------------


def _check_edge(t: Tree, edge: SubdividedEdge) -> None:
    if not is_subdivided_edge(t, edge):
        raise ValueError(f"{edge} is not a subdivided edge of the tree")


def theta_boundary_counts(t: Tree, edge: SubdividedEdge) -> tuple[int, int]:
    """Positive-or-pole counts over path vertices 2..m at theta = 2 and theta = -2.

    The tree is rooted at the first path vertex, which is excluded.  Signs
    are those of the unmodified d-values: a zero-fixed child counts as
    zero and the vertex above it as a pole.
    """
    _check_edge(t, edge)
    rt = root_at(t, edge.vertices[0])

    def count(theta: int) -> int:
        values, _ = jt_evaluate(rt, theta)
        hits = 0
        for v in edge.vertices[1:]:
            s = values[v - 1].raw_sign
            if s is None or s > 0:
                hits += 1
        return hits

    return count(2), count(-2)


def theta_bounds_hold(t: Tree, edge: SubdividedEdge) -> bool:
    at2, atm2 = theta_boundary_counts(t, edge)
    return at2 >= edge.length - 2 and atm2 <= 2


# ---------------------------------------------------------------------------
# sign-dynamics tracer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Breakpoint:
    lo: Fraction
    hi: Fraction
    events: tuple[str, ...]  # per path vertex: "0" zero, "p" pole, "" nothing

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)


@dataclass(frozen=True)
class Panel:
    lo: Fraction
    hi: Fraction
    sample: Fraction
    signs: tuple[str, ...]


@dataclass(frozen=True)
class SignTrace:
    path: tuple[int, ...]
    breakpoints: tuple[Breakpoint, ...]
    panels: tuple[Panel, ...]
    root_zero_count: int
    case: str

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "sign_trace",
            "path": list(self.path),
            "breakpoints": [
                {
                    "interval": [rational_str(b.lo), rational_str(b.hi)],
                    "approx": b.approx,
                    "events": list(b.events),
                }
                for b in self.breakpoints
            ],
            "panels": [
                {
                    "interval": [rational_str(p.lo), rational_str(p.hi)],
                    "sample": rational_str(p.sample),
                    "signs": "".join(p.signs),
                }
                for p in self.panels
            ],
            "root_zero_count": self.root_zero_count,
            "case": self.case,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SignTrace":
        if data.get("schema") != SCHEMA or data.get("kind") != "sign_trace":
            raise ValueError("not a sign trace")
        return cls(
            path=tuple(data["path"]),
            breakpoints=tuple(
                Breakpoint(Fraction(b["interval"][0]), Fraction(b["interval"][1]), tuple(b["events"]))
                for b in data["breakpoints"]
            ),
            panels=tuple(
                Panel(Fraction(p["interval"][0]), Fraction(p["interval"][1]), Fraction(p["sample"]), tuple(p["signs"]))
                for p in data["panels"]
            ),
            root_zero_count=data["root_zero_count"],
            case=data["case"],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lo", "hi", "sample", "lo_approx", "hi_approx"] + [f"d{v}" for v in self.path])
        for p in self.panels:
            w.writerow(
                [rational_str(p.lo), rational_str(p.hi), rational_str(p.sample), float(p.lo), float(p.hi)]
                + list(p.signs)
            )
        return buf.getvalue()


def _proof_case(d_last: RationalFunction) -> str:
    """Which branch of the endpoint argument the far path vertex falls into.

    "nonpositive_somewhere": d_m(alpha) <= 0 for some alpha in (0, 2];
    "positive_on_0_2": d_m > 0 on all of (0, 2] (a pole at 2 counts as positive).
    """
    num, den = d_last.num, d_last.den
    if SturmCounter(num).count(0, 2) or SturmCounter(den).count(0, 2):
        return "nonpositive_somewhere"
    if den.sign_at(2) == 0:
        return "positive_on_0_2"
    return "positive_on_0_2" if num.sign_at(2) * den.sign_at(2) > 0 else "nonpositive_somewhere"


def trace_sign_dynamics(t: Tree, edge: SubdividedEdge, width: Fraction = Fraction(1, 2**16)) -> SignTrace:
    """Signs of d along the path between all zeros and poles inside (-2, 2).

    Uses the reduced forms of the path vertices' root functions; each
    breakpoint is an isolating interval refined to ``width``.
    """
    _check_edge(t, edge)
    rt = root_at(t, edge.vertices[0])
    alld = d_symbolic_all(rt)
    funcs = [alld[v].reduced() for v in edge.vertices]
    factors: list[IntPolynomial] = []
    for f in funcs:
        for p in (f.num, f.den):
            if p.degree > 0:
                factors.append(squarefree_part(p))
    union = squarefree_part(product(factors)) if factors else IntPolynomial((1,))
    lo_all, hi_all = INTERVAL
    intervals = []
    if union.degree > 0:
        counter = SturmCounter(union)
        for lo, hi in isolate_roots(union, lo_all, hi_all):
            w = width
            lo, hi = refine_interval(counter, lo, hi, w)
            # keep breakpoints off the outer bounds so no panel is empty
            while lo == lo_all or hi == hi_all:
                w /= 2
                lo, hi = refine_interval(counter, lo, hi, w)
            intervals.append((lo, hi))

    num_counters = [SturmCounter(f.num) if f.num.degree > 0 else None for f in funcs]
    den_counters = [SturmCounter(f.den) if f.den.degree > 0 else None for f in funcs]
    breakpoints = []
    root_zeros = 0
    for lo, hi in intervals:
        events = []
        for nc, dc in zip(num_counters, den_counters):
            if nc is not None and nc.count(lo, hi):
                events.append("0")
            elif dc is not None and dc.count(lo, hi):
                events.append("p")
            else:
                events.append("")
        if events[0] == "0":
            root_zeros += 1
        breakpoints.append(Breakpoint(lo, hi, tuple(events)))

    edges_lo = [lo_all] + [b.hi for b in breakpoints]
    edges_hi = [b.lo for b in breakpoints] + [hi_all]
    panels = []
    for lo, hi in zip(edges_lo, edges_hi):
        sample = (lo + hi) / 2
        signs = tuple("+" if f.num.sign_at(sample) * f.den.sign_at(sample) > 0 else "-" for f in funcs)
        panels.append(Panel(lo, hi, sample, signs))

    return SignTrace(
        path=edge.vertices,
        breakpoints=tuple(breakpoints),
        panels=tuple(panels),
        root_zero_count=root_zeros,
        case=_proof_case(funcs[-1]),
    )


# ---------------------------------------------------------------------------
# integral-tree search
# ---------------------------------------------------------------------------


def _search_n(n: int) -> list[tuple[Tree, SpectrumReport]]:
    out = []
    for t in TreeStream(n):
        rep = spectrum_report(t)
        if rep.is_integral:
            out.append((t, rep))
    return out


def search_integral_trees(n_max: int, jobs: int = 1) -> list[tuple[Tree, SpectrumReport]]:
    """Every integral tree on at most n_max vertices, in enumeration order."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    sizes: Iterable[int] = range(1, n_max + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_n, sizes))
    else:
        parts = [_search_n(n) for n in sizes]
    return [item for part in parts for item in part]
