"""Exhaustive checks of the co-event theorems over every co-event on n <= 4 histories.

Each ``verify_*`` sweeps the full table range in chunks (optionally on a
thread pool), evaluates the relevant predicates in batch, and records every
co-event that violates a clause.  Results are merged in table order, so a
report does not depend on the number of workers.
"""
from __future__ import annotations

import time
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import coevent as ce
from .algebra import HistorySpace
from .coevent import CoEvent, SWEEP_CAP, coevent_count
from .errors import CapacityError

CHUNK_ROWS = 8192

ChunkCheck = Callable[[np.ndarray, int], tuple[dict[str, np.ndarray], dict[str, np.ndarray]]]


@dataclass
class TheoremReport:
    theorem: str
    n: int
    examined: int
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "n": self.n,
            "examined": self.examined,
            "holds": self.holds,
            "counts": dict(sorted(self.counts.items())),
            "violations": [{"table": t, "clause": c} for t, c in self.violations],
        }
        if timing:
            out["elapsed_s"] = round(self.elapsed, 4)
        return out


def _check_n(n: int):
    if not 1 <= n <= SWEEP_CAP:
        raise CapacityError(
            f"exhaustive sweeps need 1 <= n <= {SWEEP_CAP}; n={n} would mean "
            f"{coevent_count(n) if n < 7 else 'astronomically many'} co-events"
        )


def enumerate_coevents(space: HistorySpace) -> Iterator[CoEvent]:
    """Every non-constant co-event once, by ascending table integer."""
    _check_n(space.n)
    for table in range(1, (1 << space.num_events) - 1):
        yield CoEvent(space, table)


def _chunks(n: int) -> list[tuple[int, int]]:
    stop = (1 << (1 << n)) - 1
    return [(s, min(s + CHUNK_ROWS, stop)) for s in range(1, stop, CHUNK_ROWS)]


def sweep(theorem: str, n: int, check: ChunkCheck, threads: int = 1) -> TheoremReport:
    """Run ``check`` over all co-events on n histories.

    ``check(t, n)`` returns ``(violations, counted)``: boolean row masks keyed
    by clause name, and boolean row masks whose totals go into the report.
    """
    _check_n(n)
    began = time.perf_counter()

    def run(bounds):
        start, stop = bounds
        violations, counted = check(ce.coevent_matrix(n, start, stop), n)
        found = [(start + int(i), clause)
                 for clause, rows in violations.items() for i in np.flatnonzero(rows)]
        return found, {k: int(v.sum()) for k, v in counted.items()}

    chunks = _chunks(n)
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]
    report = TheoremReport(theorem, n, coevent_count(n))
    found = []
    for chunk_found, counts in results:
        found.extend(chunk_found)
        for k, v in counts.items():
            report.counts[k] = report.counts.get(k, 0) + v
    space = HistorySpace.of_size(n)
    report.violations = [(CoEvent(space, t).to_string(), c) for t, c in sorted(found)]
    report.elapsed = time.perf_counter() - began
    return report


def _theorem1(t, n):
    a = ce.batch_mp(t, n) & ce.batch_unital(t)
    b = ce.batch_filter(t, n)
    c = ce.batch_multiplicative(t, n)
    return ({"(i) MP and unital != (ii) filter": a != b,
             "(ii) filter != (iii) multiplicative": b != c,
             "(i) MP and unital != (iii) multiplicative": a != c},
            {"MP and unital": a, "filter": b, "multiplicative": c})


def _lemma1(t, n):
    hyp = ce.batch_additive(t, n) & ce.batch_unital(t)
    return ({"additive and unital but not zero-preserving": hyp & ~ce.batch_zero_preserving(t),
             "additive and unital but not C1": hyp & ~ce.batch_c1(t),
             "additive and unital but not C2": hyp & ~ce.batch_c2(t)},
            {"additive and unital": hyp})


def _lemma2(t, n):
    hyp = ce.batch_multiplicative(t, n) & ce.batch_additive(t, n)
    return ({"homomorphism but phi(A or B) != phi(A) or phi(B)": hyp & ~ce.batch_join_rule(t, n)},
            {"homomorphism": hyp})


def _lemma3(t, n):
    mult = ce.batch_multiplicative(t, n)
    mp_unital = ce.batch_mp(t, n) & ce.batch_unital(t)
    return ({"multiplicative but not zero-preserving": mult & ~ce.batch_zero_preserving(t),
             "multiplicative but not C1": mult & ~ce.batch_c1(t),
             "MP and unital but not C1": mp_unital & ~ce.batch_c1(t)},
            {"multiplicative": mult, "MP and unital": mp_unital})


def _theorem2(t, n):
    hom = ce.batch_multiplicative(t, n) & ce.batch_additive(t, n)
    mp, c1, c2 = ce.batch_mp(t, n), ce.batch_c1(t), ce.batch_c2(t)
    unital, zero = ce.batch_unital(t), ce.batch_zero_preserving(t)
    thm = unital & mp & c2
    cor = zero & mp & c2
    return ({"unital, MP, C2 but not a homomorphism": thm & ~hom,
             "zero-preserving, MP, C2 but not a homomorphism": cor & ~hom,
             "homomorphism but not unital": hom & ~unital,
             "homomorphism but not zero-preserving": hom & ~zero,
             "homomorphism but not MP": hom & ~mp,
             "homomorphism but not C1": hom & ~c1,
             "homomorphism but not C2": hom & ~c2},
            {"unital, MP, C2": thm, "zero-preserving, MP, C2": cor, "homomorphism": hom})


def verify_theorem1(space: HistorySpace, threads: int = 1) -> TheoremReport:
    """MP and unital <=> affirmed set is a filter <=> multiplicative."""
    return sweep("theorem1", space.n, _theorem1, threads)


def verify_lemma1(space: HistorySpace, threads: int = 1) -> TheoremReport:
    return sweep("lemma1", space.n, _lemma1, threads)


def verify_lemma2(space: HistorySpace, threads: int = 1) -> TheoremReport:
    return sweep("lemma2", space.n, _lemma2, threads)


def verify_lemma3(space: HistorySpace, threads: int = 1) -> TheoremReport:
    """Multiplicative => zero-preserving and C1 (and the MP-and-unital corollary)."""
    return sweep("lemma3", space.n, _lemma3, threads)


def verify_theorem2(space: HistorySpace, threads: int = 1) -> TheoremReport:
    return sweep("theorem2", space.n, _theorem2, threads)


def verify_stone(space: HistorySpace, threads: int = 1) -> TheoremReport:
    """The homomorphisms are exactly the gamma*, one per history."""
    n = space.n
    stars = [ce.classical_coevent(space, g) for g in range(n)]
    star_tables = np.array([phi.table for phi in stars], dtype=np.int64)
    weights = np.int64(1) << np.arange(1 << n, dtype=np.int64)

    def check(t, n):
        hom = ce.batch_multiplicative(t, n) & ce.batch_additive(t, n)
        tables = (t * weights).sum(axis=1)
        return ({"homomorphism that is no gamma*": hom & ~np.isin(tables, star_tables)},
                {"homomorphism": hom})

    report = sweep("stone", n, check, threads)
    report.violations += [(phi.to_string(), "gamma* is not a homomorphism")
                          for phi in stars if not ce.is_homomorphism(phi)]
    report.counts["gamma*"] = len(stars)
    if report.counts["homomorphism"] != n:
        report.violations.append(("", f"{report.counts['homomorphism']} homomorphisms, expected {n}"))
    return report


MP_ONLY_A = "10"
MP_ONLY_B = "0100"


def verify_remark(space2: HistorySpace | None = None,
                  space4: HistorySpace | None = None) -> TheoremReport:
    """The two MP-but-not-multiplicative counterexamples, hard-coded.

    (a) on {0, 1}: phi(0) = 1, phi(1) = 0.
    (b) on {0, A, B, 1} with B = 1 + A: only A is affirmed.
    """
    began = time.perf_counter()
    space2 = space2 or HistorySpace(["omega"])
    space4 = space4 or HistorySpace(["a", "b"])
    if space2.n != 1 or space4.n != 2:
        raise CapacityError("the counterexamples live on 1- and 2-history spaces")
    a = CoEvent.from_string(space2, MP_ONLY_A)
    b = CoEvent.from_affirmed(space4, [space4.event(["a"])])
    expect = [
        (a, "MP", ce.is_mp, True),
        (a, "multiplicative", ce.is_multiplicative, False),
        (a, "zero-preserving", ce.is_zero_preserving, False),
        (a, "unital", ce.is_unital, False),
        (b, "MP", ce.is_mp, True),
        (b, "zero-preserving", ce.is_zero_preserving, True),
        (b, "multiplicative", ce.is_multiplicative, False),
        (b, "unital", ce.is_unital, False),
    ]
    report = TheoremReport("remark", 2, 2)
    for phi, name, pred, want in expect:
        if bool(pred(phi)) != want:
            tag = "a" if phi is a else "b"
            report.violations.append((phi.to_string(), f"example ({tag}): {name} should be {want}"))
    report.counts = {"MP": sum(bool(ce.is_mp(p)) for p in (a, b)),
                     "multiplicative": sum(bool(ce.is_multiplicative(p)) for p in (a, b))}
    report.elapsed = time.perf_counter() - began
    return report


SWEEPS = {
    "theorem1": verify_theorem1,
    "theorem2": verify_theorem2,
    "lemma1": verify_lemma1,
    "lemma2": verify_lemma2,
    "lemma3": verify_lemma3,
    "stone": verify_stone,
}


def verify_all(max_n: int, threads: int = 1) -> list[TheoremReport]:
    _check_n(max_n)
    reports = [verify_remark()]
    for n in range(1, max_n + 1):
        space = HistorySpace.of_size(n)
        reports.extend(fn(space, threads) for fn in SWEEPS.values())
    return reports
