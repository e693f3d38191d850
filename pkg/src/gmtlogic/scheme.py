"""Minimal preclusive multiplicative co-events and the classical-world census.

The solver works on supports.  An event is non-stymied iff it meets the
complement of every maximal null event, so the minimal non-empty
non-stymied events are the minimal hitting sets of those complements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import coevent as ce
from .algebra import Event, iter_bits
from .coevent import CoEvent, classical_coevent, from_support
from .errors import CapacityError
from .measure import Measure, maximal_null_masks, strict_superset_closure

LITERAL_CAP = 4


def minimal_hitting_sets(family: list[int], n: int) -> list[int]:
    """Inclusion-minimal masks meeting every mask in ``family``.

    Level-by-level search by cardinality.  Each partial set is extended only
    by elements of its first unhit member, and candidates containing an
    already-found hitting set are dropped.  Result is sorted by (size, mask).
    """
    if any(f == 0 for f in family):
        return []
    if not family:
        return [0]
    found: list[int] = []
    frontier = {0}
    for _ in range(n):
        grown = set()
        for s in frontier:
            unhit = next(f for f in family if f & s == 0)
            for e in iter_bits(unhit):
                grown.add(s | 1 << e)
        frontier = set()
        level = []
        for s in sorted(grown):
            if any(m & s == m for m in found):
                continue
            if all(f & s for f in family):
                level.append(s)
            else:
                frontier.add(s)
        found.extend(level)
        if not frontier:
            break
    return sorted(found, key=lambda m: (m.bit_count(), m))


def minimal_nonstymied_masks(mu: Measure) -> list[int]:
    full = mu.space.full_mask
    complements = [full ^ m for m in maximal_null_masks(mu)]
    return minimal_hitting_sets(complements, mu.space.n)


def minimal_nonstymied_events(mu: Measure) -> list[Event]:
    return [mu.space.from_mask(m) for m in minimal_nonstymied_masks(mu)]


def minimal_coevents(mu: Measure) -> list[CoEvent]:
    return [from_support(mu.space.from_mask(m)) for m in minimal_nonstymied_masks(mu)]


def null_union(mu: Measure) -> int:
    out = 0
    for m in np.flatnonzero(mu.null_table):
        out |= int(m)
    return out


def preclusive_homomorphisms(mu: Measure) -> list[int]:
    """Histories lying in no null event."""
    covered = null_union(mu)
    return [g for g in range(mu.space.n) if not covered >> g & 1]


# -- the nine descriptions of a classical world ------------------------------

ITEMS = {
    "i": "history in no null event",
    "ii": "minimal non-empty non-stymied event",
    "iii": "preclusive ultrafilter",
    "iv": "maximal preclusive filter",
    "v": "preclusive homomorphism",
    "vi": "preclusive co-event obeying all classical rules",
    "vii": "preclusive, MP, zero-preserving, C2 co-event",
    "viii": "minimal preclusive multiplicative co-event",
    "ix": "minimal preclusive unital MP co-event",
}
HISTORY_ITEMS = ("i", "iii", "v", "vi", "vii")
SUPPORT_ITEMS = ("ii", "iv", "viii", "ix")


@dataclass
class ItemResult:
    item: str
    method: str
    supports: list[int]

    @property
    def description(self) -> str:
        return ITEMS[self.item]

    @property
    def nonempty(self) -> bool:
        return bool(self.supports)


@dataclass
class EquivalenceReport:
    n: int
    items: dict[str, ItemResult]
    null_cover: bool
    classical: bool
    discrepancies: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.discrepancies

    def to_dict(self, labels) -> dict:
        return {
            "null_cover": self.null_cover,
            "consistent": self.consistent,
            "discrepancies": list(self.discrepancies),
            "items": [
                {
                    "item": r.item,
                    "description": r.description,
                    "method": r.method,
                    "nonempty": r.nonempty,
                    "supports": [[labels[i] for i in iter_bits(m)] for m in r.supports],
                }
                for r in self.items.values()
            ],
        }


@lru_cache(maxsize=LITERAL_CAP + 1)
def coevent_census(n: int) -> dict[str, np.ndarray]:
    """Measure-independent predicate columns over every co-event on n histories."""
    t = ce.coevent_matrix(n)
    cols = {
        "table": t,
        "zero-preserving": ce.batch_zero_preserving(t),
        "unital": ce.batch_unital(t),
        "multiplicative": ce.batch_multiplicative(t, n),
        "additive": ce.batch_additive(t, n),
        "MP": ce.batch_mp(t, n),
        "C1": ce.batch_c1(t),
        "C2": ce.batch_c2(t),
        "filter": ce.batch_filter(t, n),
    }
    cols["homomorphism"] = cols["multiplicative"] & cols["additive"]
    for v in cols.values():
        v.setflags(write=False)
    return cols


def _row_tables(t: np.ndarray) -> list[int]:
    return [ce.bits_to_table(row) for row in t]


def _maximal_affirmed(tables: list[int]) -> list[int]:
    # rows whose affirmed set is not strictly contained in another's
    return [x for x in tables if not any(y != x and x & y == x for y in tables)]


def _support_masks(mu: Measure, tables: list[int], item: str, problems: list[str]) -> list[int]:
    out = []
    for table in tables:
        phi = CoEvent(mu.space, table)
        f = mu.space.full_mask
        for m in phi.affirmed():
            f &= m
        if f == 0 or from_support(mu.space.from_mask(f)) != phi:
            problems.append(f"item {item}: co-event {phi.to_string()} is not determined by its support")
        out.append(f)
    return sorted(set(out), key=lambda m: (m.bit_count(), m))


def _subset_closure_strict(flags: np.ndarray) -> np.ndarray:
    # out[m]: flags[s] for some strict subset s of m
    rev = strict_superset_closure(flags[::-1])
    return rev[::-1]


def _by_size(masks) -> list[int]:
    return sorted(set(int(m) for m in masks), key=lambda m: (m.bit_count(), m))


def equivalence_report(mu: Measure, literal: bool | None = None) -> EquivalenceReport:
    """Evaluate all nine descriptions for ``mu`` and cross-check them.

    With ``literal`` (default when n <= 4) the co-event items are found by
    sweeping every co-event through the predicates; otherwise through the
    history/support correspondences.
    """
    space = mu.space
    n = space.n
    if literal is None:
        literal = n <= LITERAL_CAP
    if literal and n > LITERAL_CAP:
        raise CapacityError(f"literal co-event sweeps are capped at n={LITERAL_CAP}")
    problems: list[str] = []
    items: dict[str, ItemResult] = {}
    nulls = np.flatnonzero(mu.null_table).tolist()
    maximal = maximal_null_masks(mu)

    items["i"] = ItemResult("i", "direct", [1 << g for g in preclusive_homomorphisms(mu)])
    items["ii"] = ItemResult("ii", "hitting sets", minimal_nonstymied_masks(mu))

    # iv via principal filters: up(F) is preclusive iff F sits in no null event,
    # and up(F) grows as F shrinks
    masks = np.arange(1 << n, dtype=np.int64)
    preclusive_gen = masks != 0
    for m in maximal:
        preclusive_gen &= (masks & ~m) != 0
    minimal_gen = preclusive_gen & ~_subset_closure_strict(preclusive_gen)
    items["iv"] = ItemResult("iv", "principal filters", _by_size(np.flatnonzero(minimal_gen)))

    if literal:
        cols = coevent_census(n)
        t = cols["table"]
        pre = ce.batch_preclusive(t, mu.null_table)

        def pick(mask):
            return _row_tables(t[mask])

        filters = pick(cols["filter"])
        ultra = set(_maximal_affirmed(filters))
        items["iii"] = ItemResult("iii", "literal", _support_masks(
            mu, [x for x in pick(cols["filter"] & pre) if x in ultra], "iii", problems))
        items["v"] = ItemResult("v", "literal", _support_masks(
            mu, pick(cols["homomorphism"] & pre), "v", problems))
        classical_rules = (cols["homomorphism"] & cols["MP"] & cols["C1"] & cols["C2"]
                           & cols["zero-preserving"] & cols["unital"])
        items["vi"] = ItemResult("vi", "literal", _support_masks(
            mu, pick(classical_rules & pre), "vi", problems))
        items["vii"] = ItemResult("vii", "literal", _support_masks(
            mu, pick(pre & cols["MP"] & cols["zero-preserving"] & cols["C2"]), "vii", problems))
        items["viii"] = ItemResult("viii", "literal", _support_masks(
            mu, _maximal_affirmed(pick(cols["multiplicative"] & pre)), "viii", problems))
        items["ix"] = ItemResult("ix", "literal", _support_masks(
            mu, _maximal_affirmed(pick(cols["unital"] & cols["MP"] & pre)), "ix", problems))
    else:
        stars = [classical_coevent(space, g) for g in range(n)]

        def star_supports(pred):
            return [1 << g for g, phi in enumerate(stars) if pred(phi)]

        preclusive = lambda phi: ce.is_preclusive(phi, mu)  # noqa: E731
        items["iii"] = ItemResult("iii", "principal ultrafilters", [
            1 << g for g in range(n) if not any(m >> g & 1 for m in nulls)])
        items["v"] = ItemResult("v", "homomorphisms are the gamma*", star_supports(preclusive))
        items["vi"] = ItemResult("vi", "homomorphisms are the gamma*", star_supports(
            lambda phi: preclusive(phi) and ce.is_c1(phi) and ce.is_c2(phi)
            and ce.is_zero_preserving(phi) and ce.is_unital(phi)))
        items["vii"] = ItemResult("vii", "homomorphisms are the gamma*", star_supports(
            lambda phi: preclusive(phi) and ce.is_zero_preserving(phi) and ce.is_c2(phi)))
        items["viii"] = ItemResult("viii", "solver", [
            ce.support_of(phi).mask for phi in minimal_coevents(mu)])
        items["ix"] = ItemResult("ix", "same as viii (MP and unital is multiplicative)",
                                 list(items["viii"].supports))

    items = {k: items[k] for k in ITEMS}
    null_cover = null_union(mu) == space.full_mask
    classical = mu.kind == "classical"

    def group_mismatch(group):
        ref = items[group[0]].supports
        for k in group[1:]:
            if items[k].supports != ref:
                problems.append(f"item {k} disagrees with item {group[0]}")

    group_mismatch(SUPPORT_ITEMS)
    group_mismatch(HISTORY_ITEMS)
    if classical and items["i"].supports != items["ii"].supports:
        problems.append("classical measure: history items disagree with support items")
    if literal and items["viii"].supports != minimal_nonstymied_masks(mu):
        problems.append("literal item viii disagrees with the solver")
    if null_cover and not classical:
        for k in HISTORY_ITEMS:
            if items[k].nonempty:
                problems.append(f"null cover of Omega but item {k} is non-empty")
    if mu.total != 0:
        for k in SUPPORT_ITEMS:
            if not items[k].nonempty:
                problems.append(f"item {k} is empty although mu(1) != 0")
    return EquivalenceReport(n, items, null_cover, classical, problems)


@dataclass
class SchemeSolution:
    measure: Measure
    null_events: list[int]
    maximal_null_events: list[int]
    minimal_supports: list[int]
    preclusive_homomorphism_histories: list[int]
    equivalence: EquivalenceReport | None = None

    @property
    def classical_world_exists(self) -> bool:
        return bool(self.preclusive_homomorphism_histories)

    @property
    def coevent_exists(self) -> bool:
        return bool(self.minimal_supports)

    def coevents(self) -> list[CoEvent]:
        return [from_support(self.measure.space.from_mask(m)) for m in self.minimal_supports]


def solve(mu: Measure, *, report: bool = True) -> SchemeSolution:
    return SchemeSolution(
        measure=mu,
        null_events=np.flatnonzero(mu.null_table).tolist(),
        maximal_null_events=maximal_null_masks(mu),
        minimal_supports=minimal_nonstymied_masks(mu),
        preclusive_homomorphism_histories=preclusive_homomorphisms(mu),
        equivalence=equivalence_report(mu) if report else None,
    )
