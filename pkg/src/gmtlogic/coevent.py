"""Co-events: non-constant answering maps from the event algebra to Z2.

A co-event is stored as a Python int whose bit ``k`` is the answer given to
the event with mask ``k``.  Predicates work on a read-only numpy view of the
same table.  The ``batch_*`` functions evaluate a predicate over many
co-events at once (rows of a boolean matrix); the exhaustive verifier and the
equivalence report use them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .algebra import Event, HistorySpace
from .errors import CapacityError, DomainError
from .measure import Measure

# pairwise predicates cost O(4^n)
PAIRWISE_CAP = 14


def table_to_bits(table: int, size: int) -> np.ndarray:
    raw = table.to_bytes((size + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]
    return bits.astype(bool)


def bits_to_table(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(np.asarray(bits, dtype=bool), bitorder="little").tobytes(),
                          "little")


@dataclass(frozen=True)
class CoEvent:
    space: HistorySpace
    table: int

    def __post_init__(self):
        size = self.space.num_events
        if not isinstance(self.table, int) or not 0 <= self.table < 1 << size:
            raise DomainError(f"table must be a {size}-bit integer")
        if self.table == 0 or self.table == (1 << size) - 1:
            raise DomainError("co-events are non-constant: they must affirm and deny something")

    @classmethod
    def from_bits(cls, space: HistorySpace, bits) -> CoEvent:
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (space.num_events,):
            raise DomainError(f"expected {space.num_events} answers, got shape {bits.shape}")
        return cls(space, bits_to_table(bits))

    @classmethod
    def from_string(cls, space: HistorySpace, s: str) -> CoEvent:
        """Parse a mask-ascending bit string, e.g. ``"10"`` for phi(0)=1, phi(1)=0."""
        if len(s) != space.num_events or set(s) - {"0", "1"}:
            raise DomainError(f"expected a string of {space.num_events} binary digits, got {s!r}")
        return cls.from_bits(space, [c == "1" for c in s])

    @classmethod
    def from_affirmed(cls, space: HistorySpace, masks) -> CoEvent:
        table = 0
        for m in masks:
            table |= 1 << (m.mask if isinstance(m, Event) else m)
        return cls(space, table)

    @cached_property
    def bits(self) -> np.ndarray:
        out = table_to_bits(self.table, self.space.num_events)
        out.setflags(write=False)
        return out

    def __call__(self, a: Event | int) -> int:
        if isinstance(a, Event):
            if a.space != self.space:
                raise DomainError("event and co-event belong to different history spaces")
            a = a.mask
        return self.table >> a & 1

    def affirmed(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __repr__(self) -> str:
        return f"CoEvent(n={self.space.n}, table={self.to_string()!r})"


@dataclass(frozen=True)
class Support:
    space: HistorySpace
    mask: int

    def __post_init__(self):
        if not 0 < self.mask <= self.space.full_mask:
            raise DomainError("a support is a non-empty event")

    @property
    def event(self) -> Event:
        return self.space.from_mask(self.mask)


def _pairwise_guard(phi: CoEvent):
    if phi.space.n > PAIRWISE_CAP:
        raise CapacityError(f"pairwise co-event checks are capped at n={PAIRWISE_CAP}")


def _masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def classical_coevent(space: HistorySpace, gamma: int | str) -> CoEvent:
    """gamma*: affirms exactly the events containing history ``gamma``."""
    i = gamma if isinstance(gamma, int) else space.index(gamma)
    if not 0 <= i < space.n:
        raise DomainError(f"history index {i} out of range for n={space.n}")
    return CoEvent.from_bits(space, (_masks(space.n) >> i & 1).astype(bool))


def from_support(f: Support | Event) -> CoEvent:
    """The multiplicative co-event affirming exactly the supersets of ``f``."""
    if isinstance(f, Event):
        f = Support(f.space, f.mask)
    b = _masks(f.space.n)
    return CoEvent.from_bits(f.space, (b & f.mask) == f.mask)


def support_of(phi: CoEvent) -> Support:
    """Intersection of every affirmed event; defined for multiplicative co-events only."""
    if not is_multiplicative(phi):
        raise DomainError("support is only defined for multiplicative co-events")
    f = phi.space.full_mask
    for m in phi.affirmed():
        f &= m
    return Support(phi.space, f)


def is_zero_preserving(phi: CoEvent) -> bool:
    return not phi.bits[0]


def is_unital(phi: CoEvent) -> bool:
    return bool(phi.bits[-1])


def is_multiplicative(phi: CoEvent) -> bool:
    _pairwise_guard(phi)
    t = phi.bits
    b = _masks(phi.space.n)
    for a in range(t.size):
        prod = t[a & b]
        if not np.array_equal(prod, t & t[a]):
            return False
    return True


def is_additive(phi: CoEvent) -> bool:
    _pairwise_guard(phi)
    t = phi.bits
    b = _masks(phi.space.n)
    for a in range(t.size):
        if not np.array_equal(t[a ^ b], t ^ t[a]):
            return False
    return True


def is_mp(phi: CoEvent) -> bool:
    """Modus ponens: phi(A->B) = 1 and phi(A) = 1 force phi(B) = 1."""
    _pairwise_guard(phi)
    t = phi.bits
    full = phi.space.full_mask
    b = _masks(phi.space.n)
    for a in np.flatnonzero(t):
        if np.any(t[full ^ a ^ (a & b)] & ~t):
            return False
    return True


def is_c1(phi: CoEvent) -> bool:
    t = phi.bits
    return not np.any(t & t[::-1])


def is_c2(phi: CoEvent) -> bool:
    t = phi.bits
    return not np.any(~t & ~t[::-1])


def is_homomorphism(phi: CoEvent) -> bool:
    return is_multiplicative(phi) and is_additive(phi)


def affirmed_is_filter(phi: CoEvent) -> bool:
    """Is phi^-1(1) a non-empty, proper, up-closed, meet-closed family?"""
    _pairwise_guard(phi)
    t = phi.bits
    if not t.any() or t.all():
        return False
    n = phi.space.n
    for i in range(n):
        pairs = t.reshape(-1, 2, 1 << i)
        if np.any(pairs[:, 0, :] & ~pairs[:, 1, :]):
            return False
    affirmed = np.flatnonzero(t)
    for a in affirmed:
        if not t[a & affirmed].all():
            return False
    return True


def is_preclusive(phi: CoEvent, mu: Measure) -> bool:
    """phi denies every null event of ``mu``."""
    if phi.space != mu.space:
        raise DomainError("co-event and measure belong to different history spaces")
    return not np.any(phi.bits & mu.null_table)


def precedes(phi1: CoEvent, phi2: CoEvent) -> bool:
    """phi1 <= phi2: everything phi2 affirms, phi1 affirms too."""
    if phi1.space != phi2.space:
        raise DomainError("co-events belong to different history spaces")
    return phi2.table & ~phi1.table == 0


PREDICATES = {
    "zero-preserving": is_zero_preserving,
    "unital": is_unital,
    "multiplicative": is_multiplicative,
    "additive": is_additive,
    "MP": is_mp,
    "C1": is_c1,
    "C2": is_c2,
    "homomorphism": is_homomorphism,
    "filter": affirmed_is_filter,
}


def property_table(phi: CoEvent, mu: Measure | None = None) -> dict[str, bool]:
    out = {name: bool(fn(phi)) for name, fn in PREDICATES.items()}
    if mu is not None:
        out["preclusive"] = is_preclusive(phi, mu)
    return out


# -- batch evaluation: rows of T are co-event truth tables ------------------

@dataclass(frozen=True)
class PairIndex:
    a: np.ndarray
    b: np.ndarray
    meet: np.ndarray
    sym: np.ndarray
    join: np.ndarray
    implies: np.ndarray


@lru_cache(maxsize=None)
def pair_index(n: int) -> PairIndex:
    size = 1 << n
    full = size - 1
    a, b = np.divmod(np.arange(size * size, dtype=np.int64), size)
    return PairIndex(a, b, a & b, a ^ b, a | b, full ^ a ^ (a & b))


def batch_zero_preserving(t: np.ndarray) -> np.ndarray:
    return ~t[:, 0]


def batch_unital(t: np.ndarray) -> np.ndarray:
    return t[:, -1].copy()


def batch_multiplicative(t: np.ndarray, n: int) -> np.ndarray:
    p = pair_index(n)
    return np.all(t[:, p.meet] == (t[:, p.a] & t[:, p.b]), axis=1)


def batch_additive(t: np.ndarray, n: int) -> np.ndarray:
    p = pair_index(n)
    return np.all(t[:, p.sym] == (t[:, p.a] ^ t[:, p.b]), axis=1)


def batch_mp(t: np.ndarray, n: int) -> np.ndarray:
    p = pair_index(n)
    return ~np.any(t[:, p.implies] & t[:, p.a] & ~t[:, p.b], axis=1)


def batch_c1(t: np.ndarray) -> np.ndarray:
    return ~np.any(t & t[:, ::-1], axis=1)


def batch_c2(t: np.ndarray) -> np.ndarray:
    return ~np.any(~t & ~t[:, ::-1], axis=1)


def batch_filter(t: np.ndarray, n: int) -> np.ndarray:
    p = pair_index(n)
    nonempty = t.any(axis=1)
    proper = ~t.all(axis=1)
    up_closed = ~np.any(t[:, p.a] & ~t[:, p.join], axis=1)
    meet_closed = ~np.any(t[:, p.a] & t[:, p.b] & ~t[:, p.meet], axis=1)
    return nonempty & proper & up_closed & meet_closed


def batch_preclusive(t: np.ndarray, null: np.ndarray) -> np.ndarray:
    return ~np.any(t & null, axis=1)


def batch_join_rule(t: np.ndarray, n: int) -> np.ndarray:
    """phi(A or B) = 1 exactly when phi(A) = 1 or phi(B) = 1, for all pairs."""
    p = pair_index(n)
    return np.all(t[:, p.join] == (t[:, p.a] | t[:, p.b]), axis=1)


SWEEP_CAP = 4


def coevent_count(n: int) -> int:
    return (1 << (1 << n)) - 2


def coevent_matrix(n: int, start: int = 1, stop: int | None = None) -> np.ndarray:
    """Truth tables ``start .. stop-1`` as rows; defaults to every non-constant table."""
    if n > SWEEP_CAP:
        raise CapacityError(f"co-event sweeps are capped at n={SWEEP_CAP} "
                            f"(n={n} would need {coevent_count(n)} tables)")
    size = 1 << n
    if stop is None:
        stop = (1 << size) - 1
    if not 1 <= start <= stop <= (1 << size) - 1:
        raise DomainError(f"table range [{start}, {stop}) outside the non-constant co-events")
    ints = np.arange(start, stop, dtype=np.int64)
    return ((ints[:, None] >> np.arange(size, dtype=np.int64)) & 1).astype(bool)
