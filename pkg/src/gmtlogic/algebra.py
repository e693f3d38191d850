"""Finite history spaces and the Boolean ring of events over them.

Events are bitmasks: history ``i`` (in label order) is bit ``i``.  Ring
product is intersection, ring sum is symmetric difference, and the unit is
the all-ones mask.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .errors import CapacityError, DomainError

MAX_HISTORIES = 24


@dataclass(frozen=True)
class HistorySpace:
    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise DomainError("a history space needs at least one history")
        for label in labels:
            if not isinstance(label, str) or not label:
                raise DomainError(f"history labels must be non-empty strings, got {label!r}")
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate history labels in {labels!r}")
        if len(labels) > MAX_HISTORIES:
            raise CapacityError(f"{len(labels)} histories exceeds the cap of {MAX_HISTORIES}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, n: int, prefix: str = "h") -> HistorySpace:
        return cls(f"{prefix}{i}" for i in range(n))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_events(self) -> int:
        return 1 << self.n

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown history {label!r}") from None

    def event(self, members: Iterable[str | int] = ()) -> Event:
        """Build an event from history labels and/or indices."""
        mask = 0
        for m in members:
            i = m if isinstance(m, int) else self.index(m)
            if not 0 <= i < self.n:
                raise DomainError(f"history index {i} out of range for n={self.n}")
            mask |= 1 << i
        return Event(self, mask)

    def from_mask(self, mask: int) -> Event:
        return Event(self, mask)

    @property
    def empty(self) -> Event:
        return Event(self, 0)

    @property
    def unit(self) -> Event:
        return Event(self, self.full_mask)

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in iter_bits(mask)]

    def __repr__(self) -> str:
        return f"HistorySpace({list(self.labels)!r})"


@dataclass(frozen=True)
class Event:
    space: HistorySpace
    mask: int

    def __post_init__(self):
        if not isinstance(self.mask, int) or not 0 <= self.mask <= self.space.full_mask:
            raise DomainError(f"mask {self.mask!r} is not an event of a {self.space.n}-history space")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, history: int | str) -> bool:
        i = history if isinstance(history, int) else self.space.index(history)
        return bool(self.mask >> i & 1)

    def labels(self) -> list[str]:
        return self.space.labels_of(self.mask)

    # ring notation: a * b, a + b, ~a, a | b, a <= b
    def __mul__(self, other: Event) -> Event:
        return product(self, other)

    def __add__(self, other: Event) -> Event:
        return sum_(self, other)

    def __invert__(self) -> Event:
        return complement(self)

    def __or__(self, other: Event) -> Event:
        return join(self, other)

    def __le__(self, other: Event) -> bool:
        return is_subset(self, other)

    def __lt__(self, other: Event) -> bool:
        return is_subset(self, other) and self.mask != other.mask

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _same_space(a: Event, b: Event) -> HistorySpace:
    if a.space != b.space:
        raise DomainError("events belong to different history spaces")
    return a.space


def product(a: Event, b: Event) -> Event:
    """Ring product AB: intersection."""
    return Event(_same_space(a, b), a.mask & b.mask)


def sum_(a: Event, b: Event) -> Event:
    """Ring sum A+B: symmetric difference."""
    return Event(_same_space(a, b), a.mask ^ b.mask)


def complement(a: Event) -> Event:
    """1 + A."""
    return Event(a.space, a.space.full_mask ^ a.mask)


def implies(a: Event, b: Event) -> Event:
    """The event A -> B, computed in ring arithmetic as 1 + A + AB."""
    space = _same_space(a, b)
    return Event(space, space.full_mask ^ a.mask ^ (a.mask & b.mask))


def join(a: Event, b: Event) -> Event:
    """A or B, written in the ring as AB + A + B."""
    space = _same_space(a, b)
    return Event(space, (a.mask & b.mask) ^ a.mask ^ b.mask)


def is_subset(a: Event, b: Event) -> bool:
    _same_space(a, b)
    return a.mask & b.mask == a.mask


def implies_mask(full: int, a: int, b: int) -> int:
    return full ^ a ^ (a & b)


def enumerate_events(space: HistorySpace) -> Iterator[Event]:
    """All 2^n events in ascending mask order."""
    if space.n > MAX_HISTORIES:
        raise CapacityError(f"cannot enumerate events of a {space.n}-history space")
    for mask in range(space.num_events):
        yield Event(space, mask)


def masks_to_labels(space: HistorySpace, masks: Sequence[int]) -> list[list[str]]:
    return [space.labels_of(m) for m in masks]
