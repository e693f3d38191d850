"""Classical and quantum measures on a finite event algebra.

All arithmetic is exact: weights and decoherence entries are
:class:`fractions.Fraction` (or pairs of them), so ``mu(A) == 0`` is decided
without tolerances.  Whole-algebra work (null events, stymied events) goes
through an integer table of ``scale * mu(A)`` indexed by event mask.
"""
from __future__ import annotations

import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational

import numpy as np

from .algebra import Event, HistorySpace
from .errors import CapacityError, DomainError, InvalidMeasureError

TABLE_CAP = 20
POSITIVITY_EXHAUSTIVE_CAP = 16
SUM_RULE_EXHAUSTIVE_CAP = 10
ADDITIVITY_EXHAUSTIVE_CAP = 8
SAMPLE_SIZE = 4096
SAMPLE_SEED = 20120912


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, bool):
        raise DomainError(f"booleans are not rationals: {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if any(c in s.lower() for c in ".e") or s.lower() in {"inf", "nan"}:
            raise DomainError(f"rational strings must look like 'p' or 'p/q', got {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"not a rational: {x!r}") from None
    raise DomainError(f"expected an exact rational, got {type(x).__name__} {x!r}")


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", to_rational(self.re))
        object.__setattr__(self, "im", to_rational(self.im))

    @classmethod
    def coerce(cls, x) -> ComplexRational:
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, complex):
            raise DomainError(f"floating-point complex values are refused: {x!r}")
        if isinstance(x, dict):
            return cls(x.get("re", 0), x.get("im", 0))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(*x)
        return cls(x, 0)

    def conj(self) -> ComplexRational:
        return ComplexRational(self.re, -self.im)

    def __add__(self, other) -> ComplexRational:
        other = ComplexRational.coerce(other)
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other) -> ComplexRational:
        other = ComplexRational.coerce(other)
        return ComplexRational(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> ComplexRational:
        scalar = to_rational(scalar)
        return ComplexRational(self.re / scalar, self.im / scalar)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        return f"{self.re}+{self.im}i"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    coverage: str = "exhaustive"


@dataclass
class ValidationReport:
    kind: str
    n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "", coverage: str = "exhaustive"):
        self.checks.append(Check(name, bool(passed), detail, coverage))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "valid": self.valid,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, "coverage": c.coverage}
                for c in self.checks
            ],
        }


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


def _table_dtype(values: Iterable[int]):
    # int64 only when no subset sum can overflow
    return np.int64 if sum(abs(v) for v in values) < 2**62 else object


class Measure:
    """Common surface for classical and quantum measures."""

    space: HistorySpace
    kind: str

    def evaluate(self, a: Event) -> Fraction:
        raise NotImplementedError

    def validate(self) -> ValidationReport:
        raise NotImplementedError

    @property
    def total(self) -> Fraction:
        return self.evaluate(self.space.unit)

    def _scaled_table(self) -> tuple[np.ndarray, int]:
        raise NotImplementedError

    def _check_event(self, a: Event):
        if a.space != self.space:
            raise DomainError("event and measure belong to different history spaces")

    def _check_table_cap(self):
        if self.space.n > TABLE_CAP:
            raise CapacityError(
                f"whole-algebra enumeration is capped at n={TABLE_CAP}, got n={self.space.n}"
            )

    @cached_property
    def scaled_table(self) -> tuple[np.ndarray, int]:
        """(table, scale) with ``table[mask] == scale * mu(event(mask))``."""
        self._check_table_cap()
        return self._scaled_table()

    @cached_property
    def null_table(self) -> np.ndarray:
        table, _ = self.scaled_table
        out = np.asarray(table == 0, dtype=bool)
        out.setflags(write=False)
        return out

    @cached_property
    def stymied_table(self) -> np.ndarray:
        out = superset_closure(self.null_table)
        out.setflags(write=False)
        return out

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self), self._key()))

    def _key(self):
        raise NotImplementedError


class ClassicalMeasure(Measure):
    kind = "classical"

    def __init__(self, space: HistorySpace, weights: Sequence, *, normalize: bool = False,
                 strict: bool = True):
        if len(weights) != space.n:
            raise DomainError(f"expected {space.n} weights, got {len(weights)}")
        w = tuple(to_rational(x) for x in weights)
        if normalize:
            total = sum(w, Fraction(0))
            if total == 0:
                raise DomainError("cannot normalize a measure with mu(1) = 0")
            w = tuple(x / total for x in w)
        self.space = space
        self.weights = w
        if strict:
            report = self.validate()
            if not report.valid:
                raise InvalidMeasureError(report)

    @classmethod
    def uniform(cls, space: HistorySpace) -> ClassicalMeasure:
        return cls(space, [Fraction(1, space.n)] * space.n)

    def _key(self):
        return (self.space, self.weights)

    def evaluate(self, a: Event) -> Fraction:
        self._check_event(a)
        return sum((self.weights[i] for i in a), Fraction(0))

    def _scaled_table(self):
        scale = _lcm_denominators(self.weights)
        ints = [int(x * scale) for x in self.weights]
        table = np.zeros(1, dtype=_table_dtype(ints))
        for w in ints:
            table = np.concatenate([table, table + w])
        return table, scale

    def validate(self) -> ValidationReport:
        rep = ValidationReport(self.kind, self.space.n)
        neg = [self.space.labels[i] for i, x in enumerate(self.weights) if x < 0]
        rep.add("weights-nonnegative", not neg, f"negative weight on {neg}" if neg else "")
        total = sum(self.weights, Fraction(0))
        rep.add("total-one", total == 1, f"mu(1) = {total}")
        n = self.space.n
        bad = None
        if n <= ADDITIVITY_EXHAUSTIVE_CAP:
            pairs = _disjoint_pairs(n)
            coverage = "exhaustive"
        else:
            rng = random.Random(SAMPLE_SEED)
            pairs = []
            for _ in range(SAMPLE_SIZE):
                a = rng.getrandbits(n)
                pairs.append((a, rng.getrandbits(n) & ~a))
            coverage = f"sample of {SAMPLE_SIZE} disjoint pairs"
        for a, b in pairs:
            ea, eb = self.space.from_mask(a), self.space.from_mask(b)
            if self.evaluate(ea | eb) != self.evaluate(ea) + self.evaluate(eb):
                bad = (a, b)
                break
        rep.add("additivity", bad is None, f"fails on masks {bad}" if bad else "", coverage)
        return rep

    def __repr__(self):
        return f"ClassicalMeasure({list(self.space.labels)}, {[str(w) for w in self.weights]})"


class QuantumMeasure(Measure):
    """A measure given by a decoherence matrix: mu(A) = sum of D[i][j] over i, j in A."""

    kind = "quantum"

    def __init__(self, space: HistorySpace, decoherence: Sequence[Sequence], *,
                 normalize: bool = False, strict: bool = True):
        n = space.n
        if len(decoherence) != n or any(len(row) != n for row in decoherence):
            raise DomainError(f"decoherence matrix must be {n}x{n}")
        d = tuple(tuple(ComplexRational.coerce(x) for x in row) for row in decoherence)
        if normalize:
            total = sum((x for row in d for x in row), ComplexRational()).re
            if total == 0:
                raise DomainError("cannot normalize a measure with mu(1) = 0")
            d = tuple(tuple(x / total for x in row) for row in d)
        self.space = space
        self.decoherence = d
        if strict:
            report = self.validate()
            if not report.valid:
                raise InvalidMeasureError(report)

    @classmethod
    def from_amplitudes(cls, space: HistorySpace, amplitudes: Sequence, **kwargs) -> QuantumMeasure:
        """Rank-one decoherence D[i][j] = a_i * conj(a_j)."""
        a = [ComplexRational.coerce(x) for x in amplitudes]
        if len(a) != space.n:
            raise DomainError(f"expected {space.n} amplitudes, got {len(a)}")
        return cls(space, [[ai * aj.conj() for aj in a] for ai in a], **kwargs)

    def _key(self):
        return (self.space, self.decoherence)

    @cached_property
    def _scaled_parts(self) -> tuple[list[list[int]], list[list[int]], int]:
        d = self.decoherence
        scale = _lcm_denominators(v for row in d for x in row for v in (x.re, x.im))
        re = [[int(x.re * scale) for x in row] for row in d]
        im = [[int(x.im * scale) for x in row] for row in d]
        return re, im, scale

    def evaluate_complex(self, a: Event) -> ComplexRational:
        self._check_event(a)
        idx = list(a)
        re, im, scale = self._scaled_parts
        total_re = sum(re[i][j] for i in idx for j in idx)
        total_im = sum(im[i][j] for i in idx for j in idx)
        return ComplexRational(Fraction(total_re, scale), Fraction(total_im, scale))

    def evaluate(self, a: Event) -> Fraction:
        return self.evaluate_complex(a).re

    def _subset_table(self, part: str) -> tuple[np.ndarray, int]:
        # table[mask] = scale * sum_{i,j in mask} part(D[i][j]), built by doubling
        n = self.space.n
        re, im, scale = self._scaled_parts
        ints = re if part == "re" else im
        dtype = _table_dtype(v for row in ints for v in row)
        table = np.zeros(1, dtype=dtype)
        for k in range(n):
            cross = [ints[k][j] + ints[j][k] for j in range(k)]
            sums = np.zeros(1, dtype=dtype)
            for c in cross:
                sums = np.concatenate([sums, sums + c])
            table = np.concatenate([table, table + ints[k][k] + sums])
        return table, scale

    def _scaled_table(self):
        return self._subset_table("re")

    def validate(self) -> ValidationReport:
        n = self.space.n
        d = self.decoherence
        rep = ValidationReport(self.kind, n)
        bad = [(i, j) for i in range(n) for j in range(i, n) if d[i][j] != d[j][i].conj()]
        rep.add("hermitian", not bad, f"D[i][j] != conj(D[j][i]) at {bad[:5]}" if bad else "")
        total = self.evaluate_complex(self.space.unit)
        rep.add("total-one", total.re == 1 and total.im == 0, f"mu(1) = {total}")
        self._validate_positivity(rep)
        self._validate_sum_rule(rep)
        return rep

    def _validate_positivity(self, rep: ValidationReport):
        n = self.space.n
        if n <= POSITIVITY_EXHAUSTIVE_CAP:
            re, _ = self._subset_table("re")
            im, _ = self._subset_table("im")
            neg = np.flatnonzero(re < 0)
            cplx = np.flatnonzero(im != 0)
            rep.add("event-real", cplx.size == 0,
                    f"non-real mu on masks {cplx[:5].tolist()}" if cplx.size else "")
            rep.add("event-nonnegative", neg.size == 0,
                    f"negative mu on masks {neg[:5].tolist()}" if neg.size else "")
            return
        rng = random.Random(SAMPLE_SEED)
        masks = [1 << i for i in range(n)]
        masks += [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)]
        masks += [rng.getrandbits(n) for _ in range(SAMPLE_SIZE)]
        coverage = f"singletons, pairs and {SAMPLE_SIZE} sampled events"
        vals = [self.evaluate_complex(self.space.from_mask(m)) for m in masks]
        cplx = [m for m, v in zip(masks, vals) if v.im != 0]
        neg = [m for m, v in zip(masks, vals) if v.re < 0]
        rep.add("event-real", not cplx, f"non-real mu on masks {cplx[:5]}" if cplx else "", coverage)
        rep.add("event-nonnegative", not neg, f"negative mu on masks {neg[:5]}" if neg else "",
                coverage)

    def _validate_sum_rule(self, rep: ValidationReport):
        n = self.space.n
        if n <= SUM_RULE_EXHAUSTIVE_CAP:
            re, _ = self._subset_table("re")
            a, b, c = disjoint_triples(n)
            i2 = sum_rule_grade2(re, a, b, c)
            bad = np.flatnonzero(i2 != 0)
            detail = ""
            if bad.size:
                k = bad[0]
                detail = f"I2 != 0 at masks {(int(a[k]), int(b[k]), int(c[k]))}"
            rep.add("grade2-sum-rule", bad.size == 0, detail)
            return
        rng = random.Random(SAMPLE_SEED + 1)
        bad = None
        for _ in range(SAMPLE_SIZE):
            a = rng.getrandbits(n)
            b = rng.getrandbits(n) & ~a
            c = rng.getrandbits(n) & ~a & ~b
            if grade2_interference(self, a, b, c) != 0:
                bad = (a, b, c)
                break
        rep.add("grade2-sum-rule", bad is None, f"I2 != 0 at masks {bad}" if bad else "",
                f"sample of {SAMPLE_SIZE} disjoint triples")

    def __repr__(self):
        return f"QuantumMeasure({list(self.space.labels)})"


def grade2_interference(mu: Measure, a: int, b: int, c: int) -> Fraction:
    """I2(A,B,C) evaluated pointwise with ``mu.evaluate``."""
    ev = lambda m: mu.evaluate(mu.space.from_mask(m))  # noqa: E731
    return (ev(a | b | c) - ev(a | b) - ev(b | c) - ev(a | c)
            + ev(a) + ev(b) + ev(c))


def sum_rule_grade2(table: np.ndarray, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return (table[a | b | c] - table[a | b] - table[b | c] - table[a | c]
            + table[a] + table[b] + table[c])


def disjoint_triples(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every pairwise-disjoint (A, B, C), one per assignment of histories to A/B/C/none."""
    a = b = c = np.zeros(1, dtype=np.int64)
    for k in range(n):
        bit = np.int64(1 << k)
        a = np.concatenate([a, a | bit, a, a])
        b = np.concatenate([b, b, b | bit, b])
        c = np.concatenate([c, c, c, c | bit])
    return a, b, c


def _disjoint_pairs(n: int) -> list[tuple[int, int]]:
    pairs = [(0, 0)]
    for k in range(n):
        bit = 1 << k
        pairs = pairs + [(a | bit, b) for a, b in pairs] + [(a, b | bit) for a, b in pairs]
    return pairs


def superset_closure(flags: np.ndarray) -> np.ndarray:
    """out[m] is true iff flags[s] for some superset s of m."""
    out = np.array(flags, dtype=bool)
    n = out.size.bit_length() - 1
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    return out


def strict_superset_closure(flags: np.ndarray) -> np.ndarray:
    """out[m] is true iff flags[s] for some strict superset s of m."""
    up = superset_closure(flags)
    out = np.zeros_like(up)
    n = up.size.bit_length() - 1
    for i in range(n):
        src = up.reshape(-1, 2, 1 << i)
        dst = out.reshape(-1, 2, 1 << i)
        dst[:, 0, :] |= src[:, 1, :]
    return out


def evaluate(mu: Measure, a: Event) -> Fraction:
    return mu.evaluate(a)


def validate_classical(mu: ClassicalMeasure) -> ValidationReport:
    return mu.validate()


def validate_quantum(mu: QuantumMeasure) -> ValidationReport:
    return mu.validate()


def null_events(mu: Measure) -> list[Event]:
    """Events of measure zero, ascending by mask."""
    return [mu.space.from_mask(int(m)) for m in np.flatnonzero(mu.null_table)]


def maximal_null_masks(mu: Measure) -> list[int]:
    null = mu.null_table
    return np.flatnonzero(null & ~strict_superset_closure(null)).tolist()


def maximal_null_events(mu: Measure) -> list[Event]:
    return [mu.space.from_mask(m) for m in maximal_null_masks(mu)]


def is_stymied(mu: Measure, a: Event) -> bool:
    """True iff ``a`` is contained in some null event."""
    mu._check_event(a)
    return bool(mu.stymied_table[a.mask])
