"""Seeded generators of random classical and quantum measures."""
import random
from fractions import Fraction

from gmtlogic import ClassicalMeasure, HistorySpace, InvalidMeasureError, QuantumMeasure


def random_weights(rng: random.Random, n: int, zero_prob: float = 0.3):
    """Non-negative rational weights summing to one, with some exact zeros."""
    while True:
        raw = [0 if rng.random() < zero_prob else rng.randint(1, 12) for _ in range(n)]
        if sum(raw):
            total = sum(raw)
            return [Fraction(x, total) for x in raw]


def random_classical(rng: random.Random, n: int) -> ClassicalMeasure:
    return ClassicalMeasure(HistorySpace.of_size(n), random_weights(rng, n))


def random_amplitudes(rng: random.Random, n: int):
    while True:
        amps = [(rng.choice([-2, -1, -1, 0, 1, 1, 2]), rng.choice([0, 0, 0, -1, 1]))
                for _ in range(n)]
        if any(sum(a[k] for a in amps) for k in (0, 1)):
            return amps


def random_rank1(rng: random.Random, n: int) -> QuantumMeasure:
    return QuantumMeasure.from_amplitudes(HistorySpace.of_size(n), random_amplitudes(rng, n),
                                          normalize=True)


def random_hermitian(rng: random.Random, n: int) -> QuantumMeasure:
    """Random Hermitian rational decoherence, resampled until mu >= 0 on every event.

    Half the draws are sums of two rank-one terms (so nulls still occur);
    the rest are unstructured Hermitian matrices with a boosted diagonal.
    """
    space = HistorySpace.of_size(n)
    while True:
        if rng.random() < 0.5:
            a, b = random_amplitudes(rng, n), random_amplitudes(rng, n)
            d = [[(a[i][0] * a[j][0] + a[i][1] * a[j][1] + b[i][0] * b[j][0] + b[i][1] * b[j][1],
                   a[i][1] * a[j][0] - a[i][0] * a[j][1] + b[i][1] * b[j][0] - b[i][0] * b[j][1])
                  for j in range(n)] for i in range(n)]
        else:
            d = [[None] * n for _ in range(n)]
            for i in range(n):
                d[i][i] = (rng.randint(0, 4), 0)
                for j in range(i + 1, n):
                    re, im = rng.randint(-2, 2), rng.randint(-1, 1)
                    d[i][j] = (re, im)
                    d[j][i] = (re, -im)
        try:
            return QuantumMeasure(space, d, normalize=True)
        except (InvalidMeasureError, ValueError):
            continue
