"""Census of random rank-one quantum measures: how often the nulls cover every
history, and how many minimal preclusive multiplicative co-events appear.

    python scripts/random_census.py --trials 500 --n-min 3 --n-max 10
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass, fields

from gmtlogic import HistorySpace, QuantumMeasure, solve

AMPLITUDES = (-2, -1, 1, 2)


@dataclass
class CensusConfig:
    trials: int = 300
    n_min: int = 3
    n_max: int = 8
    seed: int = 7
    zero_prob: float = 0.1


def parse_config() -> CensusConfig:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(CensusConfig):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    return CensusConfig(**vars(parser.parse_args()))


def draw(rng: random.Random, n: int, zero_prob: float) -> QuantumMeasure:
    while True:
        amps = [0 if rng.random() < zero_prob else rng.choice(AMPLITUDES) for _ in range(n)]
        if sum(amps):
            return QuantumMeasure.from_amplitudes(HistorySpace.of_size(n), amps, normalize=True)


def main() -> None:
    cfg = parse_config()
    rng = random.Random(cfg.seed)
    by_n = {n: Counter() for n in range(cfg.n_min, cfg.n_max + 1)}
    for _ in range(cfg.trials):
        n = rng.randint(cfg.n_min, cfg.n_max)
        sol = solve(draw(rng, n, cfg.zero_prob))
        c = by_n[n]
        c["measures"] += 1
        c["null cover"] += sol.equivalence.null_cover
        c["no classical world"] += not sol.classical_world_exists
        c["supports"] += len(sol.minimal_supports)
        c["max support size"] = max(c["max support size"],
                                    max(m.bit_count() for m in sol.minimal_supports))
        c["discrepancies"] += len(sol.equivalence.discrepancies)
    print(f"{'n':>3} {'measures':>9} {'null cover':>11} {'no classical':>13} "
          f"{'mean #supports':>15} {'max |F|':>8} {'discrepancies':>14}")
    for n, c in by_n.items():
        if not c["measures"]:
            continue
        m = c["measures"]
        print(f"{n:>3} {m:>9} {c['null cover'] / m:>11.2f} {c['no classical world'] / m:>13.2f} "
              f"{c['supports'] / m:>15.2f} {c['max support size']:>8} {c['discrepancies']:>14}")


if __name__ == "__main__":
    main()
