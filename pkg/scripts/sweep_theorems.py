"""Time every exhaustive theorem sweep for n = 1..max_n.

    python scripts/sweep_theorems.py --max-n 4 --threads 4 --repeats 3
"""
import argparse
import statistics
import time
from dataclasses import dataclass, fields

from gmtlogic import HistorySpace
from gmtlogic.verify import SWEEPS


@dataclass
class SweepConfig:
    max_n: int = 4
    threads: int = 1
    repeats: int = 3


def parse_config() -> SweepConfig:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(SweepConfig):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    return SweepConfig(**vars(parser.parse_args()))


def main() -> None:
    cfg = parse_config()
    print(f"{'sweep':<9} {'n':>2} {'co-events':>10} {'median s':>9}  result")
    for n in range(1, cfg.max_n + 1):
        space = HistorySpace.of_size(n)
        for name, fn in SWEEPS.items():
            times = []
            for _ in range(cfg.repeats):
                began = time.perf_counter()
                rep = fn(space, cfg.threads)
                times.append(time.perf_counter() - began)
            status = "holds" if rep.holds else f"{len(rep.violations)} violations"
            print(f"{name:<9} {n:>2} {rep.examined:>10} {statistics.median(times):>9.4f}  {status}")


if __name__ == "__main__":
    main()
