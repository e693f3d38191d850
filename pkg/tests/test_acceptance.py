"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines
inline; they are also written straight to the terminal when output is
captured.
"""
import json
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from gmtlogic import CoEvent, HistorySpace, classical_coevent, from_support
from gmtlogic import coevent as ce
from gmtlogic.coevent import PREDICATES
from gmtlogic.documents import load_system
from gmtlogic.measure import grade2_interference
from gmtlogic.scheme import (
    HISTORY_ITEMS,
    SUPPORT_ITEMS,
    equivalence_report,
    minimal_coevents,
    minimal_nonstymied_masks,
    preclusive_homomorphisms,
)
from gmtlogic.verify import (
    MP_ONLY_A,
    MP_ONLY_B,
    verify_lemma1,
    verify_lemma2,
    verify_lemma3,
    verify_remark,
    verify_stone,
    verify_theorem1,
    verify_theorem2,
)

import oracles
from generators import random_classical, random_hermitian, random_rank1
from paths import FIXTURES, ROOT

QUANTUM_FIXTURES = ["interference3", "cancel4", "mixed3", "phase3"]


@pytest.fixture
def verdict(capsys):
    def emit(number, title, failures, detail=""):
        ok = not failures
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f"  ({detail})"
        with capsys.disabled():
            print("\n" + line)
            for f in failures[:10]:
                print(f"         - {f}")
        assert ok, failures[:10]
    return emit


def brute_nulls(mu):
    n = mu.space.n
    if mu.kind == "classical":
        w = [str(x) for x in mu.weights]
        return oracles.null_masks(lambda m: oracles.mu_classical(w, m, n), n)
    d = [[(x.re, x.im) for x in row] for row in mu.decoherence]
    return oracles.null_masks(lambda m: oracles.mu_from_matrix(d, m, n)[0], n)


def test_criterion_01_multiplicativity_equivalence(verdict):
    failures = []
    timings = {}
    for n in range(1, 5):
        began = time.perf_counter()
        rep = verify_theorem1(HistorySpace.of_size(n), threads=1)
        timings[n] = time.perf_counter() - began
        failures += [f"n={n}: {t} {c}" for t, c in rep.violations]
        if rep.examined != (1 << (1 << n)) - 2:
            failures.append(f"n={n}: examined {rep.examined}")
        for key in ("MP and unital", "filter", "multiplicative"):
            if rep.counts[key] != (1 << n) - 1:
                failures.append(f"n={n}: {key} count {rep.counts[key]} != {(1 << n) - 1}")
    # independent route: definitions evaluated by nested loops, n <= 3
    for n in range(1, 4):
        s = HistorySpace.of_size(n)
        count = 0
        for bits in oracles.all_tables(n):
            ref = oracles.ref_properties(oracles.as_dict(bits), n)
            a = ref["MP"] and ref["unital"]
            if not a == ref["filter"] == ref["multiplicative"]:
                failures.append(f"oracle n={n}: {CoEvent.from_bits(s, bits).to_string()}")
            count += ref["multiplicative"]
        if count != (1 << n) - 1:
            failures.append(f"oracle n={n}: multiplicative count {count}")
    if timings[4] >= 10:
        failures.append(f"n=4 sweep took {timings[4]:.2f}s")
    verdict(1, "MP and unital <=> filter <=> multiplicative, n=1..4", failures,
            f"n=4 sweep {timings[4]:.2f}s")


def test_criterion_02_classical_rules_force_homomorphism(verdict):
    failures = []
    for n in range(1, 5):
        rep = verify_theorem2(HistorySpace.of_size(n), threads=1)
        failures += [f"n={n}: {t} {c}" for t, c in rep.violations]
        if rep.counts["unital, MP, C2"] != n or rep.counts["zero-preserving, MP, C2"] != n:
            failures.append(f"n={n}: counts {rep.counts}")
    verdict(2, "unital/zero-preserving + MP + C2 => homomorphism, n=1..4", failures)


def test_criterion_03_structural_implications(verdict):
    failures = []
    for n in range(1, 5):
        space = HistorySpace.of_size(n)
        for fn in (verify_lemma1, verify_lemma2, verify_lemma3):
            rep = fn(space, threads=1)
            failures += [f"{rep.theorem} n={n}: {t} {c}" for t, c in rep.violations]
            if rep.examined != (1 << (1 << n)) - 2:
                failures.append(f"{rep.theorem} n={n}: examined {rep.examined}")
    verdict(3, "lemmas on additive, join and multiplicative co-events, n=1..4", failures)


def test_criterion_04_mp_counterexamples(verdict):
    failures = []
    rep = verify_remark()
    failures += [f"{t} {c}" for t, c in rep.violations]
    # the two tables, written out event by event
    one = HistorySpace(["w"])
    a = CoEvent.from_string(one, MP_ONLY_A)
    if (a(one.empty), a(one.unit)) != (1, 0):
        failures.append("first table differs")
    two = HistorySpace(["a", "b"])
    A = two.event(["a"])
    B = two.unit + A
    b = CoEvent.from_string(two, MP_ONLY_B)
    if (b(two.empty), b(A), b(B), b(two.unit)) != (0, 1, 0, 0):
        failures.append("second table differs")
    for phi, zero in ((a, False), (b, True)):
        if not ce.is_mp(phi) or ce.is_multiplicative(phi) or ce.is_zero_preserving(phi) != zero:
            failures.append(f"{phi.to_string()}: wrong predicate values")
        ref = oracles.ref_properties(oracles.as_dict(phi.bits.astype(int).tolist()), phi.space.n)
        if not ref["MP"] or ref["multiplicative"] or ref["zero-preserving"] != zero:
            failures.append(f"{phi.to_string()}: oracle disagrees")
    verdict(4, "MP without multiplicativity: both counterexample tables", failures)


def test_criterion_05_homomorphisms_are_point_evaluations(verdict):
    failures = []
    for n in range(1, 5):
        space = HistorySpace.of_size(n)
        rep = verify_stone(space, threads=1)
        failures += [f"n={n}: {t} {c}" for t, c in rep.violations]
        t = ce.coevent_matrix(n)
        rows = np.flatnonzero(ce.batch_multiplicative(t, n) & ce.batch_additive(t, n))
        tables = sorted(int(r) + 1 for r in rows)
        stars = sorted(classical_coevent(space, g).table for g in range(n))
        if tables != stars:
            failures.append(f"n={n}: homomorphisms {tables} != point evaluations {stars}")
    verdict(5, "homomorphisms are exactly the n point evaluations, n=1..4", failures)


def test_criterion_06_classical_recovery(verdict):
    failures = []
    rng = random.Random(606)
    for trial in range(100):
        n = rng.randint(1, 8)
        mu = random_classical(rng, n)
        want = [classical_coevent(mu.space, g) for g in range(n) if mu.weights[g] > 0]
        if minimal_coevents(mu) != want:
            failures.append(f"trial {trial}: weights {mu.weights}")
        rep = equivalence_report(mu)
        target = [1 << g for g in range(n) if mu.weights[g] > 0]
        if not rep.consistent or any(r.supports != target for r in rep.items.values()):
            failures.append(f"trial {trial}: report {rep.discrepancies}")
    verdict(6, "100 random classical measures: point evaluations recovered, nine items agree",
            failures)


def test_criterion_07_interference_fixture(verdict):
    failures = []
    mu = load_system(FIXTURES / "interference3.json").measure
    n = mu.space.n
    nulls = brute_nulls(mu)
    if nulls != [0b000, 0b011, 0b110]:
        failures.append(f"nulls {nulls}")
    brute = oracles.minimal_nonstymied(n, nulls)
    solver = minimal_nonstymied_masks(mu)
    if not solver == brute == [0b101]:
        failures.append(f"solver {solver} brute force {brute}")
    if preclusive_homomorphisms(mu):
        failures.append("a preclusive homomorphism exists")
    # direct check that no point evaluation is preclusive
    for g in range(n):
        if all(not (m >> g & 1) for m in nulls):
            failures.append(f"history {g} escapes every null event")
    rep = equivalence_report(mu)
    for k in ("i", "iii", "v"):
        if rep.items[k].nonempty:
            failures.append(f"item {k} non-empty")
    if rep.items["viii"].supports != [0b101] or not rep.consistent:
        failures.append(f"item viii {rep.items['viii'].supports}, {rep.discrepancies}")
    verdict(7, "interference fixture: no classical world, one co-event on {h0,h2}", failures)


def test_criterion_08_solver_matches_bruteforce(verdict):
    failures = []
    rng = random.Random(808)
    checked = 0
    for trial in range(80):
        n = rng.randint(1, 8)
        mu = random_rank1(rng, n) if trial % 2 else random_hermitian(rng, n)
        nulls = brute_nulls(mu)
        want = oracles.minimal_nonstymied(n, nulls)
        got = minimal_nonstymied_masks(mu)
        if got != want:
            failures.append(f"trial {trial}: solver {got} brute force {want}")
            continue
        outputs = minimal_coevents(mu)
        candidates = [from_support(mu.space.from_mask(f)) for f in range(1, 1 << n)
                      if not oracles.stymied(f, nulls)]
        for phi in outputs:
            if not (ce.is_preclusive(phi, mu) and ce.is_multiplicative(phi) and ce.is_mp(phi)
                    and ce.is_unital(phi) and ce.is_c1(phi)):
                failures.append(f"trial {trial}: {phi.to_string()} fails a predicate")
            if any(ce.precedes(psi, phi) and psi != phi for psi in candidates):
                failures.append(f"trial {trial}: {phi.to_string()} is not minimal")
        checked += len(outputs)
    verdict(8, "solver equals brute force on 80 random quantum measures, n<=8", failures,
            f"{checked} co-events checked")


def test_criterion_09_grade2_sum_rule(verdict):
    failures = []
    triples = 0
    for name in QUANTUM_FIXTURES:
        mu = load_system(FIXTURES / f"{name}.json").measure
        n = mu.space.n
        d = [[(x.re, x.im) for x in row] for row in mu.decoherence]
        values = [oracles.mu_from_matrix(d, m, n)[0] for m in range(1 << n)]
        for a, b, c in oracles.disjoint_triples_bruteforce(n):
            i2 = (values[a | b | c] - values[a | b] - values[b | c] - values[a | c]
                  + values[a] + values[b] + values[c])
            if i2 != 0 or grade2_interference(mu, a, b, c) != 0:
                failures.append(f"{name}: I2({a},{b},{c}) = {i2}")
            triples += 1
        if not mu.validate().valid:
            failures.append(f"{name}: validation fails")
    verdict(9, "grade-2 sum rule exact on every bundled quantum fixture", failures,
            f"{triples} triples")


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "gmtlogic", *map(str, argv)],
                          capture_output=True, check=False, cwd=ROOT)
    return proc.returncode, proc.stdout


def test_criterion_10_byte_determinism(verdict):
    failures = []
    for path in sorted(FIXTURES.glob("*.json")):
        runs = [_cli("--threads", t, "solve", path, "--format", "json") for t in (1, 4, 1)]
        if len({r for r in runs}) != 1:
            failures.append(f"solve {path.name} differs across runs or threads")
        json.loads(runs[0][1])
    runs = [_cli("--threads", t, "verify", "--max-n", "4", "--format", "json") for t in (1, 2, 8, 1)]
    if len(set(runs)) != 1 or runs[0][0] != 0:
        failures.append("verify output differs across runs or threads")
    verdict(10, "solve and verify JSON byte-identical across runs and --threads", failures)


def test_predicate_names_cover_check_rows():
    # guards the criterion helpers above against silent renames
    assert set(PREDICATES) >= {"MP", "multiplicative", "unital", "C1", "C2", "zero-preserving"}
    assert set(HISTORY_ITEMS) | set(SUPPORT_ITEMS) == {"i", "ii", "iii", "iv", "v", "vi", "vii",
                                                      "viii", "ix"}
