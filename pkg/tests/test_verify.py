import pytest

from gmtlogic import CapacityError, HistorySpace
from gmtlogic import coevent as ce
from gmtlogic.verify import (
    SWEEPS,
    enumerate_coevents,
    sweep,
    verify_all,
    verify_lemma1,
    verify_remark,
    verify_stone,
    verify_theorem1,
    verify_theorem2,
)


@pytest.mark.parametrize("n, count", [(1, 2), (2, 14), (3, 254)])
def test_enumeration_counts(n, count):
    tables = [phi.table for phi in enumerate_coevents(HistorySpace.of_size(n))]
    assert len(tables) == count == len(set(tables))
    assert tables == sorted(tables)


@pytest.mark.parametrize("n", [0, 5])
def test_capacity(n):
    with pytest.raises(CapacityError):
        sweep("theorem1", n, lambda t, n: ({}, {}))
    with pytest.raises(CapacityError):
        verify_all(n)


def test_n5_space_rejected():
    with pytest.raises(CapacityError):
        verify_theorem1(HistorySpace.of_size(5))


class TestReports:
    def test_multiplicativity_sweep_n2(self):
        rep = verify_theorem1(HistorySpace.of_size(2))
        assert rep.holds and rep.examined == 14
        assert rep.counts == {"MP and unital": 3, "filter": 3, "multiplicative": 3}

    def test_additive_unital_sweep_n1(self):
        rep = verify_lemma1(HistorySpace.of_size(1))
        assert rep.holds and rep.counts == {"additive and unital": 1}

    def test_classical_rules_sweep_counts(self):
        rep = verify_theorem2(HistorySpace.of_size(3))
        assert rep.holds
        assert rep.counts["homomorphism"] == rep.counts["unital, MP, C2"] == 3

    def test_homomorphisms_are_point_evaluations(self):
        rep = verify_stone(HistorySpace.of_size(3))
        assert rep.holds and rep.counts == {"homomorphism": 3, "gamma*": 3}

    def test_mp_counterexamples(self):
        rep = verify_remark()
        assert rep.holds
        assert rep.counts == {"MP": 2, "multiplicative": 0}

    def test_mp_counterexamples_wrong_sizes(self):
        with pytest.raises(CapacityError):
            verify_remark(HistorySpace.of_size(2))

    def test_to_dict_has_no_timing_by_default(self):
        rep = verify_theorem1(HistorySpace.of_size(1))
        assert "elapsed_s" not in rep.to_dict()
        assert "elapsed_s" in rep.to_dict(timing=True)


def test_sweep_reports_violations_in_table_order():
    # a deliberately false claim: every co-event is unital
    rep = sweep("false", 2, lambda t, n: ({"not unital": ~ce.batch_unital(t)}, {}), threads=3)
    assert not rep.holds
    assert len(rep.violations) == 7
    assert [v[0] for v in rep.violations][:2] == ["1000", "0100"]
    assert all(v[0][-1] == "0" for v in rep.violations)


def test_verify_all_n4_clean():
    reports = verify_all(4, threads=2)
    assert all(r.holds for r in reports)
    assert len(reports) == 1 + 4 * len(SWEEPS)


@pytest.mark.parametrize("name", sorted(SWEEPS))
def test_thread_invariance(name):
    space = HistorySpace.of_size(4)
    one = SWEEPS[name](space, 1).to_dict()
    four = SWEEPS[name](space, 4).to_dict()
    assert one == four


def test_determinism_across_runs():
    a = [r.to_dict() for r in verify_all(3)]
    b = [r.to_dict() for r in verify_all(3)]
    assert a == b
