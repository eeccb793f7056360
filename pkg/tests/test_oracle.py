import pytest

from bpplan.benchmarks import gen_chopping, gen_countdown, gen_ibw, load_domain, tower_goal
from bpplan.oracle import OracleLimit, oracle_plan
from bpplan.search import validate_plan

CD = load_domain("countdown")
CHOP = load_domain("chopping")
IBW = load_domain("ibw")


def _oracle(bat, spec, **kw):
    return oracle_plan(bat, spec.initial_theory(bat), spec.goal, spec.bound, **kw)


def test_countdown_ex1():
    assert [str(a) for a in _oracle(CD, gen_countdown(2, [4, 5], 20, 3))] == ["(mult 1 4 2 5)"]


def test_chopping_needs_four():
    found = _oracle(CHOP, gen_chopping([("T127", 4)], bound=10))
    assert [str(a) for a in found] == ["(chop T127 4)", "(chop T127 3)", "(chop T127 2)", "(chop T127 1)"]
    assert _oracle(CHOP, gen_chopping([("T127", 4)], bound=3)) is None


def test_returns_a_shortest_plan():
    spec = gen_countdown(3, [2, 3, 4], 20, 4)
    found = _oracle(CD, spec)
    assert len(found) == 2
    assert validate_plan(CD, spec.initial_theory(CD), spec.goal, found)


def test_unsolvable_countdown():
    assert _oracle(CD, gen_countdown(2, [4, 5], 3, 2)) is None


def test_node_cap():
    spec = gen_ibw([], [1, 2, 3, 4], tower_goal([4, 3, 2, 1]), bound=7)
    with pytest.raises(OracleLimit):
        _oracle(IBW, spec, max_nodes=50)
