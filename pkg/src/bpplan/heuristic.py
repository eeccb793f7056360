"""Delete-relaxation planning-graph heuristic.

The graph is grown from the evaluated state by applying, layer after layer,
the positive effects of every newly possible action.  Once the goal holds the
goal is grounded and scored by extracting best supporters backwards through
the layers.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .bat import Bat, GroundAction
from .grounding import find_possible_actions, iter_new_possible_actions, iter_possible_actions, new_possible_actions
from .kb import Args, Ecq, FgpTheory, TruthValue, answer_ecq, v_ecq

log = logging.getLogger(__name__)

GroundAtom = Tuple[str, Args]


@dataclass(frozen=True)
class PgLayer:
    new_effects: FrozenSet[GroundAtom]
    new_actions: Tuple[GroundAction, ...]
    state: FgpTheory


@dataclass(frozen=True)
class PlanningGraph:
    base: FgpTheory
    layers: Tuple[PgLayer, ...] = ()

    def inner(self, depth: int) -> "PlanningGraph":
        return PlanningGraph(self.base, self.layers[:depth])


class Outcome(enum.Enum):
    REACHED = "reached"
    FIXPOINT = "fixpoint"
    DEPTH_EXCEEDED = "depth_exceeded"


@dataclass(frozen=True)
class GraphOutcome:
    kind: Outcome
    graph: Optional[PlanningGraph] = None
    goal_atoms: FrozenSet[GroundAtom] = frozenset()


def add_effects(bat: Bat, action: GroundAction) -> Set[GroundAtom]:
    return {(f, t) for f, (adds, _) in bat.effects(action).items() for t in adds}


def relaxed_progress(state: FgpTheory, actions: Iterable[GroundAction], bat: Bat) -> Tuple[FgpTheory, FrozenSet[GroundAtom]]:
    """Apply only the positive effects of ``actions``; known-false sets stay as they are."""
    true = dict(state._true)
    new: Set[GroundAtom] = set()
    for action in actions:
        for fluent, (adds, _) in bat.effects(action).items():
            current = true.get(fluent, frozenset())
            fresh = adds - current
            if fresh:
                true[fluent] = current | fresh
                new.update((fluent, t) for t in fresh)
    if not new:
        return state, frozenset()
    return FgpTheory._raw(state.arities, true, state._false), frozenset(new)


def ground_goal(state: FgpTheory, goal: Ecq) -> Optional[FrozenSet[GroundAtom]]:
    answers = answer_ecq(state, goal)
    if not answers:
        return None
    g = goal.substitute(answers[0])
    return frozenset((a.fluent, a.args) for a in g.atoms)  # type: ignore[misc]


def build_graph(bat: Bat, goal: Ecq, d: int, state: FgpTheory) -> GraphOutcome:
    """Grow relaxed layers until the goal holds, nothing new is possible, or the look-ahead runs out."""
    depth = 0
    layers: List[PgLayer] = []
    st = state
    delta: Optional[Dict[str, List[Args]]] = None
    while v_ecq(st, goal) is not TruthValue.TRUE and depth <= d:
        # relaxed layers only ever add tuples, so after the first layer the
        # newly possible actions are those that use a tuple added last round
        if depth == d:
            # this layer would only decide between the two penalties, so one
            # newly possible action is enough
            if delta is None:
                fresh = iter_possible_actions(st, bat)
            else:
                fresh = iter_new_possible_actions(st, bat, delta)
            if next(fresh, None) is not None:
                return GraphOutcome(Outcome.DEPTH_EXCEEDED)
            return GraphOutcome(Outcome.FIXPOINT)
        if delta is None:
            new_acts = find_possible_actions(st, bat)
        else:
            new_acts = new_possible_actions(st, bat, delta)
        if not new_acts:
            return GraphOutcome(Outcome.FIXPOINT)
        st, new_effs = relaxed_progress(st, new_acts, bat)
        layers.append(PgLayer(new_effs, tuple(new_acts), st))
        delta = {}
        for f, t in new_effs:
            delta.setdefault(f, []).append(t)
        depth += 1
    if depth > d:
        return GraphOutcome(Outcome.DEPTH_EXCEEDED)
    atoms = ground_goal(st, goal)
    assert atoms is not None
    return GraphOutcome(Outcome.REACHED, PlanningGraph(state, tuple(layers)), atoms)


def reachability(bat: Bat, goal_atoms: Iterable[GroundAtom], pg: PlanningGraph) -> int:
    """Number of best supporting actions needed to reach ``goal_atoms`` in ``pg``.

    Layers are peeled from the outside in; an atom first produced at a layer is
    attributed to the supporter whose preconditions are cheapest to reach on
    the graph below that layer.  Supporters are counted once per layer.
    """
    memo: Dict[Tuple[FrozenSet[GroundAtom], int], int] = {}
    producers: Dict[int, Dict[GroundAtom, List[GroundAction]]] = {}

    def relevant_actions(depth: int, g: GroundAtom) -> List[GroundAction]:
        table = producers.get(depth)
        if table is None:
            table = {}
            layer = pg.layers[depth - 1]
            for a in layer.new_actions:
                for atom in add_effects(bat, a):
                    if atom in layer.new_effects:
                        table.setdefault(atom, []).append(a)
            producers[depth] = table
        return table.get(g, [])

    def pre_atoms(action: GroundAction) -> FrozenSet[GroundAtom]:
        pre = bat.ground_precondition(action)
        return frozenset((a.fluent, a.args) for a in pre.atoms)  # type: ignore[misc]

    def rec(goals: FrozenSet[GroundAtom], depth: int) -> int:
        if depth == 0:
            missing = [g for g in goals if g[1] not in pg.base.known_true(g[0])]
            if missing:
                raise RuntimeError(f"goal atom {missing[0]} is produced by no layer")
            return 0
        key = (goals, depth)
        if key in memo:
            return memo[key]
        layer = pg.layers[depth - 1]
        current = goals & layer.new_effects
        new_goals: Set[GroundAtom] = set()
        support: Set[GroundAction] = set()
        for g in sorted(current, key=str):
            relevant = relevant_actions(depth, g)
            best = None
            best_est = None
            for a in relevant:
                est = rec(pre_atoms(a), depth - 1)
                if best_est is None or est < best_est:
                    best, best_est = a, est
            if best is None:
                raise RuntimeError(f"goal atom {g} has no supporter in layer {depth}")
            new_goals |= pre_atoms(best)
            support.add(best)
        remaining = goals - current
        score = len(support) + rec(frozenset(remaining | new_goals), depth - 1)
        memo[key] = score
        return score

    return rec(frozenset(goal_atoms), len(pg.layers))


def evaluate(bat: Bat, goal: Ecq, d: int, length: int, state: FgpTheory) -> Tuple[int, Outcome]:
    """Heuristic value together with how the graph construction ended."""
    out = build_graph(bat, goal, d, state)
    if out.kind is Outcome.FIXPOINT:
        return length + d + 1, out.kind
    if out.kind is Outcome.DEPTH_EXCEEDED:
        return length + d, out.kind
    assert out.graph is not None
    h = reachability(bat, out.goal_atoms, out.graph)
    if h > length + d:
        log.debug("reachability score %d exceeds depth penalty %d", h, length + d)
    return h, out.kind


def h_estimate(bat: Bat, goal: Ecq, d: int, length: int, state: FgpTheory) -> int:
    return evaluate(bat, goal, d, length, state)[0]
