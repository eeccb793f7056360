"""A* over the tree of ground situations, bounded by plan length."""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

from .bat import Bat, GroundAction
from .grounding import find_possible_actions
from .heuristic import Outcome, evaluate
from .kb import Ecq, FgpTheory, KBError, TruthValue, v_ecq
from .progression import S0, ProgressionError, Situation, progress, progress_sequence


@dataclass
class PlannerConfig:
    bound: int
    heuristic: bool = True
    duplicate_detection: bool = False
    dead_end_prune: bool = False
    cache_states: bool = False
    # "low-h": among equal f prefer lower h, then insertion order; "fifo": insertion order only
    tie_breaking: str = "low-h"
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    record_pops: bool = False

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        if self.tie_breaking not in ("low-h", "fifo"):
            raise ValueError(f"unknown tie-breaking rule {self.tie_breaking!r}")


@dataclass(order=True)
class SearchNode:
    f: int
    tie: int
    seq: int
    situation: Situation = field(compare=False)


@dataclass
class SearchStats:
    expansions: int = 0
    generated: int = 0
    peak_frontier: int = 0
    wall_time: float = 0.0
    pruned_duplicates: int = 0
    pruned_dead_ends: int = 0
    pop_lengths: List[int] = field(default_factory=list)

    def to_dict(self, include_time: bool = True) -> Dict[str, object]:
        d = asdict(self)
        if not include_time:
            d.pop("wall_time")
        if not d["pop_lengths"]:
            d.pop("pop_lengths")
        return d


PLAN = "plan"
NO_PLAN = "no_plan"
RESOURCE_LIMIT = "resource_limit"


@dataclass
class PlanResult:
    outcome: str
    plan: Optional[List[GroundAction]]
    stats: SearchStats

    @property
    def found(self) -> bool:
        return self.outcome == PLAN


def _goal_holds(state: FgpTheory, goal: Ecq) -> bool:
    return v_ecq(state, goal) is TruthValue.TRUE


def plan(bat: Bat, init: FgpTheory, goal: Ecq, config: PlannerConfig) -> PlanResult:
    """Search for a plan of at most ``config.bound`` actions.

    Nodes are popped by f = length + h.  Ties go to the lower h (the deeper
    node) and then to insertion order; with ``tie_breaking="fifo"`` only
    insertion order is used.  A node's
    state is recomputed from ``init`` when it is popped unless
    ``cache_states`` is set.  Children of length exactly the bound are kept
    (with a look-ahead of zero); longer ones are never generated.
    """
    n = config.bound
    stats = SearchStats()
    start = time.perf_counter()
    counter = itertools.count()
    frontier: List[SearchNode] = []
    cache: Dict[Situation, FgpTheory] = {}
    best_len: Dict[FgpTheory, int] = {}

    def finish(outcome: str, actions: Optional[List[GroundAction]]) -> PlanResult:
        stats.wall_time = time.perf_counter() - start
        return PlanResult(outcome, actions, stats)

    heapq.heappush(frontier, SearchNode(n + 1, 0, next(counter), S0))
    stats.generated = 1
    stats.peak_frontier = 1
    if config.duplicate_detection:
        best_len[init] = 0

    while frontier:
        if config.node_limit is not None and stats.expansions >= config.node_limit:
            return finish(RESOURCE_LIMIT, None)
        if config.time_limit is not None and time.perf_counter() - start > config.time_limit:
            return finish(RESOURCE_LIMIT, None)
        node = heapq.heappop(frontier)
        s = node.situation
        if config.record_pops:
            stats.pop_lengths.append(len(s))
        now = cache.pop(s, None) if config.cache_states else None
        if now is None:
            now = progress_sequence(init, bat, s)
        if _goal_holds(now, goal):
            return finish(PLAN, list(s.actions))
        stats.expansions += 1
        if len(s) + 1 > n:
            continue
        for action in find_possible_actions(now, bat):
            child = s.do(action)
            try:
                st = progress(now, bat, action)
            except ProgressionError as e:
                raise ProgressionError(f"{e} after {s}") from e
            length = len(child)
            if config.duplicate_detection:
                prev = best_len.get(st)
                if prev is not None and prev <= length:
                    stats.pruned_duplicates += 1
                    continue
                best_len[st] = length
            d = n - length
            if config.heuristic or config.dead_end_prune:
                h, kind = evaluate(bat, goal, d, length, st)
                if config.dead_end_prune and kind is Outcome.FIXPOINT:
                    stats.pruned_dead_ends += 1
                    continue
                if not config.heuristic:
                    h = 0
            else:
                h = 0
            tie = h if config.tie_breaking == "low-h" else 0
            heapq.heappush(frontier, SearchNode(length + h, tie, next(counter), child))
            if config.cache_states:
                cache[child] = st
            stats.generated += 1
        stats.peak_frontier = max(stats.peak_frontier, len(frontier))
    return finish(NO_PLAN, None)


@dataclass
class PlanValidation:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "plan valid"
        if self.step is None:
            return self.reason
        return f"step {self.step}: {self.reason}"


def validate_plan(
    bat: Bat,
    init: FgpTheory,
    goal: Ecq,
    actions: Sequence[GroundAction],
    bound: Optional[int] = None,
) -> PlanValidation:
    """Check that ``actions`` is executable in every model and ends in a goal state."""
    if bound is not None and len(actions) > bound:
        return PlanValidation(False, None, f"plan length {len(actions)} exceeds bound {bound}")
    state = init
    for i, action in enumerate(actions):
        try:
            pre = bat.ground_precondition(action)
        except (KeyError, ValueError) as e:
            return PlanValidation(False, i, f"{action}: {e.args[0]}")
        try:
            value = v_ecq(state, pre)
        except KBError as e:
            return PlanValidation(False, i, f"{action}: {e}")
        if value is not TruthValue.TRUE:
            return PlanValidation(False, i, f"precondition of {action} is {value.name.lower()}")
        try:
            state = progress(state, bat, action)
        except ProgressionError as e:
            return PlanValidation(False, i, str(e))
    if not _goal_holds(state, goal):
        return PlanValidation(False, None, "goal unsatisfied")
    return PlanValidation(True)
