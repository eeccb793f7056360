"""Exhaustive breadth-first planner used as ground truth in tests."""

from __future__ import annotations

from collections import deque
from typing import List, Optional

from .bat import Bat, GroundAction
from .grounding import find_possible_actions
from .kb import Ecq, FgpTheory, TruthValue, v_ecq
from .progression import progress
from .search import SearchStats


class OracleLimit(Exception):
    pass


def oracle_plan(
    bat: Bat,
    init: FgpTheory,
    goal: Ecq,
    bound: int,
    max_nodes: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[List[GroundAction]]:
    """Shortest plan of length <= ``bound``, or None if there is none.

    Plain tree enumeration, no duplicate detection. ``stats`` is filled in
    place when given (wall time is left to the caller).
    """
    stats = stats if stats is not None else SearchStats()
    queue = deque([((), init)])
    stats.generated = stats.peak_frontier = 1
    while queue:
        actions, state = queue.popleft()
        if max_nodes is not None and stats.expansions >= max_nodes:
            raise OracleLimit(f"more than {max_nodes} situations")
        stats.expansions += 1
        if v_ecq(state, goal) is TruthValue.TRUE:
            return list(actions)
        if len(actions) >= bound:
            continue
        for a in find_possible_actions(state, bat):
            queue.append((actions + (a,), progress(state, bat, a)))
            stats.generated += 1
        stats.peak_frontier = max(stats.peak_frontier, len(queue))
    return None
