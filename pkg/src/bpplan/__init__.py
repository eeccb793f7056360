"""Bounded planning over incomplete first-order initial knowledge.

The initial state is a finite set of ground literals with no closed-world or
domain-closure assumption.  Plans must be executable and reach the goal in
every model of that knowledge.
"""

from .bat import Bat, GroundAction, validate_bat
from .benchmarks import load_domain
from .dsl import DslError, ProblemSpec, parse_domain, parse_plan, parse_problem
from .grounding import find_possible_actions
from .kb import Ecq, FgpTheory, TruthValue, answer_ecq, v_atom, v_ecq, v_literal
from .oracle import oracle_plan
from .progression import Situation, progress, progress_sequence
from .search import PlannerConfig, PlanResult, plan, validate_plan

__version__ = "0.1.0"

__all__ = [
    "Bat",
    "DslError",
    "Ecq",
    "FgpTheory",
    "GroundAction",
    "PlanResult",
    "PlannerConfig",
    "ProblemSpec",
    "Situation",
    "TruthValue",
    "answer_ecq",
    "find_possible_actions",
    "load_domain",
    "oracle_plan",
    "parse_domain",
    "parse_plan",
    "parse_problem",
    "plan",
    "progress",
    "progress_sequence",
    "v_atom",
    "v_ecq",
    "v_literal",
    "validate_bat",
    "validate_plan",
]
