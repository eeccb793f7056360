"""Progression of finite grounded proper theories through ground actions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from .bat import Bat, EvaluationError, GroundAction
from .kb import Const, FgpTheory


class ProgressionError(Exception):
    """Progression failed; ``step`` is the index of the offending action when known."""

    def __init__(self, message: str, step: int | None = None) -> None:
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step


class EffectConflictError(ProgressionError):
    pass


@dataclass(frozen=True)
class Situation:
    """A ground situation, i.e. the actions performed since S0."""

    actions: Tuple[GroundAction, ...] = ()

    def do(self, action: GroundAction) -> "Situation":
        return Situation(self.actions + (action,))

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.actions)) + "]"


S0 = Situation()


@dataclass(frozen=True)
class ObjectDiff:
    created: FrozenSet[Const]
    destroyed: FrozenSet[Const]


def progress(theory: FgpTheory, bat: Bat, action: GroundAction) -> FgpTheory:
    """Theory about ``do(action, S)`` given ``theory`` about ``S``.

    Preconditions are not checked here.
    """
    try:
        effects = bat.effects(action)
    except EvaluationError as e:
        raise ProgressionError(str(e)) from e
    if not effects:
        return theory
    true = dict(theory._true)
    false = dict(theory._false)
    for fluent, (adds, dels) in effects.items():
        clash = adds & dels
        if clash:
            raise EffectConflictError(f"{action} both adds and deletes {fluent}{sorted(clash, key=str)[0]}")
        kt = true.get(fluent, frozenset())
        kf = false.get(fluent, frozenset())
        true[fluent] = (kt - dels) | adds
        false[fluent] = (kf - adds) | dels
    return FgpTheory._raw(theory.arities, true, false)


def progress_sequence(theory: FgpTheory, bat: Bat, situation: Iterable[GroundAction]) -> FgpTheory:
    for i, action in enumerate(situation):
        try:
            theory = progress(theory, bat, action)
        except ProgressionError as e:
            raise type(e)(str(e), step=i) from e
    return theory


def object_diff(before: FgpTheory, after: FgpTheory) -> ObjectDiff:
    b, a = before.constants(), after.constants()
    return ObjectDiff(frozenset(a - b), frozenset(b - a))
