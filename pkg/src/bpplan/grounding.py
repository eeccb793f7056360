"""Run-time grounding of action schemas against the current state."""

from __future__ import annotations

from typing import Iterable, Iterator, List, Mapping, Optional

from .bat import Bat, GroundAction
from .kb import Args, Atom, Binding, FgpTheory, Var, args_key, iter_answers


def iter_possible_actions(theory: FgpTheory, bat: Bat) -> Iterator[GroundAction]:
    """Ground actions whose precondition is entailed, schema by schema, unsorted."""
    for schema in bat.schemas:
        for b in iter_answers(theory, schema.precondition):
            yield GroundAction(schema.name, tuple(b[p] for p in schema.params))


def find_possible_actions(theory: FgpTheory, bat: Bat) -> List[GroundAction]:
    """Every action possible in all models of ``theory``, ordered by name then arguments.

    Only entailed possibility counts: an action whose precondition is merely
    unknown is not returned.
    """
    acts = set(iter_possible_actions(theory, bat))
    return sorted(acts, key=lambda a: (a.name, args_key(a.args)))


def _match(atom: Atom, t: Args) -> Optional[Binding]:
    b: Binding = {}
    for term, c in zip(atom.args, t):
        if isinstance(term, Var):
            if b.setdefault(term, c) != c:
                return None
        elif term != c:
            return None
    return b


def iter_new_possible_actions(
    theory: FgpTheory, bat: Bat, delta: Mapping[str, Iterable[Args]]
) -> Iterator[GroundAction]:
    """Possible actions whose precondition uses at least one tuple from ``delta``.

    When ``theory`` was obtained by adding ``delta`` to the known-true sets of
    a smaller theory (and nothing was removed), these are exactly the actions
    that were not possible before.  Unsorted and possibly repeated.
    """
    for schema in bat.schemas:
        pre = schema.precondition
        for atom in pre.atoms:
            for t in delta.get(atom.fluent, ()):
                seed = _match(atom, t)
                if seed is None:
                    continue
                for b in iter_answers(theory, pre, seed):
                    yield GroundAction(schema.name, tuple(b[p] for p in schema.params))


def new_possible_actions(
    theory: FgpTheory, bat: Bat, delta: Mapping[str, Iterable[Args]]
) -> List[GroundAction]:
    """:func:`iter_new_possible_actions`, deduplicated and ordered like :func:`find_possible_actions`."""
    acts = set(iter_new_possible_actions(theory, bat, delta))
    return sorted(acts, key=lambda a: (a.name, args_key(a.args)))
