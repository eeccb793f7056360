"""Finite grounded proper theories and extended conjunctive queries.

A theory stores, per fluent, the finite set of argument tuples known to be
true and the finite set known to be false.  Everything else is unknown: there
is no closed-world or domain-closure assumption, so queries are evaluated with
three truth values.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Const = Union[int, str]
Args = Tuple[Const, ...]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")


class KBError(Exception):
    """Structural misuse of a theory or query (unknown fluent, arity mismatch...)."""


def const(value: Union[int, str]) -> Const:
    """Validate and return a constant symbol.

    Integers are used as-is.  Strings must be identifiers so that their printed
    form never coincides with an integer's.
    """
    if isinstance(value, bool):
        raise KBError(f"booleans are not constants: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _IDENT.match(value):
        return value
    raise KBError(f"not a valid constant: {value!r}")


def const_key(c: Const) -> str:
    return str(c)


def args_key(args: Sequence[Const]) -> Tuple[str, ...]:
    return tuple(str(c) for c in args)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


Term = Union[Var, int, str]


@dataclass(frozen=True)
class FluentSym:
    name: str
    arity: int


class TruthValue(enum.Enum):
    FALSE = 0.0
    UNKNOWN = 0.5
    TRUE = 1.0

    def complement(self) -> "TruthValue":
        return TruthValue(1.0 - self.value)

    def __lt__(self, other: "TruthValue") -> bool:
        return self.value < other.value

    def __le__(self, other: "TruthValue") -> bool:
        return self.value <= other.value


@dataclass(frozen=True)
class Atom:
    fluent: str
    args: Tuple[Term, ...]

    def variables(self) -> List[Var]:
        return [a for a in self.args if isinstance(a, Var)]

    def is_ground(self) -> bool:
        return not any(isinstance(a, Var) for a in self.args)

    def substitute(self, binding: Mapping[Var, Const]) -> "Atom":
        return Atom(self.fluent, tuple(binding.get(a, a) if isinstance(a, Var) else a for a in self.args))

    def __str__(self) -> str:
        return "(" + " ".join([self.fluent, *map(str, self.args)]) + ")"


@dataclass(frozen=True)
class Ecq:
    """``exists vars. atom_1 & ... & atom_n & lhs_1 != rhs_1 & ...``.

    Variables not listed in ``vars`` are free; action preconditions use free
    variables for the action parameters and leave ``vars`` empty.
    """

    vars: Tuple[Var, ...] = ()
    atoms: Tuple[Atom, ...] = ()
    diseqs: Tuple[Tuple[Term, Term], ...] = ()

    def variables(self) -> List[Var]:
        """All variables, existential first, then free ones by first occurrence."""
        seen = dict.fromkeys(self.vars)
        for atom in self.atoms:
            for v in atom.variables():
                seen.setdefault(v)
        for lhs, rhs in self.diseqs:
            for t in (lhs, rhs):
                if isinstance(t, Var):
                    seen.setdefault(t)
        return list(seen)

    def free_variables(self) -> List[Var]:
        bound = set(self.vars)
        return [v for v in self.variables() if v not in bound]

    def unsafe_variables(self) -> List[Var]:
        """Variables that occur in no positive atom."""
        covered = {v for atom in self.atoms for v in atom.variables()}
        return [v for v in self.variables() if v not in covered]

    def substitute(self, binding: Mapping[Var, Const]) -> "Ecq":
        def sub(t: Term) -> Term:
            return binding.get(t, t) if isinstance(t, Var) else t

        return Ecq(
            tuple(v for v in self.vars if v not in binding),
            tuple(a.substitute(binding) for a in self.atoms),
            tuple((sub(l), sub(r)) for l, r in self.diseqs),
        )

    def constants(self) -> set:
        out = {t for a in self.atoms for t in a.args if not isinstance(t, Var)}
        out.update(t for pair in self.diseqs for t in pair if not isinstance(t, Var))
        return out

    def __str__(self) -> str:
        parts = [str(a) for a in self.atoms] + [f"(neq {l} {r})" for l, r in self.diseqs]
        body = parts[0] if len(parts) == 1 else "(and " + " ".join(parts) + ")"
        if self.vars:
            return "(exists (" + " ".join(map(str, self.vars)) + ") " + body + ")"
        return body


Binding = Dict[Var, Const]


class FgpTheory:
    """Immutable finite grounded proper theory.

    ``true`` and ``false`` map fluent names to the sets of tuples known true and
    known false.  Fluents absent from either mapping have empty sets.
    Construction does not enforce disjointness; use :func:`check_consistency`.
    """

    __slots__ = ("arities", "_true", "_false", "_index", "_hash")

    def __init__(
        self,
        arities: Mapping[str, int],
        true: Optional[Mapping[str, Iterable[Args]]] = None,
        false: Optional[Mapping[str, Iterable[Args]]] = None,
    ) -> None:
        self.arities: Dict[str, int] = dict(arities)
        self._true = self._freeze(true or {})
        self._false = self._freeze(false or {})
        self._index: Dict[Tuple[str, Tuple[int, ...]], Dict[Args, List[Args]]] = {}
        self._hash: Optional[int] = None

    def _freeze(self, table: Mapping[str, Iterable[Args]]) -> Dict[str, FrozenSet[Args]]:
        out: Dict[str, FrozenSet[Args]] = {}
        for name, tuples in table.items():
            if name not in self.arities:
                raise KBError(f"unknown fluent {name!r}")
            fs = tuples if isinstance(tuples, frozenset) else frozenset(tuple(t) for t in tuples)
            arity = self.arities[name]
            for t in fs:
                if len(t) != arity:
                    raise KBError(f"tuple {t!r} does not match arity {arity} of {name!r}")
            if fs:
                out[name] = fs
        return out

    @classmethod
    def _raw(cls, arities: Dict[str, int], true: Dict[str, FrozenSet[Args]], false: Dict[str, FrozenSet[Args]]) -> "FgpTheory":
        # Trusted constructor for progression: inputs already validated.
        self = cls.__new__(cls)
        self.arities = arities
        self._true = {k: v for k, v in true.items() if v}
        self._false = {k: v for k, v in false.items() if v}
        self._index = {}
        self._hash = None
        return self

    @classmethod
    def from_literals(cls, arities: Mapping[str, int], literals: Iterable[Tuple[bool, str, Args]]) -> "FgpTheory":
        true: Dict[str, set] = {}
        false: Dict[str, set] = {}
        for positive, name, args in literals:
            (true if positive else false).setdefault(name, set()).add(tuple(args))
        return cls(arities, true, false)

    def known_true(self, fluent: str) -> FrozenSet[Args]:
        self._check_fluent(fluent)
        return self._true.get(fluent, frozenset())

    def known_false(self, fluent: str) -> FrozenSet[Args]:
        self._check_fluent(fluent)
        return self._false.get(fluent, frozenset())

    def _check_fluent(self, fluent: str) -> None:
        if fluent not in self.arities:
            raise KBError(f"unknown fluent {fluent!r}")

    def literals(self) -> Iterator[Tuple[bool, str, Args]]:
        """All literals in deterministic order."""
        for name in sorted(self.arities):
            for t in sorted(self._true.get(name, ()), key=args_key):
                yield True, name, t
            for t in sorted(self._false.get(name, ()), key=args_key):
                yield False, name, t

    def constants(self) -> set:
        out = set()
        for table in (self._true, self._false):
            for tuples in table.values():
                for t in tuples:
                    out.update(t)
        return out

    def true_constants(self) -> set:
        return {c for tuples in self._true.values() for t in tuples for c in t}

    def lookup(self, fluent: str, positions: Tuple[int, ...], key: Args) -> List[Args]:
        """Known-true tuples of ``fluent`` whose values at ``positions`` equal ``key``."""
        idx = self._index.get((fluent, positions))
        if idx is None:
            idx = {}
            for t in self._true.get(fluent, ()):
                idx.setdefault(tuple(t[p] for p in positions), []).append(t)
            self._index[(fluent, positions)] = idx
        return idx.get(key, [])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FgpTheory):
            return NotImplemented
        return self._true == other._true and self._false == other._false and self.arities == other.arities

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._true.items()), frozenset(self._false.items())))
        return self._hash

    def __repr__(self) -> str:
        lits = [("" if p else "~") + f"{n}{t}" for p, n, t in self.literals()]
        return f"FgpTheory({', '.join(lits)})"


def v_atom(theory: FgpTheory, fluent: str, args: Sequence[Const]) -> TruthValue:
    arity = theory.arities.get(fluent)
    if arity is None:
        raise KBError(f"unknown fluent {fluent!r}")
    if len(args) != arity:
        raise KBError(f"{fluent} expects {arity} arguments, got {len(args)}")
    t = tuple(args)
    if t in theory.known_true(fluent):
        return TruthValue.TRUE
    if t in theory.known_false(fluent):
        return TruthValue.FALSE
    return TruthValue.UNKNOWN


def v_literal(theory: FgpTheory, positive: bool, fluent: str, args: Sequence[Const]) -> TruthValue:
    """Value of ``fluent(args)`` or, when ``positive`` is false, of its negation.

    The negation is read off the known-false set directly rather than by
    complementing the atom's value.
    """
    if positive:
        return v_atom(theory, fluent, args)
    v_atom(theory, fluent, args)  # arity and fluent checks
    t = tuple(args)
    if t in theory.known_false(fluent):
        return TruthValue.TRUE
    if t in theory.known_true(fluent):
        return TruthValue.FALSE
    return TruthValue.UNKNOWN


def _check_query(theory: FgpTheory, query: Ecq) -> None:
    # queries are immutable, so remember the arity table they passed against
    if getattr(query, "_checked_against", None) is theory.arities:
        return
    for atom in query.atoms:
        arity = theory.arities.get(atom.fluent)
        if arity is None:
            raise KBError(f"unknown fluent {atom.fluent!r}")
        if len(atom.args) != arity:
            raise KBError(f"{atom.fluent} expects {arity} arguments, got {len(atom.args)}")
    unsafe = query.unsafe_variables()
    if unsafe:
        raise KBError("unsafe variables: " + ", ".join(map(str, unsafe)))
    object.__setattr__(query, "_checked_against", theory.arities)


def iter_answers(theory: FgpTheory, query: Ecq, seed: Optional[Binding] = None) -> Iterator[Binding]:
    """Yield bindings of all query variables that make every atom known true.

    Nested-loop join; atoms are visited by ascending size of their known-true
    relation and disequalities are tested as soon as both sides are bound.
    Variables in ``seed`` start out bound to the given constants (and are
    included in every answer).  The order of yielded bindings is not sorted;
    duplicates cannot occur since every variable is bound by some atom.
    """
    _check_query(theory, query)
    seed = seed or {}
    atoms = sorted(query.atoms, key=lambda a: len(theory.known_true(a.fluent)))
    diseqs = list(query.diseqs)

    # diseq i becomes checkable right after the atom that binds its last variable
    bound_after: List[set] = []
    seen: set = set(seed)
    for atom in atoms:
        seen |= set(atom.variables())
        bound_after.append(set(seen))
    checks: List[List[Tuple[Term, Term]]] = [[] for _ in atoms]
    for lhs, rhs in diseqs:
        vs = {t for t in (lhs, rhs) if isinstance(t, Var) and t not in seed}
        if not vs:
            if seed.get(lhs, lhs) == seed.get(rhs, rhs):  # type: ignore[call-overload]
                return
            continue
        for i, b in enumerate(bound_after):
            if vs <= b:
                checks[i].append((lhs, rhs))
                break

    # which positions are already bound at each atom is fixed by the order
    steps = []
    bound: set = set(seed)
    for atom, cs in zip(atoms, checks):
        positions: List[int] = []
        keyterms: List[Term] = []
        free: Dict[Var, List[int]] = {}
        for p, t in enumerate(atom.args):
            if isinstance(t, Var) and t not in bound:
                free.setdefault(t, []).append(p)
            else:
                positions.append(p)
                keyterms.append(t)
        bound |= set(free)
        steps.append((atom.fluent, tuple(positions), keyterms, list(free.items()), cs))

    binding: Binding = dict(seed)

    def value(t: Term) -> Const:
        return binding[t] if isinstance(t, Var) else t

    def rec(i: int) -> Iterator[Binding]:
        if i == len(steps):
            yield dict(binding)
            return
        fluent, positions, keyterms, free, cs = steps[i]
        key = tuple(value(t) for t in keyterms)
        if not free:
            if key in theory.known_true(fluent) and all(value(l) != value(r) for l, r in cs):
                yield from rec(i + 1)
            return
        candidates = theory.lookup(fluent, positions, key) if positions else theory.known_true(fluent)
        for t in candidates:
            ok = True
            for v, ps in free:
                val = t[ps[0]]
                for p in ps[1:]:
                    if t[p] != val:
                        ok = False
                        break
                binding[v] = val
            if ok and all(value(l) != value(r) for l, r in cs):
                yield from rec(i + 1)
        for v, _ in free:
            binding.pop(v, None)

    yield from rec(0)


def answer_key(query_vars: Sequence[Var], binding: Binding) -> Tuple[str, ...]:
    return tuple(str(binding[v]) for v in query_vars)


def answer_ecq(theory: FgpTheory, query: Ecq) -> List[Binding]:
    """All bindings of the query's variables that entail the query, deterministically ordered."""
    order = query.variables()
    answers = {tuple(b[v] for v in order): b for b in iter_answers(theory, query)}
    return [answers[k] for k in sorted(answers, key=lambda k: tuple(map(str, k)))]


def v_ecq(theory: FgpTheory, query: Ecq) -> TruthValue:
    """Three-valued value of the existential closure of ``query``.

    Known true iff some binding over known-true constants verifies every
    literal.  Otherwise, giving each variable its own fresh constant makes
    every literal that mentions a variable unknown (and every disequality
    between distinct terms true), which is the best a failed candidate can
    do; the value is then false only if a variable-free literal is already
    false or a disequality compares a term with itself.
    """
    for _ in iter_answers(theory, query):
        return TruthValue.TRUE
    for atom in query.atoms:
        if atom.is_ground() and v_atom(theory, atom.fluent, atom.args) is TruthValue.FALSE:
            return TruthValue.FALSE
    for lhs, rhs in query.diseqs:
        if lhs == rhs:
            return TruthValue.FALSE
    return TruthValue.UNKNOWN


def check_consistency(theory: FgpTheory) -> List[Tuple[str, Args]]:
    """Every (fluent, tuple) that is both known true and known false; empty if consistent."""
    report = []
    for name in sorted(theory.arities):
        both = theory.known_true(name) & theory.known_false(name)
        report.extend((name, t) for t in sorted(both, key=args_key))
    return report
