"""Proper basic action theories.

Preconditions are quantifier-free conjunctive queries over the action
parameters.  Successor state axioms are weakly context-free: every tuple an
action adds to or deletes from a fluent is computed from the action's
arguments, possibly through situation-independent attachment functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

from .kb import Args, Const, Ecq, FluentSym, Var

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class EvaluationError(Exception):
    """An attachment function was applied to arguments it is not defined on."""


class OverflowError64(EvaluationError):
    """Integer result outside the signed 64-bit range."""


def _int_args(name: str, args: Sequence[Const]) -> Sequence[int]:
    for a in args:
        if isinstance(a, bool) or not isinstance(a, int):
            raise EvaluationError(f"{name} expects integers, got {a!r}")
    return args  # type: ignore[return-value]


def _checked(name: str, value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise OverflowError64(f"{name} overflows 64-bit signed range: {value}")
    return value


def _add(a: Const, b: Const) -> Const:
    x, y = _int_args("add", (a, b))
    return _checked("add", x + y)


def _mul(a: Const, b: Const) -> Const:
    x, y = _int_args("mul", (a, b))
    return _checked("mul", x * y)


def _sub(a: Const, b: Const) -> Const:
    x, y = _int_args("sub", (a, b))
    return _checked("sub", x - y)


def _dec(a: Const) -> Const:
    (x,) = _int_args("dec", (a,))
    return _checked("dec", x - 1)


def _concat(a: Const, b: Const) -> Const:
    # integer operands would print like integers once joined
    for x in (a, b):
        if not isinstance(x, str):
            raise EvaluationError(f"concat expects identifiers, got {x!r}")
    return a + b


@dataclass(frozen=True)
class Function:
    name: str
    arity: int
    impl: Callable[..., Const] = field(compare=False, repr=False)


BUILTINS: Dict[str, Function] = {
    f.name: f
    for f in (
        Function("add", 2, _add),
        Function("mul", 2, _mul),
        Function("sub", 2, _sub),
        Function("dec", 1, _dec),
        Function("concat", 2, _concat),
    )
}


@dataclass(frozen=True)
class FunctionRegistry:
    """Named, total, situation-independent functions available to effects."""

    functions: Tuple[Function, ...] = ()

    @classmethod
    def builtins(cls, names: Optional[Iterable[str]] = None) -> "FunctionRegistry":
        names = list(BUILTINS) if names is None else list(names)
        return cls(tuple(BUILTINS[n] for n in names))

    def get(self, name: str) -> Optional[Function]:
        for f in self.functions:
            if f.name == name:
                return f
        return None

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def apply(self, name: str, args: Sequence[Const]) -> Const:
        f = self.get(name)
        if f is None:
            raise EvaluationError(f"unknown function {name!r}")
        if len(args) != f.arity:
            raise EvaluationError(f"{name} expects {f.arity} arguments, got {len(args)}")
        return f.impl(*args)


@dataclass(frozen=True)
class ParamRef:
    index: int


@dataclass(frozen=True)
class ConstLit:
    value: Const


@dataclass(frozen=True)
class FuncApp:
    function: str
    args: Tuple["ArgSpec", ...]


@dataclass(frozen=True)
class UnboundVar:
    """A fluent argument naming a variable that is not an action parameter.

    Never valid; kept so that loaders can report the violation precisely.
    """

    name: str


ArgSpec = Union[ParamRef, ConstLit, FuncApp, UnboundVar]


def eval_argspec(registry: FunctionRegistry, spec: ArgSpec, args: Sequence[Const]) -> Const:
    if isinstance(spec, ParamRef):
        return args[spec.index]
    if isinstance(spec, ConstLit):
        return spec.value
    if isinstance(spec, FuncApp):
        return registry.apply(spec.function, [eval_argspec(registry, a, args) for a in spec.args])
    raise EvaluationError(f"unbound fluent argument ?{spec.name}")


@dataclass(frozen=True)
class SsaDisjunct:
    """One ``a = A(u) & y = g(u)`` disjunct of a successor state axiom.

    ``guard`` pins action parameters to constants, as in ``a = chop(t, 1)``;
    the disjunct applies only to actions whose arguments match.
    """

    action: str
    args: Tuple[ArgSpec, ...]
    guard: Tuple[Tuple[int, Const], ...] = ()

    def matches(self, action: "GroundAction") -> bool:
        return self.action == action.name and all(action.args[i] == c for i, c in self.guard)


@dataclass(frozen=True)
class Ssa:
    fluent: FluentSym
    positive: Tuple[SsaDisjunct, ...] = ()
    negative: Tuple[SsaDisjunct, ...] = ()


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: Tuple[Var, ...]
    precondition: Ecq = Ecq()


class GroundAction(NamedTuple):
    name: str
    args: Args

    def __str__(self) -> str:
        return "(" + " ".join([self.name, *map(str, self.args)]) + ")"


@dataclass(frozen=True)
class Bat:
    name: str
    fluents: Tuple[FluentSym, ...]
    schemas: Tuple[ActionSchema, ...]
    ssas: Tuple[Ssa, ...]
    registry: FunctionRegistry = FunctionRegistry.builtins()

    def __post_init__(self) -> None:
        object.__setattr__(self, "_schema_map", {s.name: s for s in self.schemas})
        object.__setattr__(self, "_ssa_map", {s.fluent.name: s for s in self.ssas})
        object.__setattr__(self, "_gamma_cache", {})
        by_action: Dict[str, List[Tuple[str, bool, SsaDisjunct]]] = {}
        for ssa in self.ssas:
            for positive, disjuncts in ((True, ssa.positive), (False, ssa.negative)):
                for d in disjuncts:
                    by_action.setdefault(d.action, []).append((ssa.fluent.name, positive, d))
        object.__setattr__(self, "_disjuncts", by_action)

    @property
    def arities(self) -> Dict[str, int]:
        return {f.name: f.arity for f in self.fluents}

    def schema(self, name: str) -> ActionSchema:
        try:
            return self._schema_map[name]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"unknown action {name!r}") from None

    def ssa(self, fluent: str) -> Optional[Ssa]:
        return self._ssa_map.get(fluent)  # type: ignore[attr-defined]

    def ground_precondition(self, action: GroundAction) -> Ecq:
        schema = self.schema(action.name)
        if len(action.args) != len(schema.params):
            raise ValueError(f"{action} does not match arity {len(schema.params)} of {schema.name}")
        return schema.precondition.substitute(dict(zip(schema.params, action.args)))

    def effects(self, action: GroundAction) -> Dict[str, Tuple[Set[Args], Set[Args]]]:
        """gamma sets of every fluent the action touches (cached per action)."""
        cache = self._gamma_cache  # type: ignore[attr-defined]
        out = cache.get(action)
        if out is None:
            schema = self.schema(action.name)
            if len(action.args) != len(schema.params):
                raise ValueError(f"{action} does not match arity {len(schema.params)} of {schema.name}")
            out = {}
            for fluent, positive, d in self._disjuncts.get(action.name, ()):  # type: ignore[attr-defined]
                if not d.matches(action):
                    continue
                t = _instantiate(self, fluent, positive, d, action)
                entry = out.get(fluent)
                if entry is None:
                    entry = out[fluent] = (set(), set())
                entry[0 if positive else 1].add(t)
            cache[action] = out
        return out


class Violation(NamedTuple):
    where: str
    reason: str

    def __str__(self) -> str:
        return f"{self.where}: {self.reason}"


def _check_argspec(bat: Bat, spec: ArgSpec, nparams: int, where: str, out: List[Violation]) -> None:
    if isinstance(spec, UnboundVar):
        out.append(Violation(where, f"WCF: unbound fluent argument ?{spec.name}"))
    elif isinstance(spec, ParamRef):
        if not 0 <= spec.index < nparams:
            out.append(Violation(where, f"parameter index {spec.index} out of range"))
    elif isinstance(spec, FuncApp):
        f = bat.registry.get(spec.function)
        if f is None:
            out.append(Violation(where, f"unknown function {spec.function!r}"))
        elif f.arity != len(spec.args):
            out.append(Violation(where, f"function {spec.function} expects {f.arity} arguments, got {len(spec.args)}"))
        for a in spec.args:
            _check_argspec(bat, a, nparams, where, out)


def validate_bat(bat: Bat) -> List[Violation]:
    """Check that ``bat`` is a proper action theory; returns [] when it is."""
    out: List[Violation] = []
    arities: Dict[str, int] = {}
    for f in bat.fluents:
        if f.name in arities:
            out.append(Violation(f"fluent {f.name}", "declared twice"))
        elif f.arity < 0:
            out.append(Violation(f"fluent {f.name}", "negative arity"))
        arities[f.name] = f.arity

    names: Dict[str, ActionSchema] = {}
    for schema in bat.schemas:
        where = f"action {schema.name}"
        if schema.name in names:
            out.append(Violation(where, "duplicate action name"))
        names[schema.name] = schema
        if len(set(schema.params)) != len(schema.params):
            out.append(Violation(where, "repeated parameter"))
        pre = schema.precondition
        if pre.vars:
            out.append(Violation(where, "precondition must be quantifier-free"))
        for atom in pre.atoms:
            if atom.fluent not in arities:
                out.append(Violation(where, f"undeclared fluent {atom.fluent!r}"))
            elif arities[atom.fluent] != len(atom.args):
                out.append(Violation(where, f"{atom.fluent} expects {arities[atom.fluent]} arguments, got {len(atom.args)}"))
        params = set(schema.params)
        for v in pre.variables():
            if v not in params:
                out.append(Violation(where, f"precondition variable {v} is not a parameter"))
        in_atoms = {v for a in pre.atoms for v in a.variables()}
        for lhs, rhs in pre.diseqs:
            for t in (lhs, rhs):
                if isinstance(t, Var) and t not in in_atoms:
                    out.append(Violation(where, f"unsafe disequality: {t} occurs in no positive atom"))
        for v in schema.params:
            if v not in in_atoms and all(v not in pair for pair in pre.diseqs):
                out.append(Violation(where, f"unsafe parameter: {v} occurs in no positive atom"))

    seen_ssa: Set[str] = set()
    for ssa in bat.ssas:
        fname = ssa.fluent.name
        if fname not in arities:
            out.append(Violation(f"ssa {fname}", "undeclared fluent"))
            continue
        if fname in seen_ssa:
            out.append(Violation(f"ssa {fname}", "more than one successor state axiom"))
        seen_ssa.add(fname)
        if ssa.fluent.arity != arities[fname]:
            out.append(Violation(f"ssa {fname}", "arity differs from declaration"))
        for sign, disjuncts in (("+", ssa.positive), ("-", ssa.negative)):
            for d in disjuncts:
                where = f"ssa {fname} {sign} {d.action}"
                schema = names.get(d.action)
                if schema is None:
                    out.append(Violation(where, f"unknown action {d.action!r}"))
                    continue
                if len(d.args) != arities[fname]:
                    out.append(Violation(where, f"{fname} expects {arities[fname]} arguments, got {len(d.args)}"))
                for spec in d.args:
                    _check_argspec(bat, spec, len(schema.params), where, out)
                for i, _ in d.guard:
                    if not 0 <= i < len(schema.params):
                        out.append(Violation(where, f"guard parameter index {i} out of range"))
    return out


def _instantiate(bat: Bat, fluent: str, positive: bool, d: SsaDisjunct, action: GroundAction) -> Args:
    try:
        return tuple(eval_argspec(bat.registry, s, action.args) for s in d.args)
    except EvaluationError as e:
        sign = "+" if positive else "-"
        raise type(e)(f"{e} (in {sign}{fluent} effect of {action})") from e


def gamma_sets(bat: Bat, fluent: str, action: GroundAction) -> Tuple[Set[Args], Set[Args]]:
    """Tuples ``action`` makes true (adds) and false (dels) for ``fluent``."""
    schema = bat.schema(action.name)
    if len(action.args) != len(schema.params):
        raise ValueError(f"{action} does not match arity {len(schema.params)} of {schema.name}")
    ssa = bat.ssa(fluent)
    if ssa is None:
        return set(), set()
    adds = {_instantiate(bat, fluent, True, d, action) for d in ssa.positive if d.matches(action)}
    dels = {_instantiate(bat, fluent, False, d, action) for d in ssa.negative if d.matches(action)}
    return adds, dels
