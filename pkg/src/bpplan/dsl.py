"""Reader and writer for the ``.bpd`` domain and ``.bpp`` problem formats.

Both are s-expressions.  See ``docs/format.md`` for the grammar.  Parse
errors are collected as :class:`ParseDiagnostic` objects and raised together
in a :class:`DslError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .bat import (
    ActionSchema,
    ArgSpec,
    Bat,
    BUILTINS,
    ConstLit,
    FuncApp,
    FunctionRegistry,
    GroundAction,
    ParamRef,
    Ssa,
    SsaDisjunct,
    UnboundVar,
    validate_bat,
)
from .kb import Args, Atom, Const, Ecq, FgpTheory, FluentSym, Term, Var

RESERVED = {"and", "not", "neq", "eq", "exists", "when"}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str
    message: str
    span: SourceSpan
    # "syntax" for malformed input, "properness" for a well-formed theory
    # that is not a proper action theory (unsafe queries, non-WCF effects)
    category: str = "syntax"

    def __str__(self) -> str:
        return f"{self.span}: {self.severity}: {self.message}"


class DslError(Exception):
    def __init__(self, diagnostics: Sequence[ParseDiagnostic]) -> None:
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))

    @property
    def errors(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]

    @property
    def only_properness(self) -> bool:
        """True when the text parsed but the theory it describes is not proper."""
        errs = self.errors
        return bool(errs) and all(d.category == "properness" for d in errs)


# --- s-expressions ---------------------------------------------------------

@dataclass
class SAtom:
    kind: str  # "int" | "ident" | "var"
    value: Union[int, str]
    span: SourceSpan


@dataclass
class SList:
    items: List["SExpr"]
    span: SourceSpan

    def head(self) -> Optional[str]:
        if self.items and isinstance(self.items[0], SAtom) and self.items[0].kind == "ident":
            return self.items[0].value  # type: ignore[return-value]
        return None


SExpr = Union[SAtom, SList]

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+|\n)
  | (?P<comment>;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<int>-?[0-9]+(?![A-Za-z0-9_\-?]))
  | (?P<var>\?[A-Za-z_][A-Za-z0-9_\-]*(?![^\s();]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_\-]*(?![^\s();]))
  | (?P<bad>[^\s();]+)
    """,
    re.VERBOSE,
)


def read_sexprs(text: str, file: str = "<input>") -> List[SExpr]:
    diags: List[ParseDiagnostic] = []
    stack: List[Tuple[List[SExpr], SourceSpan]] = [([], SourceSpan(file, 1, 1, 0))]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        span = SourceSpan(file, line, col, m.end() - m.start())
        tok = m.group()
        if kind == "ws":
            if tok == "\n":
                line += 1
                line_start = m.end()
            continue
        if kind == "comment":
            continue
        if kind == "open":
            stack.append(([], span))
        elif kind == "close":
            if len(stack) == 1:
                diags.append(ParseDiagnostic("error", "unbalanced ')'", span))
                continue
            items, open_span = stack.pop()
            stack[-1][0].append(SList(items, open_span))
        elif kind == "int":
            stack[-1][0].append(SAtom("int", int(tok), span))
        elif kind == "var":
            stack[-1][0].append(SAtom("var", tok[1:], span))
        elif kind == "ident":
            stack[-1][0].append(SAtom("ident", tok, span))
        else:
            diags.append(ParseDiagnostic("error", f"invalid token {tok!r}", span))
    while len(stack) > 1:
        _, open_span = stack.pop()
        diags.append(ParseDiagnostic("error", "unclosed '('", open_span))
    if diags:
        raise DslError(diags)
    return stack[0][0]


class _Ctx:
    def __init__(self, file: str) -> None:
        self.file = file
        self.diags: List[ParseDiagnostic] = []

    def error(self, msg: str, span: SourceSpan, category: str = "syntax") -> None:
        self.diags.append(ParseDiagnostic("error", msg, span, category))

    def warn(self, msg: str, span: SourceSpan) -> None:
        self.diags.append(ParseDiagnostic("warning", msg, span))

    @property
    def failed(self) -> bool:
        return any(d.severity == "error" for d in self.diags)


def _expect_ident(ctx: _Ctx, e: SExpr, what: str) -> Optional[str]:
    if isinstance(e, SAtom) and e.kind == "ident":
        return e.value  # type: ignore[return-value]
    ctx.error(f"expected {what}", e.span)
    return None


def _expect_int(ctx: _Ctx, e: SExpr, what: str) -> Optional[int]:
    if isinstance(e, SAtom) and e.kind == "int":
        return e.value  # type: ignore[return-value]
    ctx.error(f"expected {what}", e.span)
    return None


def _single_form(ctx: _Ctx, forms: List[SExpr], head: str) -> Optional[SList]:
    if not forms:
        ctx.error(f"expected a ({head} ...) form", SourceSpan(ctx.file, 1, 1, 0))
        return None
    for extra in forms[1:]:
        ctx.error("unexpected form after the first top-level form", extra.span)
    top = forms[0]
    if not isinstance(top, SList) or top.head() != head:
        ctx.error(f"expected a ({head} ...) form", top.span)
        return None
    return top


def _term(ctx: _Ctx, e: SExpr) -> Optional[Term]:
    if isinstance(e, SAtom):
        if e.kind == "var":
            return Var(e.value)  # type: ignore[arg-type]
        return e.value
    ctx.error("expected a variable or constant", e.span)
    return None


def _atom(ctx: _Ctx, e: SExpr, arities: Dict[str, int]) -> Optional[Atom]:
    if not isinstance(e, SList):
        ctx.error("expected an atom (fluent args...)", e.span)
        return None
    name = e.head()
    if name is None:
        ctx.error("expected a fluent name", e.items[0].span if e.items else e.span)
        return None
    args = [_term(ctx, a) for a in e.items[1:]]
    if name not in arities:
        ctx.error(f"unknown fluent {name!r}", e.items[0].span)
        return None
    if len(args) != arities[name]:
        ctx.error(f"{name} expects {arities[name]} arguments, got {len(args)}", e.span)
        return None
    if any(a is None for a in args):
        return None
    return Atom(name, tuple(args))  # type: ignore[arg-type]


def _conjunction(ctx: _Ctx, e: SExpr, arities: Dict[str, int]) -> Tuple[List[Atom], List[Tuple[Term, Term]]]:
    atoms: List[Atom] = []
    diseqs: List[Tuple[Term, Term]] = []
    parts = e.items[1:] if isinstance(e, SList) and e.head() == "and" else [e]
    for p in parts:
        if isinstance(p, SList) and p.head() == "neq":
            if len(p.items) != 3:
                ctx.error("neq takes exactly two terms", p.span)
                continue
            l, r = _term(ctx, p.items[1]), _term(ctx, p.items[2])
            if l is not None and r is not None:
                diseqs.append((l, r))
        elif isinstance(p, SList) and p.head() in ("not", "exists", "and"):
            ctx.error(f"'{p.head()}' is not allowed inside a conjunctive query", p.span)
        else:
            a = _atom(ctx, p, arities)
            if a is not None:
                atoms.append(a)
    return atoms, diseqs


def _check_safety(ctx: _Ctx, q: Ecq, span: SourceSpan) -> None:
    for v in q.unsafe_variables():
        in_diseq = any(v in pair for pair in q.diseqs)
        what = "unsafe disequality" if in_diseq else "unsafe variable"
        ctx.error(f"{what}: {v} occurs in no positive atom", span, "properness")


# --- domains ---------------------------------------------------------------

def _effect_term(ctx: _Ctx, e: SExpr, params: Dict[str, int], functions: Dict[str, int]) -> Optional[ArgSpec]:
    if isinstance(e, SAtom):
        if e.kind == "var":
            idx = params.get(e.value)  # type: ignore[arg-type]
            return ParamRef(idx) if idx is not None else UnboundVar(e.value)  # type: ignore[arg-type]
        return ConstLit(e.value)
    name = e.head()
    if name is None:
        ctx.error("expected a function application (function args...)", e.span)
        return None
    if name not in functions:
        ctx.error(f"undeclared function {name!r}", e.items[0].span)
        return None
    args = [_effect_term(ctx, a, params, functions) for a in e.items[1:]]
    if len(args) != functions[name]:
        ctx.error(f"function {name} expects {functions[name]} arguments, got {len(args)}", e.span)
        return None
    if any(a is None for a in args):
        return None
    return FuncApp(name, tuple(args))  # type: ignore[arg-type]


def _guard(ctx: _Ctx, e: SExpr, params: Dict[str, int]) -> Optional[List[Tuple[int, Const]]]:
    """``(eq ?p c)`` or ``(and (eq ?p c) ...)``: action parameters pinned to constants."""
    parts = e.items[1:] if isinstance(e, SList) and e.head() == "and" else [e]
    out: List[Tuple[int, Const]] = []
    ok = True
    for p in parts:
        if not (isinstance(p, SList) and p.head() == "eq" and len(p.items) == 3):
            ctx.error("expected (eq ?param constant)", p.span)
            ok = False
            continue
        var, val = p.items[1], p.items[2]
        if not (isinstance(var, SAtom) and var.kind == "var" and var.value in params):
            ctx.error("expected an action parameter", var.span)
            ok = False
        elif not (isinstance(val, SAtom) and val.kind in ("int", "ident")):
            ctx.error("expected a constant", val.span)
            ok = False
        else:
            out.append((params[var.value], val.value))  # type: ignore[index]
    return out if ok else None


def parse_domain(text: str, file: str = "<domain>") -> Bat:
    """Parse a domain and return a validated :class:`Bat`; raises :class:`DslError`."""
    ctx = _Ctx(file)
    top = _single_form(ctx, read_sexprs(text, file), "domain")
    if top is None:
        raise DslError(ctx.diags)
    if len(top.items) < 2:
        ctx.error("domain needs a name", top.span)
        raise DslError(ctx.diags)
    name = _expect_ident(ctx, top.items[1], "domain name") or ""

    functions: Dict[str, int] = {}
    fluents: Dict[str, int] = {}
    actions: List[SList] = []
    for sec in top.items[2:]:
        head = sec.head() if isinstance(sec, SList) else None
        if head in ("functions", "fluents"):
            table = functions if head == "functions" else fluents
            for decl in sec.items[1:]:  # type: ignore[union-attr]
                if not (isinstance(decl, SList) and len(decl.items) == 2):
                    ctx.error(f"expected ({head[:-1]} arity)", decl.span)
                    continue
                dname = _expect_ident(ctx, decl.items[0], "a name")
                arity = _expect_int(ctx, decl.items[1], "an arity")
                if dname is None or arity is None:
                    continue
                if dname in RESERVED:
                    ctx.error(f"{dname!r} is reserved", decl.items[0].span)
                elif dname in table:
                    ctx.error(f"{dname!r} declared twice", decl.items[0].span)
                elif arity < 0:
                    ctx.error("arity must be non-negative", decl.items[1].span)
                elif head == "functions" and dname not in BUILTINS:
                    ctx.error(f"unknown function {dname!r}; available: {', '.join(BUILTINS)}", decl.items[0].span)
                elif head == "functions" and BUILTINS[dname].arity != arity:
                    ctx.error(f"function {dname} has arity {BUILTINS[dname].arity}", decl.items[1].span)
                else:
                    table[dname] = arity
        elif head == "action":
            actions.append(sec)  # type: ignore[arg-type]
        else:
            ctx.error("expected (functions ...), (fluents ...) or (action ...)", sec.span)

    schemas: List[ActionSchema] = []
    pos: Dict[str, List[SsaDisjunct]] = {f: [] for f in fluents}
    neg: Dict[str, List[SsaDisjunct]] = {f: [] for f in fluents}
    seen_actions: Dict[str, SourceSpan] = {}
    for act in actions:
        if len(act.items) < 2:
            ctx.error("action needs a name", act.span)
            continue
        aname = _expect_ident(ctx, act.items[1], "action name")
        if aname is None:
            continue
        if aname in seen_actions:
            ctx.error(f"duplicate action {aname!r}", act.items[1].span)
            continue
        seen_actions[aname] = act.items[1].span
        params: List[Var] = []
        pre = Ecq()
        pre_span = act.span
        effects: List[Tuple[bool, SList]] = []
        seen_parts = set()
        for part in act.items[2:]:
            phead = part.head() if isinstance(part, SList) else None
            if phead in ("params", "pre") and phead in seen_parts:
                ctx.error(f"duplicate ({phead} ...)", part.span)
                continue
            seen_parts.add(phead)
            if phead == "params":
                for p in part.items[1:]:  # type: ignore[union-attr]
                    if isinstance(p, SAtom) and p.kind == "var":
                        v = Var(p.value)  # type: ignore[arg-type]
                        if v in params:
                            ctx.error(f"parameter {v} repeated", p.span)
                        params.append(v)
                    else:
                        ctx.error("parameters must be variables", p.span)
            elif phead == "pre":
                body = part.items[1:]  # type: ignore[union-attr]
                pre_span = part.span
                if len(body) > 1:
                    ctx.error("pre takes a single formula; use (and ...)", part.span)
                elif body:
                    atoms, diseqs = _conjunction(ctx, body[0], fluents)
                    pre = Ecq((), tuple(atoms), tuple(diseqs))
            elif phead in ("add", "del"):
                for eff in part.items[1:]:  # type: ignore[union-attr]
                    effects.append((phead == "add", eff))  # type: ignore[arg-type]
            else:
                ctx.error("expected (params ...), (pre ...), (add ...) or (del ...)", part.span)
        pset = set(params)
        for v in pre.variables():
            if v not in pset:
                ctx.error(f"precondition variable {v} is not a parameter", pre_span, "properness")
        _check_safety(ctx, pre, pre_span)
        for v in params:
            if all(v not in a.args for a in pre.atoms) and all(v not in pair for pair in pre.diseqs):
                ctx.error(f"unsafe parameter: {v} occurs in no precondition atom", pre_span, "properness")
        index = {v.name: i for i, v in enumerate(params)}
        for positive, eff in effects:
            guard: List[Tuple[int, Const]] = []
            if isinstance(eff, SList) and eff.head() == "when":
                if len(eff.items) != 3:
                    ctx.error("expected (when CONDITION ATOM)", eff.span)
                    continue
                g = _guard(ctx, eff.items[1], index)
                if g is None:
                    continue
                guard, eff = g, eff.items[2]
            if not isinstance(eff, SList) or eff.head() is None:
                ctx.error("expected an effect atom (fluent terms...)", eff.span)
                continue
            fname = eff.head()
            if fname not in fluents:
                ctx.error(f"unknown fluent {fname!r}", eff.items[0].span)
                continue
            specs = [_effect_term(ctx, t, index, functions) for t in eff.items[1:]]
            if len(specs) != fluents[fname]:
                ctx.error(f"{fname} expects {fluents[fname]} arguments, got {len(specs)}", eff.span)
                continue
            if any(s is None for s in specs):
                continue
            for s, t in zip(specs, eff.items[1:]):
                if isinstance(s, UnboundVar):
                    ctx.error(f"WCF: unbound fluent argument ?{s.name} (not an action parameter)", t.span, "properness")
            (pos if positive else neg)[fname].append(SsaDisjunct(aname, tuple(specs), tuple(guard)))  # type: ignore[arg-type]
        schemas.append(ActionSchema(aname, tuple(params), pre))

    if ctx.failed:
        raise DslError(ctx.diags)
    bat = Bat(
        name,
        tuple(FluentSym(f, a) for f, a in fluents.items()),
        tuple(schemas),
        tuple(Ssa(FluentSym(f, a), tuple(pos[f]), tuple(neg[f])) for f, a in fluents.items()),
        FunctionRegistry.builtins(functions),
    )
    for v in validate_bat(bat):
        ctx.error(str(v), top.span, "properness")
    if ctx.failed:
        raise DslError(ctx.diags)
    return bat


def _fmt_spec(spec: ArgSpec, params: Sequence[Var]) -> str:
    if isinstance(spec, ParamRef):
        return str(params[spec.index])
    if isinstance(spec, ConstLit):
        return str(spec.value)
    if isinstance(spec, FuncApp):
        return "(" + " ".join([spec.function, *(_fmt_spec(a, params) for a in spec.args)]) + ")"
    return f"?{spec.name}"


def _fmt_conj(q: Ecq) -> str:
    parts = [str(a) for a in q.atoms] + [f"(neq {l} {r})" for l, r in q.diseqs]
    if len(parts) == 1:
        return parts[0]
    return "(and" + "".join(" " + p for p in parts) + ")"


def serialize_domain(bat: Bat) -> str:
    lines = [f"(domain {bat.name}"]
    if bat.registry.functions:
        lines.append("  (functions " + " ".join(f"({f.name} {f.arity})" for f in bat.registry.functions) + ")")
    lines.append("  (fluents " + " ".join(f"({f.name} {f.arity})" for f in bat.fluents) + ")")
    for schema in bat.schemas:
        lines.append(f"  (action {schema.name}")
        lines.append("    (params" + "".join(" " + str(p) for p in schema.params) + ")")
        if schema.precondition.atoms or schema.precondition.diseqs:
            lines.append(f"    (pre {_fmt_conj(schema.precondition)})")
        for sign, label in ((True, "add"), (False, "del")):
            entries = []
            for ssa in bat.ssas:
                for d in ssa.positive if sign else ssa.negative:
                    if d.action == schema.name:
                        entry = "(" + " ".join([ssa.fluent.name, *(_fmt_spec(s, schema.params) for s in d.args)]) + ")"
                        if d.guard:
                            conds = [f"(eq {schema.params[i]} {c})" for i, c in d.guard]
                            cond = conds[0] if len(conds) == 1 else "(and " + " ".join(conds) + ")"
                            entry = f"(when {cond} {entry})"
                        entries.append(entry)
            if entries:
                lines.append(f"    ({label} " + " ".join(entries) + ")")
        lines[-1] += ")"
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


# --- problems --------------------------------------------------------------

Literal = Tuple[bool, str, Args]


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    domain: str
    init: Tuple[Literal, ...]
    goal: Ecq
    bound: int
    diagnostics: Tuple[ParseDiagnostic, ...] = field(default=(), compare=False)

    def initial_theory(self, bat: Bat) -> FgpTheory:
        return FgpTheory.from_literals(bat.arities, self.init)


def parse_problem(text: str, bat: Bat, file: str = "<problem>") -> ProblemSpec:
    ctx = _Ctx(file)
    top = _single_form(ctx, read_sexprs(text, file), "problem")
    if top is None:
        raise DslError(ctx.diags)
    if len(top.items) < 2:
        ctx.error("problem needs a name", top.span)
        raise DslError(ctx.diags)
    name = _expect_ident(ctx, top.items[1], "problem name") or ""
    arities = bat.arities
    domain: Optional[str] = None
    init: List[Literal] = []
    init_spans: Dict[Tuple[str, Args], Tuple[bool, SourceSpan]] = {}
    goal: Optional[Ecq] = None
    bound: Optional[int] = None
    seen = set()
    for sec in top.items[2:]:
        head = sec.head() if isinstance(sec, SList) else None
        if head in seen:
            ctx.error(f"duplicate ({head} ...)", sec.span)
            continue
        seen.add(head)
        if head == "domain":
            if len(sec.items) != 2:  # type: ignore[union-attr]
                ctx.error("expected (domain NAME)", sec.span)
                continue
            domain = _expect_ident(ctx, sec.items[1], "domain name")  # type: ignore[union-attr]
            if domain is not None and domain != bat.name:
                ctx.error(f"problem is for domain {domain!r}, not {bat.name!r}", sec.items[1].span)  # type: ignore[union-attr]
        elif head == "init":
            for lit in sec.items[1:]:  # type: ignore[union-attr]
                positive = True
                body = lit
                if isinstance(lit, SList) and lit.head() == "not":
                    if len(lit.items) != 2:
                        ctx.error("not takes one atom", lit.span)
                        continue
                    positive, body = False, lit.items[1]
                a = _atom(ctx, body, arities)
                if a is None:
                    continue
                if not a.is_ground():
                    ctx.error("initial literals must be ground", lit.span)
                    continue
                key = (a.fluent, a.args)
                prev = init_spans.get(key)  # type: ignore[arg-type]
                if prev is not None:
                    if prev[0] != positive:
                        ctx.error(f"inconsistent initial knowledge: {a} is asserted both true and false", lit.span)
                    else:
                        ctx.warn(f"duplicate literal {a}", lit.span)
                    continue
                init_spans[key] = (positive, lit.span)  # type: ignore[index]
                init.append((positive, a.fluent, a.args))  # type: ignore[arg-type]
        elif head == "goal":
            if len(sec.items) != 2:  # type: ignore[union-attr]
                ctx.error("goal takes a single formula", sec.span)
                continue
            goal = _goal(ctx, sec.items[1], arities)  # type: ignore[union-attr]
        elif head == "bound":
            if len(sec.items) != 2:  # type: ignore[union-attr]
                ctx.error("expected (bound N)", sec.span)
                continue
            bound = _expect_int(ctx, sec.items[1], "a bound")  # type: ignore[union-attr]
            if bound is not None and bound < 0:
                ctx.error("bound must be non-negative", sec.items[1].span)  # type: ignore[union-attr]
        else:
            ctx.error("expected (domain ...), (init ...), (goal ...) or (bound ...)", sec.span)
    if domain is None and "domain" not in seen:
        ctx.error("missing (domain NAME)", top.span)
    if goal is None and "goal" not in seen:
        ctx.error("missing (goal ...)", top.span)
    if bound is None and "bound" not in seen:
        ctx.error("missing (bound N)", top.span)
    if ctx.failed:
        raise DslError(ctx.diags)
    return ProblemSpec(name, bat.name, tuple(init), goal, bound, tuple(ctx.diags))  # type: ignore[arg-type]


def _goal(ctx: _Ctx, e: SExpr, arities: Dict[str, int]) -> Optional[Ecq]:
    qvars: List[Var] = []
    body = e
    if isinstance(e, SList) and e.head() == "exists":
        if len(e.items) != 3 or not isinstance(e.items[1], SList):
            ctx.error("expected (exists (?v ...) formula)", e.span)
            return None
        for v in e.items[1].items:
            if isinstance(v, SAtom) and v.kind == "var":
                qvars.append(Var(v.value))  # type: ignore[arg-type]
            else:
                ctx.error("expected a variable", v.span)
        body = e.items[2]
    n = len(ctx.diags)
    atoms, diseqs = _conjunction(ctx, body, arities)
    if len(ctx.diags) > n:
        return None
    q = Ecq(tuple(qvars), tuple(atoms), tuple(diseqs))
    for v in q.free_variables():
        ctx.error(f"goal variable {v} is not existentially quantified", e.span)
    _check_safety(ctx, q, e.span)
    return q


def serialize_problem(spec: ProblemSpec) -> str:
    lits = []
    for positive, fluent, args in spec.init:
        atom = "(" + " ".join([fluent, *map(str, args)]) + ")"
        lits.append(atom if positive else f"(not {atom})")
    goal = _fmt_conj(spec.goal)
    if spec.goal.vars:
        goal = "(exists (" + " ".join(map(str, spec.goal.vars)) + ") " + goal + ")"
    lines = [f"(problem {spec.name}", f"  (domain {spec.domain})"]
    lines.append("  (init" + "".join("\n    " + l for l in lits) + ")")
    lines.append(f"  (goal {goal})")
    lines.append(f"  (bound {spec.bound}))")
    return "\n".join(lines) + "\n"


# --- plans -----------------------------------------------------------------

def format_action(action: GroundAction) -> str:
    return str(action)


def parse_plan(text: str, file: str = "<plan>") -> List[GroundAction]:
    """Read one ``(name arg ...)`` form per action; ``;`` comments are ignored."""
    ctx = _Ctx(file)
    plan: List[GroundAction] = []
    for form in read_sexprs(text, file):
        if not isinstance(form, SList) or form.head() is None:
            ctx.error("expected (action arg ...)", form.span)
            continue
        args: List[Const] = []
        for a in form.items[1:]:
            if isinstance(a, SAtom) and a.kind in ("int", "ident"):
                args.append(a.value)
            else:
                ctx.error("action arguments must be constants", a.span)
        plan.append(GroundAction(form.head(), tuple(args)))  # type: ignore[arg-type]
    if ctx.failed:
        raise DslError(ctx.diags)
    return plan


def serialize_plan(actions: Sequence[GroundAction]) -> str:
    return "".join(format_action(a) + "\n" for a in actions)
