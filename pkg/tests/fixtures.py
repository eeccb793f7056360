"""Toy domains and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import itertools
import random
from typing import List, Tuple

from hypothesis import strategies as st

from bpplan.bat import GroundAction
from bpplan.dsl import parse_domain
from bpplan.kb import Atom, Ecq, FgpTheory, Var

TOY_DOMAIN = """
; Small domain exercising every effect form: plain parameters, a function,
; a guarded effect, deletions and an action without effects.
(domain toy
  (functions (add 2))
  (fluents (p 1) (q 2) (r 1))
  (action grow
    (params ?x ?y)
    (pre (and (p ?x) (q ?x ?y) (neq ?x ?y)))
    (add (r ?y) (q ?y (add ?x ?y)))
    (del (p ?x)))
  (action swap
    (params ?x)
    (pre (r ?x))
    (add (p ?x))
    (del (r ?x)))
  (action touch
    (params ?x)
    (pre (p ?x)))
  (action mark
    (params ?x ?y)
    (pre (q ?x ?y))
    (add (when (eq ?y 1) (r ?x)))
    (del (q ?x ?y))))
"""

TOY = parse_domain(TOY_DOMAIN, file="toy.bpd")
ARITIES = {"p": 1, "q": 2, "r": 1}
POOL = [1, 2, 3, 4, "a", "b"]
X, Y, Z = Var("x"), Var("y"), Var("z")


@st.composite
def theories(draw, pool=POOL, max_size=8):
    """Consistent theories over the toy fluents."""
    const = st.sampled_from(pool)
    lits = []
    for fluent, arity in ARITIES.items():
        tup = st.tuples(*([const] * arity))
        true = draw(st.sets(tup, max_size=max_size))
        false = draw(st.sets(tup, max_size=max_size)) - true
        lits += [(True, fluent, t) for t in true] + [(False, fluent, t) for t in false]
    return FgpTheory.from_literals(ARITIES, lits)


@st.composite
def queries(draw, pool=POOL, every_literal_has_var=False):
    """Safe ECQs; some variables existential, the rest free.

    With ``every_literal_has_var`` every literal mentions a variable and no
    disequality compares a variable with itself.
    """
    vs = [X, Y, Z][: draw(st.integers(1, 3))]
    term = st.sampled_from(vs + list(pool[:3]))
    var = st.sampled_from(vs)
    atoms = []
    for _ in range(draw(st.integers(1, 3))):
        fluent = draw(st.sampled_from(sorted(ARITIES)))
        args = [draw(term) for _ in range(ARITIES[fluent])]
        if every_literal_has_var and not any(isinstance(a, Var) for a in args):
            args[0] = draw(var)
        atoms.append(Atom(fluent, tuple(args)))
    used = sorted({v for a in atoms for v in a.variables()}, key=str)
    if not used:
        # every query needs at least one variable to be interesting
        atoms[0] = Atom(atoms[0].fluent, (vs[0],) + atoms[0].args[1:])
        used = [vs[0]]
    diseqs = []
    for _ in range(draw(st.integers(0, 2))):
        lhs = draw(st.sampled_from(used))
        rhs = draw(st.sampled_from(used + list(pool[:3])))
        if every_literal_has_var and lhs == rhs:
            continue
        diseqs.append((lhs, rhs))
    existential = tuple(v for v in used if draw(st.booleans()))
    return Ecq(existential, tuple(atoms), tuple(diseqs))


def random_theory(rng: random.Random, arities, pool, density: float = 0.3) -> FgpTheory:
    """Consistent random theory: each ground atom is true, false or unknown."""
    lits = []
    for fluent, arity in arities.items():
        for t in itertools.product(pool, repeat=arity):
            x = rng.random()
            if x < density:
                lits.append((True, fluent, t))
            elif x < 1.5 * density:
                lits.append((False, fluent, t))
    return FgpTheory.from_literals(arities, lits)


def random_ground_action(rng: random.Random, bat, pool) -> GroundAction:
    schema = rng.choice(bat.schemas)
    return GroundAction(schema.name, tuple(rng.choice(pool) for _ in schema.params))


def literals_of(theory: FgpTheory) -> List[Tuple[bool, str, tuple]]:
    return list(theory.literals())
