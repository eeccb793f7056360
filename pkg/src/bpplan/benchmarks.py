"""Shipped domains and instance generators for Countdown, Infinite Blocks
World (IBW), Mixers and tree chopping."""

from __future__ import annotations

from importlib import resources
from typing import Iterable, List, Optional, Sequence, Tuple

from .bat import Bat
from .dsl import Literal, ProblemSpec, parse_domain
from .kb import Atom, Const, Ecq, Var

DOMAINS = ("countdown", "chopping", "ibw", "mixers")


def domain_text(name: str) -> str:
    if name not in DOMAINS:
        raise KeyError(f"no shipped domain {name!r}; choose from {', '.join(DOMAINS)}")
    return resources.files("bpplan").joinpath("domains").joinpath(f"{name}.bpd").read_text(encoding="utf-8")


def load_domain(name: str) -> Bat:
    return parse_domain(domain_text(name), file=f"{name}.bpd")


def _pos(fluent: str, *args: Const) -> Literal:
    return (True, fluent, tuple(args))


def gen_countdown(num_counters: int, values: Sequence[int], target: int, bound: int, name: Optional[str] = None) -> ProblemSpec:
    """Counters ``1..num_counters`` hold ``values``; reach ``target`` in some counter."""
    if len(values) != num_counters:
        raise ValueError("need one value per counter")
    if any(v <= 0 for v in values):
        raise ValueError("values must be positive integers")
    init: List[Literal] = []
    for c in range(1, num_counters + 1):
        init.append(_pos("available", c))
    for c, v in enumerate(values, start=1):
        init.append(_pos("value", c, v))
    c = Var("c")
    goal = Ecq((c,), (Atom("value", (c, target)),))
    name = name or "countdown-" + "-".join(map(str, values)) + f"-to-{target}"
    return ProblemSpec(name, "countdown", tuple(init), goal, bound)


def gen_chopping(sizes: Sequence[Tuple[str, int]], not_sizes: Sequence[Tuple[str, int]] = (), bound: int = 10,
                 tree: Optional[str] = None, name: Optional[str] = None) -> ProblemSpec:
    """Known tree sizes (and known non-sizes); goal: some tree (or ``tree``) is down."""
    init = [_pos("size", t, n) for t, n in sizes] + [(False, "size", (t, n)) for t, n in not_sizes]
    if tree is None:
        t = Var("t")
        goal = Ecq((t,), (Atom("down", (t,)),))
    else:
        goal = Ecq((), (Atom("down", (tree,)),))
    return ProblemSpec(name or "chopping", "chopping", tuple(init), goal, bound)


def tower_goal(blocks: Sequence[int], heavy_base: bool = False) -> Ecq:
    """``blocks`` listed bottom to top form a single tower standing on the table."""
    atoms = [Atom("ontable", (blocks[0],))]
    if heavy_base:
        atoms.append(Atom("heavy", (blocks[0],)))
    atoms += [Atom("on", (upper, lower)) for lower, upper in zip(blocks, blocks[1:])]
    return Ecq((), tuple(atoms))


def heavy_stack_goal(height: int, heavy: int) -> Ecq:
    """Some tower of ``height`` blocks whose lowest ``heavy`` blocks are heavy."""
    xs = tuple(Var(f"b{i}") for i in range(height))
    atoms = [Atom("ontable", (xs[0],))]
    atoms += [Atom("on", (xs[i + 1], xs[i])) for i in range(height - 1)]
    atoms += [Atom("heavy", (xs[i],)) for i in range(heavy)]
    return Ecq(xs, tuple(atoms))


def gen_ibw(towers: Sequence[Sequence[int]], available: Iterable[int], goal: Ecq, bound: int = 100,
            light: Optional[Iterable[int]] = None, name: Optional[str] = None) -> ProblemSpec:
    """Towers are listed bottom to top; available blocks are light unless ``light`` says otherwise."""
    available = list(available)
    init: List[Literal] = []
    for tower in towers:
        if not tower:
            continue
        init.append(_pos("ontable", tower[0]))
        for lower, upper in zip(tower, tower[1:]):
            init.append(_pos("on", upper, lower))
        init.append(_pos("clear", tower[-1]))
    for b in available:
        init.append(_pos("available", b))
    for b in available if light is None else light:
        init.append(_pos("light", b))
    return ProblemSpec(name or "ibw", "ibw", tuple(init), goal, bound)


def mix_goal(type_: int, location: Optional[str] = None) -> Ecq:
    """Some available object of type ``type_`` (at ``location`` if given)."""
    o = Var("o")
    if location is None:
        loc = Var("l")
        return Ecq((o, loc), (Atom("type", (o, type_)), Atom("at", (o, loc)), Atom("available", (o,))))
    return Ecq((o,), (Atom("type", (o, type_)), Atom("at", (o, location)), Atom("available", (o,))))


def gen_mixers(locations: Sequence[str], ingredients: Sequence[Tuple[str, int, str]],
               recipes: Sequence[Tuple[str, int, int]], goal: Ecq, bound: int,
               vehicles: Sequence[Tuple[str, str]] = (("truck", ""),), name: Optional[str] = None) -> ProblemSpec:
    """``ingredients`` are (name, type, location); ``recipes`` are (id, type1, type2).

    A vehicle location of "" means the first location.
    """
    init: List[Literal] = [_pos("location", l) for l in locations]
    for v, l in vehicles:
        init.append(_pos("vehicle-at", v, l or locations[0]))
        init.append(_pos("empty", v))
    for o, t, l in ingredients:
        init += [_pos("at", o, l), _pos("available", o), _pos("type", o, t)]
    for r, t1, t2 in recipes:
        init.append(_pos("recipe", r, t1, t2))
    return ProblemSpec(name or "mixers", "mixers", tuple(init), goal, bound)
