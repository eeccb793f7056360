"""Regenerate the generated problem files under benchmarks/problems/.

The countdown-ex*, chopping-* files are written by hand and left alone.

    python3 benchmarks/generate.py
"""

from pathlib import Path

from bpplan.benchmarks import (
    gen_countdown,
    gen_ibw,
    gen_mixers,
    mix_goal,
    tower_goal,
)
from bpplan.dsl import serialize_problem

OUT = Path(__file__).parent / "problems"

MIX_LOCATIONS = ["L1", "L2"]
MIX_INGREDIENTS = [("salt", 1, "L1"), ("sugar", 2, "L2"), ("flour", 4, "L2")]
MIX_RECIPES = [("r1", 1, 2), ("r2", 2, 4), ("r3", 1, 4)]

PROBLEMS = [
    gen_countdown(2, [4, 5], 9, 3, name="countdown-2-a"),
    gen_countdown(3, [2, 3, 4], 20, 4, name="countdown-3-a"),
    gen_countdown(3, [3, 5, 7], 22, 4, name="countdown-3-b"),
    gen_countdown(3, [2, 6, 9], 108, 4, name="countdown-3-c"),
    gen_countdown(4, [2, 3, 4, 5], 120, 4, name="countdown-4-a"),
    gen_countdown(2, [4, 5], 3, 2, name="countdown-unsolvable"),
    gen_ibw([], [1, 2, 3, 4], tower_goal([4, 3, 2, 1]), name="ibw-tower4"),
    gen_ibw([], [1, 2, 3, 4, 5], tower_goal([5, 4, 3, 2, 1]), name="ibw-tower5"),
    gen_ibw([[1]], [2, 3, 4, 5], tower_goal([1, 2, 3, 4, 5]), name="ibw-onto5"),
    gen_ibw([[3, 2, 1]], [4, 5, 6], tower_goal([5, 4, 3, 2, 1], heavy_base=True), name="ibw-heavy-base"),
    gen_ibw([[1]], [], tower_goal([2, 1]), name="ibw-unsolvable"),
    gen_mixers(MIX_LOCATIONS, MIX_INGREDIENTS, MIX_RECIPES, mix_goal(3, "L1"), 5, name="mixers-1mix-a"),
    gen_mixers(MIX_LOCATIONS, MIX_INGREDIENTS, MIX_RECIPES, mix_goal(5, "L2"), 5, name="mixers-1mix-b"),
    gen_mixers(MIX_LOCATIONS, MIX_INGREDIENTS, MIX_RECIPES, mix_goal(8, "L1"), 5, name="mixers-unsolvable"),
    gen_mixers(MIX_LOCATIONS, MIX_INGREDIENTS, [("r1", 1, 2), ("r2", 3, 4)], mix_goal(7, "L1"), 8, name="mixers-2mix"),
]


def main() -> None:
    for spec in PROBLEMS:
        (OUT / f"{spec.name}.bpp").write_text(serialize_problem(spec), encoding="utf-8")
        print(spec.name)


if __name__ == "__main__":
    main()
