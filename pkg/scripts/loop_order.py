"""Symbolic Floyd-Warshall with the intermediate state outermost ("kij")
vs innermost ("ijk"): how often the latter misses shorter paths.

    python scripts/loop_order.py --instances 2000 --max-states 8
"""

import argparse
import random

from fwa.automata import featured_reach_value
from fwa.fwalgo import featured_floyd_warshall
from fwa.generate import random_featured_automaton, random_model
from fwa.kleene import TROP


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=2000)
    ap.add_argument("--max-states", type=int, default=8)
    ap.add_argument("--max-transitions", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    wrong = {"kij": 0, "ijk": 0}
    for _ in range(args.instances):
        model = random_model(rng, rng.randint(0, 3))
        F = random_featured_automaton(
            rng, TROP, model, args.max_states, args.max_transitions, p_true=0.5, disjoint=True
        )
        expect = featured_reach_value(F)
        for order in wrong:
            wrong[order] += featured_floyd_warshall(F, loop_order=order) != expect
    print(f"instances: {args.instances}")
    for order, n in wrong.items():
        print(f"{order}: {n} results differ from the matrix value ({100 * n / args.instances:.1f}%)")


if __name__ == "__main__":
    main()
