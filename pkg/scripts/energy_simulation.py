"""Cross-check energy reachability/Buchi answers against run simulation.

    python scripts/energy_simulation.py --instances 1000
"""

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracles import simulate_energy  # noqa: E402

from fwa.automata import energy_queries  # noqa: E402
from fwa.energy import ENERGY  # noqa: E402
from fwa.generate import random_weighted_automaton  # noqa: E402

X0 = [Fraction(k, 2) for k in range(0, 13)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    checked = mismatches = reach = buchi = 0
    for _ in range(args.instances):
        A = random_weighted_automaton(rng, ENERGY, max_states=4, max_transitions=8)
        for x0 in X0:
            got, want = energy_queries(A, x0), simulate_energy(A, x0)
            checked += 1
            mismatches += got != want
            reach += got[0]
            buchi += got[1]
    print(f"queries: {checked}, reachable: {reach}, buchi: {buchi}, mismatches: {mismatches}")


if __name__ == "__main__":
    main()
