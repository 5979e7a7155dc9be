"""Print the branching table for p <= 4 and the closed-form CAR images of a_1..a_4.

Usage: python scripts/tables.py
"""

from cuntzcar.induced import closed_form_morphism, closed_form_names
from cuntzcar.parse import format_car
from cuntzcar.reps import branch_index, branching_number, enumerate_branch_labels


def main() -> None:
    for p in range(1, 5):
        print(f"B_{p} = {branching_number(p)}")
        for L in enumerate_branch_labels(p):
            idx = ", ".join(f"e_{branch_index(L, lam, p)}" for lam in range(len(L)))
            print(f"  {L}: {idx}")
    print()
    for name in closed_form_names(3):
        m = closed_form_morphism(name)
        images = "; ".join(format_car(m.image(n), factor_klein=True) for n in range(1, 5))
        print(f"{name:16s} {images}")


if __name__ == "__main__":
    main()
