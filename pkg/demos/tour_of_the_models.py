"""A quick tour of the four bundled Wnt-signaling models.

Prints the counting profile, the structure flags, and the finest
independent decomposition of each network.  Takes about a second.

    python3 demos/tour_of_the_models.py
"""

from crnkit import fixtures
from crnkit.decomp import decomposition_numbers, fid
from crnkit.structure import network_numbers, structural_flags

FIELDS = (
    "species",
    "complexes",
    "reactant complexes",
    "reversible pairs",
    "irreversible",
    "reactions",
    "linkage classes",
    "strong classes",
    "terminal classes",
    "rank",
    "reactant rank",
    "deficiency",
    "reactant deficiency",
)


def main():
    for name in ("lee", "fal", "maclean", "schmitz"):
        net = fixtures.load(name)
        print(f"== {name} " + "=" * (46 - len(name)))
        numbers = network_numbers(net)
        for field, value in zip(FIELDS, numbers.as_tuple()):
            print(f"  {field:<22}{value}")

        flags = structural_flags(net)
        on = [f for f in vars(flags) if getattr(flags, f)]
        print("  flags:", ", ".join(on))

        decomposition = fid(net)
        profiles = decomposition_numbers(decomposition).blocks
        print(f"  finest independent decomposition: {len(profiles)} blocks")
        for labels, block in zip(decomposition.label_sets(), profiles):
            shown = sorted(labels, key=lambda s: int(s.lstrip("R")))
            print(f"    rank {block.rank}, deficiency {block.deficiency}:", ", ".join(shown))
        print()


if __name__ == "__main__":
    main()
