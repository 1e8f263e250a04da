"""Instance builders shared by several test modules."""

from semicut.services.digraph import (
    SemiCompleteDigraph,
    gen_random_semicomplete,
    gen_random_tournament,
    gen_weighted,
)

# Directed triangle a=0 -> b=1 -> c=2 -> a
TRIANGLE = [
    [0, 1, 0],
    [0, 0, 1],
    [1, 0, 0],
]

# Triangle with the extra arc b -> a
DOUBLE_ARC_TRIANGLE = [
    [0, 1, 0],
    [1, 0, 1],
    [1, 0, 0],
]


def random_instance(seed: int, n: int) -> SemiCompleteDigraph:
    """Seeded mix of tournaments and semi-complete digraphs; seeds 2,3 mod 4 get weights 1..3."""
    if seed % 2 == 0:
        T = gen_random_tournament(n, seed)
    else:
        T = gen_random_semicomplete(n, 0.3, seed)
    if seed % 4 >= 2:
        T = gen_weighted(T, 3, seed)
    return T
