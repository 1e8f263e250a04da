"""
Bit-set helpers.

Vertex sets are plain Python integers: bit v is set iff vertex v belongs to
the set. Integers are immutable and hashable, so they double as dictionary
keys for cut lookup.
"""

from typing import Iterable, Iterator


def full_mask(n: int) -> int:
    """Mask containing vertices 0..n-1."""
    return (1 << n) - 1


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the members of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Index of the smallest member; -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return mask.bit_count()
