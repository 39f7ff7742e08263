"""Bitstrings compared lexicographically under a positional priority order.

A priority order lists positions from most to least significant; at the
first position where two strings differ, the one holding 0 is smaller.
``compare`` is the authoritative cost; ``cost_integer`` is a bounded
cross-check oracle only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeMismatch, LengthMismatch, WidthExceeded
from .perm import GeneratorSet, Permutation, permute_string

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True, slots=True)
class PriorityOrder:
    """rank[r] is the position inspected at importance level r+1."""

    rank: tuple[int, ...]

    def __post_init__(self):
        n = len(self.rank)
        if sorted(self.rank) != list(range(1, n + 1)):
            raise ValueError(f"rank is not a permutation of 1..{n}")

    @property
    def degree(self) -> int:
        return len(self.rank)


def identity_order(degree: int) -> PriorityOrder:
    return PriorityOrder(tuple(range(1, degree + 1)))


def parse_order(text: str, degree: int) -> PriorityOrder:
    ranks = tuple(int(tok) for tok in text.split())
    if len(ranks) != degree:
        raise LengthMismatch(f"order lists {len(ranks)} ranks, expected {degree}")
    return PriorityOrder(ranks)


def format_order(order: PriorityOrder) -> str:
    return " ".join(map(str, order.rank))


def _check_bits(bits: str) -> None:
    if bits.strip("01"):
        raise ValueError(f"not a bitstring: {bits!r}")


@dataclass(frozen=True, slots=True)
class PrioritizedBitString:
    bits: str
    order: PriorityOrder

    def __post_init__(self):
        _check_bits(self.bits)
        if len(self.bits) != self.order.degree:
            raise LengthMismatch(
                f"{len(self.bits)} bits vs order degree {self.order.degree}"
            )

    def compare_to(self, other: str) -> int:
        return compare(self.bits, other, self.order)


def sort_key(bits: str, order: PriorityOrder | None = None) -> str:
    """bits reordered most-significant-first; plain string comparison of
    keys realizes the prioritized lexicographic order."""
    if order is None:
        return bits
    if len(bits) != order.degree:
        raise LengthMismatch(f"{len(bits)} bits vs order degree {order.degree}")
    return "".join(bits[p - 1] for p in order.rank)


def compare(x: str, y: str, order: PriorityOrder | None = None) -> int:
    """LESS / EQUAL / GREATER for x versus y under the order."""
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    kx, ky = sort_key(x, order), sort_key(y, order)
    if kx < ky:
        return LESS
    if kx > ky:
        return GREATER
    return EQUAL


def cost_integer(bits: str, order: PriorityOrder | None = None, max_width: int = 64) -> int:
    """The cost as an integer: sum of bit(rank r) * 2^(N-r).

    Only intended as a cross-check at small widths; raise beyond
    max_width rather than silently producing huge numbers.
    """
    if len(bits) > max_width:
        raise WidthExceeded(f"{len(bits)} bits exceed width bound {max_width}")
    if not bits:
        return 0
    return int(sort_key(bits, order), 2)


def complement(bits: str) -> str:
    """Flip every bit; turns minimization into maximization."""
    _check_bits(bits)
    return "".join("1" if b == "0" else "0" for b in bits)


def is_local_min(
    bits: str,
    order: PriorityOrder | None,
    gens: GeneratorSet,
    current: Permutation,
) -> bool:
    """True iff no single generator applied after ``current`` improves
    the acted string."""
    if current.degree != gens.degree or len(bits) != gens.degree:
        raise DegreeMismatch("string, generators and current permutation disagree")
    cur = permute_string(bits, current)
    cur_key = sort_key(cur, order)
    for _, g in gens:
        if sort_key(permute_string(cur, g), order) < cur_key:
            return False
    return True
