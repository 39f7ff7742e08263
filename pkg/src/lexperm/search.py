"""Greedy best-improvement walk over a generated permutation group.

At every step all neighbors current * g are evaluated; the walk moves to
the strictly best one (ties broken by the lowest generator index) and
stops at a local optimum or at the step cap, never silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bitlex import PriorityOrder, is_local_min, sort_key
from .errors import DegreeMismatch, NotInGroup
from .perm import (
    GeneratorSet,
    Permutation,
    StabilizerChain,
    apply_word,
    compose,
    permute_string,
)

LOCAL_OPT = "local_opt"
STEP_CAP = "step_cap"


@dataclass(frozen=True)
class SearchResult:
    word: tuple[str, ...]
    permutation: Permutation
    string: str
    steps: int
    status: str
    trace: tuple[str, ...]


def standard_algorithm(
    bits: str,
    order: PriorityOrder | None,
    gens: GeneratorSet,
    start: Sequence[str] = (),
    max_steps: int = 10**6,
    left_action: bool = False,
    keep_trace: bool = True,
) -> SearchResult:
    """Run the greedy walk from the permutation named by ``start``.

    ``left_action`` explores the alternative neighborhood g * current
    instead; it is exposed for experimentation only and none of the
    guarantees of the default neighborhood are claimed for it.
    """
    if len(bits) != gens.degree:
        raise DegreeMismatch(f"string length {len(bits)} vs degree {gens.degree}")
    current = apply_word(gens, start)
    word = list(start)
    cur_str = permute_string(bits, current)
    trace = [cur_str]
    steps = 0
    while steps < max_steps:
        cur_key = sort_key(cur_str, order)
        best = None
        best_key = cur_key
        for name, g in gens:
            if left_action:
                cand_perm = compose(g, current)
                cand = permute_string(bits, cand_perm)
            else:
                cand_perm = None
                cand = permute_string(cur_str, g)
            key = sort_key(cand, order)
            if key < best_key:
                best = (name, g, cand, cand_perm)
                best_key = key
        if best is None:
            return SearchResult(
                tuple(word), current, cur_str, steps, LOCAL_OPT,
                tuple(trace) if keep_trace else (cur_str,),
            )
        name, g, cur_str, cand_perm = best
        current = cand_perm if cand_perm is not None else compose(current, g)
        word.append(name)
        steps += 1
        if keep_trace:
            trace.append(cur_str)
    return SearchResult(
        tuple(word), current, cur_str, steps, STEP_CAP,
        tuple(trace) if keep_trace else (cur_str,),
    )


def verify_local_opt(
    bits: str,
    order: PriorityOrder | None,
    gens: GeneratorSet,
    word: Sequence[str] | None = None,
    perm: Permutation | None = None,
) -> bool:
    """Local-optimality check for a solution given as a word or as a raw
    permutation; raw permutations must first pass the membership test."""
    if perm is not None:
        if not StabilizerChain.from_generators(gens).contains(perm):
            raise NotInGroup("permutation is not in the generated group")
        current = perm
    else:
        current = apply_word(gens, word or ())
    return is_local_min(bits, order, gens, current)
