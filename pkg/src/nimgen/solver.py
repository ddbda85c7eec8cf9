"""Nim-value solvers for the generation games.

GEN is the achievement game: players alternately pick unchosen elements and
whoever first makes the chosen set generate the whole group wins.  DNG is the
avoidance game: a player forced to complete a generating set loses.  Both are
scored by Sprague-Grundy values over the position DAG.

The brute solver walks positions directly.  The structure solver evaluates
the achievement game per structure class: inside a class, positions of the
carrier's parity and of the opposite parity each share one nim value, so two
mex equations per class suffice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

from .errors import CapacityError, InternalInvariantError, UnsupportedVariantError
from .groups import GroupSpec, GroupTable, build_group, generated_subgroup
from .lattice import (
    DEFAULT_ORDER_CAP,
    TERMINAL,
    IntersectionLattice,
    class_options,
    class_parity,
    intersection_subgroups,
)

GEN = "GEN"
DNG = "DNG"
Variant = Literal["GEN", "DNG"]

DEFAULT_BRUTE_CAP = 16


def mex(values: Iterable[int]) -> int:
    """Minimum excludant: the least non-negative integer not in ``values``."""
    s = set(values)
    k = 0
    while k in s:
        k += 1
    return k


def gen_options(g: GroupTable, p: int) -> list[int]:
    """Achievement-game options of position ``p``; empty if ``p`` generates."""
    if generated_subgroup(g, p) == g.full_mask:
        return []
    return [p | (1 << x) for x in range(g.order) if not (p >> x) & 1]


def dng_options(g: GroupTable, p: int) -> list[int]:
    """Avoidance-game options: single-element extensions that do not generate."""
    if generated_subgroup(g, p) == g.full_mask:
        raise ValueError("avoidance positions must be non-generating")
    out = []
    for x in range(g.order):
        if not (p >> x) & 1:
            q = p | (1 << x)
            if generated_subgroup(g, q) != g.full_mask:
                out.append(q)
    return out


def brute_search(g: GroupTable, variant: Variant = GEN, *,
                 brute_cap: int = DEFAULT_BRUTE_CAP) -> dict[int, int]:
    """Memoized nim values for every position reachable from the empty set."""
    if g.order < 2:
        raise ValueError("game solvers require a group of order at least 2")
    if g.order > brute_cap:
        raise CapacityError(
            f"brute-force search capped at order {brute_cap}, group has order {g.order}")
    full = g.full_mask
    closures: dict[int, int] = {}

    def closure(mask: int) -> int:
        c = closures.get(mask)
        if c is None:
            c = generated_subgroup(g, mask)
            closures[mask] = c
        return c

    memo: dict[int, int] = {}

    def nim(mask: int) -> int:
        v = memo.get(mask)
        if v is not None:
            return v
        values = set()
        if variant == GEN:
            if closure(mask) != full:
                for x in range(g.order):
                    if not (mask >> x) & 1:
                        values.add(nim(mask | (1 << x)))
        else:
            for x in range(g.order):
                if not (mask >> x) & 1:
                    child = mask | (1 << x)
                    if closure(child) != full:
                        values.add(nim(child))
        v = mex(values)
        memo[mask] = v
        return v

    nim(0)
    return memo


def brute_nim(g: GroupTable, variant: Variant = GEN, *,
              brute_cap: int = DEFAULT_BRUTE_CAP) -> int:
    """Nim value of the game from the empty position, by exhaustive search."""
    return brute_search(g, variant, brute_cap=brute_cap)[0]


@dataclass(frozen=True)
class ClassNimTable:
    """Per-class nim values: class id -> (even-position nim, odd-position nim)."""

    per_class: Mapping[int, tuple[int, int]]
    game_nim: int


def structure_nim(g: GroupTable, lat: IntersectionLattice,
                  variant: Variant = GEN) -> ClassNimTable:
    """Solve the achievement game over structure classes instead of positions.

    Classes are processed from the largest carrier down; every option of a
    class lies in a class with a strictly larger carrier, or is terminal.
    """
    if variant != GEN:
        raise UnsupportedVariantError(
            "the structure solver only handles the achievement game")
    if g.order < 2:
        raise ValueError("game solvers require a group of order at least 2")
    order_ids = sorted(
        range(len(lat.intersections)),
        key=lambda i: (-lat.intersections[i].bit_count(), lat.intersections[i]))
    per: dict[int, tuple[int, int]] = {TERMINAL: (0, 0)}
    for cid in order_ids:
        opts = class_options(lat, g, cid)
        pools = ({per[j][0] for j in opts}, {per[j][1] for j in opts})
        q = class_parity(lat, cid)
        # A move adds one element, so every option of a position has the
        # opposite parity.  Positions sharing the carrier's parity include
        # the carrier itself, which has no move that stays inside the class;
        # opposite-parity positions are proper subsets of the carrier and
        # always have such a move.
        n_carrier = mex(pools[1 - q])
        n_other = mex(pools[q] | {n_carrier})
        # Proper subsets of the carrier's parity also see the within-class
        # move; the shared value must survive adding that option.
        if mex(pools[1 - q] | {n_other}) != n_carrier:
            raise InternalInvariantError(
                f"equal-parity positions of class {cid} would disagree on their nim value")
        per[cid] = (n_carrier, n_other) if q == 0 else (n_other, n_carrier)
    return ClassNimTable(per_class=per, game_nim=per[lat.frattini_index][0])


def nim_of_game(spec: GroupSpec | str, variant: Variant = GEN, mode: str = "auto", *,
                brute_cap: int = DEFAULT_BRUTE_CAP,
                order_cap: int = DEFAULT_ORDER_CAP) -> int:
    """Nim value of a game given a group spec.

    ``auto`` uses brute force for small groups and for the avoidance game,
    and the structure solver for everything else.
    """
    g = build_group(spec)
    if g.order < 2:
        raise ValueError("games are played on groups of order at least 2")
    if mode not in ("auto", "brute", "structure"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        if variant == DNG and g.order > brute_cap:
            raise UnsupportedVariantError(
                "the avoidance game is only solvable by brute force, "
                f"and order {g.order} exceeds the brute cap {brute_cap}")
        mode = "brute" if (variant == DNG or g.order <= brute_cap) else "structure"
    if mode == "brute":
        return brute_nim(g, variant, brute_cap=brute_cap)
    if variant == DNG:
        raise UnsupportedVariantError(
            "the structure solver only handles the achievement game")
    lat = intersection_subgroups(g, order_cap=order_cap)
    return structure_nim(g, lat).game_nim
