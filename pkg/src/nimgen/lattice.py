"""Subgroup enumeration and the intersection lattice of maximal subgroups.

A position of the generation game sits inside a unique smallest intersection
of maximal subgroups (or generates the whole group).  That intersection is
the position's structure class; the terminal class of generating positions
is identified by the sentinel ``TERMINAL``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, InternalInvariantError
from .groups import GroupTable, generated_subgroup, iter_mask

TERMINAL = -1  # class id of the terminal class (the whole group)

DEFAULT_ORDER_CAP = 200


def all_subgroups(g: GroupTable, *, order_cap: int = DEFAULT_ORDER_CAP) -> tuple[int, ...]:
    """Masks of every subgroup, found by join-closing the cyclic subgroups.

    Starting from the trivial subgroup, repeatedly joins known subgroups with
    single generators; that reaches the same fixpoint as closing the set of
    cyclic subgroups under pairwise join.  Results are sorted by size.
    """
    if g.order > order_cap:
        raise CapacityError(
            f"subgroup enumeration capped at order {order_cap}, group has order {g.order}")
    trivial = 1
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        h = frontier.pop()
        for x in range(1, g.order):
            if not (h >> x) & 1:
                j = generated_subgroup(g, h | (1 << x))
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
    return tuple(sorted(seen, key=lambda m: (m.bit_count(), m)))


def maximal_subgroups(g: GroupTable, *, order_cap: int = DEFAULT_ORDER_CAP) -> tuple[int, ...]:
    """Masks of the maximal subgroups (proper subgroups maximal by inclusion)."""
    if g.order < 2:
        raise ValueError("the trivial group has no maximal subgroups")
    subs = all_subgroups(g, order_cap=order_cap)
    full = g.full_mask
    proper = [m for m in subs if m != full]
    return tuple(m for m in proper
                 if not any(m != k and m | k == k for k in proper))


@dataclass(frozen=True)
class IntersectionLattice:
    """All intersections of maximal subgroups, sorted by size.

    ``intersections[frattini_index]`` is the Frattini subgroup, the minimum
    of the family.  ``containment[i][j]`` says carrier i is a subset of
    carrier j.
    """

    group_order: int
    intersections: tuple[int, ...]
    frattini_index: int
    containment: tuple[tuple[bool, ...], ...]
    maximals: tuple[int, ...]

    @property
    def frattini_mask(self) -> int:
        return self.intersections[self.frattini_index]

    def carrier(self, cid: int) -> int:
        if cid == TERMINAL:
            raise ValueError("the terminal class has no carrier in the lattice")
        return self.intersections[cid]


def intersection_subgroups(g: GroupTable, *, order_cap: int = DEFAULT_ORDER_CAP) -> IntersectionLattice:
    """Close the maximal subgroups under pairwise intersection."""
    maxi = maximal_subgroups(g, order_cap=order_cap)
    members = set(maxi)
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            c = a & b
            if c not in members:
                members.add(c)
                frontier.append(c)
    ordered = tuple(sorted(members, key=lambda m: (m.bit_count(), m)))
    frattini = ordered[0]
    for m in ordered:
        if frattini | m != m:
            raise InternalInvariantError("intersection family has no unique minimum")
    containment = tuple(
        tuple(a | b == b for b in ordered) for a in ordered)
    return IntersectionLattice(
        group_order=g.order,
        intersections=ordered,
        frattini_index=0,
        containment=containment,
        maximals=tuple(sorted(maxi, key=lambda m: (m.bit_count(), m))),
    )


def ceil_class(lat: IntersectionLattice, g: GroupTable, mask: int) -> int:
    """Class of a position: the smallest intersection subgroup containing it.

    Returns ``TERMINAL`` when no intersection subgroup contains the subset,
    which happens exactly when the subset generates the whole group.
    """
    members = lat.intersections
    for idx, member in enumerate(members):
        if mask | member == member:
            # The family is intersection-closed, so the first superset found
            # in size order must be contained in every other superset.
            for j in range(idx + 1, len(members)):
                mj = members[j]
                if mask | mj == mj and not lat.containment[idx][j]:
                    raise InternalInvariantError(
                        "smallest containing intersection subgroup is not unique")
            return idx
    if generated_subgroup(g, mask) != g.full_mask:
        raise InternalInvariantError(
            "non-generating subset contained in no intersection subgroup")
    return TERMINAL


def class_parity(lat: IntersectionLattice, cid: int) -> int:
    """Parity bit of a class: 1 if its carrier has odd order."""
    if cid == TERMINAL:
        return lat.group_order & 1
    return lat.intersections[cid].bit_count() & 1


def class_options(lat: IntersectionLattice, g: GroupTable, cid: int) -> tuple[int, ...]:
    """Classes reachable from this one by adding a single element.

    Probing with the carrier itself is enough: two positions in one class
    reach the same other classes.  The result never contains ``cid``; moves
    that stay in the class are handled by the solver.
    """
    if cid == TERMINAL:
        raise ValueError("the terminal class has no options")
    carrier = lat.intersections[cid]
    out = set()
    for x in range(g.order):
        if not (carrier >> x) & 1:
            out.add(ceil_class(lat, g, carrier | (1 << x)))
    if cid in out:
        raise InternalInvariantError("a class listed itself as an option")
    return tuple(sorted(out))


def class_edges(lat: IntersectionLattice, g: GroupTable) -> tuple[tuple[int, int], ...]:
    """All (class, option class) edges of the structure digraph."""
    edges = []
    for cid in range(len(lat.intersections)):
        for opt in class_options(lat, g, cid):
            edges.append((cid, opt))
    return tuple(edges)
