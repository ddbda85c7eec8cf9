"""Cached builders shared across test modules.

Subgroup enumeration dominates test time, so every module pulls groups,
lattices, and solver output through these memoized helpers.
"""

from functools import lru_cache

import nimgen as ng


@lru_cache(maxsize=None)
def group(spec: str) -> ng.GroupTable:
    return ng.build_group(spec)


@lru_cache(maxsize=None)
def lattice(spec: str) -> ng.IntersectionLattice:
    return ng.intersection_subgroups(group(spec))


@lru_cache(maxsize=None)
def nims(spec: str) -> ng.ClassNimTable:
    return ng.structure_nim(group(spec), lattice(spec))


@lru_cache(maxsize=None)
def edges(spec: str) -> tuple:
    return tuple(ng.class_edges(lattice(spec), group(spec)))


@lru_cache(maxsize=None)
def deficiencies(spec: str) -> ng.DeficiencyTable:
    return ng.deficiency_table(group(spec), lattice(spec), edges(spec))


@lru_cache(maxsize=None)
def digraph(spec: str) -> ng.StructureDigraph:
    return ng.build_digraph(group(spec), lattice(spec), nims(spec))


@lru_cache(maxsize=None)
def brute_memo(spec: str, variant: str = ng.GEN) -> dict:
    return ng.brute_search(group(spec), variant)


@lru_cache(maxsize=None)
def exhaustive_map(spec: str) -> tuple:
    return tuple(ng.exhaustive_deficiency_map(group(spec)))


def small_orders(limit: int):
    """Catalog entries whose group order is at most ``limit``."""
    return [s for s in ng.SMALL_CATALOG if group(s).order <= limit]
