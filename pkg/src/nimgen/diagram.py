"""Structure digraphs of generation games and their type-merged reductions.

A structure digraph has one vertex per intersection class plus the terminal
class, and an edge for every within-lattice option.  Vertices carry a type
triple (carrier parity, nim value on even positions, nim value on odd
positions).  Merging vertices that share a type and an option-type profile
yields a small diagram whose shape is often the same across a whole family
of groups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InternalInvariantError
from .groups import GroupTable
from .lattice import TERMINAL, IntersectionLattice, class_edges, class_parity
from .solver import ClassNimTable


class TypeTriple(NamedTuple):
    parity: int
    even_nim: int
    odd_nim: int


@dataclass(frozen=True)
class DigraphVertex:
    cid: int
    carrier_order: int
    parity: int
    deficiency: int
    vtype: TypeTriple


@dataclass(frozen=True)
class StructureDigraph:
    """Option digraph over intersection classes; edges reference class ids."""

    vertices: tuple[DigraphVertex, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MergedVertex:
    vtype: TypeTriple
    members: tuple[int, ...]


@dataclass(frozen=True)
class SimplifiedDiagram:
    """Type-merged digraph; edges reference vertex list indices."""

    vertices: tuple[MergedVertex, ...]
    edges: tuple[tuple[int, int], ...]


def type_of(nims: ClassNimTable, lat: IntersectionLattice, cid: int) -> TypeTriple:
    """Type triple of one class: parity and both within-class nim values."""
    if cid == TERMINAL:
        return TypeTriple(class_parity(lat, cid), 0, 0)
    even_nim, odd_nim = nims.per_class[cid]
    return TypeTriple(class_parity(lat, cid), even_nim, odd_nim)


def build_digraph(g: GroupTable, lat: IntersectionLattice,
                  nims: ClassNimTable) -> StructureDigraph:
    from .theory import deficiency_table

    edges = class_edges(lat, g)
    dt = deficiency_table(g, lat, edges)
    vertices = [
        DigraphVertex(
            cid=cid,
            carrier_order=mask.bit_count(),
            parity=class_parity(lat, cid),
            deficiency=dt.per_class[cid],
            vtype=type_of(nims, lat, cid),
        )
        for cid, mask in enumerate(lat.intersections)
    ]
    vertices.append(DigraphVertex(
        cid=TERMINAL,
        carrier_order=g.order,
        parity=class_parity(lat, TERMINAL),
        deficiency=0,
        vtype=type_of(nims, lat, TERMINAL),
    ))
    return StructureDigraph(vertices=tuple(vertices), edges=tuple(edges))


def simplify(d: StructureDigraph | SimplifiedDiagram, *,
             rng: random.Random | None = None) -> SimplifiedDiagram:
    """Merge vertices with equal types and equal option-type profiles.

    The profile of a vertex is the set of its option types together with its
    own type, so edges between same-type vertices never block a merge.
    Merging repeats until no pair qualifies; the result does not depend on
    merge order, which ``rng`` can shuffle for testing.  Self-loops created
    by merging are dropped from the output.
    """
    if isinstance(d, SimplifiedDiagram):
        types = [v.vtype for v in d.vertices]
        members = [list(v.members) for v in d.vertices]
        key_of = {i: i for i in range(len(d.vertices))}
        raw_edges = set(d.edges)
    else:
        types = [v.vtype for v in d.vertices]
        members = [[v.cid] for v in d.vertices]
        key_of = {v.cid: i for i, v in enumerate(d.vertices)}
        raw_edges = {(key_of[a], key_of[b]) for a, b in d.edges}

    alive = [True] * len(types)
    succ: list[set[int]] = [set() for _ in types]
    pred: list[set[int]] = [set() for _ in types]
    for a, b in raw_edges:
        succ[a].add(b)
        pred[b].add(a)

    def profile(i: int) -> frozenset[TypeTriple]:
        return frozenset(types[j] for j in succ[i]) | {types[i]}

    def merge(keep: int, drop: int) -> None:
        members[keep].extend(members[drop])
        alive[drop] = False
        for j in list(succ[drop]):
            pred[j].discard(drop)
            succ[keep].add(keep if j == drop else j)
            pred[keep if j == drop else j].add(keep)
        for j in list(pred[drop]):
            succ[j].discard(drop)
            succ[j].add(keep)
            pred[keep].add(j)
        succ[drop] = set()
        pred[drop] = set()

    changed = True
    while changed:
        changed = False
        live = [i for i in range(len(types)) if alive[i]]
        if rng is not None:
            rng.shuffle(live)
        for ai in range(len(live)):
            if changed:
                break
            for bi in range(ai + 1, len(live)):
                a, b = live[ai], live[bi]
                if types[a] != types[b]:
                    continue
                if profile(a) == profile(b):
                    merge(a, b)
                    changed = True
                    break

    order = sorted((i for i in range(len(types)) if alive[i]),
                   key=lambda i: (types[i], sorted(members[i])))
    new_index = {i: k for k, i in enumerate(order)}
    out_vertices = tuple(
        MergedVertex(vtype=types[i], members=tuple(sorted(members[i])))
        for i in order)
    out_edges = sorted(
        (new_index[a], new_index[b])
        for a in order for b in succ[a] if a != b)
    terminal_homes = [v for v in out_vertices if TERMINAL in v.members]
    if len(terminal_homes) != 1 or len(terminal_homes[0].members) != 1:
        raise InternalInvariantError("terminal class merged with another class")
    return SimplifiedDiagram(vertices=out_vertices, edges=tuple(out_edges))


def _type_label(t: TypeTriple) -> str:
    return f"({t.parity},{t.even_nim},{t.odd_nim})"


def to_dot(d: StructureDigraph | SimplifiedDiagram, style: str = "full") -> str:
    """Render as Graphviz source; ``plain`` style labels vertices by type only."""
    if style not in ("full", "plain"):
        raise ValueError(f"unknown style {style!r}")
    lines = ["digraph structure {"]
    if isinstance(d, StructureDigraph):
        index = {v.cid: i for i, v in enumerate(d.vertices)}
        for i, v in enumerate(d.vertices):
            if style == "full":
                label = (f"I={v.carrier_order} pty={v.parity} "
                         f"d={v.deficiency} type={_type_label(v.vtype)}")
            else:
                label = _type_label(v.vtype)
            lines.append(f'  v{i} [label="{label}"];')
        for a, b in sorted((index[a], index[b]) for a, b in d.edges):
            lines.append(f"  v{a} -> v{b};")
    else:
        for i, v in enumerate(d.vertices):
            if style == "full":
                label = f"type={_type_label(v.vtype)} members={len(v.members)}"
            else:
                label = _type_label(v.vtype)
            lines.append(f'  v{i} [label="{label}"];')
        for a, b in sorted(d.edges):
            lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_dict(d: StructureDigraph) -> dict:
    return {
        "vertices": [
            {
                "cid": v.cid,
                "carrierOrder": v.carrier_order,
                "parity": v.parity,
                "deficiency": v.deficiency,
                "type": list(v.vtype),
            }
            for v in d.vertices
        ],
        "edges": [list(e) for e in sorted(d.edges)],
    }


def simplified_to_dict(d: SimplifiedDiagram) -> dict:
    return {
        "vertices": [
            {"type": list(v.vtype), "members": list(v.members)}
            for v in d.vertices
        ],
        "edges": [list(e) for e in sorted(d.edges)],
    }
