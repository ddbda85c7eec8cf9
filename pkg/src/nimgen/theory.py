"""Deficiency bookkeeping, closed-form predictions, and verification harnesses.

The deficiency of a structure class is its directed distance to the terminal
class; the deficiency of the Frattini class equals the minimum size of a
generating set.  The prediction functions give the expected nim values of
generation games on generalized dihedral groups straight from the shape of
the abelian part, and the verify/check helpers compare those expectations
against computed values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .errors import CapacityError, InternalInvariantError, OutOfScopeError
from .groups import (
    Cyclic,
    Dih,
    GroupSpec,
    GroupTable,
    Product,
    build_cyclic,
    build_group,
    dihedralize,
    direct_product,
    generated_subgroup,
    parse_group_spec,
)
from .lattice import (
    DEFAULT_ORDER_CAP,
    TERMINAL,
    IntersectionLattice,
    class_edges,
    class_parity,
    intersection_subgroups,
)
from .solver import DEFAULT_BRUTE_CAP, GEN, Variant, brute_nim, structure_nim

if TYPE_CHECKING:
    from .diagram import StructureDigraph


# ---------------------------------------------------------------------------
# Deficiency


@dataclass(frozen=True)
class DeficiencyTable:
    """Distance of every structure class to the terminal class."""

    per_class: Mapping[int, int]
    d_g: int


def deficiency_table(g: GroupTable, lat: IntersectionLattice,
                     edges: Iterable[tuple[int, int]]) -> DeficiencyTable:
    """Breadth-first distances to the terminal class along option edges."""
    reverse: dict[int, list[int]] = {}
    for a, b in edges:
        reverse.setdefault(b, []).append(a)
    dist: dict[int, int] = {TERMINAL: 0}
    frontier = deque([TERMINAL])
    while frontier:
        v = frontier.popleft()
        for u in reverse.get(v, ()):
            if u not in dist:
                dist[u] = dist[v] + 1
                frontier.append(u)
    if len(dist) != len(lat.intersections) + 1:
        raise InternalInvariantError(
            "some structure class cannot reach the terminal class")
    d_g = dist[lat.frattini_index]
    if max(dist.values()) != d_g:
        raise InternalInvariantError(
            "a class is farther from terminal than the Frattini class")
    if [cid for cid, m in dist.items() if m == 0] != [TERMINAL]:
        raise InternalInvariantError(
            "a non-terminal class has deficiency zero")
    return DeficiencyTable(per_class=dist, d_g=d_g)


def d_min(g: GroupTable, *, order_cap: int = DEFAULT_ORDER_CAP) -> int:
    """Minimum size of a generating set."""
    if g.order == 1:
        return 0
    try:
        lat = intersection_subgroups(g, order_cap=order_cap)
    except CapacityError:
        return d_min_exhaustive(g)
    return deficiency_table(g, lat, class_edges(lat, g)).d_g


def d_min_exhaustive(g: GroupTable) -> int:
    """Minimum generating set size by searching subsets in increasing size."""
    if g.order == 1:
        return 0
    full = g.full_mask
    for k in range(1, g.order):
        for combo in combinations(range(1, g.order), k):
            m = 0
            for x in combo:
                m |= 1 << x
            if generated_subgroup(g, m) == full:
                return k
    raise InternalInvariantError("no generating set found")


def exhaustive_deficiency_map(g: GroupTable, *, cap: int = 14) -> list[int]:
    """Deficiency of every subset: fewest extra elements needed to generate.

    Dynamic programming over all masks, processed from large subsets down.
    Intended as a small-group oracle; cost is 2^|G| closures.
    """
    n = g.order
    if n > cap:
        raise CapacityError(f"exhaustive deficiency map capped at order {cap}")
    full = g.full_mask
    size = 1 << n
    delta = [0] * size
    for mask in sorted(range(size), key=int.bit_count, reverse=True):
        if generated_subgroup(g, mask) == full:
            delta[mask] = 0
        else:
            delta[mask] = 1 + min(
                delta[mask | (1 << x)] for x in range(n) if not (mask >> x) & 1)
    return delta


def strata(dt: DeficiencyTable, lat: IntersectionLattice) -> dict[tuple[int, int], set[int]]:
    """Group class ids by (parity bit, deficiency)."""
    out: dict[tuple[int, int], set[int]] = {}
    for cid, m in dt.per_class.items():
        out.setdefault((class_parity(lat, cid), m), set()).add(cid)
    zero = {cid for cid, m in dt.per_class.items() if m == 0}
    if zero != {TERMINAL}:
        raise InternalInvariantError("deficiency zero must mean terminal")
    return out


# ---------------------------------------------------------------------------
# Abelian shapes and predictions


def _prime_factors(n: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(frozen=True)
class AbelianSpec:
    """An abelian group given as a direct product of cyclic factors."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.factors or any(f < 1 for f in self.factors):
            raise ValueError(f"cyclic factors must be positive, got {self.factors}")

    @classmethod
    def from_spec(cls, spec: GroupSpec | str) -> "AbelianSpec":
        if isinstance(spec, str):
            spec = parse_group_spec(spec)
        return cls(tuple(_cyclic_factors(spec)))

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n

    @property
    def is_odd(self) -> bool:
        return self.order % 2 == 1

    @property
    def rank(self) -> int:
        """Minimum number of generators: the largest per-prime factor count."""
        counts = [sum(1 for f in self.factors if f % p == 0)
                  for p in _prime_factors(self.order)]
        return max(counts, default=0)

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    @property
    def spec_string(self) -> str:
        return "x".join(f"Z{f}" for f in sorted(f for f in self.factors if f > 1)) or "Z1"

    def to_group(self) -> GroupTable:
        g = build_cyclic(self.factors[0])
        for f in self.factors[1:]:
            g = direct_product(g, build_cyclic(f))
        return g


def _cyclic_factors(spec: GroupSpec) -> list[int]:
    if isinstance(spec, Cyclic):
        return [spec.n]
    if isinstance(spec, Product):
        return _cyclic_factors(spec.left) + _cyclic_factors(spec.right)
    raise ValueError(f"not a direct product of cyclic groups: {spec!r}")


def predict_gen_dih(a: AbelianSpec) -> int:
    """Expected achievement-game nim value of the dihedralized group.

    Covers every abelian part of order at least 2; the order-1 case is
    rejected because its dihedralization is the two-element group, whose
    value matches none of the family's cases.
    """
    if a.order < 2:
        raise OutOfScopeError(
            "prediction needs an abelian part of order at least 2")
    if a.rank == 1:
        n = a.order
        if n % 4 == 0:
            return 0
        if n % 4 == 2:
            return 1
        return 3
    if a.rank == 2 and a.is_odd:
        return 3
    return 0


def predict_dng_dih(a: AbelianSpec) -> int:
    """Expected avoidance-game nim value of the dihedralized group."""
    if a.order < 2:
        raise OutOfScopeError(
            "prediction needs an abelian part of order at least 2")
    return 3 if (a.is_cyclic and a.is_odd) else 0


# ---------------------------------------------------------------------------
# Verification harnesses


@dataclass(frozen=True)
class FamilyRecord:
    """One verified dihedralization: prediction vs. computation."""

    spec: str
    variant: str
    predicted: int | None
    computed: int | None
    d_dih: int | None
    d_a: int | None
    frattini_match: bool | None
    agree: bool | None
    note: str = ""

    @property
    def failed(self) -> bool:
        if self.agree is False or self.frattini_match is False:
            return True
        if self.d_dih is not None and self.d_a is not None:
            return self.d_dih != self.d_a + 1
        return False

    @property
    def skipped(self) -> bool:
        return self.computed is None

    def to_dict(self) -> dict:
        out = {
            "spec": self.spec,
            "variant": self.variant,
            "predicted": self.predicted,
            "computed": self.computed,
            "dDih": self.d_dih,
            "dA": self.d_a,
            "frattiniMatch": self.frattini_match,
            "agree": self.agree,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class FamilyReport:
    records: tuple[FamilyRecord, ...]

    @property
    def exit_code(self) -> int:
        """0 if everything agrees, 1 on any mismatch, 2 if only skips occurred."""
        if any(r.failed for r in self.records):
            return 1
        if any(r.skipped for r in self.records):
            return 2
        return 0


def verify_family(specs: Sequence[AbelianSpec], variant: Variant = GEN, *,
                  brute_cap: int = DEFAULT_BRUTE_CAP,
                  order_cap: int = DEFAULT_ORDER_CAP) -> FamilyReport:
    """Compare predicted and computed nim values over dihedralized groups.

    Capacity and scope problems are reported per record, never raised.
    """
    records = []
    for a in specs:
        spec_str = f"Dih({a.spec_string})"
        try:
            predicted = (predict_gen_dih(a) if variant == GEN else predict_dng_dih(a))
        except OutOfScopeError as exc:
            records.append(FamilyRecord(
                spec=spec_str, variant=variant, predicted=None, computed=None,
                d_dih=None, d_a=None, frattini_match=None, agree=None,
                note=str(exc)))
            continue
        try:
            a_table = a.to_group()
            dih = dihedralize(a_table)
            lat = intersection_subgroups(dih, order_cap=order_cap)
            d_dih = deficiency_table(dih, lat, class_edges(lat, dih)).d_g
            if variant == GEN:
                computed = structure_nim(dih, lat).game_nim
            else:
                computed = brute_nim(dih, variant, brute_cap=brute_cap)
            a_lat = intersection_subgroups(a_table, order_cap=order_cap)
            # The abelian part keeps its element indices inside the
            # dihedralization, so Frattini carriers compare directly.
            frattini_match = a_lat.frattini_mask == lat.frattini_mask
        except CapacityError as exc:
            records.append(FamilyRecord(
                spec=spec_str, variant=variant, predicted=predicted, computed=None,
                d_dih=None, d_a=a.rank, frattini_match=None, agree=None,
                note=str(exc)))
            continue
        records.append(FamilyRecord(
            spec=spec_str, variant=variant, predicted=predicted, computed=computed,
            d_dih=d_dih, d_a=a.rank, frattini_match=frattini_match,
            agree=computed == predicted))
    return FamilyReport(records=tuple(records))


@dataclass(frozen=True)
class CheckReport:
    """Result of one structural check on one group."""

    name: str
    subject: str
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


# Expected (parity, even nim, odd nim) of even classes, by deficiency.
_EVEN_TYPES = {0: (0, 0, 0), 1: (0, 1, 2), 2: (0, 0, 2)}
_EVEN_TYPE_DEEP = (0, 0, 1)

# Expected types of odd classes of a dihedralized odd two-generator abelian
# group, by deficiency.
_ODD_TYPES = {1: (1, 2, 1), 2: (1, 3, 0), 3: (1, 3, 1)}


def check_even_type_table(g: GroupTable, lat: IntersectionLattice,
                          dt: DeficiencyTable, nims) -> CheckReport:
    """Even classes of an even-order group have types fixed by deficiency."""
    if g.order % 2:
        raise ValueError("the even-type table applies to even-order groups")
    violations = []
    checked = 0
    for cid, (even_nim, odd_nim) in nims.per_class.items():
        if class_parity(lat, cid) != 0:
            continue
        checked += 1
        m = dt.per_class[cid]
        expected = _EVEN_TYPES.get(m, _EVEN_TYPE_DEEP)
        actual = (0, even_nim, odd_nim)
        if actual != expected:
            violations.append(
                f"class {cid} at deficiency {m} has type {actual}, expected {expected}")
    if dt.d_g >= 4 and nims.game_nim != 0:
        violations.append(
            f"groups needing {dt.d_g} generators must have nim value 0, "
            f"got {nims.game_nim}")
    return CheckReport(name="even-type-table", subject=g.label or "group",
                       checked=checked, violations=tuple(violations))


def check_option_deficiency(digraph: "StructureDigraph", dt: DeficiencyTable,
                            subject: str = "digraph") -> CheckReport:
    """Each class has an option one step closer to terminal and none farther.

    For even classes all options are even (carriers contain the even carrier),
    so the step-closer option is itself even.
    """
    opts: dict[int, set[int]] = {v.cid: set() for v in digraph.vertices}
    for a, b in digraph.edges:
        opts[a].add(b)
    parity = {v.cid: v.parity for v in digraph.vertices}
    violations = []
    checked = 0
    for v in digraph.vertices:
        if v.cid == TERMINAL:
            if opts[v.cid]:
                violations.append("terminal class has outgoing edges")
            continue
        checked += 1
        m = dt.per_class[v.cid]
        deltas = {dt.per_class[j] for j in opts[v.cid]}
        if m - 1 not in deltas:
            violations.append(f"class {v.cid} at deficiency {m} has no option at {m - 1}")
        if not deltas <= {m, m - 1}:
            violations.append(
                f"class {v.cid} at deficiency {m} has options at {sorted(deltas)}")
        if v.parity == 0:
            odd_opts = [j for j in opts[v.cid] if parity[j] != 0]
            if odd_opts:
                violations.append(
                    f"even class {v.cid} has odd-carrier options {sorted(odd_opts)}")
    return CheckReport(name="option-deficiency", subject=subject,
                       checked=checked, violations=tuple(violations))


def check_deficiency_oracle(g: GroupTable, lat: IntersectionLattice,
                            dt: DeficiencyTable, *, cap: int = 14) -> CheckReport:
    """Class distances agree with exhaustive per-subset deficiencies.

    Checks every subset of the group, so it is restricted to small orders.
    Raises CapacityError above ``cap``.
    """
    from .lattice import ceil_class

    delta = exhaustive_deficiency_map(g, cap=cap)
    violations = []
    checked = 0
    for cid, mask in enumerate(lat.intersections):
        checked += 1
        if delta[mask] != dt.per_class[cid]:
            violations.append(
                f"class {cid} has distance {dt.per_class[cid]} but exhaustive "
                f"deficiency {delta[mask]}")
    for mask in range(1 << g.order):
        checked += 1
        expected = dt.per_class[ceil_class(lat, g, mask)]
        if delta[mask] != expected:
            violations.append(
                f"subset {mask:#x} has exhaustive deficiency {delta[mask]} but "
                f"its class sits at distance {expected}")
            if len(violations) >= 20:
                violations.append("further subset violations suppressed")
                break
    if delta[0] != dt.d_g:
        violations.append(
            f"empty set needs {delta[0]} elements but d(G) was computed as {dt.d_g}")
    return CheckReport(name="deficiency-oracle", subject=g.label or "group",
                       checked=checked, violations=tuple(violations))


def check_odd_case_lemmas(digraph: "StructureDigraph", dt: DeficiencyTable,
                          subject: str = "digraph") -> CheckReport:
    """Odd-class pattern of a dihedralized odd two-generator abelian group.

    Odd classes carry the expected type for their deficiency; at deficiency
    2 and 3 they have an odd option one step closer; at deficiency 1..3 they
    have an even option one step closer and no even option at the same depth.
    """
    opts: dict[int, set[int]] = {v.cid: set() for v in digraph.vertices}
    for a, b in digraph.edges:
        opts[a].add(b)
    by_id = {v.cid: v for v in digraph.vertices}
    violations = []
    checked = 0
    for v in digraph.vertices:
        if v.cid == TERMINAL or v.parity == 0:
            continue
        checked += 1
        m = dt.per_class[v.cid]
        expected = _ODD_TYPES.get(m)
        if expected is None:
            violations.append(f"odd class {v.cid} at unexpected deficiency {m}")
            continue
        if tuple(v.vtype) != expected:
            violations.append(
                f"odd class {v.cid} at deficiency {m} has type {tuple(v.vtype)}, "
                f"expected {expected}")
        option_info = [(by_id[j].parity, dt.per_class[j]) for j in opts[v.cid]]
        if m in (2, 3) and (1, m - 1) not in option_info:
            violations.append(
                f"odd class {v.cid} at deficiency {m} has no odd option at {m - 1}")
        if (0, m - 1) not in option_info:
            violations.append(
                f"odd class {v.cid} at deficiency {m} has no even option at {m - 1}")
        if (0, m) in option_info:
            violations.append(
                f"odd class {v.cid} at deficiency {m} has an even option at the same depth")
    return CheckReport(name="odd-case-pattern", subject=subject,
                       checked=checked, violations=tuple(violations))


# ---------------------------------------------------------------------------
# Shipped catalogs


# Abelian parts for the cyclic dihedral table.
DIHEDRAL_FAMILY = tuple(f"Z{n}" for n in range(2, 13))

# Abelian parts for the non-cyclic classification sweep.
THEOREM_FAMILY = (
    "Z3xZ3", "Z3xZ9", "Z5xZ5", "Z2xZ2",
    "Z2xZ4", "Z2xZ6", "Z2xZ2xZ2", "Z3xZ3xZ3",
)

# Abelian parts for the avoidance-game classification.
DNG_FAMILY = ("Z3", "Z5", "Z7", "Z4", "Z6", "Z2xZ2")

# Groups of order at most 16, used wherever brute force must agree with the
# structure solver.
SMALL_CATALOG = tuple(
    [f"Z{n}" for n in range(2, 17)]
    + ["Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "Z2xZ6"]
    + [f"Dih(Z{n})" for n in range(2, 9)]
    + ["Dih(Z2xZ2)", "Dih(Z2xZ4)", "Dih(Z2xZ2xZ2)"]
)

# Larger groups still within the order cap; mostly dihedralizations.
EXTENDED_CATALOG = SMALL_CATALOG + (
    "Dih(Z9)", "Dih(Z10)", "Dih(Z11)", "Dih(Z12)",
    "Dih(Z3xZ3)", "Dih(Z3xZ9)", "Dih(Z5xZ5)", "Dih(Z2xZ6)", "Dih(Z3xZ3xZ3)",
)

# Abelian groups of order at most 27 for dihedralization identities.
ABELIAN_CATALOG = tuple(dict.fromkeys(DIHEDRAL_FAMILY + THEOREM_FAMILY))
