"""Finite groups as immutable Cayley tables.

Element indices run 0..order-1 and index 0 is always the identity.  Subsets
of a group (game positions, subgroup carriers, generating sets) are plain
``int`` bitmasks over element indices, so membership, union and intersection
are single integer operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Union

from .errors import NonAbelianError, SpecParseError, TableFormatError

# Full associativity checks are cubic; above this order a fixed-seed random
# sample of triples is used instead.
_FULL_ASSOC_LIMIT = 64
_SAMPLED_TRIPLES = 100_000


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask with the given element indices set."""
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def iter_mask(mask: int) -> Iterator[int]:
    """Indices set in ``mask``, in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GroupTable:
    """A finite group: multiplication table, inverses and display names."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    names: tuple[str, ...]
    label: str = ""

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def name_of(self, i: int) -> str:
        return self.names[i]


def build_cyclic(n: int) -> GroupTable:
    """Cyclic group of order ``n`` with elements e, g, g^2, ..."""
    if n < 1:
        raise ValueError(f"cyclic group order must be at least 1, got {n}")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    names = tuple("e" if k == 0 else "g" if k == 1 else f"g^{k}" for k in range(n))
    return GroupTable(order=n, mul=mul, inv=inv, names=names, label=f"Z{n}")


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Direct product; element (a, b) is encoded as a * |h| + b."""
    n, m = g.order, h.order
    order = n * m

    def enc(a: int, b: int) -> int:
        return a * m + b

    mul = []
    for a in range(n):
        for b in range(m):
            row = []
            for c in range(n):
                for d in range(m):
                    row.append(enc(g.mul[a][c], h.mul[b][d]))
            mul.append(tuple(row))
    inv = tuple(enc(g.inv[a], h.inv[b]) for a in range(n) for b in range(m))
    names = tuple(f"({g.names[a]},{h.names[b]})" for a in range(n) for b in range(m))
    label = f"{g.label}x{h.label}" if g.label and h.label else ""
    return GroupTable(order=order, mul=tuple(mul), inv=inv, names=names, label=label)


def is_abelian(g: GroupTable) -> bool:
    """Full commutativity scan over all element pairs."""
    mul = g.mul
    return all(mul[i][j] == mul[j][i] for i in range(g.order) for j in range(i + 1, g.order))


def dihedralize(a: GroupTable) -> GroupTable:
    """Generalized dihedral group of an abelian group.

    Adjoins a flip ``x`` with x^2 = e and x a x = a^-1, doubling the order.
    Elements 0..|A|-1 are the original group; element |A|+m is x*a_m.  Every
    element outside the original group is an involution.
    """
    if not is_abelian(a):
        raise NonAbelianError(
            f"dihedralize needs an abelian group, {a.label or 'input'} is not abelian")
    n = a.order
    mul = []
    for k1 in range(2):
        for m1 in range(n):
            row = []
            for k2 in range(2):
                for m2 in range(n):
                    if k2 == 0:
                        row.append(k1 * n + a.mul[m1][m2])
                    else:
                        row.append((1 - k1) * n + a.mul[a.inv[m1]][m2])
            mul.append(tuple(row))
    inv = tuple(a.inv[m] for m in range(n)) + tuple(n + m for m in range(n))
    names = a.names + tuple("x" if m == 0 else f"x·{a.names[m]}" for m in range(n))
    label = f"Dih({a.label})" if a.label else ""
    return GroupTable(order=2 * n, mul=tuple(mul), inv=inv, names=names, label=label)


def element_order(g: GroupTable, i: int) -> int:
    """Multiplicative order of element ``i``."""
    k, x = 1, i
    while x != 0:
        x = g.mul[x][i]
        k += 1
    return k


def generated_subgroup(g: GroupTable, seed: int) -> int:
    """Mask of the subgroup generated by ``seed`` (the identity is always in)."""
    n = g.order
    mul = g.mul
    full = g.full_mask
    mask = (seed | 1) & full
    elems = list(iter_mask(mask))
    # A proper subgroup has at most half the elements, so once the closure
    # passes n/2 it can only be the whole group.
    if 2 * len(elems) > n:
        return full
    pending = list(elems)
    while pending:
        x = pending.pop()
        row = mul[x]
        for idx in range(len(elems)):
            y = elems[idx]
            for z in (row[y], mul[y][x]):
                b = 1 << z
                if not mask & b:
                    mask |= b
                    elems.append(z)
                    pending.append(z)
        if 2 * len(elems) > n:
            return full
    return mask


def is_generating(g: GroupTable, mask: int) -> bool:
    return generated_subgroup(g, mask) == g.full_mask


# ---------------------------------------------------------------------------
# Group spec expressions


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Product:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class Dih:
    inner: "GroupSpec"


@dataclass(frozen=True)
class TableFile:
    path: str


GroupSpec = Union[Cyclic, Product, Dih, TableFile]


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> None:
        raise SpecParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expr(self) -> GroupSpec:
        spec = self.atom()
        while True:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "x":
                self.pos += 1
                spec = Product(spec, self.atom())
            else:
                return spec

    def atom(self) -> GroupSpec:
        self.skip_ws()
        text = self.text
        if text.startswith("Dih", self.pos):
            self.pos += 3
            self.skip_ws()
            if self.pos >= len(text) or text[self.pos] != "(":
                self.fail("expected '(' after 'Dih'")
            self.pos += 1
            inner = self.expr()
            self.skip_ws()
            if self.pos >= len(text) or text[self.pos] != ")":
                self.fail("expected ')'")
            self.pos += 1
            return Dih(inner)
        if text.startswith("table:", self.pos):
            self.pos += len("table:")
            end = text.find(")", self.pos)
            if end == -1:
                end = len(text)
            path = text[self.pos:end].strip()
            if not path:
                self.fail("empty path after 'table:'")
            self.pos = end
            return TableFile(path)
        if self.pos < len(text) and text[self.pos] == "Z":
            self.pos += 1
            start = self.pos
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                self.fail("expected digits after 'Z'")
            n = int(text[start:self.pos])
            if n < 1:
                self.pos = start
                self.fail("cyclic group order must be at least 1")
            return Cyclic(n)
        self.fail("expected 'Z<n>', 'Dih(...)' or 'table:<path>'")
        raise AssertionError  # unreachable


def parse_group_spec(text: str) -> GroupSpec:
    """Parse expressions like ``Z12``, ``Z2xZ4``, ``Dih(Z3xZ9)``, ``table:k4.tbl``."""
    p = _SpecParser(text)
    spec = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.fail("unexpected trailing input")
    return spec


def _flatten_product(spec: GroupSpec) -> list[GroupSpec]:
    if isinstance(spec, Product):
        return _flatten_product(spec.left) + _flatten_product(spec.right)
    return [spec]


def canonical_spec(spec: GroupSpec) -> str:
    """Stable spelling of a spec: product factors ascending, Dih outermost."""
    if isinstance(spec, Cyclic):
        return f"Z{spec.n}"
    if isinstance(spec, Dih):
        return f"Dih({canonical_spec(spec.inner)})"
    if isinstance(spec, TableFile):
        return f"table:{spec.path}"
    factors = _flatten_product(spec)

    def key(f: GroupSpec) -> tuple:
        if isinstance(f, Cyclic):
            return (0, f.n, "")
        return (1, 0, canonical_spec(f))

    return "x".join(canonical_spec(f) for f in sorted(factors, key=key))


def build_group(spec: GroupSpec | str) -> GroupTable:
    """Construct the group a spec describes."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if isinstance(spec, Cyclic):
        return build_cyclic(spec.n)
    if isinstance(spec, Product):
        return direct_product(build_group(spec.left), build_group(spec.right))
    if isinstance(spec, Dih):
        return dihedralize(build_group(spec.inner))
    if isinstance(spec, TableFile):
        return load_table_file(spec.path)
    raise TypeError(f"not a group spec: {spec!r}")


# ---------------------------------------------------------------------------
# Cayley table files


def load_table_file(path: str | Path) -> GroupTable:
    """Load and validate a Cayley table file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFormatError(f"cannot read table file {p}: {exc}") from exc
    return parse_table_text(text, label=f"table:{p}")


def parse_table_text(text: str, label: str = "") -> GroupTable:
    """Parse a Cayley table.

    Format: first line is the order n, followed by n lines of n 0-based
    indices (row i, column j holds the index of element i * element j), then
    optional ``name <i> <string>`` lines.  The table is checked to be a group
    and re-indexed so the identity sits at index 0.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TableFormatError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableFormatError(f"first line must be the group order, got {lines[0]!r}") from None
    if n < 1:
        raise TableFormatError(f"group order must be at least 1, got {n}")
    if len(lines) < 1 + n:
        raise TableFormatError(f"expected {n} table rows, found {len(lines) - 1}")

    mul: list[list[int]] = []
    for i in range(n):
        tokens = lines[1 + i].split()
        if len(tokens) != n:
            raise TableFormatError(f"row {i} has {len(tokens)} entries, expected {n}")
        try:
            row = [int(t) for t in tokens]
        except ValueError:
            raise TableFormatError(f"row {i} contains a non-integer entry") from None
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise TableFormatError(f"entry ({i}, {j}) is {v}, outside 0..{n - 1}")
        mul.append(row)

    name_overrides: dict[int, str] = {}
    for extra in lines[1 + n:]:
        parts = extra.split(maxsplit=2)
        if len(parts) != 3 or parts[0] != "name":
            raise TableFormatError(f"unrecognized trailing line: {extra!r}")
        try:
            idx = int(parts[1])
        except ValueError:
            raise TableFormatError(f"bad name index in line: {extra!r}") from None
        if not 0 <= idx < n:
            raise TableFormatError(f"name index {idx} outside 0..{n - 1}")
        name_overrides[idx] = parts[2]

    everything = list(range(n))
    for i in range(n):
        if sorted(mul[i]) != everything:
            raise TableFormatError(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if sorted(mul[i][j] for i in range(n)) != everything:
            raise TableFormatError(f"column {j} is not a permutation of 0..{n - 1}")

    identity = None
    for e in range(n):
        if all(mul[e][j] == j for j in range(n)) and all(mul[j][e] == j for j in range(n)):
            identity = e
            break
    if identity is None:
        raise TableFormatError("table has no two-sided identity element")

    if n <= _FULL_ASSOC_LIMIT:
        triples: Iterable[tuple[int, int, int]] = (
            (i, j, k) for i in range(n) for j in range(n) for k in range(n))
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(_SAMPLED_TRIPLES))
    for i, j, k in triples:
        if mul[mul[i][j]][k] != mul[i][mul[j][k]]:
            raise TableFormatError(
                f"associativity fails for triple ({i}, {j}, {k}): "
                f"({i}*{j})*{k} = {mul[mul[i][j]][k]} but {i}*({j}*{k}) = {mul[i][mul[j][k]]}")

    # Re-index so the identity is element 0 (swap 0 and the identity).
    new_of_old = list(range(n))
    new_of_old[identity], new_of_old[0] = 0, identity
    new_mul = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            new_mul[new_of_old[i]][new_of_old[j]] = new_of_old[mul[i][j]]
    names = [""] * n
    for old in range(n):
        names[new_of_old[old]] = name_overrides.get(old, f"g{old}")

    inv = [0] * n
    for i in range(n):
        j = new_mul[i].index(0)
        if new_mul[j][i] != 0:
            raise TableFormatError(f"element {i} has no two-sided inverse")
        inv[i] = j

    return GroupTable(
        order=n,
        mul=tuple(tuple(r) for r in new_mul),
        inv=tuple(inv),
        names=tuple(names),
        label=label,
    )
