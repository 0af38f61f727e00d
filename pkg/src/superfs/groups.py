"""Finite groups as validated Cayley tables.

Elements are integers 0..order-1 with the identity fixed at index 0. Groups can
be built from an explicit multiplication table or by closing a set of
permutation generators (image arrays on 0..degree-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "Group",
    "EvenSubgroup",
    "build_group",
    "group_from_table",
    "group_from_permutations",
    "product_group",
    "even_subgroup",
    "group_to_dict",
    "group_from_dict",
    "load_group",
    "save_group",
]


@dataclass(frozen=True)
class Group:
    """A finite group: |G|, Cayley table, inverses, optional element names."""

    order: int
    table: np.ndarray
    inverses: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        self.table.setflags(write=False)
        self.inverses.setflags(write=False)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def element_name(self, g: int) -> str:
        if self.names is not None:
            return self.names[g]
        return str(g)


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    raise ValidationError("table has no two-sided identity element")


def _check_latin(table: np.ndarray) -> None:
    n = table.shape[0]
    ar = np.arange(n)
    for g in range(n):
        if not np.array_equal(np.sort(table[g]), ar):
            raise ValidationError(f"row {g} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(table[:, g]), ar):
            raise ValidationError(f"column {g} is not a permutation of 0..{n - 1}")


def _check_associative(table: np.ndarray) -> None:
    # chunk over the first factor so memory stays at order^2 per step
    n = table.shape[0]
    for g in range(n):
        left = table[table[g], :]
        right = table[g, table]
        if not np.array_equal(left, right):
            h, k = map(int, np.argwhere(left != right)[0])
            raise ValidationError(f"associativity fails at ({g}*{h})*{k} != {g}*({h}*{k})")


def group_from_table(table: Sequence[Sequence[int]] | np.ndarray,
                     names: Sequence[str] | None = None) -> Group:
    """Validate a Cayley table and return a Group (identity relabeled to 0)."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValidationError(f"table must be square, got shape {t.shape}")
    n = t.shape[0]
    if n == 0:
        raise ValidationError("empty table")
    if t.min() < 0 or t.max() >= n:
        raise ValidationError("table entries must lie in 0..order-1")
    _check_latin(t)
    e = _find_identity(t)
    if e != 0:
        # relabel by swapping 0 <-> e
        m = np.arange(n)
        m[0], m[e] = e, 0
        t = m[t[np.ix_(m, m)]]
        if names is not None:
            names = [names[m[i]] for i in range(n)]
    _check_associative(t)
    inv = np.empty(n, dtype=np.int64)
    for g in range(n):
        h = int(np.argwhere(t[g] == 0)[0, 0])
        if t[h, g] != 0:
            raise ValidationError(f"element {g} has no two-sided inverse")
        inv[g] = h
    nm = tuple(str(x) for x in names) if names is not None else None
    return Group(order=n, table=t, inverses=inv, names=nm)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(x) = p(q(x))
    return tuple(p[i] for i in q)


def group_from_permutations(generators: Sequence[Sequence[int]],
                            max_order: int = 1024) -> Group:
    """Close permutation generators under products and return the group.

    Generators are image arrays on 0..degree-1. The identity gets index 0 and
    the remaining elements follow breadth-first discovery order.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValidationError("need at least one permutation generator")
    degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValidationError(f"generator {g} is not a permutation of 0..{degree - 1}")
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(p, g)
                if q not in index:
                    if len(elements) >= max_order:
                        raise ValidationError(
                            f"closure exceeds the size cap {max_order}")
                    index[q] = len(elements)
                    elements.append(q)
                    nxt.append(q)
        frontier = nxt
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            table[i, j] = index[_compose(p, q)]
    names = ["(" + " ".join(map(str, p)) + ")" for p in elements]
    return group_from_table(table, names=names)


def build_group(record: dict) -> Group:
    """Build a Group from a parsed JSON record (table form or generator form)."""
    if not isinstance(record, dict):
        raise ValidationError("group record must be a JSON object")
    if "table" in record:
        names = record.get("names")
        grp = group_from_table(record["table"], names=names)
        if "order" in record and int(record["order"]) != grp.order:
            raise ValidationError(
                f"declared order {record['order']} does not match table size {grp.order}")
        return grp
    if "generators" in record:
        gens = record["generators"]
        if "degree" in record:
            deg = int(record["degree"])
            for g in gens:
                if len(g) != deg:
                    raise ValidationError(f"generator length {len(g)} != degree {deg}")
        return group_from_permutations(gens)
    raise ValidationError("group record needs a 'table' or 'generators' field")


def product_group(g: Group, h: Group) -> Group:
    """Direct product G x H with index (a, b) -> a*|H| + b."""
    ng, nh = g.order, h.order
    table = (g.table[:, None, :, None] * nh + h.table[None, :, None, :]).reshape(
        ng * nh, ng * nh)
    names = None
    if g.names is not None and h.names is not None:
        names = [f"{a}|{b}" for a in g.names for b in h.names]
    return group_from_table(table, names=names)


@dataclass(frozen=True)
class EvenSubgroup:
    """The kernel of a homomorphism G -> Z2, packaged as a group of its own."""

    parent: Group
    group: Group
    elements: np.ndarray          # parent indices, identity first
    positions: np.ndarray         # parent index -> subgroup index (-1 outside)
    index: int                    # 1 or 2
    twist: object | None = None   # restricted twist when one was supplied

    def __post_init__(self):
        self.elements.setflags(write=False)
        self.positions.setflags(write=False)


def even_subgroup(group: Group, phi: Sequence[int] | np.ndarray,
                  twist=None) -> EvenSubgroup:
    """Kernel of phi: G -> Z2 with the multiplication table restricted to it."""
    phi = np.asarray(phi, dtype=np.int64) % 2
    n = group.order
    if phi.shape != (n,):
        raise ValidationError(f"phi must have length {n}")
    hom = (phi[:, None] + phi[None, :] - phi[group.table]) % 2
    if hom.any():
        g, h = map(int, np.argwhere(hom)[0])
        raise ValidationError(f"phi is not a homomorphism: fails at ({g}, {h})")
    elements = np.flatnonzero(phi == 0)
    positions = -np.ones(n, dtype=np.int64)
    positions[elements] = np.arange(len(elements))
    sub_table = positions[group.table[np.ix_(elements, elements)]]
    if (sub_table < 0).any():
        raise ValidationError("kernel of phi is not closed (corrupt table)")
    names = None
    if group.names is not None:
        names = [group.names[int(g)] for g in elements]
    sub = group_from_table(sub_table, names=names)
    restricted = twist.restricted(elements) if twist is not None else None
    return EvenSubgroup(parent=group, group=sub, elements=elements,
                        positions=positions, index=(2 if len(elements) < n else 1),
                        twist=restricted)


def group_to_dict(group: Group) -> dict:
    d = {"order": group.order, "table": group.table.tolist()}
    if group.names is not None:
        d["names"] = list(group.names)
    return d


def group_from_dict(d: dict) -> Group:
    return build_group(d)


def load_group(path: str) -> Group:
    with open(path, "r", encoding="utf-8") as f:
        try:
            record = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from exc
    return build_group(record)


def save_group(group: Group, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(group_to_dict(group), f, indent=1)
        f.write("\n")
