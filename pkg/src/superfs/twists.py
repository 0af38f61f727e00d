"""Gradings and 2-cocycle twists on finite groups, with exact arithmetic.

A twist is a pair (phi, alpha): phi is a homomorphism G -> Z2 stored as a 0/1
vector, alpha is a normalized 2-cocycle with values in Q/Z stored as integer
numerators over one common denominator. Sign-valued twists are the denom-2
case (values in {0, 1/2}).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .groups import Group

__all__ = [
    "Twist",
    "validate_twist",
    "coboundary",
    "shift_by_coboundary",
    "combine_twists",
    "clifford_twist",
    "trivial_group",
    "z2_homomorphisms",
    "h2_representatives",
    "twist_to_dict",
    "twist_from_dict",
    "load_twist",
    "save_twist",
]


@dataclass(frozen=True)
class Twist:
    """(phi, alpha) on a group of a given order; alpha = alpha_num / denom mod 1."""

    phi: np.ndarray
    alpha_num: np.ndarray
    denom: int
    identity_shift: Fraction = Fraction(0)

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=np.int64) % 2
        num = np.asarray(self.alpha_num, dtype=np.int64)
        den = int(self.denom)
        if den <= 0:
            raise ValidationError("denominator must be positive")
        num = num % den
        # reduce to lowest common terms so Z2-ness is detectable
        g = den
        for v in np.unique(num):
            g = gcd(g, int(v))
        if g > 1:
            num = num // g
            den = den // g
        phi.setflags(write=False)
        num.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "alpha_num", num)
        object.__setattr__(self, "denom", den)

    @property
    def order(self) -> int:
        return int(self.phi.shape[0])

    @property
    def is_z2(self) -> bool:
        return self.denom in (1, 2)

    @property
    def ring(self) -> str:
        return "Z2" if self.is_z2 else "Q/Z"

    @property
    def phi_is_trivial(self) -> bool:
        return not self.phi.any()

    @property
    def alpha_is_trivial(self) -> bool:
        return not self.alpha_num.any()

    def alpha_fraction(self, g: int, h: int) -> Fraction:
        return Fraction(int(self.alpha_num[g, h]), self.denom)

    def phases(self) -> np.ndarray:
        """Unit phases omega(g, h) = exp(2 pi i alpha(g, h))."""
        return np.exp(2j * np.pi * self.alpha_num / self.denom)

    def with_phi(self, phi: Sequence[int] | np.ndarray) -> "Twist":
        return Twist(phi=np.asarray(phi), alpha_num=self.alpha_num, denom=self.denom)

    def restricted(self, elements: np.ndarray) -> "Twist":
        idx = np.asarray(elements, dtype=np.int64)
        return Twist(phi=self.phi[idx],
                     alpha_num=self.alpha_num[np.ix_(idx, idx)],
                     denom=self.denom)

    @classmethod
    def zero(cls, order: int) -> "Twist":
        return cls(phi=np.zeros(order, dtype=np.int64),
                   alpha_num=np.zeros((order, order), dtype=np.int64), denom=1)

    @classmethod
    def from_fractions(cls, phi: Sequence[int], alpha: Sequence[Sequence[Fraction]]) -> "Twist":
        fr = [[Fraction(x) for x in row] for row in alpha]
        den = 1
        for row in fr:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        num = np.array([[int(x * den) for x in row] for row in fr], dtype=np.int64)
        return cls(phi=np.asarray(phi), alpha_num=num, denom=den)


def _check_phi(group: Group, phi: np.ndarray) -> None:
    bad = (phi[:, None] + phi[None, :] - phi[group.table]) % 2
    if bad.any():
        g, h = map(int, np.argwhere(bad)[0])
        raise ValidationError(f"phi is not a homomorphism to Z2: fails at ({g}, {h})")


def _check_cocycle(group: Group, num: np.ndarray, den: int) -> None:
    table = group.table
    for g in range(group.order):
        lhs = num[g][:, None] + num[table[g], :]
        rhs = num[:, :] + num[g, table]
        bad = (lhs - rhs) % den
        if bad.any():
            h, k = map(int, np.argwhere(bad)[0])
            raise ValidationError(
                f"alpha violates the 2-cocycle identity at (g, h, k) = ({g}, {h}, {k})")


def validate_twist(group: Group, twist: Twist) -> Twist:
    """Check shapes, phi, and the cocycle identity; normalize alpha at the identity.

    A cocycle with alpha(e, e) = c != 0 is shifted by the coboundary of the map
    supported at e, which removes the constant; the removed constant is reported
    in the returned twist's identity_shift field.
    """
    n = group.order
    if twist.phi.shape != (n,):
        raise ValidationError(f"phi must have length {n}, got {twist.phi.shape}")
    if twist.alpha_num.shape != (n, n):
        raise ValidationError(f"alpha must be {n}x{n}, got {twist.alpha_num.shape}")
    _check_phi(group, twist.phi)
    _check_cocycle(group, twist.alpha_num, twist.denom)
    c = int(twist.alpha_num[0, 0])
    if c == 0:
        if twist.alpha_num[0].any() or twist.alpha_num[:, 0].any():
            raise ValidationError("cocycle is inconsistent on the identity row/column")
        return twist
    beta = np.zeros(n, dtype=np.int64)
    beta[0] = (-c) % twist.denom
    shifted = (twist.alpha_num + coboundary(group, beta, twist.denom)) % twist.denom
    if shifted[0].any() or shifted[:, 0].any():
        raise ValidationError("normalization failed; cocycle identity was inconsistent")
    return Twist(phi=twist.phi, alpha_num=shifted, denom=twist.denom,
                 identity_shift=Fraction(c, twist.denom))


def coboundary(group: Group, beta_num: np.ndarray, den: int) -> np.ndarray:
    """Numerators of d(beta)(g, h) = beta(g) + beta(h) - beta(gh) mod 1."""
    b = np.asarray(beta_num, dtype=np.int64) % den
    return (b[:, None] + b[None, :] - b[group.table]) % den


def shift_by_coboundary(group: Group, twist: Twist, beta_num: np.ndarray,
                        den: int | None = None) -> Twist:
    """Shift alpha by the coboundary of beta (beta given over `den`, default twist.denom)."""
    den = twist.denom if den is None else int(den)
    lcm = twist.denom * den // gcd(twist.denom, den)
    num = twist.alpha_num * (lcm // twist.denom)
    db = coboundary(group, np.asarray(beta_num) * (lcm // den), lcm)
    shifted = Twist(phi=twist.phi, alpha_num=(num + db) % lcm, denom=lcm)
    return validate_twist(group, shifted)


def trivial_group() -> Group:
    from .groups import group_from_table
    return group_from_table([[0]], names=["e"])


def _as_denominator_two(t: Twist) -> np.ndarray:
    if not t.is_z2:
        raise ValidationError("operation requires a sign-valued (Z2) twist")
    return t.alpha_num * (2 // t.denom) % 2


def combine_twists(gt: tuple[Group, Twist], ht: tuple[Group, Twist]) -> tuple[Group, Twist]:
    """Stack two sign-valued twisted groups on the product group.

    phi adds; alpha picks up the cross term phi(g1) phi'(h2) so the two twisted
    algebras supercommute inside the combined one.
    """
    from .groups import product_group
    g, tg = gt
    h, th = ht
    ag = _as_denominator_two(tg)
    ah = _as_denominator_two(th)
    ng, nh = g.order, h.order
    phi = ((tg.phi[:, None] + th.phi[None, :]) % 2).reshape(ng * nh)
    alpha = (ag[:, None, :, None] + ah[None, :, None, :]
             + tg.phi[:, None, None, None] * th.phi[None, None, None, :]) % 2
    combined = Twist(phi=phi, alpha_num=alpha.reshape(ng * nh, ng * nh), denom=2)
    prod = product_group(g, h)
    return prod, validate_twist(prod, combined)


def clifford_twist(n: int) -> tuple[Group, Twist]:
    """The rank-n Clifford twist on (Z2)^n; n = 0 is the trivial theory."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if n == 0:
        g = trivial_group()
        return g, Twist.zero(1)
    from .groups import group_from_table
    z2 = group_from_table([[0, 1], [1, 0]], names=["e", "u"])
    seed = (z2, Twist(phi=np.array([0, 1]), alpha_num=np.zeros((2, 2), dtype=np.int64),
                      denom=1))
    out = seed
    for _ in range(n - 1):
        out = combine_twists(out, seed)
    return out


# ---------------------------------------------------------------------------
# GF(2) linear algebra: homomorphisms to Z2 and H^2(G, Z2) representatives.

def _gf2_rref(rows: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m = rows.copy().astype(np.uint8)
    pivots: list[int] = []
    r = 0
    for c in range(m.shape[1]):
        hit = np.flatnonzero(m[r:, c])
        if hit.size == 0:
            continue
        p = r + int(hit[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
        if r == m.shape[0]:
            break
    return m[:r], pivots


def _gf2_nullspace(rows: np.ndarray, ncols: int) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.eye(ncols, dtype=np.uint8)
    rref, pivots = _gf2_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, c in enumerate(free):
        basis[i, c] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = rref[r, c]
    return basis


class _Gf2Span:
    """Incremental row space over GF(2) used for quotient bases."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = v.copy()
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                v ^= row
        return v

    def insert(self, v: np.ndarray) -> bool:
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        p = int(nz[0])
        for row in self.rows:
            if row[p]:
                row ^= v
        self.rows.append(v)
        self.pivots.append(p)
        return True


def z2_homomorphisms(group: Group) -> list[np.ndarray]:
    """All homomorphisms G -> Z2 as 0/1 vectors, trivial one first."""
    n = group.order
    rows = np.zeros((n * n, n), dtype=np.uint8)
    pairs = np.indices((n, n)).reshape(2, -1)
    idx = np.arange(n * n)
    np.add.at(rows, (idx, pairs[0]), 1)
    np.add.at(rows, (idx, pairs[1]), 1)
    np.add.at(rows, (idx, group.table.reshape(-1)), 1)
    rows %= 2
    rows = np.unique(rows[rows.any(axis=1)], axis=0)
    basis = _gf2_nullspace(rows, n)
    out = []
    for mask in range(1 << basis.shape[0]):
        v = np.zeros(n, dtype=np.uint8)
        for b in range(basis.shape[0]):
            if mask >> b & 1:
                v ^= basis[b]
        out.append(v.astype(np.int64))
    out.sort(key=lambda v: tuple(v))
    return out


def h2_representatives(group: Group) -> list[Twist]:
    """One normalized sign-valued cocycle per class of H^2(G, Z2).

    Solves the cocycle identity over GF(2) on |G|^2 unknowns (with the identity
    row/column pinned to zero) and quotients by the span of the coboundaries
    d(beta)(g,h) = beta(g) + beta(h) + beta(gh), beta(e) = 0. Returned twists
    carry trivial phi; use Twist.with_phi to attach a grading.
    """
    n = group.order
    ncols = n * n
    table = group.table
    g_idx, h_idx, k_idx = np.indices((n, n, n)).reshape(3, -1)
    gh = table[g_idx, h_idx]
    hk = table[h_idx, k_idx]
    rows = np.zeros((g_idx.size, ncols), dtype=np.uint8)
    eq = np.arange(g_idx.size)
    np.add.at(rows, (eq, g_idx * n + h_idx), 1)
    np.add.at(rows, (eq, gh * n + k_idx), 1)
    np.add.at(rows, (eq, h_idx * n + k_idx), 1)
    np.add.at(rows, (eq, g_idx * n + hk), 1)
    rows %= 2
    norm = np.zeros((2 * n, ncols), dtype=np.uint8)
    for g in range(n):
        norm[g, 0 * n + g] = 1
        norm[n + g, g * n + 0] = 1
    rows = np.unique(np.vstack([rows[rows.any(axis=1)], norm]), axis=0)
    cocycles = _gf2_nullspace(rows, ncols)

    span = _Gf2Span(ncols)
    for b in range(1, n):
        is_b = np.zeros(n, dtype=np.uint8)
        is_b[b] = 1
        db = (is_b[:, None] + is_b[None, :] + (table == b)) % 2
        span.insert(db.reshape(-1).astype(np.uint8))
    quotient: list[np.ndarray] = []
    for v in cocycles:
        w = span.reduce(v)
        if w.any():
            span.insert(w)
            quotient.append(w)

    reps = []
    for mask in range(1 << len(quotient)):
        v = np.zeros(ncols, dtype=np.uint8)
        for b in range(len(quotient)):
            if mask >> b & 1:
                v ^= quotient[b]
        t = Twist(phi=np.zeros(n, dtype=np.int64),
                  alpha_num=v.reshape(n, n).astype(np.int64), denom=2)
        reps.append(validate_twist(group, t))
    return reps


# ---------------------------------------------------------------------------
# Serialization: {"phi": [0, 1, ...], "alpha": [["0", "1/2", ...], ...]}

def twist_to_dict(twist: Twist) -> dict:
    alpha = [[str(twist.alpha_fraction(g, h)) for h in range(twist.order)]
             for g in range(twist.order)]
    return {"phi": twist.phi.tolist(), "alpha": alpha}


def twist_from_dict(d: dict) -> Twist:
    if "phi" not in d or "alpha" not in d:
        raise ValidationError("twist record needs 'phi' and 'alpha' fields")
    try:
        alpha = [[Fraction(str(x)) for x in row] for row in d["alpha"]]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational in alpha: {exc}") from exc
    for row in alpha:
        for x in row:
            if not 0 <= x < 1:
                raise ValidationError(f"alpha value {x} outside [0, 1)")
    return Twist.from_fractions(d["phi"], alpha)


def load_twist(path: str) -> Twist:
    with open(path, "r", encoding="utf-8") as f:
        try:
            record = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from exc
    return twist_from_dict(record)


def save_twist(twist: Twist, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(twist_to_dict(twist), f, indent=1)
        f.write("\n")
