"""Twisted group superalgebras and their supermodule classification.

C[G]_{phi,alpha} has basis e_g with e_g e_h = omega(g, h) e_{gh}, where
omega = exp(2 pi i alpha), and is Z2-graded by phi. The regular representation
is split into irreducible blocks by averaging random Hermitian matrices into
the commutant; blocks are paired under the parity twist into supermodules of
type M (q = 0) or Q (q = 1). For sign-valued twists, each real supermodule is
pinned to one of the eight real graded division classes through a *-fixed
special element u with u^2 = +-1, and the super Frobenius-Schur indicator

    S(rho) = (1 / (sqrt(2)^q |G|)) sum_g i^{phi(g)} (-1)^{alpha(g,g)} chi(g^2)

is verified to land on exp(2 pi i bw / 8) for that class (or 0 when complex).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DecompositionError, SnapError, ValidationError
from .groups import EvenSubgroup, Group, even_subgroup
from .twists import Twist, validate_twist

__all__ = [
    "TwistedGroupAlgebra",
    "AlgebraElement",
    "UngradedIrrep",
    "Supermodule",
    "ClassificationReport",
    "decompose_regular",
    "assemble_supermodules",
    "special_element",
    "ordinary_fs",
    "gow_indicator",
    "super_fs",
    "bw_from_parts",
    "bw_class",
    "classify",
    "verify_main_theorem",
    "snap_indicator",
    "snap_eighth_root",
    "eighth_root",
    "snapped_string",
    "classification_to_dict",
]

BW_TABLE = {
    (0, +1, "R"): 0,
    (0, -1, "R"): 2,
    (0, +1, "H"): 4,
    (0, -1, "H"): 6,
    (1, +1, "R"): 1,
    (1, -1, "H"): 3,
    (1, +1, "H"): 5,
    (1, -1, "R"): 7,
}


class TwistedGroupAlgebra:
    """C[G]_{phi,alpha} with unit phases omega = exp(2 pi i alpha)."""

    def __init__(self, group: Group, twist: Twist | None = None, validate: bool = True):
        if twist is None:
            twist = Twist.zero(group.order)
        if validate:
            twist = validate_twist(group, twist)
        self.group = group
        self.twist = twist
        self.order = group.order
        self.phases = twist.phases()
        self.phases.setflags(write=False)

    @property
    def is_z2(self) -> bool:
        return self.twist.is_z2

    def diagonal_signs(self) -> np.ndarray:
        """(-1)^{alpha(g, g)} for sign-valued twists."""
        if not self.is_z2:
            raise ValidationError("diagonal signs need a sign-valued twist")
        return np.real(np.diagonal(self.phases)).round().astype(np.int64)

    def element(self, coeffs: Sequence[complex] | np.ndarray) -> "AlgebraElement":
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != (self.order,):
            raise ValidationError(f"coefficient vector must have length {self.order}")
        return AlgebraElement(self, c)

    def basis(self, g: int) -> "AlgebraElement":
        c = np.zeros(self.order, dtype=complex)
        c[g] = 1.0
        return AlgebraElement(self, c)

    def unit(self) -> "AlgebraElement":
        return self.basis(0)

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros(self.order, dtype=complex)
        np.add.at(out, self.group.table, np.outer(a, b) * self.phases)
        return out

    def star(self, a: np.ndarray) -> np.ndarray:
        """The conjugate-linear automorphism fixing each e_g (Z2 twists only)."""
        if not self.is_z2:
            raise ValidationError(
                "* is an algebra map only when the structure constants are real")
        return np.conj(a)

    def left_regular(self, g: int) -> np.ndarray:
        m = np.zeros((self.order, self.order), dtype=complex)
        m[self.group.table[g], np.arange(self.order)] = self.phases[g]
        return m

    # row/column tricks: act by L_g or L_g^dagger without materializing it
    def _left_apply(self, g: int, x: np.ndarray) -> np.ndarray:
        out = np.empty_like(x)
        out[self.group.table[g]] = self.phases[g][:, None] * x
        return out

    def _right_apply_dagger(self, g: int, x: np.ndarray) -> np.ndarray:
        out = np.empty_like(x)
        out[:, self.group.table[g]] = x * self.phases[g].conj()[None, :]
        return out


class AlgebraElement:
    """An element sum_g c_g e_g of a twisted group algebra."""

    def __init__(self, algebra: TwistedGroupAlgebra, coeffs: np.ndarray):
        self.algebra = algebra
        self.coeffs = np.asarray(coeffs, dtype=complex)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise ValidationError("cannot multiply elements of different algebras")
            return AlgebraElement(self.algebra, self.algebra.multiply(self.coeffs, other.coeffs))
        return AlgebraElement(self.algebra, self.coeffs * other)

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, self.coeffs * scalar)

    def __add__(self, other: "AlgebraElement"):
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement"):
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def star(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.star(self.coeffs))

    def allclose(self, other: "AlgebraElement", tol: float = 1e-8) -> bool:
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) < tol)

    def __repr__(self):
        return f"AlgebraElement({self.coeffs!r})"


@dataclass
class UngradedIrrep:
    """An irreducible module of the underlying ungraded twisted algebra."""

    matrices: np.ndarray   # shape (|G|, d, d), unitary
    character: np.ndarray  # shape (|G|,)
    dim: int
    multiplicity: int


@dataclass
class Supermodule:
    """An irreducible supermodule, grading rotated to diag(+1..., -1...).

    Structural fields are set by assemble_supermodules; the invariant fields
    (reality, indicators, special-element sign, BW class, checks) are filled
    in by classify.
    """

    q_type: int
    dims: tuple[int, int]
    matrices: np.ndarray
    grading: np.ndarray
    character: np.ndarray
    constituents: tuple[int, ...]
    solve_targets: dict = field(repr=False, default_factory=dict)
    reality: str | None = None
    chi0: np.ndarray | None = None
    s_ordinary: int | None = None
    eta_gow: int | None = None
    u_sign: int | None = None
    u_element: AlgebraElement | None = None
    fs_raw: complex | None = None
    fs_k: int | None = None
    bw: int | str | None = None
    checks: dict | None = None

    @property
    def dim(self) -> int:
        return self.dims[0] + self.dims[1]

    @property
    def qdim(self) -> float:
        return self.dim / math.sqrt(2) ** self.q_type


def _random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (x + x.conj().T) / 2


def _cluster(eigvals: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(eigvals)
    clusters = [[order[0]]]
    for i in order[1:]:
        if eigvals[i] - eigvals[clusters[-1][-1]] <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return [np.array(c) for c in clusters]


def decompose_regular(algebra: TwistedGroupAlgebra, seed: int = 0, cap: int = 96,
                      cluster_tol: float = 1e-8, max_rounds: int = 8) -> list[UngradedIrrep]:
    """Split the twisted regular representation into ungraded irreducibles.

    Random Hermitian matrices are averaged over twisted conjugation to land in
    the commutant; eigenspace splitting recurses until the character norm
    certifies irreducibility. Deterministic for a fixed seed. Returns one
    representative per isomorphism class (characters separate classes) with
    multiplicity bookkeeping.
    """
    n = algebra.order
    if n > cap:
        raise ValidationError(f"group order {n} exceeds the configured cap {cap}")
    rng = np.random.default_rng(seed)
    table = algebra.group.table
    leaves: list[tuple[np.ndarray, np.ndarray]] = []  # (matrices, character)

    def root_character() -> np.ndarray:
        chi = np.zeros(n, dtype=complex)
        chi[0] = float(n)
        return chi

    def root_average(x: np.ndarray) -> np.ndarray:
        acc = np.zeros((n, n), dtype=complex)
        for g in range(n):
            acc += algebra._right_apply_dagger(g, algebra._left_apply(g, x))
        return acc / n

    def child_matrices(q: np.ndarray) -> np.ndarray:
        d = q.shape[1]
        mats = np.empty((n, d, d), dtype=complex)
        qh = q.conj().T
        for g in range(n):
            mats[g] = qh @ algebra._left_apply(g, q)
        return mats

    def process(q: np.ndarray | None, depth: int = 0) -> None:
        if depth > 32:
            raise DecompositionError("recursion depth exceeded; re-seed and retry")
        if q is None:
            chi = root_character()
            d = n
        else:
            mats = child_matrices(q)
            chi = np.trace(mats, axis1=1, axis2=2)
            d = q.shape[1]
        norm = float(np.real(np.vdot(chi, chi))) / n
        if norm < 1 + 1e-6:
            if norm < 1 - 1e-6:
                raise DecompositionError(f"character norm {norm} below 1")
            if q is None:
                mats = child_matrices(np.eye(n, dtype=complex))
            leaves.append((mats, chi))
            return
        for _ in range(max_rounds):
            x = _random_hermitian(rng, d)
            if q is None:
                t = root_average(x)
            else:
                t = np.einsum("gij,jk,glk->il", mats, x, mats.conj()) / n
            eigvals, vecs = np.linalg.eigh(t)
            clusters = _cluster(eigvals, cluster_tol)
            if len(clusters) < 2:
                continue
            for c in clusters:
                basis = vecs[:, c]
                process(basis if q is None else q @ basis, depth + 1)
            return
        raise DecompositionError(
            "eigenvalue clustering stayed ambiguous at tolerance; re-seed and retry")

    process(None)

    # deduplicate by character
    classes: list[UngradedIrrep] = []
    for mats, chi in leaves:
        found = None
        for irr in classes:
            if np.max(np.abs(irr.character - chi)) < 1e-6:
                found = irr
                break
        if found is None:
            classes.append(UngradedIrrep(matrices=mats, character=chi,
                                         dim=mats.shape[1], multiplicity=1))
        else:
            found.multiplicity += 1
    total = sum(irr.dim * irr.multiplicity for irr in classes)
    if total != n:
        raise DecompositionError(f"block dimensions sum to {total}, expected {n}")
    for irr in classes:
        if irr.multiplicity != irr.dim:
            raise DecompositionError(
                f"irrep of dim {irr.dim} appeared {irr.multiplicity} times in the regular "
                "representation; expected multiplicity equal to its dimension")
        _verify_irrep(algebra, irr, rng)
    classes.sort(key=lambda irr: (irr.dim,
                                  tuple(np.round(irr.character.real, 8)),
                                  tuple(np.round(irr.character.imag, 8))))
    return classes


def _verify_irrep(algebra: TwistedGroupAlgebra, irr: UngradedIrrep,
                  rng: np.random.Generator, samples: int = 64, tol: float = 1e-8) -> None:
    n = algebra.order
    mats = irr.matrices
    eye = np.eye(irr.dim)
    for g in rng.choice(n, size=min(n, 16), replace=False):
        if np.max(np.abs(mats[g] @ mats[g].conj().T - eye)) > tol:
            raise DecompositionError(f"block for element {g} is not unitary")
    gs = rng.integers(0, n, size=samples)
    hs = rng.integers(0, n, size=samples)
    for g, h in zip(gs, hs):
        lhs = mats[g] @ mats[h]
        rhs = algebra.phases[g, h] * mats[algebra.group.table[g, h]]
        if np.max(np.abs(lhs - rhs)) > tol:
            raise DecompositionError(f"product rule fails at ({g}, {h})")


def assemble_supermodules(irreps: list[UngradedIrrep], algebra: TwistedGroupAlgebra,
                          seed: int = 0, max_rounds: int = 8) -> list[Supermodule]:
    """Pair ungraded irreducibles under the parity twist into supermodules.

    chi^sigma(g) = (-1)^{phi(g)} chi(g). A fixed point gives a type-M (q = 0)
    supermodule graded by the normalized intertwiner; a two-element orbit gives
    a type-Q (q = 1) supermodule on V + V with odd elements acting
    off-diagonally.
    """
    rng = np.random.default_rng(seed ^ 0x5F5)
    n = algebra.order
    signs = np.where(algebra.twist.phi == 1, -1.0, 1.0)
    odd = algebra.twist.phi == 1
    chars = [irr.character for irr in irreps]

    def partner(i: int) -> int:
        target = signs * chars[i]
        for j, chj in enumerate(chars):
            if np.max(np.abs(chj - target)) < 1e-6:
                return j
        raise DecompositionError(
            f"no parity partner for irrep {i}; upstream decomposition is incomplete")

    sups: list[Supermodule] = []
    done: set[int] = set()
    for i in range(len(irreps)):
        if i in done:
            continue
        j = partner(i)
        if j == i:
            done.add(i)
            sups.append(_fixed_point_supermodule(irreps[i], i, signs, odd, rng,
                                                 max_rounds))
        else:
            done.update((i, j))
            a, b = (i, j) if i < j else (j, i)
            sups.append(_orbit_supermodule(irreps[a], a, b, odd, n))
    for sup in sups:
        _check_grading(sup, odd)
    return sups


def _fixed_point_supermodule(irr: UngradedIrrep, index: int, signs: np.ndarray,
                             odd: np.ndarray, rng: np.random.Generator,
                             max_rounds: int) -> Supermodule:
    mats = irr.matrices
    d = irr.dim
    n = mats.shape[0]
    p = None
    for _ in range(max_rounds):
        x = _random_hermitian(rng, d)
        u = np.einsum("g,gij,jk,glk->il", signs, mats, x, mats.conj()) / n
        smin = np.linalg.svd(u, compute_uv=False)[-1]
        if smin > 1e-6 * max(1.0, np.linalg.norm(u, 2)):
            lam = np.trace(u @ u) / d
            if np.max(np.abs(u @ u - lam * np.eye(d))) > 1e-8 * max(1.0, abs(lam)):
                raise DecompositionError("parity intertwiner does not square to a scalar")
            p = u / np.sqrt(complex(lam))
            break
    if p is None:
        raise DecompositionError("could not build an invertible parity intertwiner; re-seed")
    if np.max(np.abs(p - p.conj().T)) > 1e-8:
        raise DecompositionError("normalized parity intertwiner is not Hermitian")
    # P is defined up to sign; tr P = 0 whenever odd elements exist, and with
    # none the even part must be the whole module
    if np.trace(p).real < -1e-8:
        p = -p
    eigvals, vecs = np.linalg.eigh(p)
    order = np.argsort(-eigvals)
    if np.max(np.abs(np.abs(eigvals) - 1)) > 1e-8:
        raise DecompositionError("parity intertwiner eigenvalues are not +-1")
    u_basis = vecs[:, order]
    rotated = np.einsum("ai,gab,bj->gij", u_basis.conj(), mats, u_basis)
    d0 = int(np.sum(eigvals > 0))
    grading = np.concatenate([np.ones(d0), -np.ones(d - d0)])
    return Supermodule(q_type=0, dims=(d0, d - d0), matrices=rotated, grading=grading,
                       character=irr.character.copy(), constituents=(index,),
                       solve_targets={index: p})


def _orbit_supermodule(irr: UngradedIrrep, index: int, partner_index: int,
                       odd: np.ndarray, n: int) -> Supermodule:
    d = irr.dim
    big = np.zeros((n, 2 * d, 2 * d), dtype=complex)
    for g in range(n):
        if odd[g]:
            big[g, :d, d:] = irr.matrices[g]
            big[g, d:, :d] = irr.matrices[g]
        else:
            big[g, :d, :d] = irr.matrices[g]
            big[g, d:, d:] = irr.matrices[g]
    grading = np.concatenate([np.ones(d), -np.ones(d)])
    character = np.trace(big, axis1=1, axis2=2)
    eye = np.eye(d, dtype=complex)
    return Supermodule(q_type=1, dims=(d, d), matrices=big, grading=grading,
                       character=character, constituents=(index, partner_index),
                       solve_targets={index: eye, partner_index: -eye})


def _check_grading(sup: Supermodule, odd: np.ndarray, tol: float = 1e-8) -> None:
    p = sup.grading
    for g in range(sup.matrices.shape[0]):
        want = -sup.matrices[g] if odd[g] else sup.matrices[g]
        got = p[:, None] * sup.matrices[g] * p[None, :]
        if np.max(np.abs(got - want)) > tol:
            raise DecompositionError(f"grading consistency fails on element {g}")
        if odd[g] and abs(sup.character[g]) > tol:
            raise DecompositionError(f"character of a supermodule must vanish on odd {g}")


def special_element(algebra: TwistedGroupAlgebra, sup: Supermodule,
                    irreps: list[UngradedIrrep]) -> tuple[AlgebraElement, int]:
    """The *-fixed element with u^2 = +-1 supported on the supermodule's summand.

    Found by a linear solve matching the target matrix on the constituent
    blocks and zero on every other block, then rescaled so that u* = u; the
    sign of u^2 is the second two-fold division of the real classification.
    """
    if not algebra.is_z2:
        raise ValidationError("special elements need a sign-valued twist")
    chi = sup.character
    if np.max(np.abs(np.conj(chi) - chi)) > 1e-6:
        raise ValidationError("complex supermodule has no *-fixed special element")
    n = algebra.order
    rows = np.concatenate(
        [irr.matrices.transpose(1, 2, 0).reshape(irr.dim * irr.dim, n) for irr in irreps],
        axis=0)
    rhs = np.zeros(n, dtype=complex)
    offset = 0
    for r, irr in enumerate(irreps):
        block = irr.dim * irr.dim
        if r in sup.solve_targets:
            rhs[offset:offset + block] = sup.solve_targets[r].reshape(-1)
        offset += block
    coeffs = np.linalg.solve(rows, rhs)
    if np.max(np.abs(rows @ coeffs - rhs)) > 1e-8 * max(1.0, np.max(np.abs(rhs))):
        raise DecompositionError("special-element solve left a large residual")
    k = int(np.argmax(np.abs(coeffs)))
    lam = np.conj(coeffs[k]) / coeffs[k]
    if np.max(np.abs(np.conj(coeffs) - lam * coeffs)) > 1e-6 * np.max(np.abs(coeffs)):
        raise DecompositionError("special element is not a *-eigenvector; summand not real")
    coeffs = coeffs * cmath.exp(1j * cmath.phase(lam) / 2)
    if np.max(np.abs(coeffs.imag)) > 1e-8 * max(1.0, np.max(np.abs(coeffs))):
        raise DecompositionError("*-fixed special element should have real coefficients")
    coeffs = coeffs.real.astype(complex)
    acted = np.einsum("g,gij->ij", coeffs, sup.matrices)
    square = acted @ acted
    nu = np.trace(square).real / sup.dim
    if np.max(np.abs(square - nu * np.eye(sup.dim))) > 1e-8 * max(1.0, abs(nu)):
        raise DecompositionError("special element square is not scalar on its block")
    sign = snap_indicator(nu)
    if sign == 0:
        raise SnapError(f"special element square {nu} is not +-1")
    # u lives in the even part for q = 0 and in the odd part for q = 1
    parity = algebra.twist.phi == (1 if sup.q_type == 1 else 0)
    stray = np.max(np.abs(coeffs[~parity])) if (~parity).any() else 0.0
    if stray > 1e-8 * max(1.0, np.max(np.abs(coeffs))):
        raise DecompositionError("special element has support of the wrong parity")
    return algebra.element(coeffs), sign


def snap_indicator(x: complex | float, tol: float = 1e-6) -> int:
    """Snap a value to {-1, 0, +1}."""
    x = complex(x)
    for target in (-1, 0, 1):
        if abs(x - target) < tol:
            return target
    raise SnapError(f"value {x} is not within {tol} of -1, 0, or +1")


def eighth_root(k: int) -> complex:
    return cmath.exp(2j * cmath.pi * k / 8)


def snap_eighth_root(z: complex, tol: float = 1e-6) -> int | None:
    """Snap to 0 (returned as None) or to the exponent k of e^{2 pi i k/8}."""
    if abs(z) < tol:
        return None
    for k in range(8):
        if abs(z - eighth_root(k)) < tol:
            return k
    raise SnapError(f"value {z} is not within {tol} of 0 or any eighth root of unity")


def snapped_string(k: int | None) -> str:
    return "0" if k is None else f"e^{{2·pi·i·{k}/8}}"


def ordinary_fs(character: np.ndarray, algebra: TwistedGroupAlgebra) -> int:
    """Twisted Frobenius-Schur indicator (1/|G|) sum_g (-1)^{alpha(g,g)} chi(g^2)."""
    signs = algebra.diagonal_signs()
    squares = algebra.group.table[np.arange(algebra.order), np.arange(algebra.order)]
    val = np.sum(signs * np.asarray(character)[squares]) / algebra.order
    return snap_indicator(val)


def gow_indicator(chi0: np.ndarray, sub: EvenSubgroup,
                  algebra: TwistedGroupAlgebra) -> int:
    """(1/|G0|) sum over odd g of (-1)^{alpha(g,g)} chi0(g^2); 0 when phi is trivial.

    chi0 is indexed by subgroup position; squares of odd elements are even.
    """
    if sub.index == 1:
        return 0
    signs = algebra.diagonal_signs()
    total = 0.0 + 0.0j
    for g in range(algebra.order):
        if sub.positions[g] >= 0:
            continue
        sq = algebra.group.table[g, g]
        pos = int(sub.positions[sq])
        if pos < 0:
            raise ValidationError("square of an odd element escaped the even subgroup")
        total += signs[g] * chi0[pos]
    return snap_indicator(total / sub.group.order)


def super_fs(sup: Supermodule, algebra: TwistedGroupAlgebra) -> complex:
    """Raw super Frobenius-Schur indicator of a supermodule (before snapping)."""
    if not algebra.is_z2:
        raise ValidationError("the super indicator needs a sign-valued twist")
    n = algebra.order
    signs = algebra.diagonal_signs()
    phi = algebra.twist.phi
    squares = algebra.group.table[np.arange(n), np.arange(n)]
    total = np.sum((1j ** phi) * signs * sup.character[squares])
    return complex(total / (math.sqrt(2) ** sup.q_type * n))


def bw_from_parts(q: int, u_sign: int, division: str) -> int:
    """Z8 class from (q, sign of u^2, strictly-real vs quaternionic division)."""
    key = (q, u_sign, division)
    if key not in BW_TABLE:
        raise ValidationError(f"no real graded division class for {key}")
    return BW_TABLE[key]


def bw_class(sup: Supermodule) -> int | str:
    if sup.reality is None:
        raise ValidationError("supermodule has not been classified yet")
    if sup.reality == "complex":
        return "complex"
    assert sup.bw is not None
    return sup.bw


@dataclass
class ClassificationReport:
    """Everything classify establishes about one twisted group superalgebra."""

    order: int
    phi: tuple[int, ...]
    alpha_ring: str
    alpha_is_trivial: bool
    seed: int
    supermodules: list[Supermodule]
    dim_sum: float
    dim_sum_ok: bool
    all_pass: bool


def classify(algebra: TwistedGroupAlgebra, seed: int = 0, cap: int = 96,
             tol: float = 1e-6) -> ClassificationReport:
    """Decompose, assemble supermodules, and verify the indicator identities.

    Per supermodule: reality, the ordinary indicator of the even restriction,
    the Gow indicator, the super indicator (raw and snapped), the special
    element's sign, the BW class from the three two-fold divisions, and three
    checks: snapped indicator against the class, the Gow identity, and the
    even/odd regrouping of the defining sum. Never raises on a failed check;
    failures are recorded in the report.
    """
    if not algebra.is_z2:
        raise ValidationError("classification requires a sign-valued twist")
    irreps = decompose_regular(algebra, seed=seed, cap=cap)
    sups = assemble_supermodules(irreps, algebra, seed=seed)
    group = algebra.group
    sub = even_subgroup(group, algebra.twist.phi, twist=algebra.twist)
    sub_algebra = TwistedGroupAlgebra(sub.group, sub.twist, validate=False)
    n = algebra.order
    signs = algebra.diagonal_signs()
    even_mask = algebra.twist.phi == 0
    squares = group.table[np.arange(n), np.arange(n)]

    all_ok = True
    for sup in sups:
        chi = sup.character
        sup.reality = "real" if np.max(np.abs(np.conj(chi) - chi)) < tol else "complex"
        d0 = sup.dims[0]
        sup.chi0 = np.array([np.trace(sup.matrices[g][:d0, :d0])
                             for g in sub.elements])
        sup.s_ordinary = ordinary_fs(sup.chi0, sub_algebra)
        sup.eta_gow = gow_indicator(sup.chi0, sub, algebra)
        sup.fs_raw = super_fs(sup, algebra)
        sup.fs_k = snap_eighth_root(sup.fs_raw, tol)

        if sup.reality == "real":
            sup.u_element, sup.u_sign = special_element(algebra, sup, irreps)
            if sup.q_type == 0:
                division = "R" if ordinary_fs(chi, algebra) == 1 else "H"
            else:
                if sup.s_ordinary == 0:
                    raise SnapError("even restriction of a real q=1 supermodule "
                                    "has vanishing indicator")
                division = "R" if sup.s_ordinary == 1 else "H"
            sup.bw = bw_from_parts(sup.q_type, sup.u_sign, division)
            theorem_ok = (sup.fs_k is not None
                          and abs(sup.fs_raw - eighth_root(sup.bw)) < tol)
        else:
            sup.bw = "complex"
            theorem_ok = sup.fs_k is None

        scale = math.sqrt(2) ** sup.q_type
        gow_ok = abs(sup.fs_raw - (sup.s_ordinary + 1j * sup.eta_gow) / scale) < tol
        even_sum = np.sum(signs[even_mask] * chi[squares[even_mask]]) / n
        full_sum = np.sum(signs * chi[squares]) / n
        rewrite = (even_sum + 1j * (full_sum - even_sum)) / scale
        rewrite_ok = abs(sup.fs_raw - rewrite) < tol
        sup.checks = {"theorem": theorem_ok, "gow_identity": gow_ok,
                      "rewrite_identity": rewrite_ok}
        all_ok = all_ok and theorem_ok and gow_ok and rewrite_ok

    dim_sum = sum(sup.dim ** 2 / 2 ** sup.q_type for sup in sups)
    dim_ok = abs(dim_sum - n) < tol
    return ClassificationReport(order=n, phi=tuple(int(x) for x in algebra.twist.phi),
                                alpha_ring=algebra.twist.ring,
                                alpha_is_trivial=algebra.twist.alpha_is_trivial,
                                seed=seed, supermodules=sups, dim_sum=dim_sum,
                                dim_sum_ok=dim_ok, all_pass=all_ok and dim_ok)


def verify_main_theorem(algebra: TwistedGroupAlgebra, seed: int = 0,
                        cap: int = 96) -> ClassificationReport:
    """Classify and record, per supermodule, whether the snapped indicator
    matches its Z8 class and both indicator identities hold."""
    return classify(algebra, seed=seed, cap=cap)


def classification_to_dict(report: ClassificationReport) -> dict:
    sups = []
    for sup in report.supermodules:
        checks = {k: ("pass" if v else "fail") for k, v in (sup.checks or {}).items()}
        sups.append({
            "dims": [int(sup.dims[0]), int(sup.dims[1])],
            "q": int(sup.q_type),
            "reality": sup.reality,
            "S_ordinary": sup.s_ordinary,
            "eta_gow": sup.eta_gow,
            "u_sign": sup.u_sign,
            "S_super": {"snapped": snapped_string(sup.fs_k),
                        "raw": [float(sup.fs_raw.real), float(sup.fs_raw.imag)]},
            "bw_class": sup.bw,
            "qdim": float(sup.qdim),
            "checks": checks,
        })
    return {
        "order": report.order,
        "phi": list(report.phi),
        "alpha_ring": report.alpha_ring,
        "alpha_is_trivial": report.alpha_is_trivial,
        "seed": report.seed,
        "dim_check": {"sum": float(report.dim_sum), "ok": report.dim_sum_ok},
        "all_pass": report.all_pass,
        "supermodules": sups,
    }
