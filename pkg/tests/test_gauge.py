"""Partition-function crosschecks and homomorphism enumeration."""

from fractions import Fraction

import numpy as np
import pytest

from superfs import (
    BudgetExceededError,
    TheoryData,
    Twist,
    ValidationError,
    catalog_group,
    clifford_twist,
    crosscheck,
    cyclic,
    enumerate_homs,
    group_from_table,
    nonorientable,
    orientable,
    partition_lhs,
    presentation,
    product_group,
    report_from_dict,
    report_to_dict,
    validate_twist,
    z2_homomorphisms,
)
from superfs.gauge import _hom_phases

from helpers import brute_force_homs


def test_theory_family_validation():
    g, t = clifford_twist(1)
    with pytest.raises(ValidationError, match="parity"):
        TheoryData(g, t, "oriented")
    with pytest.raises(ValidationError, match="family"):
        TheoryData(g, t, "pin+")
    g3 = cyclic(3)
    a = [[Fraction((i * j) % 3, 3) for j in range(3)] for i in range(3)]
    t3 = Twist.from_fractions([0] * 3, a)
    with pytest.raises(ValidationError, match="sign-valued"):
        TheoryData(g3, t3, "unoriented")
    TheoryData(g3, t3, "oriented")  # fine: Q/Z twists are oriented-legal
    th = TheoryData(g, t, "spin")
    with pytest.raises(ValidationError, match="surfaces"):
        th.require_surface(nonorientable(1))


def test_enumerate_homs_matches_brute_force():
    g = catalog_group("s3")
    pres = presentation(orientable(1))
    homs = enumerate_homs(pres, g)
    oracle = brute_force_homs(g.table, g.inverses, pres.word, 2)
    assert [tuple(r) for r in homs] == oracle
    assert len(oracle) == 18  # commuting pairs in S3
    pres2 = presentation(nonorientable(2))
    homs2 = enumerate_homs(pres2, g)
    assert [tuple(r) for r in homs2] == brute_force_homs(
        g.table, g.inverses, pres2.word, 2)


def test_enumerate_homs_sphere_and_partition_hook():
    g = catalog_group("d4")
    assert enumerate_homs(presentation(orientable(0)), g).shape == (1, 0)
    pres = presentation(orientable(1))
    whole = enumerate_homs(pres, g)
    parts = np.concatenate([enumerate_homs(pres, g, first=f)
                            for f in range(g.order)])
    assert np.array_equal(whole, parts)


def test_enumerate_homs_budget():
    g = catalog_group("a4")
    pres = presentation(orientable(2))
    with pytest.raises(BudgetExceededError) as err:
        enumerate_homs(pres, g, budget=1000)
    assert err.value.required == 12 ** 4
    # splitting on the first generator shrinks the grid by a factor of |G|
    assert enumerate_homs(pres, g, budget=2000, first=0).shape[1] == 4


def test_budget_env_var(monkeypatch):
    g = catalog_group("a4")
    monkeypatch.setenv("SUPERFS_BUDGET", "100")
    with pytest.raises(BudgetExceededError):
        enumerate_homs(presentation(orientable(1)), g)
    monkeypatch.delenv("SUPERFS_BUDGET")
    enumerate_homs(presentation(orientable(1)), g)


def test_oriented_torus_counts_irreps():
    for name, count in (("s3", 3), ("q8", 5), ("d4", 5), ("a4", 4), ("z6", 6)):
        g = catalog_group(name)
        th = TheoryData(g, Twist.zero(g.order), "oriented")
        r = crosscheck(th, orientable(1))[0]
        assert r.verdict == "PASS"
        assert r.lhs == pytest.approx(count, abs=1e-9)


def test_oriented_sphere_is_inverse_order():
    g = catalog_group("d4")
    th = TheoryData(g, Twist.zero(8), "oriented")
    r = crosscheck(th, orientable(0))[0]
    assert r.lhs == pytest.approx(1 / 8)
    assert r.verdict == "PASS"


def test_oriented_hom_count_integrality():
    # with trivial cocycle, |G| * Z counts homomorphisms exactly
    g = catalog_group("s3")
    th = TheoryData(g, Twist.zero(6), "oriented")
    for genus in (0, 1, 2):
        r = crosscheck(th, orientable(genus))[0]
        n_hom = (r.lhs * g.order).real
        assert n_hom == pytest.approx(round(n_hom), abs=1e-6)
        assert round(n_hom) == r.hom_count


def test_unoriented_klein_bottle_values():
    g2 = catalog_group("z2")
    r = crosscheck(TheoryData(g2, Twist.zero(2), "unoriented"), nonorientable(2))[0]
    assert r.lhs == pytest.approx(2) and r.verdict == "PASS"
    g3 = cyclic(3)
    r = crosscheck(TheoryData(g3, Twist.zero(3), "unoriented"), nonorientable(2))[0]
    assert r.lhs == pytest.approx(1) and r.verdict == "PASS"


def test_unoriented_rejects_orientable_surface():
    g = cyclic(3)
    th = TheoryData(g, Twist.zero(3), "unoriented")
    with pytest.raises(ValidationError, match="surfaces"):
        crosscheck(th, orientable(1))


def test_projective_plane_nontrivial_alpha():
    # Heisenberg twist on Z2xZ2: only the identity squares to e with weight 1,
    # the twisted indicator sum still matches
    g = product_group(cyclic(2), cyclic(2))
    alpha = [[Fraction((i // 2) * (j % 2), 2) for j in range(4)] for i in range(4)]
    t = validate_twist(g, Twist.from_fractions([0] * 4, alpha))
    th = TheoryData(g, t, "unoriented")
    r = crosscheck(th, nonorientable(1))[0]
    assert r.verdict == "PASS"
    # direct two-sided oracle: (1/4) sum over g^2=e of (-1)^{alpha(g,g)}
    diag = [t.alpha_fraction(i, i) for i in range(4)]
    lhs_oracle = sum((-1.0) ** (2 * float(d)) * 0 + np.exp(2j * np.pi * float(d))
                     for i, d in enumerate(diag) if g.table[i, i] == 0) / 4
    assert r.lhs == pytest.approx(lhs_oracle)


def test_spin_torus_tracks_arf():
    g, t = clifford_twist(1)
    th = TheoryData(g, t, "spin")
    for r in crosscheck(th, orientable(1)):
        assert r.verdict == "PASS"
        assert r.lhs == pytest.approx((-1.0) ** r.invariant[1])


def test_spin_trivial_phi_reduces_to_oriented():
    g = catalog_group("s3")
    t = Twist.zero(6)
    z_oriented = crosscheck(TheoryData(g, t, "oriented"), orientable(1))[0].lhs
    for r in crosscheck(TheoryData(g, t, "spin"), orientable(1)):
        assert r.lhs == pytest.approx(z_oriented)
        assert r.verdict == "PASS"


def test_pin_minus_projective_plane_cl1():
    g, t = clifford_twist(1)
    reports = crosscheck(TheoryData(g, t, "pin-"), nonorientable(1))
    got = {r.invariant[1]: r.lhs for r in reports}
    assert got[1] == pytest.approx(0.5 + 0.5j)
    assert got[7] == pytest.approx(0.5 - 0.5j)
    assert all(r.verdict == "PASS" for r in reports)


def test_pin_minus_average_projects_onto_even_holonomy():
    g, t = clifford_twist(1)
    th = TheoryData(g, t, "pin-")
    reports = crosscheck(th, nonorientable(2))
    avg = sum(r.lhs for r in reports) / len(reports)
    pres = presentation(nonorientable(2))
    homs = enumerate_homs(pres, g)
    keep = np.all(t.phi[homs] == 0, axis=1)
    restricted = np.sum(_hom_phases(homs[keep], pres, g, t)) / g.order
    assert avg == pytest.approx(restricted)


def test_partition_lhs_structure_flag_consistency():
    g, t = clifford_twist(1)
    with pytest.raises(ValidationError, match="structure"):
        partition_lhs(TheoryData(g, t, "spin"), orientable(1))
    g3 = cyclic(3)
    th = TheoryData(g3, Twist.zero(3), "oriented")
    from superfs import refinement
    with pytest.raises(ValidationError, match="no structure"):
        partition_lhs(th, orientable(1), refinement(orientable(1), [0, 0]))


def test_relabeling_invariance():
    # conjugating the multiplication table by a permutation fixes Z
    g = catalog_group("s3")
    rng = np.random.default_rng(4)
    perm = np.concatenate([[0], 1 + rng.permutation(5)])
    t2 = np.empty_like(g.table)
    for a in range(6):
        for b in range(6):
            t2[perm[a], perm[b]] = perm[g.table[a, b]]
    g2 = group_from_table(t2)
    for surface in (orientable(1), orientable(2)):
        za = crosscheck(TheoryData(g, Twist.zero(6), "oriented"), surface)[0].lhs
        zb = crosscheck(TheoryData(g2, Twist.zero(6), "oriented"), surface)[0].lhs
        assert za == pytest.approx(zb)


def test_report_roundtrip():
    g, t = clifford_twist(1)
    r = crosscheck(TheoryData(g, t, "pin-"), nonorientable(1))[0]
    d = report_to_dict(r)
    back = report_from_dict(d)
    assert back.family == r.family
    assert back.lhs == pytest.approx(r.lhs)
    assert back.structure.values == r.structure.values
    assert back.invariant == r.invariant
    assert back.verdict == "PASS"
    assert {"family", "surface", "structure", "lhs", "rhs", "abs_diff",
            "hom_count", "verdict"} <= set(d)


def test_crosscheck_rejects_structures_for_oriented():
    g = cyclic(2)
    th = TheoryData(g, Twist.zero(2), "oriented")
    from superfs import refinement
    with pytest.raises(ValidationError, match="structures"):
        crosscheck(th, orientable(1), structures=[refinement(orientable(1), [0, 0])])
