"""Twisted algebra arithmetic, decomposition, supermodules, and indicators."""

from fractions import Fraction

import numpy as np
import pytest

from superfs import (
    SnapError,
    Twist,
    TwistedGroupAlgebra,
    ValidationError,
    assemble_supermodules,
    catalog_group,
    classification_to_dict,
    classify,
    clifford_twist,
    combine_twists,
    cyclic,
    decompose_regular,
    eighth_root,
    gow_indicator,
    h2_representatives,
    ordinary_fs,
    product_group,
    shift_by_coboundary,
    snap_eighth_root,
    snap_indicator,
    snapped_string,
    special_element,
    super_fs,
    validate_twist,
    verify_main_theorem,
    z2_homomorphisms,
)
from superfs.superalg import BW_TABLE, bw_from_parts

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def z4_parity():
    return Twist.from_fractions([0, 1, 0, 1], [[0] * 4] * 4)


def test_multiply_matches_group_law():
    g = catalog_group("s3")
    alg = TwistedGroupAlgebra(g)
    a, b = alg.basis(1), alg.basis(2)
    prod = a * b
    expect = np.zeros(6)
    expect[g.table[1, 2]] = 1
    assert np.allclose(prod.coeffs, expect)
    assert np.allclose(((a + b) * alg.unit()).coeffs, a.coeffs + b.coeffs)


def test_multiply_twisted_signs():
    g, t = clifford_twist(2)
    alg = TwistedGroupAlgebra(g, t)
    e1, e2 = alg.basis(1), alg.basis(2)
    assert np.allclose((e1 * e2).coeffs + (e2 * e1).coeffs, 0)
    assert np.allclose((e1 * e1).coeffs, alg.unit().coeffs)


def test_star_requires_sign_valued():
    g = cyclic(3)
    a = [[Fraction((i * j) % 3, 3) for j in range(3)] for i in range(3)]
    alg = TwistedGroupAlgebra(g, Twist.from_fractions([0] * 3, a))
    with pytest.raises(ValidationError, match="real"):
        alg.basis(1).star()
    alg2 = TwistedGroupAlgebra(g)
    x = alg2.element([1j, 2, 0])
    assert np.allclose(x.star().coeffs, [-1j, 2, 0])


def test_decompose_group_algebra_dimensions():
    assert [i.dim for i in decompose_regular(TwistedGroupAlgebra(cyclic(2)))] == [1, 1]
    dims = [i.dim for i in decompose_regular(TwistedGroupAlgebra(catalog_group("s3")))]
    assert dims == [1, 1, 2]
    dims = [i.dim for i in decompose_regular(TwistedGroupAlgebra(catalog_group("q8")))]
    assert dims == [1, 1, 1, 1, 2]


def test_decompose_regular_trace_identity():
    g = catalog_group("d4")
    irreps = decompose_regular(TwistedGroupAlgebra(g))
    total = sum(i.dim * i.character for i in irreps)
    expect = np.zeros(8, dtype=complex)
    expect[0] = 8
    assert np.max(np.abs(total - expect)) < 1e-8


def test_decompose_deterministic():
    g = catalog_group("d4")
    t = validate_twist(g, h2_representatives(g)[1])
    a = decompose_regular(TwistedGroupAlgebra(g, t), seed=5)
    b = decompose_regular(TwistedGroupAlgebra(g, t), seed=5)
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert np.array_equal(x.matrices, y.matrices)


def test_decompose_cap():
    g = catalog_group("a4")
    with pytest.raises(ValidationError, match="cap"):
        decompose_regular(TwistedGroupAlgebra(g), cap=8)


def test_clifford2_is_pauli_algebra():
    g, t = clifford_twist(2)
    alg = TwistedGroupAlgebra(g, t)
    # the explicit assignment e1 -> sx, e2 -> sy, e3 -> sx sy satisfies the
    # product rule with the algebra's phases
    rho = [np.eye(2, dtype=complex), SX, SY, SX @ SY]
    for a in range(4):
        for b in range(4):
            got = rho[a] @ rho[b]
            want = alg.phases[a, b] * rho[g.table[a, b]]
            assert np.max(np.abs(got - want)) < 1e-12
    irreps = decompose_regular(alg)
    assert [i.dim for i in irreps] == [2]
    assert np.allclose(irreps[0].character, [2, 0, 0, 0])


def test_heisenberg_cocycle_single_irrep():
    g = product_group(cyclic(3), cyclic(3))
    a = [[Fraction((i // 3) * (j % 3) % 3, 3) for j in range(9)] for i in range(9)]
    alg = TwistedGroupAlgebra(g, Twist.from_fractions([0] * 9, a))
    irreps = decompose_regular(alg)
    assert [(i.dim, i.multiplicity) for i in irreps] == [(3, 3)]


def test_assemble_pairs_by_parity():
    g, t = clifford_twist(1)
    alg = TwistedGroupAlgebra(g, t)
    sups = assemble_supermodules(decompose_regular(alg), alg)
    assert len(sups) == 1 and sups[0].q_type == 1 and sups[0].dims == (1, 1)
    # odd element acts off-diagonally
    m = sups[0].matrices[1]
    assert m[0, 0] == 0 and m[1, 1] == 0
    assert abs(m[0, 1]) == pytest.approx(1)

    g2 = catalog_group("s3")
    alg2 = TwistedGroupAlgebra(g2)
    sups2 = assemble_supermodules(decompose_regular(alg2), alg2)
    assert sorted(s.dim for s in sups2) == [1, 1, 2]
    assert all(s.q_type == 0 and s.dims[1] == 0 for s in sups2)


def test_supermodule_characters_vanish_on_odd():
    g = catalog_group("d4")
    phi = z2_homomorphisms(g)[1]
    t = validate_twist(g, Twist.zero(8).with_phi(phi))
    alg = TwistedGroupAlgebra(g, t, validate=False)
    sups = assemble_supermodules(decompose_regular(alg), alg)
    for s in sups:
        assert np.max(np.abs(s.character[phi == 1])) < 1e-8
    assert sum(s.dim ** 2 / 2 ** s.q_type for s in sups) == 8


def test_special_element_clifford1():
    g, t = clifford_twist(1)
    alg = TwistedGroupAlgebra(g, t)
    irreps = decompose_regular(alg)
    sups = assemble_supermodules(irreps, alg)
    u, sign = special_element(alg, sups[0], irreps)
    assert sign == 1
    assert abs(u.coeffs[0]) < 1e-10 and abs(abs(u.coeffs[1]) - 1) < 1e-10


def test_special_element_clifford2():
    g, t = clifford_twist(2)
    alg = TwistedGroupAlgebra(g, t)
    irreps = decompose_regular(alg)
    sups = assemble_supermodules(irreps, alg)
    u, sign = special_element(alg, sups[0], irreps)
    assert sign == -1
    expect = np.zeros(4)
    expect[3] = 1
    assert np.max(np.abs(np.abs(u.coeffs) - expect)) < 1e-10
    # u is even and *-fixed
    assert np.max(np.abs(u.coeffs.imag)) < 1e-10
    assert t.phi[3] == 0


def test_special_element_trivial_rep_is_averaging_idempotent():
    g = catalog_group("s3")
    alg = TwistedGroupAlgebra(g)
    irreps = decompose_regular(alg)
    sups = assemble_supermodules(irreps, alg)
    triv = next(s for s in sups if np.max(np.abs(s.character - 1)) < 1e-8)
    u, sign = special_element(alg, triv, irreps)
    assert sign == 1
    assert np.allclose(u.coeffs, np.full(6, 1 / 6))


def test_special_element_rejects_complex():
    g = cyclic(3)
    alg = TwistedGroupAlgebra(g)
    irreps = decompose_regular(alg)
    sups = assemble_supermodules(irreps, alg)
    cx = next(s for s in sups
              if np.max(np.abs(np.conj(s.character) - s.character)) > 1e-6)
    with pytest.raises(ValidationError, match="complex"):
        special_element(alg, cx, irreps)


def test_ordinary_fs_values():
    alg = TwistedGroupAlgebra(cyclic(3))
    chars = [i.character for i in decompose_regular(alg)]
    vals = sorted(ordinary_fs(c, alg) for c in chars)
    assert vals == [0, 0, 1]
    algq = TwistedGroupAlgebra(catalog_group("q8"))
    vals = [ordinary_fs(i.character, algq) for i in decompose_regular(algq)]
    assert vals == [1, 1, 1, 1, -1]


def test_gow_indicator_direct():
    from superfs.groups import even_subgroup

    g = cyclic(4)
    t = validate_twist(g, z4_parity())
    alg = TwistedGroupAlgebra(g, t, validate=False)
    sub = even_subgroup(g, t.phi, twist=t)
    # even subgroup is {0, 2} = Z2; its characters are (1,1) and (1,-1)
    # odd elements 1, 3 square to 2
    assert gow_indicator(np.array([1.0, 1.0]), sub, alg) == 1
    assert gow_indicator(np.array([1.0, -1.0]), sub, alg) == -1
    # trivial grading: eta = 0 by convention
    sub0 = even_subgroup(g, np.zeros(4, dtype=np.int64), twist=Twist.zero(4))
    assert gow_indicator(np.ones(4), sub0, TwistedGroupAlgebra(g)) == 0


def test_super_fs_clifford1():
    g, t = clifford_twist(1)
    alg = TwistedGroupAlgebra(g, t)
    sups = assemble_supermodules(decompose_regular(alg), alg)
    val = super_fs(sups[0], alg)
    assert abs(val - eighth_root(1)) < 1e-9


def test_snapping_helpers():
    assert snap_indicator(1 + 1e-9) == 1
    assert snap_indicator(-1) == -1
    assert snap_indicator(2e-7) == 0
    with pytest.raises(SnapError):
        snap_indicator(0.5)
    assert snap_eighth_root(0j) is None
    assert snap_eighth_root(eighth_root(5) + 1e-8) == 5
    with pytest.raises(SnapError):
        snap_eighth_root(0.5 + 0.2j)
    assert snapped_string(None) == "0"
    assert snapped_string(3) == "e^{2·pi·i·3/8}"


def test_bw_table_complete():
    assert len(BW_TABLE) == 8
    assert sorted(BW_TABLE.values()) == list(range(8))
    assert bw_from_parts(0, 1, "R") == 0
    assert bw_from_parts(1, -1, "H") == 3
    with pytest.raises(ValidationError):
        bw_from_parts(1, -1, "C")


def test_classify_clifford3():
    g, t = clifford_twist(3)
    rep = classify(TwistedGroupAlgebra(g, t))
    assert rep.all_pass
    assert len(rep.supermodules) == 1
    s = rep.supermodules[0]
    assert (s.q_type, s.dims, s.bw, s.fs_k) == (1, (2, 2), 3, 3)


def test_classify_z3_reality_split():
    rep = classify(TwistedGroupAlgebra(cyclic(3)))
    assert rep.all_pass
    kinds = sorted(str(s.bw) for s in rep.supermodules)
    assert kinds == ["0", "complex", "complex"]
    for s in rep.supermodules:
        assert (s.fs_k is None) == (s.reality == "complex")


def test_classify_q8_trivial():
    rep = classify(TwistedGroupAlgebra(catalog_group("q8")))
    assert rep.all_pass
    assert [s.s_ordinary for s in rep.supermodules] == [1, 1, 1, 1, -1]
    assert [s.bw for s in rep.supermodules] == [0, 0, 0, 0, 4]


def test_classify_z4_parity():
    g = cyclic(4)
    rep = classify(TwistedGroupAlgebra(g, z4_parity()))
    assert rep.all_pass
    assert sorted(s.bw for s in rep.supermodules) == [1, 7]
    assert all(s.q_type == 1 for s in rep.supermodules)


def test_classify_requires_sign_valued():
    g = cyclic(3)
    a = [[Fraction((i * j) % 3, 3) for j in range(3)] for i in range(3)]
    alg = TwistedGroupAlgebra(g, Twist.from_fractions([0] * 3, a))
    with pytest.raises(ValidationError, match="sign-valued"):
        classify(alg)


def test_verify_main_theorem_alias():
    rep = verify_main_theorem(TwistedGroupAlgebra(cyclic(2)))
    assert rep.all_pass
    for s in rep.supermodules:
        assert s.checks == {"theorem": True, "gow_identity": True,
                            "rewrite_identity": True}


def test_classification_dict_schema():
    g, t = clifford_twist(1)
    data = classification_to_dict(classify(TwistedGroupAlgebra(g, t)))
    assert data["all_pass"] is True
    sup = data["supermodules"][0]
    assert sup["S_super"]["snapped"] == "e^{2·pi·i·1/8}"
    assert sup["bw_class"] == 1
    assert sup["qdim"] == pytest.approx(2 / np.sqrt(2))
    assert sup["checks"] == {"theorem": "pass", "gow_identity": "pass",
                             "rewrite_identity": "pass"}
    assert data["dim_check"]["ok"] is True


def test_indicator_multiplicative_cl1_cl1():
    g1, t1 = clifford_twist(1)
    a = TwistedGroupAlgebra(g1, t1)
    ra = classify(a)
    gc, tc = combine_twists((g1, t1), (g1, t1))
    rc = classify(TwistedGroupAlgebra(gc, tc))
    prod = ra.supermodules[0].fs_raw ** 2
    assert abs(prod - rc.supermodules[0].fs_raw) < 1e-9
    assert rc.supermodules[0].bw == 2


def test_classification_coboundary_invariant():
    g = catalog_group("q8")
    t = validate_twist(g, h2_representatives(g)[2].with_phi(z2_homomorphisms(g)[1]))
    base = classify(TwistedGroupAlgebra(g, t, validate=False))
    sig0 = sorted((s.dims, str(s.bw)) for s in base.supermodules)
    rng = np.random.default_rng(11)
    for _ in range(3):
        beta = rng.integers(0, 2, 8)
        beta[0] = 0
        t2 = shift_by_coboundary(g, t, beta, 2)
        rep = classify(TwistedGroupAlgebra(g, t2, validate=False))
        assert sorted((s.dims, str(s.bw)) for s in rep.supermodules) == sig0


def test_dimension_accounting_across_twists():
    for name in ("z6", "s3", "d4"):
        g = catalog_group(name)
        for phi in z2_homomorphisms(g):
            t = validate_twist(g, Twist.zero(g.order).with_phi(phi))
            rep = classify(TwistedGroupAlgebra(g, t, validate=False))
            assert rep.dim_sum == g.order
