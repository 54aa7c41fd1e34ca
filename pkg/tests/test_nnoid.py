import pytest

from chnoids import linalg, nnoid
from chnoids.cli import random_nnoid_data
from chnoids.exactnum import GQ, BinaryForm
from chnoids.nnoid import (
    EndType,
    NnoidData,
    NnoidDataError,
    build_higgs,
    canonical_flag,
    end_type,
    jordan_type,
    nilpotency_profile,
    residue_matrix,
    residue_matrix_closed_form,
    trace_phi,
    trace_phi_squared,
)
from chnoids.sphere import ProjPoint, PunctureSet, make_log_form


def reference_data():
    """n=5, P={0..4}, r={1,1,1,1,-4}, g1=z0, g2=z0^2+z1^2, q=z1^3."""
    P = PunctureSet.of([ProjPoint.finite(GQ(k)) for k in range(5)])
    omega = make_log_form(P, [GQ(1)] * 4 + [GQ(-4)])
    g1 = BinaryForm.of(1, [1, 0])
    g2 = BinaryForm.of(2, [1, 0, 1])
    q = BinaryForm.of(3, [0, 0, 0, 1])
    return NnoidData.make(P, omega, g1, g2, q)


def test_make_validates():
    P = PunctureSet.of([ProjPoint.finite(GQ(k)) for k in range(5)])
    omega = make_log_form(P, [GQ(1)] * 4 + [GQ(-4)])
    g1 = BinaryForm.of(1, [1, 0])
    with pytest.raises(NnoidDataError):
        # q = z0^3 vanishes at puncture 0
        NnoidData.make(P, omega, g1, BinaryForm.of(2, [1, 0, 1]), BinaryForm.of(3, [1, 0, 0, 0]))
    with pytest.raises(NnoidDataError):
        # g1 = z0, g2 = z0 z1 share the root [0:1]
        NnoidData.make(P, omega, g1, BinaryForm.of(2, [0, 1, 0]), BinaryForm.of(3, [0, 0, 0, 1]))
    with pytest.raises(NnoidDataError):
        # wrong degree for g2
        NnoidData.make(P, omega, g1, BinaryForm.of(3, [1, 0, 0, 1]), BinaryForm.of(3, [0, 0, 0, 1]))


def test_json_roundtrip():
    data = reference_data()
    again = NnoidData.from_json(data.to_json())
    assert again == data
    bad = data.to_json()
    bad["n"] = 7
    with pytest.raises(NnoidDataError):
        NnoidData.from_json(bad)


def test_build_higgs_structure():
    data = reference_data()
    phi = build_higgs(data)
    omega = data.omega.as_rational_form()
    # entry (3,1) = g1 * omega, entry (1,3) = -q g2 * omega
    assert phi.entry(2, 0) == omega.scale_by(data.g1.dehomogenize())
    assert phi.entry(0, 2) == omega.scale_by(-(data.q.dehomogenize() * data.g2.dehomogenize()))
    for i in range(2):
        for j in range(2):
            assert phi.entry(i, j).is_zero
    assert phi.entry(2, 2).is_zero


def test_entry_residue_vanishing_section():
    # residue of entry (3,1) at p=0 is r * g1(0) = 0 since g1 = z0 vanishes there
    data = reference_data()
    phi = build_higgs(data)
    assert phi.entry(2, 0).residue_at(GQ(0)).is_zero


def test_trace_identities():
    data = reference_data()
    phi = build_higgs(data)
    assert trace_phi(phi).is_zero
    assert trace_phi_squared(phi).is_zero


def test_trace_phi_squared_detects_tamper():
    # flipping the sign of beta_1 makes CB = 2 q g1 g2 != 0
    data = reference_data()
    phi = build_higgs(data)
    tampered = nnoid.HiggsField(
        (
            (phi.entry(0, 0), phi.entry(0, 1), -phi.entry(0, 2)),
            phi.entries[1],
            phi.entries[2],
        ),
        data,
    )
    assert not trace_phi_squared(tampered).is_zero


def test_residue_two_ways_and_kernel_relation():
    data = reference_data()
    phi = build_higgs(data)
    for p in data.punctures:
        direct = residue_matrix(phi, p)
        closed = residue_matrix_closed_form(data, p)
        assert direct.matrix == closed.matrix
        # C(p) B(p) = g1(-q g2) + g2(q g1) = 0: lower-left row times upper-right col
        m = direct.matrix
        cb = m[2][0] * m[0][2] + m[2][1] * m[1][2]
        assert cb.is_zero


def test_nilpotency_profile():
    zero = linalg.mat([[GQ(0)] * 3] * 3)
    assert nilpotency_profile(zero) == 1
    assert nilpotency_profile(linalg.identity(3)) is None
    data = reference_data()
    phi = build_higgs(data)
    for p in data.punctures:
        assert nilpotency_profile(residue_matrix(phi, p).matrix) == 3


def e13():
    rows = [[GQ(0)] * 3 for _ in range(3)]
    rows[0][2] = GQ(1)
    return linalg.mat(rows)


def full_jordan():
    rows = [[GQ(0)] * 3 for _ in range(3)]
    rows[0][1] = GQ(1)  # M e2 = e1
    rows[1][2] = GQ(1)  # M e3 = e2
    return linalg.mat(rows)


def test_jordan_and_end_type():
    assert jordan_type(e13()) == (2, 1)
    assert jordan_type(full_jordan()) == (3,)
    assert end_type(e13()) == EndType.TYPE_I
    assert end_type(full_jordan()) == EndType.TYPE_II
    with pytest.raises(NnoidDataError):
        jordan_type(linalg.identity(3))
    with pytest.raises(NnoidDataError):
        jordan_type(linalg.mat([[GQ(0)] * 3] * 3))


def span_equal(basis_a, basis_b):
    return all(linalg.in_span(v, list(basis_a)) for v in basis_b) and all(
        linalg.in_span(v, list(basis_b)) for v in basis_a
    )


def test_canonical_flag_examples():
    e1 = (GQ(1), GQ(0), GQ(0))
    e2 = (GQ(0), GQ(1), GQ(0))
    flag = canonical_flag(e13())
    assert span_equal([flag.line], [e1])
    assert span_equal(list(flag.plane), [e1, e2])
    flag = canonical_flag(full_jordan())
    assert span_equal([flag.line], [e1])
    assert span_equal(list(flag.plane), [e1, e2])


def test_canonical_flag_on_residues():
    data = random_nnoid_data(6, 11)
    phi = build_higgs(data)
    for p in data.punctures:
        m = residue_matrix(phi, p).matrix
        flag = canonical_flag(m)  # internal strict-lowering assertions
        assert all(x.is_zero for x in linalg.mat_vec(m, flag.line))


def test_random_instances_full_pipeline():
    for seed in range(3):
        data = random_nnoid_data(7, seed)
        phi = build_higgs(data)
        assert trace_phi(phi).is_zero
        assert trace_phi_squared(phi).is_zero
        for p in data.punctures:
            m = residue_matrix(phi, p).matrix
            assert jordan_type(m) == (3,)
            assert end_type(m) == EndType.TYPE_II
