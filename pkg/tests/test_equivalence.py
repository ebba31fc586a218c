import random
from fractions import Fraction

import pytest

from conftest import (
    fa_matrix,
    ising_unitary,
    random_invertible,
    sampled_catalog_object,
    zeta8,
)
from ybx.catalog import catalog_get
from ybx.constructions import phi_q
from ybx.core import is_charge_conserving, make_ybo
from ybx.equivalence import (
    flip_word_traces,
    local_distinguish,
    local_witness_search,
    match_stabilizer_check,
    match_stabilizer_refute,
    matcha_stabilizer_check,
    p_equivalent,
    random_monomial,
    weighted_flip,
    x_symmetry_check,
)
from ybx.expressions import ParamBinding
from ybx.tensor import Matrix, kron


def test_flip_word_traces_invariant_under_phi_q(rng):
    count = 0
    for seed in range(9):
        entry = ["hietarinta:slash", "hietarinta:a", "match2:F/"][seed % 3]
        obj = sampled_catalog_object(entry, 70 + seed)
        base = flip_word_traces(obj, 4)
        N = obj.N
        Q = random_invertible(rng, N)
        conj = phi_q(obj, Q)
        other = flip_word_traces(conj, 4)
        for word, value in base.items():
            assert other[word] == value
            count += 1
    # a rank-3 check as well
    for seed in range(2):
        rng2 = random.Random(seed)
        weights = [Fraction(rng2.randint(1, 9), rng2.randint(1, 9)) for _ in range(3)]
        obj = make_ybo(3, weighted_flip(3, weights))
        base = flip_word_traces(obj, 3)
        conj = phi_q(obj, random_invertible(rng, 3))
        other = flip_word_traces(conj, 3)
        for word, value in base.items():
            assert other[word] == value
            count += 1
    assert count >= 50


def test_p_equivalence_reflexive_and_monotone():
    obj = sampled_catalog_object("hietarinta:f", 80)
    cert = p_equivalent(obj, obj, 3)
    assert cert.verdict == "equivalent"
    assert set(cert.intertwiners) == {2, 3}
    cert2 = p_equivalent(obj, obj, 2)
    assert cert2.verdict == "equivalent"


def test_p_equivalence_symmetric():
    obj = sampled_catalog_object("match2:F/", 81)
    other = phi_q(obj, Matrix.from_rows([[1, 2], [1, 3]]))
    assert p_equivalent(obj, other, 3).verdict == "equivalent"
    assert p_equivalent(other, obj, 3).verdict == "equivalent"


def test_p_equivalence_rejects_size_mismatch():
    A = sampled_catalog_object("hietarinta:f", 82)
    B = make_ybo(3, Matrix.identity(9))
    cert = p_equivalent(A, B, 2)
    assert cert.verdict == "not_equivalent" and cert.failed_n == 1


def test_two_equivalence_is_similarity():
    # scaled objects are 2-inequivalent when the spectra disagree
    obj = sampled_catalog_object("hietarinta:a", 83)
    scaled = make_ybo(2, obj.R.scale(Fraction(2)))
    cert = p_equivalent(obj, scaled, 2)
    assert cert.verdict == "not_equivalent"


def test_ising_vs_fa_trace_separation():
    ising = make_ybo(2, ising_unitary(), tol=1e-9)
    fa = make_ybo(2, fa_matrix(zeta8(), 1 / zeta8()), tol=1e-9)
    cert2 = p_equivalent(ising, fa, 2)
    assert cert2.verdict == "equivalent"  # similar matrices
    cert3 = p_equivalent(ising, fa, 3)
    assert cert3.verdict == "not_equivalent"
    assert cert3.failed_n == 3
    assert "trace" in cert3.witness


def test_ds_outputs_infinity_equivalent():
    from ybx.constructions import ds_certificates_check

    obj = sampled_catalog_object("match2:F/", 84)
    Q = Matrix.diagonal([Fraction(3), Fraction(7)])
    assert ds_certificates_check(obj, Q, 4)


def test_local_distinguish_same_under_phi_q(rng):
    for seed in range(3):
        obj = sampled_catalog_object("hietarinta:eight-vertex", 85 + seed)
        conj = phi_q(obj, random_invertible(rng, 2))
        verdict, witness = local_distinguish(obj, conj, L=4)
        assert verdict == "same"


def test_local_distinguish_slash_vs_f():
    slash = sampled_catalog_object("hietarinta:slash", 90)
    f = sampled_catalog_object("hietarinta:f", 90)
    verdict, witness = local_distinguish(slash, f, L=4)
    assert verdict == "distinguished"


def test_local_witness_search_finds_phi_q_witness():
    obj = sampled_catalog_object("hietarinta:a", 91)
    Q0 = Matrix.from_rows([[2, 1], [1, 1]])
    other = phi_q(obj, Q0)
    Q = local_witness_search(obj, other, strategy="full")
    assert Q is not None
    QQ = kron(Q, Q)
    assert QQ.mul(obj.R).eq(other.R.mul(QQ))


def test_local_witness_search_monomial_strategy():
    # an antidiagonal conjugator is found by the permutation-times-diagonal
    # strategy
    obj = sampled_catalog_object("match2:F/", 93)
    Q0 = Matrix.from_rows([[0, 2], [3, 0]])
    other = phi_q(obj, Q0)
    Q = local_witness_search(obj, other, strategy="monomial")
    assert Q is not None
    QQ = kron(Q, Q)
    assert QQ.mul(obj.R).eq(other.R.mul(QQ))
    # the purely diagonal strategy cannot reach it unless the objects match
    assert local_witness_search(obj, other, strategy="diagonal") is None or         obj.R.eq(other.R)


def test_group_type_generators_are_endomorphisms(rng):
    # for a group-type object the g_i lie in End(N, R)
    from ybx.core import group_type_build
    from ybx.structure import end_verify
    from conftest import random_invertible

    g = random_invertible(rng, 3)
    obj = group_type_build([g, g, g], verify=True)
    assert end_verify(obj, g)
    assert end_verify(obj, g.mul(g))


def test_a_glue_k0_coincides_with_a_type():
    # at k = 0 and matched parameters the a-glue and a-type points coincide,
    # so the diagonal strategy finds the identity witness
    q = Fraction(3)
    aglue = catalog_get("hietarinta:a-glue", ParamBinding.of(p=4, q=q, k=0))
    atype = catalog_get("hietarinta:a",
                        ParamBinding.of(k=2, p=2, q=q / 2))
    assert aglue.R.eq(atype.R)
    Q = local_witness_search(aglue, atype, strategy="diagonal")
    assert Q is not None
    # generic a-type points with the same entry product are reached by the
    # diagonal (N^2 x N^2) X-symmetry instead
    X = Matrix.diagonal([Fraction(1), Fraction(2), Fraction(1), Fraction(1)])
    S = X.mul(aglue.R).mul(X.inverse())
    atype2 = catalog_get("hietarinta:a", ParamBinding.of(k=2, p=1, q=q))
    assert S.eq(atype2.R)


def test_local_witness_none_for_ising_vs_fa():
    ising = make_ybo(2, ising_unitary(), tol=1e-9)
    fa = make_ybo(2, fa_matrix(zeta8(), 1 / zeta8()), tol=1e-9)
    assert local_witness_search(ising, fa, strategy="full", seed=3) is None


def test_local_witness_numeric_positive_control():
    # the numeric search must find witnesses when they exist, on the complex
    # backend, at both ranks; this is what gives weight to its negatives
    import numpy as np

    ising = make_ybo(2, ising_unitary(), tol=1e-9)
    rng = np.random.default_rng(11)
    Q0 = Matrix.from_numpy(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    other = phi_q(ising, Q0, tol=1e-9)
    Q = local_witness_search(ising, other, strategy="full", seed=0)
    assert Q is not None
    QQ = kron(Q, Q)
    assert QQ.mul(ising.R).max_abs_diff(other.R.mul(QQ)) < 1e-8


def test_local_witness_gaussian_pair_negative_with_control():
    from conftest import gaussian_pair
    from ybx.core import YBObject
    import numpy as np

    R, S = gaussian_pair()
    objR = YBObject(3, 1, R)
    objS = YBObject(3, 1, S)
    rng = np.random.default_rng(12)
    Q0 = Matrix.from_numpy(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    twin = phi_q(objR, Q0, tol=1e-9)
    found = local_witness_search(objR, twin, strategy="full", seed=5)
    assert found is not None  # positive control at the same size
    assert local_witness_search(objR, objS, strategy="full", seed=5) is None


def test_match_stabilizer_preservation(rng):
    for N in (2, 3):
        for seed in range(5):
            Q = random_monomial(N, rng)
            assert match_stabilizer_check(Q, trials=10, seed=seed)
        P = Matrix.permutation(list(reversed(range(N))))
        assert match_stabilizer_check(P, trials=10, seed=0)
        assert match_stabilizer_check(Matrix.identity(N), trials=5, seed=1)


def test_match_stabilizer_non_monomial_breaks(rng):
    Q = Matrix.from_rows([[1, 1], [0, 1]])
    assert not match_stabilizer_check(Q, trials=10, seed=2)


def test_match_stabilizer_refutation():
    for N in (2, 3):
        refut = match_stabilizer_refute(N)
        assert is_charge_conserving(refut.S, N)
        assert not is_charge_conserving(refut.conjugated, N)
        (r, c), value = refut.violation
        assert refut.conjugated.data[r][c] == value


def test_matcha_stabilizer():
    rep2 = matcha_stabilizer_check(2)
    assert rep2["conjecture_consistent"]
    assert sorted(rep2["allowed_permutations"]) == [(0, 1), (1, 0)]
    rep3 = matcha_stabilizer_check(3)
    assert rep3["conjecture_consistent"]
    assert sorted(rep3["allowed_permutations"]) == [(0, 1, 2), (2, 1, 0)]


def test_x_symmetry_n2_formula(rng):
    for seed in range(3):
        obj = sampled_catalog_object("match2:F/", 95 + seed)
        X = Matrix.diagonal([Fraction(rng.randint(1, 9), rng.randint(1, 9))
                             for _ in range(4)])
        report = x_symmetry_check(obj, X, 6)
        assert report.ok and report.method == "closed-form"
        assert set(report.per_n) == {2, 3, 4, 5, 6}


def test_x_symmetry_identity_X():
    obj = sampled_catalog_object("hietarinta:a", 99)
    report = x_symmetry_check(obj, Matrix.identity(4), 4)
    assert report.ok


def test_x_symmetry_n3_diagonal_solve(rng):
    for seed in range(3):
        rng2 = random.Random(seed)
        weights = [Fraction(rng2.randint(1, 9), rng2.randint(1, 9)) for _ in range(3)]
        obj = make_ybo(3, weighted_flip(3, weights))
        X = Matrix.diagonal([Fraction(rng2.randint(1, 9), rng2.randint(1, 9))
                             for _ in range(9)])
        report = x_symmetry_check(obj, X, 4)
        assert report.ok and report.method == "ratio-propagation"
