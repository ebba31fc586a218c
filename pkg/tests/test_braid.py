import pytest

from conftest import sampled_catalog_object
from ybx.braid import (
    BraidWord,
    cabled_crossing_word,
    feta,
    fio,
    fox,
    free_reduce,
    half_twist_word,
    parse_word,
)
from ybx.core import rho
from ybx.errors import GeneratorOutOfRange


def W(strands, letters):
    return BraidWord.of(strands, letters)


def test_free_reduce():
    assert free_reduce(W(3, [1, -1])).letters == ()
    assert free_reduce(W(3, [1, 2, -2, -1, 1])).letters == (1,)
    w = free_reduce(W(4, [3, -2, 2, 1, -1, -3, 3]))
    assert free_reduce(w).letters == w.letters  # idempotent


def test_word_symmetries():
    assert fio(W(3, [1, 2])).letters == (-1, -2)
    assert feta(W(3, [1, 2])).letters == (-2, -1)
    assert fox(W(3, [1, -2])).letters == (2, -1)


def test_half_twist_words():
    assert half_twist_word(2).letters == (1,)
    assert half_twist_word(3).letters == (1, 2, 1)
    assert half_twist_word(4).letters == (1, 2, 1, 3, 2, 1)


def test_cabled_crossing_word():
    assert cabled_crossing_word(1).letters == (1,)
    assert cabled_crossing_word(2).letters == (2, 1, 3, 2)
    w3 = cabled_crossing_word(3)
    assert w3.strands == 6
    assert len(w3.letters) == 9


def test_word_validation_and_parse():
    with pytest.raises(GeneratorOutOfRange):
        W(3, [3])
    with pytest.raises(GeneratorOutOfRange):
        W(2, [0])
    assert parse_word("1 -2 1", 3).letters == (1, -2, 1)


def test_rho_respects_free_reduction(rng):
    obj = sampled_catalog_object("hietarinta:f", 3)
    for trial in range(50):
        letters = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 6))]
        w = W(3, letters)
        assert rho(obj, w).eq(rho(obj, free_reduce(w)))


def test_feta_gives_inverse(rng):
    obj = sampled_catalog_object("match2:F/", 5)
    for trial in range(50):
        letters = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 5))]
        w = W(3, letters)
        assert rho(obj, feta(w)).eq(rho(obj, w).inverse())


def test_transpose_symmetry(rng):
    # rho_{R^T}(w) = (rho_R(reverse(w)))^T; reversal is feta composed with fio
    from ybx.constructions import transpose_obj

    obj = sampled_catalog_object("hietarinta:slash", 7)
    objT = transpose_obj(obj)
    for trial in range(50):
        letters = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 5))]
        w = W(3, letters)
        reversed_w = feta(fio(w))
        assert reversed_w.letters == tuple(reversed(letters))
        assert rho(objT, w).eq(rho(obj, reversed_w).transpose())


def test_fio_is_inverse_object_route(rng):
    from ybx.constructions import inverse_obj

    obj = sampled_catalog_object("hietarinta:a", 9)
    obj_inv = inverse_obj(obj)
    for trial in range(20):
        letters = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 4))]
        w = W(3, letters)
        assert rho(obj, fio(w)).eq(rho(obj_inv, w))


def test_fox_inner_realisation(rng):
    # rho(fox(w)) = rho(D_n) rho(w) rho(D_n)^-1 for the half twist D_n
    obj = sampled_catalog_object("hietarinta:f", 11)
    n = 3
    delta = rho(obj, half_twist_word(n))
    delta_inv = delta.inverse()
    for trial in range(20):
        letters = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 4))]
        w = W(n, letters)
        assert delta.mul(rho(obj, w)).mul(delta_inv).eq(rho(obj, fox(w)))
