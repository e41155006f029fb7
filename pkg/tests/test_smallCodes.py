import itertools

import numpy as np
import pytest

from LinCodeProver.feasibilitySearch import check_distribution
from LinCodeProver.smallCodes import (brute_force_feasible, codewords, dual_generator, exhaustive_dmax,
                                      exhaustive_table, load_generator, minimum_distance, random_code,
                                      random_even_spanned_code, rank_gf2, weight_distribution)
from LinCodeProver.spectra import WeightDistribution
from LinCodeProver.utils import FormatError, PreconditionError


def test_load_generator(hamming):
    assert hamming.shape == (4, 7)
    same = load_generator("1,0,0,0,0,1,1  # first row\n\n0100101\n0010110\n0001111\n")
    assert np.array_equal(same, hamming)


@pytest.mark.parametrize("text", ["", "# only a comment\n", "102\n", "110\n01\n"])
def test_load_generator_rejects(text):
    with pytest.raises(FormatError):
        load_generator(text)


def test_rank_and_codewords():
    G = load_generator("110\n011\n101\n")
    assert rank_gf2(G) == 2
    words = codewords(G)
    assert words.shape == (4, 3)
    assert {tuple(w) for w in words} == {(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)}


def test_hamming_code(hamming):
    assert weight_distribution(hamming).as_dict() == {0: 1, 3: 7, 4: 7, 7: 1}
    assert minimum_distance(hamming) == 3
    H = dual_generator(hamming)
    assert H.shape == (3, 7)
    assert not ((hamming @ H.T) % 2).any()
    assert weight_distribution(H).as_dict() == {0: 1, 4: 7}


def test_dual_generators_are_orthogonal(rng):
    for _ in range(50):
        n = int(rng.integers(2, 12))
        k = int(rng.integers(1, n + 1))
        G = random_code(n, k, rng)
        H = dual_generator(G)
        assert H.shape == (n - k, n)
        assert rank_gf2(H) == n - k
        assert not ((G @ H.T) % 2).any()


def test_random_code(rng):
    G = random_code(9, 4, rng)
    assert G.shape == (4, 9) and rank_gf2(G) == 4
    with pytest.raises(PreconditionError):
        random_code(3, 4, rng)


def test_random_even_spanned_code(rng):
    G = random_even_spanned_code(10, 3, 4, rng)
    assert (G.sum(axis=1) == 4).all()
    assert rank_gf2(G) == 3 and minimum_distance(G) == 4
    with pytest.raises(PreconditionError):
        random_even_spanned_code(5, 3, 5, rng, attempts=5)


@pytest.mark.parametrize("n, k, expected", [
    (7, 4, 3),
    (8, 4, 4),
    (7, 3, 4),
    (6, 3, 3),
    (5, 1, 5),
    (5, 5, 1),
    (6, 2, 4),
])
def test_exhaustive_dmax(n, k, expected):
    assert exhaustive_dmax(n, k) == expected


def test_exhaustive_table():
    table = exhaustive_table(5)
    assert len(table) == 15
    assert table.lookup(5, 2) == 3
    assert all(entry.provenance == "exhaustive" for _, entry in table)
    with pytest.raises(PreconditionError):
        exhaustive_dmax(3, 4)


def test_brute_force_feasible():
    found = brute_force_feasible(7, 4, [3, 4, 7])
    assert found is not None and check_distribution(found, 4)
    assert brute_force_feasible(7, 3, [4]).as_dict() == {0: 1, 4: 7}
    assert brute_force_feasible(7, 4, [4]) is None
    assert brute_force_feasible(7, 3, [4], a1_dual=1) is None
    with pytest.raises(PreconditionError):
        brute_force_feasible(7, 3, [0, 4])


@pytest.mark.parametrize("a1_dual", [None, 0, 1, 2])
def test_brute_force_takes_the_first_passing_distribution(a1_dual):
    weights = range(1, 9)
    expected = None
    for counts in itertools.product(range(4), repeat=8):
        if sum(counts) != 3:
            continue
        A = WeightDistribution.code_spectrum(8, dict(zip(weights, counts)))
        result = check_distribution(A, 2)
        if result.passed and (a1_dual is None or result.dual.value(1) == a1_dual):
            expected = A
            break
    found = brute_force_feasible(8, 2, weights, a1_dual)
    assert expected is not None
    assert found.as_dict() == expected.as_dict()


def test_enumerated_spectra_pass_the_checks(rng):
    for _ in range(30):
        n = int(rng.integers(2, 12))
        k = int(rng.integers(1, min(6, n) + 1))
        assert check_distribution(weight_distribution(random_code(n, k, rng)), k)
