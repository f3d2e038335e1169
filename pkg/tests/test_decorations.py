"""Codec exactness and the bivariate reparameterization."""

import math

import numpy as np
import pytest

from decograph import (
    AsymmetricLayer,
    DecoratedGraph,
    DecorationSpace,
    DimensionMismatch,
    NonOneHotRow,
    NotAPowerOfTwoSpace,
    NotASimplexPoint,
    OneHotTensor,
    bernoulli2_reparam,
    binary_label_space,
    decode_one_hot,
    decorated_to_layers,
    encode_one_hot,
    multiplex_to_decorated,
)
from conftest import random_decorated_graph


def test_encode_places_single_one():
    space = DecorationSpace(labels=("x", "y", "z"))
    entries = np.zeros((4, 4), dtype=int)
    entries[1, 2] = entries[2, 1] = 1
    g = DecoratedGraph(decoration_space=space, entries=entries)
    X = encode_one_hot(g)
    assert X.values[1, 2].tolist() == [0, 1, 0]
    assert X.values[2, 1].tolist() == [0, 1, 0]


def test_encode_constant_graph():
    space = DecorationSpace(labels=("off", "on"), zero_index=0)
    g = DecoratedGraph(decoration_space=space, entries=np.zeros((5, 5), dtype=int))
    X = encode_one_hot(g)
    assert (X.values[:, :, 0] == 1).all()
    assert (X.values[:, :, 1] == 0).all()


def test_decode_picks_index_of_one():
    space = DecorationSpace(labels=tuple(range(4)))
    values = np.zeros((2, 2, 4), dtype=int)
    values[:, :, 0] = 1
    values[0, 1] = values[1, 0] = [0, 0, 1, 0]
    g = decode_one_hot(OneHotTensor(values=values), space)
    assert g.entries[0, 1] == 2


def test_decode_rejects_fractional_row():
    space = DecorationSpace(labels=(0, 1))
    values = np.zeros((2, 2, 2))
    values[:, :, 0] = 1.0
    values[0, 1] = values[1, 0] = [0.5, 0.5]
    with pytest.raises(NonOneHotRow):
        decode_one_hot(OneHotTensor(values=values), space)


def test_one_hot_roundtrip_seeded():
    rng = np.random.default_rng(101)
    for _ in range(100):
        n = int(rng.integers(2, 20))
        L = int(rng.integers(2, 9))
        g = random_decorated_graph(rng, n, L, zero_index=int(rng.integers(0, L)))
        back = decode_one_hot(encode_one_hot(g), g.decoration_space)
        assert np.array_equal(back.entries, g.entries)


def test_one_hot_slices_sum_to_one():
    rng = np.random.default_rng(5)
    g = random_decorated_graph(rng, 12, 5)
    X = encode_one_hot(g)
    assert (X.values.sum(axis=2) == 1).all()


def test_multiplex_binary_counting_order():
    # two layers: layer 1 active, layer 2 inactive -> second label
    layer1 = np.zeros((3, 3), dtype=int)
    layer1[0, 1] = layer1[1, 0] = 1
    layer2 = np.zeros((3, 3), dtype=int)
    g = multiplex_to_decorated([layer1, layer2])
    assert g.entries[0, 1] == 1
    assert g.decoration_space.labels == ((0, 0), (1, 0), (0, 1), (1, 1))
    assert g.decoration_space.zero_index == 0


def test_multiplex_all_zero_layers():
    zero = np.zeros((4, 4), dtype=int)
    g = multiplex_to_decorated([zero, zero])
    assert (g.entries == 0).all()


def test_multiplex_roundtrip_seeded():
    rng = np.random.default_rng(77)
    for _ in range(50):
        n = int(rng.integers(2, 20))
        T = int(rng.integers(1, 4))
        layers = []
        for _ in range(T):
            m = rng.integers(0, 2, size=(n, n))
            m = np.triu(m, 1)
            layers.append(m + m.T)
        g = multiplex_to_decorated(layers)
        back = decorated_to_layers(g, T)
        for orig, rec in zip(layers, back):
            assert np.array_equal(orig, rec)


def test_decorated_to_layers_rejects_other_spaces():
    space = DecorationSpace(labels=("a", "b", "c"))
    g = DecoratedGraph(decoration_space=space, entries=np.zeros((3, 3), dtype=int))
    with pytest.raises(NotAPowerOfTwoSpace):
        decorated_to_layers(g, 2)


def test_multiplex_shape_and_symmetry_errors():
    good = np.zeros((3, 3), dtype=int)
    with pytest.raises(DimensionMismatch):
        multiplex_to_decorated([good, np.zeros((4, 4), dtype=int)])
    bad = np.zeros((3, 3), dtype=int)
    bad[0, 1] = 1
    with pytest.raises(AsymmetricLayer):
        multiplex_to_decorated([bad])


def test_reparam_independence():
    params = bernoulli2_reparam((0.25, 0.25, 0.25, 0.25))
    assert params.p1 == 0.5 and params.p2 == 0.5
    assert params.rho == 0.0


def test_reparam_perfect_dependence_exact():
    assert bernoulli2_reparam((0.5, 0.0, 0.0, 0.5)).rho == 1.0
    assert bernoulli2_reparam((0.0, 0.5, 0.5, 0.0)).rho == -1.0


def test_reparam_hand_value():
    params = bernoulli2_reparam((0.4, 0.2, 0.1, 0.3))
    assert params.p1 == pytest.approx(0.5, abs=1e-15)
    assert params.p2 == pytest.approx(0.4, abs=1e-15)
    assert params.rho == pytest.approx(0.1 / math.sqrt(0.25 * 0.24), abs=1e-12)


def test_reparam_product_measures_uncorrelated():
    rng = np.random.default_rng(9)
    for _ in range(200):
        q1, q2 = rng.uniform(0.05, 0.95, size=2)
        theta = (
            (1 - q1) * (1 - q2), q1 * (1 - q2), (1 - q1) * q2, q1 * q2,
        )
        params = bernoulli2_reparam(theta)
        assert abs(params.rho) < 1e-12


def test_reparam_degenerate_marginal_flagged():
    params = bernoulli2_reparam((0.5, 0.0, 0.5, 0.0))
    assert not params.rho_defined
    assert math.isnan(params.rho)


def test_reparam_rejects_bad_vectors():
    with pytest.raises(NotASimplexPoint):
        bernoulli2_reparam((0.5, 0.5, 0.5, -0.5))
    with pytest.raises(NotASimplexPoint):
        bernoulli2_reparam((0.5, 0.5, 0.5, 0.5))
    with pytest.raises(NotASimplexPoint):
        bernoulli2_reparam((0.5, 0.5))


def test_space_validation():
    with pytest.raises(ValueError):
        DecorationSpace(labels=("only",))
    with pytest.raises(ValueError):
        DecorationSpace(labels=("a", "a"))
    with pytest.raises(ValueError):
        DecorationSpace(labels=("a", "b"), zero_index=2)


def test_graph_validation():
    space = DecorationSpace(labels=(0, 1))
    asym = np.zeros((3, 3), dtype=int)
    asym[0, 1] = 1
    with pytest.raises(AsymmetricLayer):
        DecoratedGraph(decoration_space=space, entries=asym)
    nonzero_diag = np.zeros((3, 3), dtype=int)
    np.fill_diagonal(nonzero_diag, 1)
    with pytest.raises(ValueError):
        DecoratedGraph(decoration_space=space, entries=nonzero_diag)


def test_binary_label_space_three_layers():
    space = binary_label_space(3)
    assert space.size == 8
    assert space.labels[5] == (1, 0, 1)
