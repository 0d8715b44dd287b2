import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reglab import (
    InvalidIntegral,
    NotAPrime,
    NotSimplePole,
    PadicField,
    double_index,
    make_triple_data,
    triple_index,
    triple_index_simple_pole,
)
from reglab.checks import random_alog_prime
from reglab.series import LaurentSeries, LogLaurent

K7 = PadicField(7, 20)
seeds = st.integers(0, 2**32 - 1)


def log_z(K, c=1):
    return LogLaurent.log_z(K, K(c))


def mer(K, coeffs, lo=0):
    return LogLaurent.from_series(LaurentSeries.from_coeffs(K, coeffs, lo=lo))


def const(K, c):
    return LogLaurent.constant(K, c)


def half_log_sq(K):
    L = log_z(K)
    return (L * L).scale(K(1) / 2)


def test_double_index_examples(K):
    assert double_index(log_z(K), log_z(K)).is_zero()
    assert double_index(mer(K, [1], lo=-1), mer(K, [0, 1])) == K(1)


def test_double_index_mixes_log_coefficients(K):
    # <a log z + f, b log z + g> = res f dg + b f0 - a g0
    F = log_z(K, 2) + mer(K, [1, 3])
    G = log_z(K, 5) + mer(K, [4, 0, 1])
    assert double_index(F, G) == K(5 * 1 - 2 * 4)


def test_canonical_data_for_three_logs(K):
    d = make_triple_data(log_z(K), log_z(K), log_z(K))
    for name in ("I_GdH", "I_FdH", "I_FdG", "I_HdG", "I_HdF", "I_GdF"):
        assert getattr(d, name).agrees(half_log_sq(K)), name


def test_override_shifts_partner(K):
    F, G, H = mer(K, [0, 1]), mer(K, [0, 0, 1]), mer(K, [0, 0, 0, 1])
    d = make_triple_data(F, G, H)
    # I_GdH = pint(z^2 * 3 z^2 dz) = 3/5 z^5
    assert d.I_GdH.agrees(mer(K, [0, 0, 0, 0, 0, K(3) / 5]))
    e = make_triple_data(F, G, H, I_GdH=d.I_GdH + const(K, 4))
    assert e.I_HdG.agrees(d.I_HdG - const(K, 4))


def test_override_must_be_an_antiderivative(K):
    F, G, H = mer(K, [0, 1]), mer(K, [0, 0, 1]), mer(K, [0, 0, 0, 1])
    with pytest.raises(InvalidIntegral):
        make_triple_data(F, G, H, I_GdH=mer(K, [0, 1]))


def test_inputs_outside_alog_prime_are_rejected(K):
    with pytest.raises(NotAPrime):
        make_triple_data(half_log_sq(K), log_z(K), log_z(K))


def test_triple_log_vanishes(K):
    L = log_z(K)
    d = make_triple_data(L, L, L, I_GdH=half_log_sq(K), I_FdH=half_log_sq(K), I_FdG=half_log_sq(K))
    assert triple_index(d).is_zero()


def test_reduction_with_constant_middle_slot(K):
    L = log_z(K)
    d = make_triple_data(L, const(K, 1), L, I_GdH=L)
    assert triple_index(d) == double_index(L, L)


def test_constant_shift_of_inner_integral(K):
    rng = random.Random(1)
    G, H = random_alog_prime(rng, K), random_alog_prime(rng, K)
    d = make_triple_data(log_z(K), G, H)
    C = K(7) / 3 + K(2)
    assert triple_index(d.shift_constants(c_gh=C)) == triple_index(d) - C


def test_simple_pole_formula_examples(K):
    L = log_z(K)
    d = make_triple_data(L, L, L)
    assert triple_index_simple_pole(L, L, L, d.I_FdH, d.I_GdH).is_zero()
    F, G = const(K, 3), const(K, 5)
    d = make_triple_data(F, G, L)
    assert triple_index_simple_pole(F, G, L, d.I_FdH, d.I_GdH) == K(15)


def test_simple_pole_formula_rejects_poles(K):
    F = mer(K, [1], lo=-1)
    d = make_triple_data(F, log_z(K), log_z(K))
    with pytest.raises(NotSimplePole):
        triple_index_simple_pole(F, d.G, d.H, d.I_FdH, d.I_GdH)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_double_index_is_antisymmetric(seed):
    rng = random.Random(seed)
    F, G = random_alog_prime(rng, K7), random_alog_prime(rng, K7)
    assert double_index(F, G) == -double_index(G, F)
    assert double_index(F, F).is_zero()


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_symmetry_and_triple_identity(seed):
    rng = random.Random(seed)
    F, G, H = (random_alog_prime(rng, K7) for _ in range(3))
    d = make_triple_data(F, G, H).shift_constants(K7(rng.randint(-9, 9)), K7(rng.randint(-9, 9)),
                                                  K7(rng.randint(-9, 9)))
    v = triple_index(d)
    assert triple_index(d.permute("GFH")) == v
    assert (v + triple_index(d.permute("FHG")) + triple_index(d.permute("GHF"))).is_zero()


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_recipe_matches_simple_pole_formula(seed):
    rng = random.Random(seed)
    F, G, H = (random_alog_prime(rng, K7, holomorphic=True) for _ in range(3))
    d = make_triple_data(F, G, H).shift_constants(K7(rng.randint(-9, 9)), K7(rng.randint(-9, 9)))
    assert triple_index(d) == triple_index_simple_pole(F, G, H, d.I_FdH, d.I_GdH)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_meromorphic_slots_reduce_to_residue(seed):
    rng = random.Random(seed)
    f, g, h = (LogLaurent.from_series(random_alog_prime(rng, K7).component(0)) for _ in range(3))
    d = make_triple_data(f, g, h)
    # res f g dh for meromorphic inputs
    expected = (f * g * LogLaurent.from_series(h.component(0).derivative())).component(0).coeff(-1)
    assert triple_index(d) == expected
