import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from bireversible import automata as au
from bireversible import fixtures, tree
from bireversible.errors import NotBireversible, NotReduced, NotReversible, ResourceLimit
from bireversible.words import SignedSymbol as S, free_reduce, invert_word, is_reduced

ODO = fixtures.odometer()
I2 = fixtures.identity2()
E, A = 0, 1  # odometer states
BIREV22 = [a for a in au.all_automata(2, 2) if au.is_bireversible(a)]


def words(nx, max_len):
    return [w for k in range(max_len + 1) for w in itertools.product(range(nx), repeat=k)]


def binary_value(w):
    return sum(b << i for i, b in enumerate(w))


# apply -------------------------------------------------------------------------------


def test_odometer_examples():
    assert tree.apply(ODO, A, (0, 0, 0)) == (1, 0, 0)
    assert tree.apply(ODO, A, (1, 1, 0)) == (0, 0, 1)
    assert tree.apply_word(ODO, (A, A), (0, 0, 0)) == (0, 1, 0)
    assert tree.apply(ODO, A, ()) == ()


def test_odometer_adds_one():
    for w in words(2, 8):
        if w:
            img = tree.apply(ODO, A, w)
            assert binary_value(img) == (binary_value(w) + 1) % 2 ** len(w)


def test_inverse_pair_and_identity():
    for w in words(2, 5):
        assert tree.apply_word(ODO, (S(A), S(A, -1)), w) == w
        assert tree.apply_word(ODO, (S(A, -1), S(A)), w) == w
        assert tree.apply_word(I2, (0, 1, 1, 0), w) == w


@settings(max_examples=80)
@given(st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), max_size=10), st.integers(0, 10))
def test_length_and_prefix(qw, w, cut):
    img = tree.apply_word(ODO, qw, w)
    assert len(img) == len(w)
    assert tree.apply_word(ODO, qw, w[:cut]) == img[:cut]


def test_inverse_round_trip_depth8():
    rng = random.Random(8)
    inv = [a for a in au.all_automata(2, 2) if au.is_invertible(a)]
    for a in rng.sample(inv, 16):
        b = au.inverse(a)
        for w in words(2, 8)[-256:]:
            for q in range(2):
                assert tree.apply(b, q, tree.apply(a, q, w)) == w


def test_cocycle_identity():
    rng = random.Random(3)
    gs = fixtures.gupta_sidki()
    for _ in range(300):
        q = rng.randrange(3)
        u = tuple(rng.randrange(3) for _ in range(rng.randint(0, 5)))
        v = tuple(rng.randrange(3) for _ in range(rng.randint(0, 5)))
        (mid,) = tree.section(gs, (q,), u)
        assert tree.apply(gs, q, u + v) == tree.apply(gs, q, u) + tree.apply(gs, mid.index, v)


# rectangles --------------------------------------------------------------------------


def test_rectangle_examples():
    r = tree.rectangle(ODO, (A,), (0,))
    assert r.top == (S(1),) and r.right == (S(E),)
    r = tree.rectangle(I2, (1,), (0, 1))
    assert r.top == (S(0), S(1)) and r.right == (S(1),)
    with pytest.raises(NotReversible):
        tree.rectangle(ODO, (A,), (S(1, -1),))


def test_rectangle_top_matches_apply():
    gs = fixtures.gupta_sidki()
    for qw in itertools.product(range(3), repeat=3):
        for w in words(3, 3):
            assert [s.index for s in tree.rectangle(gs, qw, w).top] == list(tree.apply_word(gs, qw, w))


def test_rectangle_right_is_section():
    gs = fixtures.gupta_sidki()
    for qw in itertools.product(range(3), repeat=2):
        for w in words(3, 3):
            assert tree.rectangle(gs, qw, w).right == tree.section(gs, qw, w)


def test_duality_swap():
    """A rectangle read in the dual automaton, with both sides reversed."""
    rng = random.Random(11)
    for a in BIREV22 + [fixtures.identity2()]:
        d = au.dual(a)
        for _ in range(20):
            qw = tuple(S(rng.randrange(a.state_count), rng.choice((1, -1))) for _ in range(rng.randint(0, 4)))
            xw = tuple(S(rng.randrange(a.alphabet_size), rng.choice((1, -1))) for _ in range(rng.randint(0, 4)))
            r = tree.rectangle(a, qw, xw)
            s = tree.rectangle(d, xw[::-1], qw[::-1])
            assert s.top == r.right[::-1] and s.right == r.top[::-1]


# triviality oracle -------------------------------------------------------------------


def test_triviality_examples():
    assert tree.acts_trivially(ODO, ())
    res = tree.triviality(ODO, (A,))
    assert not res.trivial and res.witness == (0,)
    for a in [ODO, I2, fixtures.gupta_sidki(), fixtures.lamplighter()]:
        for q in range(a.state_count):
            assert tree.acts_trivially(a, (S(q), S(q, -1)))


def test_section_closure():
    gs = fixtures.gupta_sidki()
    for qw in itertools.product(range(3), repeat=3):
        if tree.acts_trivially(gs, qw):
            for x in range(3):
                assert tree.acts_trivially(gs, tree.section(gs, qw, (x,)))


def test_trivial_mask_matches_oracle():
    gs = fixtures.gupta_sidki()
    for k in (1, 2, 3):
        mask = tree.trivial_mask(gs, k)
        for w in itertools.product(range(3), repeat=k):
            assert bool(mask[tree.encode(w, 3)]) == tree.acts_trivially(gs, w)


def test_gupta_sidki_torsion():
    """Sampled elements have order dividing 9."""
    rng = random.Random(9)
    gs = fixtures.gupta_sidki()
    for _ in range(40):
        w = tuple(rng.randrange(3) for _ in range(rng.randint(1, 4)))
        assert tree.acts_trivially(gs, w * 9)


def test_resource_limit(monkeypatch):
    monkeypatch.setenv(tree.MAX_STATES_ENV, "3")
    with pytest.raises(ResourceLimit):
        tree.portrait(ODO, (A,), 4)


# portraits ---------------------------------------------------------------------------


def test_portrait_examples():
    p = tree.portrait(ODO, (A,), 2)
    assert p[()] == (1, 0)
    assert tree.section(ODO, (A,), (1,)) == (S(A),)
    assert tree.section(ODO, (A,), (0,)) == (S(E),)
    assert all(perm == (0, 1) for perm in tree.portrait(I2, (0, 1), 4).values())


def test_portrait_prefix_property():
    gs = fixtures.gupta_sidki()
    for qw in [(0,), (1,), (1, 2), (0, 1, 1)]:
        for d in range(1, 5):
            big, small = tree.portrait(gs, qw, d), tree.portrait(gs, qw, d - 1)
            assert {v: p for v, p in big.items() if len(v) < d - 1} == small


# free-group action -------------------------------------------------------------------


def test_act_on_signed_basics():
    assert tree.act_on_signed(I2, (0,), ()) == ()
    rng = random.Random(5)
    for _ in range(50):
        xw = free_reduce(tuple(S(rng.randrange(2), rng.choice((1, -1))) for _ in range(6)))
        assert tree.act_on_signed(I2, (rng.randrange(2),), xw) == xw
    with pytest.raises(NotReduced):
        tree.act_on_signed(I2, (0,), (S(0), S(0, -1)))
    with pytest.raises(NotBireversible):
        tree.act_on_signed(ODO, (A,), (S(0),))


def letter_pairing(a):
    names = a.letter_labels
    return tuple(names.index(n[:-2] if n.endswith("^-") else n + "^-") for n in names)


def test_equivariance_on_lattice(lattice_5_13):
    a = lattice_5_13
    lp = letter_pairing(a)
    rng = random.Random(13)
    for _ in range(100):
        qw = tuple(rng.randrange(a.state_count) for _ in range(rng.randint(0, 4)))
        w = tuple(rng.randrange(a.alphabet_size) for _ in range(rng.randint(0, 8)))
        folded = tree.fold_letters(w, lp)
        if not is_reduced(folded):
            continue
        assert tree.fold_letters(tree.apply_word(a, qw, w), lp) == tree.act_on_signed(a, qw, folded, lp)


def test_signed_rectangle_agrees_with_folding(lattice_5_13):
    """Crossing x^- in the complex is the same as crossing the letter paired with x."""
    a = lattice_5_13
    lp = letter_pairing(a)
    rng = random.Random(14)
    checked = 0
    for _ in range(200):
        qw = tuple(S(rng.randrange(a.state_count)) for _ in range(rng.randint(0, 4)))
        xs = free_reduce(tuple(S(rng.randrange(6), rng.choice((1, -1))) for _ in range(rng.randint(0, 8))))
        if not is_reduced(tree.fold_letters(xs, lp)):
            continue
        checked += 1
        assert tree.fold_letters(tree.rectangle(a, qw, xs).top, lp) == tree.act_on_signed(a, qw, xs, lp)
    assert checked > 100


def test_triviality_extends_to_free_group():
    """For bi-reversible automata, trivial on X* means trivial on reduced signed words."""
    rng = random.Random(2)
    for a in BIREV22:
        for qw in itertools.product(range(2), repeat=2):
            if not tree.acts_trivially(a, qw):
                continue
            for _ in range(20):
                xw = free_reduce(tuple(S(rng.randrange(2), rng.choice((1, -1))) for _ in range(6)))
                assert tree.act_on_signed(a, qw, xw) == xw
