import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from paradecomp.errors import BadLetterError, FreeActionViolationError
from paradecomp.rotations import (
    ROT_A,
    ROT_B,
    ROTATION_IDENTITY,
    Rotation,
    apply_to_point,
    assert_free,
    is_unit_point,
    letter_rotation,
    normalize_point,
    shortest_identity_word,
    word_rotation,
)
from paradecomp.words import (
    inv,
    is_reduced,
    iter_reduced,
    left_mul_letter,
    mul,
    reduce_word,
    word_key,
)

from oracles import scan_reduce, word_matrix_fraction

words_st = st.text(alphabet="aAbB", max_size=24)
# mul/inv take reduced words; the raw strategy exists to exercise reduce_word
reduced_st = words_st.map(scan_reduce)


@given(words_st)
def test_reduce_matches_scan_oracle(w):
    r = reduce_word(w)
    assert r == scan_reduce(w)
    assert is_reduced(r)


@given(reduced_st, reduced_st)
def test_mul_is_concat_then_reduce(u, v):
    assert mul(u, v) == scan_reduce(u + v)


@given(reduced_st)
def test_inverse_cancels(w):
    assert mul(w, inv(w)) == ""
    assert mul(inv(w), w) == ""


@given(words_st)
def test_left_mul_letter_agrees_with_mul(w):
    r = reduce_word(w)
    for c in "aAbB":
        assert left_mul_letter(c, r) == mul(c, r)


def test_word_key_is_shortlex():
    ws = ["", "a", "A", "b", "B", "aa", "ab", "aB", "Ab", "ba"]
    assert sorted(ws, key=word_key) == [
        "",
        "a",
        "A",
        "b",
        "B",
        "aa",
        "ab",
        "aB",
        "Ab",
        "ba",
    ]


def test_iter_reduced_counts():
    # 1 + 4 * 3^(k-1) reduced words of length exactly k
    words = list(iter_reduced(4))
    assert len(words) == 1 + 4 + 12 + 36 + 108
    assert len(set(words)) == len(words)
    assert all(is_reduced(w) for w in words)
    # enumeration follows the canonical key order
    assert words == sorted(words, key=word_key)


def test_generator_matrices_are_exact():
    assert ROT_A.num == (3, -4, 0, 4, 3, 0, 0, 0, 5) and ROT_A.scale == 1
    assert ROT_B.num == (5, 0, 0, 0, 3, -4, 0, 4, 3) and ROT_B.scale == 1
    for rot in (ROT_A, ROT_B):
        assert rot.is_orthogonal()
    assert (ROT_A * ROT_A.inverse()).is_identity()
    with pytest.raises(BadLetterError):
        letter_rotation("x")


@given(st.text(alphabet="aAbB", min_size=0, max_size=12))
def test_word_rotation_matches_fraction_oracle(w):
    got = word_rotation(w).entries()
    want = word_matrix_fraction(reduce_word(w))
    assert [cell for row in got for cell in row] == list(want)


def test_rotation_normalization_strips_common_fives():
    r = Rotation((5, 0, 0, 0, 5, 0, 0, 0, 5), 1)
    assert r.scale == 0 and r.num == (1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert r == ROTATION_IDENTITY


def test_freeness_small_lengths():
    assert shortest_identity_word(8) is None
    assert_free(8)


def test_orthogonality_of_random_words_exact():
    rng = random.Random(17)
    flip = {"a": "A", "A": "a", "b": "B", "B": "b"}
    for _ in range(100):
        out = []
        for _ in range(rng.randint(1, 40)):
            c = rng.choice("aAbB")
            while out and out[-1] == flip[c]:
                c = rng.choice("aAbB")
            out.append(c)
        rot = word_rotation("".join(out))
        assert rot.is_orthogonal()
        assert not rot.is_identity()


def test_point_normalization_and_unit_check():
    assert normalize_point(0, 25, 0, 2) == (0, 1, 0, 0)
    assert normalize_point(3, 4, 0, 1) == (3, 4, 0, 1)
    assert is_unit_point((0, 1, 0, 0))
    assert is_unit_point((3, 4, 0, 1))
    assert not is_unit_point((1, 1, 0, 0))


def test_apply_to_point_walks_the_sphere():
    p = (0, 1, 0, 0)
    q = apply_to_point(ROT_A, p)
    assert q == (-4, 3, 0, 1)
    assert is_unit_point(q)
    back = apply_to_point(ROT_A.inverse(), q)
    assert back == p


def test_assert_free_raises_with_broken_generator(monkeypatch):
    # a finite-order rotation in place of ROT_A must be caught
    import paradecomp.rotations as rot_mod

    flipped = Rotation((-1, 0, 0, 0, -1, 0, 0, 0, 1), 0)
    monkeypatch.setitem(rot_mod._LETTER, "a", flipped)
    monkeypatch.setitem(rot_mod._LETTER, "A", flipped)
    with pytest.raises(FreeActionViolationError) as ei:
        assert_free(4)
    assert ei.value.details["word"] == "aa"
