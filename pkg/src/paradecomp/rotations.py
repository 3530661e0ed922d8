"""Exact rational rotations generating a free group.

A rotation is stored as a 3x3 integer matrix ``num`` (row major tuple) plus a
power-of-five denominator exponent ``scale``; the real matrix is
num / 5**scale.  The two standard generators rotate by arccos(3/5) about the
z and x axes.  Everything stays in integer arithmetic, so identity tests and
freeness checks are exact rather than floating point.

Vectors live on the rational sphere: (x, y, z, k) stands for
(x, y, z) / 5**k with x^2 + y^2 + z^2 = 25**k, kept normalized so not all of
x, y, z are divisible by 5 when k > 0.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadLetterError, FreeActionViolationError
from .words import ALPHABET, IDENTITY, reduce_word

_ID9 = (1, 0, 0, 0, 1, 0, 0, 0, 1)


class Rotation:
    __slots__ = ("num", "scale")

    def __init__(self, num, scale, _normalized=False):
        num = tuple(num)
        if not _normalized:
            while scale > 0 and all(v % 5 == 0 for v in num):
                num = tuple(v // 5 for v in num)
                scale -= 1
        self.num = num
        self.scale = scale

    def __mul__(self, other: "Rotation") -> "Rotation":
        a, b = self.num, other.num
        out = []
        for i in (0, 3, 6):
            r0, r1, r2 = a[i], a[i + 1], a[i + 2]
            for j in (0, 1, 2):
                out.append(r0 * b[j] + r1 * b[3 + j] + r2 * b[6 + j])
        return Rotation(out, self.scale + other.scale)

    def transpose(self) -> "Rotation":
        n = self.num
        return Rotation(
            (n[0], n[3], n[6], n[1], n[4], n[7], n[2], n[5], n[8]),
            self.scale,
            _normalized=True,
        )

    # rotations are orthogonal, so transpose is inverse
    inverse = transpose

    def is_identity(self) -> bool:
        return self.scale == 0 and self.num == _ID9

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Rotation)
            and self.scale == other.scale
            and self.num == other.num
        )

    def __hash__(self):
        return hash((self.num, self.scale))

    def entries(self):
        d = 5 ** self.scale
        return [[Fraction(self.num[3 * i + j], d) for j in range(3)] for i in range(3)]

    def is_orthogonal(self) -> bool:
        n, s = self.num, self.scale
        target = 25 ** s
        for i in (0, 3, 6):
            for j in (0, 3, 6):
                dot = n[i] * n[j] + n[i + 1] * n[j + 1] + n[i + 2] * n[j + 2]
                if dot != (target if i == j else 0):
                    return False
        det = (
            n[0] * (n[4] * n[8] - n[5] * n[7])
            - n[1] * (n[3] * n[8] - n[5] * n[6])
            + n[2] * (n[3] * n[7] - n[4] * n[6])
        )
        return det == 5 ** (3 * s)

    def __repr__(self):
        return f"Rotation({self.num}, scale={self.scale})"


ROT_A = Rotation((3, -4, 0, 4, 3, 0, 0, 0, 5), 1, _normalized=True)
ROT_B = Rotation((5, 0, 0, 0, 3, -4, 0, 4, 3), 1, _normalized=True)

_LETTER = {
    "a": ROT_A,
    "A": ROT_A.transpose(),
    "b": ROT_B,
    "B": ROT_B.transpose(),
}

ROTATION_IDENTITY = Rotation(_ID9, 0, _normalized=True)

_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}


def letter_rotation(c: str) -> Rotation:
    try:
        return _LETTER[c]
    except KeyError:
        raise BadLetterError(f"not a generator letter: {c!r}", letter=c) from None


def word_rotation(w: str) -> Rotation:
    out = ROTATION_IDENTITY
    for c in reduce_word(w):
        out = out * _LETTER[c]
    return out


def standard_free_rotations() -> dict[str, Rotation]:
    return dict(_LETTER)


def shortest_identity_word(max_len: int) -> str | None:
    """Search reduced nonidentity words up to max_len for one acting trivially.

    Returns the offending word, or None when the generators act freely out to
    that length.  Iterative DFS over the reduced-word tree; matrices along the
    current branch are kept on the stack so each step is one product.
    """
    if max_len <= 0:
        return None
    stack = [(IDENTITY, ROTATION_IDENTITY)]
    while stack:
        w, rot = stack.pop()
        for c in reversed(ALPHABET):
            if w and w[-1] == _INV[c]:
                continue
            nw = w + c
            nrot = rot * _LETTER[c]
            if nrot.is_identity():
                return nw
            if len(nw) < max_len:
                stack.append((nw, nrot))
    return None


def assert_free(max_len: int) -> None:
    w = shortest_identity_word(max_len)
    if w is not None:
        raise FreeActionViolationError(
            f"reduced word acts as identity: {w}", word=w, length=len(w)
        )


def normalize_point(x: int, y: int, z: int, k: int) -> tuple[int, int, int, int]:
    while k > 0 and x % 5 == 0 and y % 5 == 0 and z % 5 == 0:
        x, y, z, k = x // 5, y // 5, z // 5, k - 1
    return (x, y, z, k)


def is_unit_point(p: tuple[int, int, int, int]) -> bool:
    x, y, z, k = p
    return x * x + y * y + z * z == 25 ** k


def apply_to_point(rot: Rotation, p: tuple[int, int, int, int]):
    x, y, z, k = p
    n = rot.num
    return normalize_point(
        n[0] * x + n[1] * y + n[2] * z,
        n[3] * x + n[4] * y + n[5] * z,
        n[6] * x + n[7] * y + n[8] * z,
        k + rot.scale,
    )


BASE_POINT = (0, 1, 0, 0)
