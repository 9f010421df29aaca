"""Rank-2 root and Weyl-word combinatorics.

The generalized Cartan matrix is [[2, -m], [-m, 2]] with m >= 2 (m = 2 is the
affine case, m >= 3 hyperbolic).  Roots live in the basis of the two simple
roots and are stored as integer pairs (a, b); Python integers keep the
hyperbolic orbits exact, whose coordinates grow like Chebyshev recurrences.
Weyl words are strings over "1" and "2".

Conventions, fixed once and used everywhere:

* `act(word, r)` applies letters right to left, so "12" means w1(w2(r)).
* The word written with its first character c therefore has w_c as the
  outermost reflection, and the inversion set of such a reduced word is the
  length-l(w) prefix of the positive chain attached to c.
* Each of the two real-root families splits into a positive chain (height
  ascending) and a negative chain (|height| ascending), exposed separately by
  `delta_re_stream`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

Root = Tuple[int, int]


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetric rank-2 generalized Cartan matrix, determined by m >= 2."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("off-diagonal parameter m must be >= 2")

    @property
    def affine(self) -> bool:
        return self.m == 2

    def rows(self):
        return ((2, -self.m), (-self.m, 2))


AFFINE = CartanMatrix(2)


def reflect(i: int, r: Root, A: CartanMatrix) -> Root:
    """Simple reflection w_i applied to a vector in root coordinates."""
    a, b = r
    if i == 1:
        return (A.m * b - a, b)
    if i == 2:
        return (a, A.m * a - b)
    raise ValueError("reflection index must be 1 or 2")


def reduce_word(word: str) -> str:
    """Reduced form of a word: repeated deletion of equal adjacent letters.

    In the infinite dihedral group there are no braid relations, so this
    normal form (an alternating word) is unique.
    """
    out = []
    for ch in word:
        if ch not in "12":
            raise ValueError("word letters must be '1' or '2'")
        if out and out[-1] == ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def is_reduced(word: str) -> bool:
    return reduce_word(word) == word


def word_length(word: str) -> int:
    return len(reduce_word(word))


def act(word: str, r: Root, A: CartanMatrix) -> Root:
    """Apply a Weyl word to a root, letters right to left ("12" = w1 o w2)."""
    for ch in reversed(word):
        r = reflect(int(ch), r, A)
    return r


def quadratic_form(r: Root, A: CartanMatrix) -> int:
    """a^2 + b^2 - m*a*b; equals 1 exactly on real roots."""
    a, b = r
    return a * a + b * b - A.m * a * b


def is_real_root(r: Root, A: CartanMatrix) -> bool:
    return quadratic_form(r, A) == 1


def is_positive(r: Root) -> bool:
    a, b = r
    return a >= 0 and b >= 0 and (a, b) != (0, 0)


def is_negative(r: Root) -> bool:
    a, b = r
    return a <= 0 and b <= 0 and (a, b) != (0, 0)


def height(r: Root) -> int:
    return r[0] + r[1]


SIMPLE = {1: (1, 0), 2: (0, 1)}


def _chain(first_letter: int, start_root: Root, step_word: str, count: int,
           A: CartanMatrix, negate: bool):
    """First `count` elements of a reflection chain.

    The chain alternates which simple root is being reflected; consecutive
    elements two apart are translates by the length-2 element `step_word`.
    """
    out = []
    if count <= 0:
        return out
    i = first_letter
    a0 = start_root
    a1 = reflect(i, SIMPLE[3 - i], A)
    pair = [a0, a1]
    k = 0
    while len(out) < count:
        r = pair[k % 2]
        out.append((-r[0], -r[1]) if negate else r)
        if k % 2 == 1:
            pair[0] = act(step_word, pair[0], A)
            pair[1] = act(step_word, pair[1], A)
        k += 1
    return out


def delta_re_stream(i: int, count: int, A: CartanMatrix, part: str = "negative"):
    """Ordered prefix of one real-root family.

    part="positive": alpha_i, w_i(alpha_{3-i}), w_i w_{3-i}(alpha_i), ...
    (height ascending).  part="negative": -alpha_{3-i}, -w_{3-i}(alpha_i), ...
    (|height| ascending).  The union of both parts over i = 1, 2 exhausts all
    real roots.
    """
    if i not in (1, 2):
        raise ValueError("family index must be 1 or 2")
    if count < 0:
        raise ValueError("count must be nonnegative")
    if part == "positive":
        step = str(i) + str(3 - i)
        return _chain(i, SIMPLE[i], step, count, A, negate=False)
    if part == "negative":
        j = 3 - i
        step = str(j) + str(i)
        return _chain(j, SIMPLE[j], step, count, A, negate=True)
    raise ValueError("part must be 'positive' or 'negative'")


def inversion_set(word: str, A: CartanMatrix) -> frozenset:
    """S+_w: positive roots sent negative by w^-1 (word must be reduced).

    Computed from the definition: candidates are drawn from the two positive
    chains and filtered by the sign of w^-1(beta).  The cardinality must come
    out equal to the word length, which certifies the candidate pool was
    large enough.
    """
    if not is_reduced(word):
        raise ValueError("inversion_set requires a reduced word")
    n = len(word)
    if n == 0:
        return frozenset()
    inv = word[::-1]
    found = []
    for fam in (1, 2):
        for beta in delta_re_stream(fam, n + 2, A, "positive"):
            if is_negative(act(inv, beta, A)):
                found.append(beta)
    result = frozenset(found)
    if len(result) != n:
        raise AssertionError("inversion set size %d != length %d" % (len(result), n))
    return result


def inversion_set_recursive(word: str, A: CartanMatrix) -> frozenset:
    """S+_w by the peeling recursion S+_{w_c w'} = {alpha_c} u w_c(S+_{w'})."""
    if not is_reduced(word):
        raise ValueError("inversion_set_recursive requires a reduced word")
    if not word:
        return frozenset()
    c = int(word[0])
    rest = inversion_set_recursive(word[1:], A)
    return frozenset({SIMPLE[c]} | {reflect(c, beta, A) for beta in rest})


def check_inversion_containment(word: str, A: CartanMatrix) -> bool:
    """Whether S+_w lies inside the real-root family of w's outermost letter.

    The outermost reflection is the first character under this package's
    right-to-left application convention; the containment is exact, with the
    inversion set equal to a prefix of that family's positive chain.
    """
    if not is_reduced(word):
        raise ValueError("check_inversion_containment requires a reduced word")
    if not word:
        return True
    fam = int(word[0])
    S = inversion_set(word, A)
    prefix = set(delta_re_stream(fam, len(S) + 2, A, "positive"))
    return S <= prefix


def haar_index_exponent(i: int, n: int, A: CartanMatrix = AFFINE) -> int:
    """Number of positive chain-i roots displaced by the translation (w_i w_{3-i})^n.

    A root is displaced when its preimage under the translation is negative;
    the count is obtained by scanning the chain, not by a closed form.
    """
    if i not in (1, 2):
        raise ValueError("family index must be 1 or 2")
    if n < 0:
        raise ValueError("translation power must be nonnegative")
    if n == 0:
        return 0
    inv_word = (str(i) + str(3 - i))[::-1] * n
    window = 2 * n + 6
    chain = delta_re_stream(i, window, A, "positive")
    displaced = [beta for beta in chain if is_negative(act(inv_word, beta, A))]
    # displaced roots form a prefix of the chain; anything later is a bug
    for beta in chain[len(displaced):]:
        if is_negative(act(inv_word, beta, A)):
            raise AssertionError("displaced root outside the chain prefix")
    return len(displaced)


def root_partition(word: str, depth: int, A: CartanMatrix):
    """Split the depth-truncated positive real roots as S+_w and its complement.

    The truncation takes the first `depth` elements of both positive chains;
    `depth` must be at least the word length so the inversion set fits inside.
    """
    if not is_reduced(word):
        raise ValueError("root_partition requires a reduced word")
    if depth < len(word):
        raise ValueError("depth must be at least the word length")
    S = inversion_set(word, A)
    trunc = set(delta_re_stream(1, depth, A, "positive"))
    trunc |= set(delta_re_stream(2, depth, A, "positive"))
    if not S <= trunc:
        raise AssertionError("inversion set escapes the truncation")
    return S, frozenset(trunc - S)


def reduced_words_up_to(length: int) -> Iterable[str]:
    """All reduced (alternating) words of length <= `length`, identity included."""
    yield ""
    for n in range(1, length + 1):
        for start in ("1", "2"):
            yield "".join(start if k % 2 == 0 else ("2" if start == "1" else "1")
                          for k in range(n))
