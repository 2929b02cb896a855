"""k-Stirling permutation words and their statistics.

A word is any sequence of positive integer labels; it is k-Stirling when
every label present occurs exactly k times and between two equal letters
every letter is >= that letter.  Words are passed around as plain tuples,
with k supplied alongside; functions return tuples.  The canonical family
Q_n(k) lives on the labels 1..n, but every statistic and bijection works
over an arbitrary finite label set.

Text form: labels concatenated with no separator when all are single digit
("1221"), dot-separated otherwise ("10.9.9.10").

Ordinary permutations of 1..n appear in one-line notation as sequences.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Sequence

from .polyx import IntPolynomial

Word = tuple[int, ...]

DEFAULT_MAX_OBJECTS = 10**7
_PERM_GUARD = 10


class LimitError(RuntimeError):
    """An enumeration would exceed the configured object ceiling."""


def count_k_stirling(n: int, k: int) -> int:
    """|Q_n(k)| = product of (ik + 1) for i = 0..n-1."""
    count = 1
    for i in range(n):
        count *= i * k + 1
    return count


def stirling_violation(word: Sequence[int], k: int) -> str | None:
    """Reason the word fails to be k-Stirling, or None if it is one."""
    counts: dict[int, int] = {}
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, a in enumerate(word):
        counts[a] = counts.get(a, 0) + 1
        first.setdefault(a, i)
        last[a] = i
    for a, c in counts.items():
        if c != k:
            return f"label {a} occurs {c} times, expected {k}"
    for a in counts:
        lo, hi = first[a], last[a]
        for i in range(lo + 1, hi):
            if word[i] < a:
                return f"letter {word[i]} at position {i} lies between two {a}'s"
    return None


def is_k_stirling(word: Sequence[int], k: int) -> bool:
    return stirling_violation(word, k) is None


def require_k_stirling(word: Sequence[int], k: int) -> Word:
    reason = stirling_violation(word, k)
    if reason is not None:
        raise ValueError(f"not a {k}-Stirling word: {reason}")
    return tuple(word)


def enumerate_k_stirling(
    n: int, k: int, max_objects: int = DEFAULT_MAX_OBJECTS
) -> Iterator[Word]:
    """All words of Q_n(k), in gap-insertion order.

    Words of order n arise from each word of order n-1 by inserting the block
    n^k into each of the k(n-1)+1 gaps, left to right; order is deterministic.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if count_k_stirling(n, k) > max_objects:
        raise LimitError(
            f"|Q_{n}({k})| = {count_k_stirling(n, k)} exceeds ceiling {max_objects}"
        )
    level: list[Word] = [()]
    for i in range(1, n):
        block = (i,) * k
        level = [w[:g] + block + w[g:] for w in level for g in range(len(w) + 1)]
    if n == 0:
        yield ()
        return
    block = (n,) * k
    for w in level:
        for g in range(len(w) + 1):
            yield w[:g] + block + w[g:]


def stat_ap(word: Sequence[int], k: int) -> int:
    """Number of indices i with word[i] < word[i+1] = ... = word[i+k]."""
    count = 0
    for j in range(1, len(word) - k + 1):
        if word[j - 1] < word[j] and all(word[j + t] == word[j] for t in range(1, k)):
            count += 1
    return count


def stat_lap(word: Sequence[int], k: int) -> int:
    """Ascent-plateau count of the word with a 0 patched in front."""
    return stat_ap((0,) + tuple(word), k)


def starts_with_plateau(word: Sequence[int], k: int) -> bool:
    """True when the first k letters are equal (empty word counts as True)."""
    return all(word[t] == word[0] for t in range(1, min(k, len(word))))


def word_class(word: Sequence[int], k: int) -> dict:
    """Membership record: first-k-equal (bar), starts-at-minimum (tilde).

    The complement of in_bar is membership in the hat class.  The empty word
    is taken to lie in the bar and tilde classes.
    """
    in_bar = starts_with_plateau(word, k)
    in_tilde = not word or word[0] == min(word)
    return {
        "in_bar": in_bar,
        "in_tilde": in_tilde,
        "starts_with_plateau": in_bar,
    }


def word_to_text(word: Sequence[int]) -> str:
    if any(a >= 10 for a in word):
        return ".".join(str(a) for a in word)
    return "".join(str(a) for a in word)


def word_from_text(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    if "." in text:
        parts = text.split(".")
    else:
        parts = list(text)
    try:
        word = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed word text: {text!r}") from None
    if any(a <= 0 for a in word):
        raise ValueError(f"labels must be positive: {text!r}")
    return word


def perm_exc_cyc(p: Sequence[int]) -> dict:
    """Excedance and cycle counts of a permutation in one-line notation."""
    n = len(p)
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..n")
    exc = sum(1 for i, v in enumerate(p) if v > i + 1)
    seen = [False] * (n + 1)
    cyc = 0
    for s in range(1, n + 1):
        if not seen[s]:
            cyc += 1
            j = s
            while not seen[j]:
                seen[j] = True
                j = p[j - 1]
    return {"exc": exc, "cyc": cyc}


def exc_cyc_polynomial(n: int, k: int) -> IntPolynomial:
    """Sum over all permutations of x^exc weighted by k^(n - cyc)."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n > _PERM_GUARD:
        raise LimitError(f"n = {n} exceeds the S_n census guard {_PERM_GUARD}")
    coeffs = [0] * (n + 1)
    for p in permutations(range(1, n + 1)):
        rec = perm_exc_cyc(p)
        coeffs[rec["exc"]] += k ** (n - rec["cyc"])
    return IntPolynomial(coeffs)


def descent_polynomial(n: int) -> IntPolynomial:
    """Classical descent-count polynomial over all permutations of 1..n."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n > _PERM_GUARD:
        raise LimitError(f"n = {n} exceeds the S_n census guard {_PERM_GUARD}")
    coeffs = [0] * max(n, 1)
    for p in permutations(range(1, n + 1)):
        des = sum(1 for i in range(n - 1) if p[i] > p[i + 1])
        coeffs[des] += 1
    return IntPolynomial(coeffs)
