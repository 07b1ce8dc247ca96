"""Words in a free group: tuples of nonzero ints, -g meaning the inverse of g."""

from __future__ import annotations


def free_reduce(word) -> tuple:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def invert(word) -> tuple:
    return tuple(-x for x in reversed(word))


def canonical(word) -> tuple:
    """Least rotation of the word or its inverse; identifies relators that
    define the same normal closure generator."""
    w = cyclic_reduce(word)
    if not w:
        return w
    best = None
    for cand in (w, invert(w)):
        for k in range(len(cand)):
            r = cand[k:] + cand[:k]
            if best is None or r < best:
                best = r
    return best


def exponent_sums(word, generator_count: int) -> list[int]:
    row = [0] * generator_count
    for x in word:
        row[abs(x) - 1] += 1 if x > 0 else -1
    return row


def evaluate(word, images, inverses=None, identity=None):
    """Image of a word under ``generator -> images[g-1]``."""
    if inverses is None:
        inverses = [g.inverse() for g in images]
    out = identity
    for x in word:
        m = images[x - 1] if x > 0 else inverses[-x - 1]
        out = m if out is None else out * m
    if out is None:
        raise ValueError("empty word needs an explicit identity")
    return out
