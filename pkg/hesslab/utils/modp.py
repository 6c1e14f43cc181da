"""Small dense linear algebra over F_p on numpy int64 arrays."""

from functools import lru_cache
from typing import List, Tuple
import numpy as np


def rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of `a` mod p and its pivot columns."""
    r = np.array(a, dtype=np.int64) % p
    rows, cols = r.shape
    pivots: List[int] = []
    lead = 0
    for c in range(cols):
        if lead == rows:
            break
        nonzero = np.nonzero(r[lead:, c])[0]
        if nonzero.size == 0:
            continue
        swap = lead + int(nonzero[0])
        if swap != lead:
            r[[lead, swap]] = r[[swap, lead]]
        r[lead] = (r[lead] * pow(int(r[lead, c]), -1, p)) % p
        factors = r[:, c].copy()
        factors[lead] = 0
        r = (r - np.outer(factors, r[lead])) % p
        pivots.append(c)
        lead += 1
    return r, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {v : a v = 0} over F_p."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    cols = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, c in enumerate(pivots):
            basis[t, c] = (-r[row, f]) % p
    return basis


@lru_cache(maxsize=None)
def projective_points(dim: int, p: int) -> np.ndarray:
    """Normalised representatives of P^(dim-1)(F_p): first nonzero coordinate is 1."""
    blocks = []
    for lead in range(dim):
        free = dim - lead - 1
        tails = digits(np.arange(p ** free, dtype=np.int64), free, p)
        block = np.zeros((tails.shape[0], dim), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tails
        blocks.append(block)
    points = np.concatenate(blocks) if blocks else np.zeros((0, dim), dtype=np.int64)
    points.setflags(write=False)
    return points


def digits(indices: np.ndarray, width: int, p: int) -> np.ndarray:
    """Base-p digits of each index, most significant first."""
    powers = p ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % p


def batch_rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-reduce a stack of matrices mod p at once.

    Returns the reduced stack, the rank of each matrix and its pivot columns
    (padded with -1 past the rank).
    """
    r = np.array(a, dtype=np.int64) % p
    count, rows, cols = r.shape
    inverse = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    lead = np.zeros(count, dtype=np.int64)
    pivots = np.full((count, rows), -1, dtype=np.int64)
    positions = np.arange(rows)[None, :]
    for c in range(cols):
        if (lead == rows).all():
            break
        open_rows = (positions >= lead[:, None]) & (r[:, :, c] != 0)
        b = np.nonzero(open_rows.any(axis=1))[0]
        if b.size == 0:
            continue
        src = open_rows[b].argmax(axis=1)
        dst = lead[b]
        chosen = r[b, src]
        r[b, src] = r[b, dst]
        chosen = (chosen * inverse[chosen[:, c]][:, None]) % p
        r[b, dst] = chosen
        factors = r[b, :, c]
        factors[np.arange(b.size), dst] = 0
        r[b] = (r[b] - factors[:, :, None] * chosen[:, None, :]) % p
        pivots[b, dst] = c
        lead[b] += 1
    return r, lead, pivots


def batch_nullspace(reduced: np.ndarray, pivots: np.ndarray, p: int) -> np.ndarray:
    """Nullspace bases for a stack of reduced full-row-rank matrices, one stack entry per matrix."""
    count, rows, cols = reduced.shape
    is_pivot = np.zeros((count, cols), dtype=bool)
    is_pivot[np.arange(count)[:, None], pivots] = True
    free = np.nonzero(~is_pivot)[1].reshape(count, cols - rows)
    basis = np.zeros((count, cols - rows, cols), dtype=np.int64)
    b = np.arange(count)[:, None]
    t = np.arange(cols - rows)[None, :]
    basis[b, t, free] = 1
    for row in range(rows):
        values = np.take_along_axis(reduced[:, row, :], free, axis=1)
        basis[b, t, pivots[:, row][:, None]] = (-values) % p
    return basis
