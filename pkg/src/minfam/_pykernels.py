"""Pure-Python versions of the hot kernels.

Same signatures and outputs as the compiled module ``_ckernels``; used when
the extension is not built or ``MINFAM_PURE_PYTHON=1`` is set.
"""

from math import isqrt


def _h_range(r: int, s: int, k: int):
    # Cauchy-Schwarz on the Q-part: (k - 3h)^2 <= r (h^2 - s), a quadratic in h
    a = 9 - r
    if a > 0:
        disc = 36 * k * k - 4 * a * (k * k + r * s)
        if disc < 0:
            return range(0)
        root = isqrt(disc)
        return range((6 * k - root) // (2 * a) - 1, (6 * k + root) // (2 * a) + 2)
    # r = 9 never reaches here; kept for clarity
    raise ValueError("unbounded search")


def short_vectors(r: int, s: int, k: int) -> list:
    """All ``(h, c1..cr)`` with ``h^2 - sum c^2 = s`` and ``3h + sum c = k``.

    Returned in ascending lexicographic order.
    """
    out = []
    buf = [0] * r

    def rec(i, rem_sum, rem_sq):
        left = r - i
        if left == 0:
            if rem_sum == 0 and rem_sq == 0:
                out.append((h,) + tuple(buf))
            return
        if rem_sum * rem_sum > left * rem_sq:
            return
        m = isqrt(rem_sq)
        for c in range(-m, m + 1):
            buf[i] = c
            rec(i + 1, rem_sum - c, rem_sq - c * c)

    if r == 0:
        return [(h,) for h in _h_range(0, s, k) if h * h == s and 3 * h == k]
    for h in _h_range(r, s, k):
        t = h * h - s
        if t < 0:
            continue
        rec(0, k - 3 * h, t)
    return out


def count_simple_systems(compat) -> int:
    """Number of subsets (including the empty one) that are pairwise compatible.

    ``compat`` is a square 0/1 matrix (nested sequences or a numpy array) whose
    row order is the candidate order; subsets are counted once each.
    """
    n = len(compat)
    rows = [[bool(compat[i][j]) for j in range(n)] for i in range(n)]
    total = 0
    stack = [list(range(n))]
    while stack:
        cands = stack.pop()
        total += 1
        for idx, j in enumerate(cands):
            row = rows[j]
            stack.append([x for x in cands[idx + 1:] if row[x]])
    return total


def collect_simple_systems(compat, max_size: int = -1) -> list:
    """All pairwise-compatible index tuples, in lexicographic order.

    ``max_size`` limits the tuple length (negative means no limit).
    """
    n = len(compat)
    rows = [[bool(compat[i][j]) for j in range(n)] for i in range(n)]
    out = []

    def rec(chosen, cands):
        out.append(tuple(chosen))
        if len(chosen) == max_size:
            return
        for idx, j in enumerate(cands):
            row = rows[j]
            chosen.append(j)
            rec(chosen, [x for x in cands[idx + 1:] if row[x]])
            chosen.pop()

    rec([], list(range(n)))
    return out
