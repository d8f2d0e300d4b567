"""Exact dense and sparse matrix helpers over Q(s, i).

Dense matrices are plain lists of Scalar rows; they stay small (at most
12x12 for the fusion block check).  Triple-tensor-space identities such as
the Yang-Baxter equation are checked with a sparse dict-of-rows product so
the 27-dimensional space costs nothing.  Determinants use fraction-free
Bareiss elimination.
"""

from __future__ import annotations

from bethelab.field import Scalar, SingularSystem


def zeros(n: int, m: int, d):
    z = Scalar(0, d=d)
    return [[z] * m for _ in range(n)]


def identity(n: int, d):
    z = Scalar(0, d=d)
    one = Scalar(1, d=d)
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            out_row.append(acc if acc is not None else row[0] * 0)
        out.append(out_row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        return False
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def transpose(a):
    return [list(col) for col in zip(*a)]


def kron(a, b):
    nb, mb = len(b), len(b[0])
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y for x in ra for y in rb])
    return out


def det_bareiss(a) -> Scalar:
    """Fraction-free determinant of a square Scalar matrix."""
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(row) for row in a]
    d = m[0][0].d
    sign = 1
    prev = Scalar(1, d=d)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not m[r][k].is_zero()),
                       None)
            if piv is None:
                return Scalar(0, d=d)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Scalar(0, d=d)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def rank(a) -> int:
    """Rank by exact Gaussian elimination (matrix may be rectangular)."""
    if not a:
        return 0
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def kernel_dimension(a) -> int:
    if not a:
        return 0
    return len(a[0]) - rank(a)


def solve_dense(a, rhs):
    """Solve a single system A x = rhs exactly."""
    from bethelab.field import solve_exact

    try:
        return solve_exact(a, [list(rhs)])[0]
    except SingularSystem:
        raise


# -- sparse helpers for tensor-space identities ------------------------


def sp_from_dense(a) -> dict:
    out = {}
    for i, row in enumerate(a):
        r = {j: x for j, x in enumerate(row) if not x.is_zero()}
        if r:
            out[i] = r
    return out


def sp_mul(a: dict, b: dict) -> dict:
    out = {}
    for i, arow in a.items():
        acc = {}
        for k, x in arow.items():
            brow = b.get(k)
            if not brow:
                continue
            for j, y in brow.items():
                v = x * y
                if j in acc:
                    acc[j] = acc[j] + v
                else:
                    acc[j] = v
        acc = {j: v for j, v in acc.items() if not v.is_zero()}
        if acc:
            out[i] = acc
    return out


def sp_eq(a: dict, b: dict) -> bool:
    return a == b


def sp_embed_pair(op, dims, sa: int, sb: int) -> dict:
    """Embed a two-site operator into the tensor product of `dims` spaces.

    `op` is dense of shape (dims[sa]*dims[sb])^2 with the sa factor as the
    left (slow) index; identity on every other factor.  Returns sparse.
    """
    n = len(dims)
    strides = [1] * n
    for k in range(n - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]
    total = strides[0] * dims[0]
    db = dims[sb]
    others = [k for k in range(n) if k not in (sa, sb)]

    out = {}

    def rec(idx, fixed):
        if idx == len(others):
            base = sum(strides[k] * v for k, v in fixed.items())
            for ia in range(dims[sa]):
                for ib in range(db):
                    row_full = base + strides[sa] * ia + strides[sb] * ib
                    r = {}
                    for ja in range(dims[sa]):
                        for jb in range(db):
                            w = op[ia * db + ib][ja * db + jb]
                            if not w.is_zero():
                                r[base + strides[sa] * ja + strides[sb] * jb] = w
                    if r:
                        out[row_full] = r
            return
        k = others[idx]
        for v in range(dims[k]):
            fixed[k] = v
            rec(idx + 1, fixed)
        del fixed[k]

    rec(0, {})
    assert total == strides[0] * dims[0]
    return out
