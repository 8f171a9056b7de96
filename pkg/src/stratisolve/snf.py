"""Smith normal form of integer matrices, with column change-of-basis.

Pure-Python, arbitrary precision.  Row operations are discarded (only the
row space matters for abelianization membership); column operations are
accumulated so that vectors can be tested against the row lattice.
"""

from __future__ import annotations


def smith_normal_form(rows: list[list[int]], ncols: int):
    """Return (diag, V) with U*A*V diagonal for unimodular U, V.

    diag has length min(len(rows), ncols) and satisfies d1 | d2 | ...;
    V is an ncols x ncols unimodular matrix (list of rows).
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = ncols
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        # dst += q * src
        mi, md = m[src], m[dst]
        for k in range(nc):
            md[k] += q * mi[k]

    def add_col(src, dst, q):
        for r in m:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def negate_col(i):
        for r in m:
            r[i] = -r[i]
        for r in v:
            r[i] = -r[i]

    t = 0
    while t < min(nr, nc):
        # find a pivot
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0:
                    if pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, nr):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            # clear row t
            for j in range(t + 1, nc):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if m[t][t] < 0:
            negate_col(t)
        # enforce divisibility of later entries by m[t][t]
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue  # redo elimination at the same t
        t += 1

    diag = [m[i][i] if i < nc else 0 for i in range(min(nr, nc))]
    return diag, v
