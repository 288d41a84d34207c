"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled versions in ``_ckernels.pyx``:

``cur`` / ``img``
    ``N x n`` int64 arrays with the coordinates of every state and of its
    image.
``weights`` / ``levels``
    mixed-radix place values and maximal levels, length ``n``.
``defined``
    uint8 mask of length ``N``; states outside it are not vertices.
"""
import numpy as np


def async_successors(cur, img, weights, defined):
    """CSR adjacency ``(indptr, indices)`` of the asynchronous dynamics.

    Successors of each state are sorted by rank.
    """
    N, n = cur.shape
    r = np.arange(N, dtype=np.int64)
    d = np.sign(img - cur)
    targets = r[:, None] + d * weights[None, :]
    ok = (d != 0) & defined.astype(bool)[:, None]
    ok &= defined.astype(bool)[np.where(ok, targets, 0)]
    src = np.broadcast_to(r[:, None], d.shape)[ok]
    dst = targets[ok]
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=N), out=indptr[1:])
    return indptr, np.ascontiguousarray(dst, dtype=np.int64)


def terminal_sccs(indptr, indices, defined):
    """Iterative Tarjan; returns ``(component id per state, terminal flag per component)``.

    States outside ``defined`` get component ``-1``.
    """
    N = len(indptr) - 1
    indptr = indptr.tolist()
    indices = indices.tolist()
    defined = [bool(v) for v in defined]
    index = [-1] * N
    low = [0] * N
    onstack = [False] * N
    comp = [-1] * N
    stack = []
    counter = 0
    ncomp = 0
    for root in range(N):
        if not defined[root] or index[root] >= 0:
            continue
        work = [(root, indptr[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, pos = work[-1]
            end = indptr[v + 1]
            descended = False
            while pos < end:
                w = indices[pos]
                pos += 1
                if index[w] < 0:
                    work[-1] = (v, pos)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, indptr[w]))
                    descended = True
                    break
                if onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    terminal = [1] * ncomp
    for v in range(N):
        c = comp[v]
        if c < 0:
            continue
        for k in range(indptr[v], indptr[v + 1]):
            if comp[indices[k]] != c:
                terminal[c] = 0
                break
    return np.asarray(comp, dtype=np.int64), np.asarray(terminal, dtype=np.uint8)


def local_edges(cur, img, weights, levels, defined, states):
    """All local interaction-graph edges at the given states.

    Returns an ``E x 5`` int64 array of rows
    ``(state, j, i, sign, variation)`` with 0-based components, sorted by
    state, then ``j``, then variation (-1 first), then ``i``.
    """
    states = np.asarray(states, dtype=np.int64)
    N, n = cur.shape
    defd = defined.astype(bool)
    chunks = []
    for j in range(n):
        for s1 in (-1, 1):
            nxt = cur[states, j] + s1
            ok = (nxt >= 0) & (nxt <= levels[j])
            nb = states + s1 * weights[j]
            ok &= defd[np.where(ok, nb, 0)]
            st, nb = states[ok], nb[ok]
            s = s1 * np.sign(img[nb] - img[st])
            rows, cols = np.nonzero(s)
            if rows.size:
                out = np.empty((rows.size, 5), dtype=np.int64)
                out[:, 0] = st[rows]
                out[:, 1] = j
                out[:, 2] = cols
                out[:, 3] = s[rows, cols]
                out[:, 4] = s1
                chunks.append(out)
    if not chunks:
        return np.empty((0, 5), dtype=np.int64)
    out = np.concatenate(chunks)
    order = np.lexsort((out[:, 2], out[:, 4], out[:, 1], out[:, 0]))
    return np.ascontiguousarray(out[order])
