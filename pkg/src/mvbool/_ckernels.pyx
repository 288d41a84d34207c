# Compiled versions of the kernels in _fallback.py; keep the contracts identical.
import numpy as np

from libc.stdint cimport int64_t, uint8_t


cdef inline int64_t _sign(int64_t a) nogil:
    return (a > 0) - (a < 0)


def async_successors(const int64_t[:, ::1] cur, const int64_t[:, ::1] img,
                     const int64_t[::1] weights, const uint8_t[::1] defined):
    cdef Py_ssize_t N = cur.shape[0], n = cur.shape[1]
    cdef Py_ssize_t r, i, k, count = 0
    cdef int64_t d, t
    indptr_arr = np.zeros(N + 1, dtype=np.int64)
    cdef int64_t[::1] indptr = indptr_arr
    for r in range(N):
        if defined[r]:
            for i in range(n):
                d = _sign(img[r, i] - cur[r, i])
                if d != 0 and defined[r + d * weights[i]]:
                    count += 1
        indptr[r + 1] = count
    indices_arr = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] indices = indices_arr
    k = 0
    with nogil:
        for r in range(N):
            if not defined[r]:
                continue
            # weights decrease with i: decrements in ascending i, then
            # increments in descending i, gives ascending target ranks
            for i in range(n):
                d = _sign(img[r, i] - cur[r, i])
                if d < 0:
                    t = r - weights[i]
                    if defined[t]:
                        indices[k] = t
                        k += 1
            for i in range(n - 1, -1, -1):
                d = _sign(img[r, i] - cur[r, i])
                if d > 0:
                    t = r + weights[i]
                    if defined[t]:
                        indices[k] = t
                        k += 1
    return indptr_arr, indices_arr


def terminal_sccs(const int64_t[::1] indptr, const int64_t[::1] indices,
                  const uint8_t[::1] defined):
    cdef Py_ssize_t N = indptr.shape[0] - 1
    index_arr = np.full(N, -1, dtype=np.int64)
    low_arr = np.zeros(N, dtype=np.int64)
    onstack_arr = np.zeros(N, dtype=np.uint8)
    comp_arr = np.full(N, -1, dtype=np.int64)
    stack_arr = np.empty(max(N, 1), dtype=np.int64)
    work_v_arr = np.empty(max(N, 1), dtype=np.int64)
    work_p_arr = np.empty(max(N, 1), dtype=np.int64)
    cdef int64_t[::1] index = index_arr
    cdef int64_t[::1] low = low_arr
    cdef uint8_t[::1] onstack = onstack_arr
    cdef int64_t[::1] comp = comp_arr
    cdef int64_t[::1] stack = stack_arr
    cdef int64_t[::1] work_v = work_v_arr
    cdef int64_t[::1] work_p = work_p_arr
    cdef Py_ssize_t sp = 0, wp = 0, root
    cdef int64_t counter = 0, ncomp = 0, v, w, u, pos, end
    cdef bint descended
    with nogil:
        for root in range(N):
            if not defined[root] or index[root] >= 0:
                continue
            index[root] = counter
            low[root] = counter
            counter += 1
            stack[sp] = root
            sp += 1
            onstack[root] = 1
            work_v[wp] = root
            work_p[wp] = indptr[root]
            wp += 1
            while wp > 0:
                v = work_v[wp - 1]
                pos = work_p[wp - 1]
                end = indptr[v + 1]
                descended = False
                while pos < end:
                    w = indices[pos]
                    pos += 1
                    if index[w] < 0:
                        work_p[wp - 1] = pos
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        stack[sp] = w
                        sp += 1
                        onstack[w] = 1
                        work_v[wp] = w
                        work_p[wp] = indptr[w]
                        wp += 1
                        descended = True
                        break
                    if onstack[w] and index[w] < low[v]:
                        low[v] = index[w]
                if descended:
                    continue
                wp -= 1
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                if wp > 0:
                    u = work_v[wp - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]
    terminal_arr = np.ones(ncomp, dtype=np.uint8)
    cdef uint8_t[::1] terminal = terminal_arr
    cdef Py_ssize_t k
    with nogil:
        for v in range(N):
            if comp[v] < 0:
                continue
            for k in range(indptr[v], indptr[v + 1]):
                if comp[indices[k]] != comp[v]:
                    terminal[comp[v]] = 0
                    break
    return comp_arr, terminal_arr


def local_edges(const int64_t[:, ::1] cur, const int64_t[:, ::1] img,
                const int64_t[::1] weights, const int64_t[::1] levels,
                const uint8_t[::1] defined, states):
    cdef const int64_t[::1] st = np.ascontiguousarray(states, dtype=np.int64)
    cdef Py_ssize_t S = st.shape[0], n = cur.shape[1]
    cdef Py_ssize_t a, j, i, v, count = 0, k = 0
    cdef int64_t r, nb, s, s1
    for a in range(S):
        r = st[a]
        for j in range(n):
            for v in range(2):
                s1 = 2 * v - 1
                if cur[r, j] + s1 < 0 or cur[r, j] + s1 > levels[j]:
                    continue
                nb = r + s1 * weights[j]
                if not defined[nb]:
                    continue
                for i in range(n):
                    if img[nb, i] != img[r, i]:
                        count += 1
    out_arr = np.empty((count, 5), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    with nogil:
        for a in range(S):
            r = st[a]
            for j in range(n):
                for v in range(2):
                    s1 = 2 * v - 1
                    if cur[r, j] + s1 < 0 or cur[r, j] + s1 > levels[j]:
                        continue
                    nb = r + s1 * weights[j]
                    if not defined[nb]:
                        continue
                    for i in range(n):
                        s = s1 * _sign(img[nb, i] - img[r, i])
                        if s != 0:
                            out[k, 0] = r
                            out[k, 1] = j
                            out[k, 2] = i
                            out[k, 3] = s
                            out[k, 4] = s1
                            k += 1
    return out_arr
