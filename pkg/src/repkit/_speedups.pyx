# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled evaluation kernels; see ``repkit._kernels_py`` for the reference
semantics and the flat-argument conventions.  Outputs are byte-identical to
the pure versions."""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset


cdef inline void* _alloc(size_t nbytes) except NULL:
    cdef void* p = malloc(nbytes if nbytes > 0 else 1)
    if p == NULL:
        raise MemoryError()
    return p


def action_atom_bits(int n, int m, long long[::1] orders, int g_size,
                     long long[::1] cayley, long long[::1] inv, int identity,
                     long long[::1] action,
                     long long[::1] slot_offsets, long long[::1] coeffs,
                     long long[::1] word_offsets, long long[::1] letter_gens,
                     long long[::1] letter_signs):
    cdef int k = orders.shape[0]
    cdef int n_terms = coeffs.shape[0]
    cdef long long v_size = 1
    cdef int i, j, s
    cdef long long t, a, pos, q, g, c
    for j in range(k):
        v_size *= orders[j]
    cdef long long block = 1
    for i in range(n):
        block *= v_size
    cdef long long y_count = 1
    for i in range(m):
        y_count *= g_size
    cdef long long total = block * y_count

    out_py = bytearray(<Py_ssize_t>((total + 7) >> 3))
    cdef unsigned char[::1] out = out_py

    # element index -> coordinate digits, cached once
    cdef long long* digits = <long long*>_alloc(v_size * k * sizeof(long long))
    cdef long long rem
    for a in range(v_size):
        rem = a
        for j in range(k - 1, -1, -1):
            digits[a * k + j] = rem % orders[j]
            rem //= orders[j]

    cdef long long* wvals = <long long*>_alloc(n_terms * sizeof(long long))
    cdef long long* tables = <long long*>_alloc(<size_t>n * v_size * k * sizeof(long long))
    cdef long long* ps = <long long*>_alloc((n + 1) * k * sizeof(long long))
    cdef long long* x_digits = <long long*>_alloc((n if n > 0 else 1) * sizeof(long long))
    cdef long long* y_digits = <long long*>_alloc((m if m > 0 else 1) * sizeof(long long))
    cdef long long y_index, base, p
    cdef long long lo, hi
    cdef bint is_zero
    cdef long long* row
    cdef long long* prev

    try:
        for j in range(m):
            y_digits[j] = 0
        for y_index in range(y_count):
            for t in range(n_terms):
                g = identity
                for pos in range(word_offsets[t], word_offsets[t + 1]):
                    q = y_digits[letter_gens[pos]]
                    if letter_signs[pos] > 0:
                        g = cayley[g * g_size + q]
                    else:
                        g = cayley[g * g_size + inv[q]]
                wvals[t] = g
            for s in range(n):
                lo = slot_offsets[s]
                hi = slot_offsets[s + 1]
                for a in range(v_size):
                    row = tables + (s * v_size + a) * k
                    for j in range(k):
                        row[j] = 0
                    for t in range(lo, hi):
                        c = coeffs[t]
                        prev = digits + action[wvals[t] * v_size + a] * k
                        for j in range(k):
                            row[j] = (row[j] + c * prev[j]) % orders[j]

            base = y_index * block
            if n == 0:
                out[base >> 3] |= <unsigned char>(1 << (base & 7))
            else:
                for i in range(n):
                    x_digits[i] = 0
                for j in range(k):
                    ps[n * k + j] = 0
                for i in range(n - 1, -1, -1):
                    prev = ps + (i + 1) * k
                    row = tables + (i * v_size) * k
                    for j in range(k):
                        ps[i * k + j] = (prev[j] + row[j]) % orders[j]
                p = base
                while True:
                    is_zero = True
                    for j in range(k):
                        if ps[j] != 0:
                            is_zero = False
                            break
                    if is_zero:
                        out[p >> 3] |= <unsigned char>(1 << (p & 7))
                    p += 1
                    i = 0
                    while i < n:
                        x_digits[i] += 1
                        if x_digits[i] < v_size:
                            break
                        x_digits[i] = 0
                        i += 1
                    if i == n:
                        break
                    for s in range(i, -1, -1):
                        prev = ps + (s + 1) * k
                        row = tables + (s * v_size + x_digits[s]) * k
                        for j in range(k):
                            ps[s * k + j] = (prev[j] + row[j]) % orders[j]
            for j in range(m):
                y_digits[j] += 1
                if y_digits[j] < g_size:
                    break
                y_digits[j] = 0
    finally:
        free(digits)
        free(wvals)
        free(tables)
        free(ps)
        free(x_digits)
        free(y_digits)
    return bytes(out_py)


def group_atom_bits(long long block, int m, int g_size,
                    long long[::1] cayley, long long[::1] inv, int identity,
                    long long[::1] letter_gens, long long[::1] letter_signs):
    cdef long long y_count = 1
    cdef int i, j
    for i in range(m):
        y_count *= g_size
    cdef long long total = block * y_count
    out_py = bytearray(<Py_ssize_t>((total + 7) >> 3))
    cdef unsigned char[::1] out = out_py
    cdef int n_letters = letter_gens.shape[0]

    cdef long long* y_digits = <long long*>_alloc((m if m > 0 else 1) * sizeof(long long))
    cdef long long y_index, g, q, pos, start, stop, p, first_full, last_full
    try:
        for j in range(m):
            y_digits[j] = 0
        for y_index in range(y_count):
            g = identity
            for pos in range(n_letters):
                q = y_digits[letter_gens[pos]]
                if letter_signs[pos] > 0:
                    g = cayley[g * g_size + q]
                else:
                    g = cayley[g * g_size + inv[q]]
            if g == identity:
                start = y_index * block
                stop = start + block
                first_full = (start + 7) >> 3
                last_full = stop >> 3
                if first_full < last_full:
                    p = start
                    while p < (first_full << 3):
                        out[p >> 3] |= <unsigned char>(1 << (p & 7))
                        p += 1
                    memset(&out[first_full], 0xFF, <size_t>(last_full - first_full))
                    p = last_full << 3
                    while p < stop:
                        out[p >> 3] |= <unsigned char>(1 << (p & 7))
                        p += 1
                else:
                    p = start
                    while p < stop:
                        out[p >> 3] |= <unsigned char>(1 << (p & 7))
                        p += 1
            for j in range(m):
                y_digits[j] += 1
                if y_digits[j] < g_size:
                    break
                y_digits[j] = 0
    finally:
        free(y_digits)
    return bytes(out_py)
