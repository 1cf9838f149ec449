"""Pure-Python evaluation kernels.

These are the reference implementations of the two inner loops behind atom
evaluation; ``repkit._speedups`` is a compiled twin with identical signatures
and byte-identical output.  Both produce little-endian bitset bytes over the
hom-space enumeration: point index = x-part + |V|^n * y-part, x1 varying
fastest among the x-coordinates, y1 fastest among the y-coordinates.

Flat-argument conventions shared by both backends:

* ``orders``            cyclic orders of the module (last coordinate fastest);
* ``cayley``            row-major |G| x |G| products, ``cayley[a*|G|+b]``;
* ``action``            row-major |G| x |V| table, ``action[g*|V|+a]``;
* ``slot_offsets``      length n+1; terms of x-slot i live at positions
                        ``slot_offsets[i]..slot_offsets[i+1]`` of ``coeffs``
                        and ``word_offsets``;
* ``coeffs``            one reduced coefficient per term;
* ``word_offsets``      length t+1 into the letter arrays;
* ``letter_gens``       0-based y-coordinate per letter;
* ``letter_signs``      +1/-1 per letter.
"""

from __future__ import annotations


def _decompose(index: int, orders) -> list[int]:
    out = [0] * len(orders)
    for pos in range(len(orders) - 1, -1, -1):
        index, out[pos] = divmod(index, orders[pos])
    return out


def action_atom_bits(
    n: int,
    m: int,
    orders,
    g_size: int,
    cayley,
    inv,
    identity: int,
    action,
    slot_offsets,
    coeffs,
    word_offsets,
    letter_gens,
    letter_signs,
) -> bytes:
    k = len(orders)
    v_size = 1
    for d in orders:
        v_size *= d
    block = v_size**n
    y_count = g_size**m
    total = block * y_count
    out = bytearray((total + 7) >> 3)

    digits = [tuple(_decompose(v, orders)) for v in range(v_size)]
    n_terms = len(coeffs)
    zero = (0,) * k

    y_digits = [0] * m
    for y_index in range(y_count):
        # group value of every term's word under the current y-assignment
        wvals = []
        for t in range(n_terms):
            g = identity
            for pos in range(word_offsets[t], word_offsets[t + 1]):
                q = y_digits[letter_gens[pos]]
                g = cayley[g * g_size + (q if letter_signs[pos] > 0 else inv[q])]
            wvals.append(g)
        # per-slot linear maps a -> a∘u_i, tabulated as coordinate vectors
        tables = []
        for s in range(n):
            tbl = []
            lo, hi = slot_offsets[s], slot_offsets[s + 1]
            for a in range(v_size):
                acc = [0] * k
                for t in range(lo, hi):
                    img = digits[action[wvals[t] * v_size + a]]
                    c = coeffs[t]
                    for j in range(k):
                        acc[j] = (acc[j] + c * img[j]) % orders[j]
                tbl.append(tuple(acc))
            tables.append(tbl)

        base = y_index * block
        if n == 0:
            out[base >> 3] |= 1 << (base & 7)
        else:
            # odometer over x-tuples, x1 fastest; ps[i] = sum of slots i..n-1
            x_digits = [0] * n
            ps: list[tuple[int, ...]] = [zero] * (n + 1)
            for i in range(n - 1, -1, -1):
                prev = ps[i + 1]
                t0 = tables[i][0]
                ps[i] = tuple((prev[j] + t0[j]) % orders[j] for j in range(k))
            p = base
            while True:
                if ps[0] == zero:
                    out[p >> 3] |= 1 << (p & 7)
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
                for j in range(i, -1, -1):
                    prev = ps[j + 1]
                    tj = tables[j][x_digits[j]]
                    ps[j] = tuple((prev[q] + tj[q]) % orders[q] for q in range(k))
        # advance the y-odometer, y1 fastest
        for j in range(m):
            y_digits[j] += 1
            if y_digits[j] < g_size:
                break
            y_digits[j] = 0
    return bytes(out)


def group_atom_bits(
    block: int,
    m: int,
    g_size: int,
    cayley,
    inv,
    identity: int,
    letter_gens,
    letter_signs,
) -> bytes:
    y_count = g_size**m
    total = block * y_count
    out = bytearray((total + 7) >> 3)
    n_letters = len(letter_gens)

    y_digits = [0] * m
    for y_index in range(y_count):
        g = identity
        for pos in range(n_letters):
            q = y_digits[letter_gens[pos]]
            g = cayley[g * g_size + (q if letter_signs[pos] > 0 else inv[q])]
        if g == identity:
            start = y_index * block
            stop = start + block
            # fill [start, stop): whole bytes in one go, stray bits one by one
            first_full = (start + 7) >> 3
            last_full = stop >> 3
            if first_full < last_full:
                for p in range(start, first_full << 3):
                    out[p >> 3] |= 1 << (p & 7)
                for b in range(first_full, last_full):
                    out[b] = 0xFF
                for p in range(last_full << 3, stop):
                    out[p >> 3] |= 1 << (p & 7)
            else:
                for p in range(start, stop):
                    out[p >> 3] |= 1 << (p & 7)
        for j in range(m):
            y_digits[j] += 1
            if y_digits[j] < g_size:
                break
            y_digits[j] = 0
    return bytes(out)
