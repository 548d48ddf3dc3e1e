# cython: boundscheck=False, wraparound=False, cdivision=True
"""Streaming subset-fold kernels (compiled backend).

Same contract as the numpy backend: nonempty subsets of a mask family are
enumerated in ascending subset-bitmask order; unions are maintained with a
trailing-zero accumulator so each subset costs O(1).
"""

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

MAX_N = 26
MAX_COEFF = 1 << 40

BACKEND_NAME = "cython"


cdef inline int _lex_smaller(uint64_t a, uint64_t b) nogil:
    # same popcount assumed; smaller in sorted-element lexicographic order
    cdef uint64_t d = a ^ b
    if d == 0:
        return 0
    return (a >> __builtin_ctzll(d)) & 1


class SubsetFold:
    """Holds the mask family; each query streams over all subsets."""

    def __init__(self, masks):
        n = len(masks)
        if not 1 <= n <= MAX_N:
            raise ValueError(f"need 1 <= n <= {MAX_N}, got {n}")
        for m in masks:
            if m < 0 or m >> 64:
                raise ValueError("masks must fit in 64 bits")
        self.n = n
        self.masks = [int(m) for m in masks]

    def union_pop(self, subset_mask):
        cdef uint64_t u = 0
        cdef int b
        s = int(subset_mask)
        for b in range(self.n):
            if (s >> b) & 1:
                u |= <uint64_t> self.masks[b]
        return __builtin_popcountll(u)

    def min_affine(self, num, den, list_cap):
        if abs(num) >= MAX_COEFF or abs(den) >= MAX_COEFF:
            raise ValueError("coefficients too large for the int64 kernel")
        cdef int n = self.n
        cdef uint64_t[32] masks
        cdef uint64_t[33] acc
        cdef int b
        cdef int k
        for b in range(n):
            masks[b] = <uint64_t> self.masks[b]
        for b in range(n + 1):
            acc[b] = 0
        cdef int64_t cnum = num
        cdef int64_t cden = den
        cdef int64_t cap = list_cap
        cdef uint64_t size = (<uint64_t> 1) << n
        cdef uint64_t i
        cdef uint64_t u
        cdef int64_t val, best = 0
        cdef int64_t count = 0
        cdef int pc, card, atom_size = n + 1
        cdef int started = 0
        frags = []
        atoms = []
        for i in range(1, size):
            b = __builtin_ctzll(i)
            acc[b] = acc[b + 1] | masks[b]
            for k in range(b - 1, -1, -1):
                acc[k] = acc[k + 1]
            u = acc[b]
            pc = __builtin_popcountll(u)
            card = __builtin_popcountll(i)
            val = cden * pc - cnum * card
            if not started or val < best:
                started = 1
                best = val
                count = 1
                del frags[:]
                frags.append(i)
                del atoms[:]
                atoms.append(i)
                atom_size = card
            elif val == best:
                count += 1
                if count <= cap:
                    frags.append(i)
                if card < atom_size:
                    del atoms[:]
                    atoms.append(i)
                    atom_size = card
                elif card == atom_size:
                    atoms.append(i)
        truncated = count > len(frags)
        return int(best), int(count), frags, truncated, atoms, atom_size

    def min_ratio(self):
        cdef int n = self.n
        cdef uint64_t[32] masks
        cdef uint64_t[33] acc
        cdef int b
        cdef int k
        for b in range(n):
            masks[b] = <uint64_t> self.masks[b]
        for b in range(n + 1):
            acc[b] = 0
        cdef uint64_t size = (<uint64_t> 1) << n
        cdef uint64_t i, u, witness = 0
        cdef int pc, card
        cdef int64_t bp = 0, bc = 1
        cdef int best_card = 0
        cdef int started = 0
        for i in range(1, size):
            b = __builtin_ctzll(i)
            acc[b] = acc[b + 1] | masks[b]
            for k in range(b - 1, -1, -1):
                acc[k] = acc[k + 1]
            u = acc[b]
            pc = __builtin_popcountll(u)
            card = __builtin_popcountll(i)
            if not started:
                started = 1
                bp = pc; bc = card; best_card = card; witness = i
                continue
            # compare pc/card against bp/bc by cross multiplication
            if (<int64_t> pc) * bc < bp * (<int64_t> card):
                bp = pc; bc = card; best_card = card; witness = i
            elif (<int64_t> pc) * bc == bp * (<int64_t> card):
                if card < best_card:
                    best_card = card; bp = pc; bc = card; witness = i
                elif card == best_card and _lex_smaller(i, witness):
                    witness = i
        import math
        g = math.gcd(int(bp), int(bc))
        return int(bp) // g, int(bc) // g, int(witness)


def check_pair_ratio(masks_lhs, masks_rhs, num, den):
    if len(masks_lhs) != len(masks_rhs):
        raise ValueError("mask families must have equal length")
    if abs(num) >= MAX_COEFF or abs(den) >= MAX_COEFF:
        raise ValueError("coefficients too large for the int64 kernel")
    cdef int n = len(masks_lhs)
    if not 1 <= n <= 26:
        raise ValueError(f"need 1 <= n <= 26, got {n}")
    cdef uint64_t[32] ml
    cdef uint64_t[32] mr
    cdef uint64_t[33] accl
    cdef uint64_t[33] accr
    cdef int b
    cdef int k
    for b in range(n):
        if masks_lhs[b] < 0 or masks_lhs[b] >> 64 or masks_rhs[b] < 0 or masks_rhs[b] >> 64:
            raise ValueError("masks must fit in 64 bits")
        ml[b] = <uint64_t> masks_lhs[b]
        mr[b] = <uint64_t> masks_rhs[b]
    for b in range(n + 1):
        accl[b] = 0
        accr[b] = 0
    cdef int64_t cnum = num
    cdef int64_t cden = den
    cdef uint64_t size = (<uint64_t> 1) << n
    cdef uint64_t i
    for i in range(1, size):
        b = __builtin_ctzll(i)
        accl[b] = accl[b + 1] | ml[b]
        accr[b] = accr[b + 1] | mr[b]
        for k in range(b - 1, -1, -1):
            accl[k] = accl[k + 1]
            accr[k] = accr[k + 1]
        if cden * __builtin_popcountll(accl[b]) > cnum * __builtin_popcountll(accr[b]):
            return False, int(i), int(i)
    return True, None, int(size - 1)
