"""Vectorised subset-fold kernels (pure numpy backend).

All kernels enumerate the nonempty subsets of an indexed family of bit
masks (each mask a set over at most 64 points) in ascending subset-bitmask
order. Union populations are built by doubling, so the full table costs
O(2^n) words; per-query passes stream over cached uint8 arrays in chunks.
"""

from __future__ import annotations

import math

import numpy as np

MAX_N = 26
MAX_COEFF = 1 << 40  # keeps den*pop - num*card inside int64
_CHUNK = 1 << 20

BACKEND_NAME = "numpy"


def _bits_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = (mask & -mask).bit_length() - 1
        out.append(b)
        mask &= mask - 1
    return tuple(out)


def _lex_min(cands: list[int]) -> int:
    return min(cands, key=_bits_tuple)


class SubsetFold:
    """Caches union populations for repeated exact-min queries."""

    def __init__(self, masks: list[int]):
        n = len(masks)
        if not 1 <= n <= MAX_N:
            raise ValueError(f"need 1 <= n <= {MAX_N}, got {n}")
        if any(m < 0 or m >> 64 for m in masks):
            raise ValueError("masks must fit in 64 bits")
        self.n = n
        self.masks = [int(m) for m in masks]
        size = 1 << n
        unions = np.zeros(size, dtype=np.uint64)
        marr = np.asarray(self.masks, dtype=np.uint64)
        for b in range(n):
            half = 1 << b
            unions[half:2 * half] = unions[:half] | marr[b]
        self.pops = np.bitwise_count(unions).astype(np.uint8)
        del unions
        idx = np.arange(size, dtype=np.uint32)
        self.cards = np.bitwise_count(idx).astype(np.uint8)
        del idx

    def union_pop(self, subset_mask: int) -> int:
        return int(self.pops[subset_mask])

    def min_affine(self, num: int, den: int, list_cap: int):
        """Minimise den*|union(S)| - num*|S| over nonempty S.

        Returns (min_scaled, fragment_count, fragments, truncated,
        atoms, atom_size); fragments and atoms are subset bitmasks in
        ascending order, fragments truncated at list_cap, atoms complete.
        """
        if abs(num) >= MAX_COEFF or abs(den) >= MAX_COEFF:
            raise ValueError("coefficients too large for the int64 kernel")
        size = 1 << self.n
        best = None
        for lo in range(1, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            vals = (self.pops[lo:hi].astype(np.int64) * den
                    - self.cards[lo:hi].astype(np.int64) * num)
            m = int(vals.min())
            if best is None or m < best:
                best = m
        count = 0
        frags: list[int] = []
        atom_size = self.n + 1
        for lo in range(1, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            vals = (self.pops[lo:hi].astype(np.int64) * den
                    - self.cards[lo:hi].astype(np.int64) * num)
            hits = np.flatnonzero(vals == best)
            if hits.size == 0:
                continue
            count += int(hits.size)
            if len(frags) < list_cap:
                take = hits[: list_cap - len(frags)]
                frags.extend((take + lo).tolist())
            c = int(self.cards[lo:hi][hits].min())
            if c < atom_size:
                atom_size = c
        atoms: list[int] = []
        for lo in range(1, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            vals = (self.pops[lo:hi].astype(np.int64) * den
                    - self.cards[lo:hi].astype(np.int64) * num)
            hits = np.flatnonzero((vals == best) & (self.cards[lo:hi] == atom_size))
            atoms.extend((hits + lo).tolist())
        truncated = count > len(frags)
        return int(best), count, frags, truncated, atoms, atom_size

    def min_ratio(self):
        """Minimise |union(S)| / |S| over nonempty S.

        Returns (num, den, witness_mask) with the ratio in lowest terms and
        the witness tie-broken by cardinality then lexicographic order.
        """
        scale = math.lcm(*range(1, self.n + 1))
        size = 1 << self.n
        kmin = None
        for lo in range(1, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            keys = (self.pops[lo:hi].astype(np.int64)
                    * (scale // self.cards[lo:hi].astype(np.int64)))
            k = int(keys.min())
            if kmin is None or k < kmin:
                kmin = k
        best_card = None
        for lo in range(1, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            keys = (self.pops[lo:hi].astype(np.int64)
                    * (scale // self.cards[lo:hi].astype(np.int64)))
            hits = np.flatnonzero(keys == kmin)
            if hits.size == 0:
                continue
            c = int(self.cards[lo:hi][hits].min())
            if best_card is None or c < best_card:
                best_card = c
        cands: list[int] = []
        for lo in range(1, size, _CHUNK):
            hi = min(lo + _CHUNK, size)
            keys = (self.pops[lo:hi].astype(np.int64)
                    * (scale // self.cards[lo:hi].astype(np.int64)))
            hits = np.flatnonzero((keys == kmin) & (self.cards[lo:hi] == best_card))
            cands.extend((hits + lo).tolist())
        witness = _lex_min(cands)
        g = math.gcd(kmin, scale)
        return kmin // g, scale // g, witness


def check_pair_ratio(masks_lhs: list[int], masks_rhs: list[int],
                     num: int, den: int):
    """Check den*|union_lhs(S)| <= num*|union_rhs(S)| for all nonempty S.

    Returns (ok, first_violation_mask_or_None, checked_count).
    """
    if len(masks_lhs) != len(masks_rhs):
        raise ValueError("mask families must have equal length")
    lhs = SubsetFold(masks_lhs)
    rhs = SubsetFold(masks_rhs)
    size = 1 << lhs.n
    for lo in range(1, size, _CHUNK):
        hi = min(lo + _CHUNK, size)
        bad = (lhs.pops[lo:hi].astype(np.int64) * den
               > rhs.pops[lo:hi].astype(np.int64) * num)
        if bad.any():
            first = int(np.flatnonzero(bad)[0]) + lo
            return False, first, first
    return True, None, size - 1
