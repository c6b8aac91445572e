"""Exponential-transform products on subset and tuple tables.

Provides subset convolution, covering and packing products via ranked
zeta/Moebius transforms, the generalized (carry-free) p-ary convolution,
and the cyclic Z_p product for p in {2, 4} via an exact Gaussian-integer
transform.  Tables carry plain integers; with ring="gf2" results are
reduced modulo 2 at the end, the internal stages always run over Z (or
Z[i]) as required for correctness.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_SUBSET_BITS = 24
MAX_TUPLE_CELLS = 1 << 24


@dataclass(frozen=True)
class SubsetTable:
    b: int
    values: tuple[int, ...]
    ring: str = "gf2"

    def __init__(self, b: int, values, ring: str = "gf2"):
        values = tuple(int(x) for x in values)
        if b < 0 or b > MAX_SUBSET_BITS:
            raise ValueError(f"ground-set size {b} out of range")
        if len(values) != 1 << b:
            raise ValueError(f"need {1 << b} values, got {len(values)}")
        if ring not in ("gf2", "int"):
            raise ValueError(f"unknown ring {ring!r}")
        if ring == "gf2":
            values = tuple(x & 1 for x in values)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "ring", ring)


@dataclass(frozen=True)
class TupleTable:
    b: int
    p: int
    values: tuple[int, ...]
    ring: str = "gf2"

    def __init__(self, b: int, p: int, values, ring: str = "gf2"):
        values = tuple(int(x) for x in values)
        if p < 2 or p > 6:
            raise ValueError(f"radix {p} unsupported")
        if b < 0 or p**b > MAX_TUPLE_CELLS:
            raise ValueError(f"tuple table {p}^{b} too large")
        if len(values) != p**b:
            raise ValueError(f"need {p ** b} values, got {len(values)}")
        if ring not in ("gf2", "int"):
            raise ValueError(f"unknown ring {ring!r}")
        if ring == "gf2":
            values = tuple(x & 1 for x in values)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "ring", ring)


def _check_pair(f: SubsetTable, g: SubsetTable) -> None:
    if f.b != g.b:
        raise ValueError(f"ground-set mismatch: {f.b} vs {g.b}")
    if f.ring != g.ring:
        raise ValueError("ring mismatch")


def _reduce(values: list[int], ring: str):
    return [v & 1 for v in values] if ring == "gf2" else values


def _zeta(vals: list[int], b: int) -> None:
    for i in range(b):
        bit = 1 << i
        for s in range(1 << b):
            if s & bit:
                vals[s] += vals[s ^ bit]


def _moebius(vals: list[int], b: int) -> None:
    for i in range(b):
        bit = 1 << i
        for s in range(1 << b):
            if s & bit:
                vals[s] -= vals[s ^ bit]


def subset_convolution(f: SubsetTable, g: SubsetTable) -> SubsetTable:
    """(f * g)(T) = sum over disjoint T1 u T2 = T of f(T1) g(T2).

    Ranked zeta/Moebius transform; ranks are carried over Z and the result
    is reduced into the caller's ring only at the end.
    """
    _check_pair(f, g)
    b = f.b
    size = 1 << b
    fr = [[0] * size for _ in range(b + 1)]
    gr = [[0] * size for _ in range(b + 1)]
    for s in range(size):
        k = s.bit_count()
        fr[k][s] = f.values[s]
        gr[k][s] = g.values[s]
    for layer in fr:
        _zeta(layer, b)
    for layer in gr:
        _zeta(layer, b)
    hr = [[0] * size for _ in range(b + 1)]
    for r in range(b + 1):
        for s in range(size):
            acc = 0
            for r1 in range(r + 1):
                acc += fr[r1][s] * gr[r - r1][s]
            hr[r][s] = acc
        _moebius(hr[r], b)
    res = [hr[s.bit_count()][s] for s in range(size)]
    return SubsetTable(b, _reduce(res, f.ring), f.ring)


def covering_product(f: SubsetTable, g: SubsetTable) -> SubsetTable:
    """(f *_c g)(T) = sum over T1 u T2 = T of f(T1) g(T2)."""
    _check_pair(f, g)
    b = f.b
    fv = list(f.values)
    gv = list(g.values)
    _zeta(fv, b)
    _zeta(gv, b)
    hv = [a * c for a, c in zip(fv, gv)]
    _moebius(hv, b)
    return SubsetTable(b, _reduce(hv, f.ring), f.ring)


def packing_product(f: SubsetTable, g: SubsetTable) -> SubsetTable:
    """(f *_p g)(T) = sum over disjoint T1, T2 both inside T of f(T1) g(T2).

    Equals the zeta transform of the subset convolution.
    """
    _check_pair(f, g)
    conv = subset_convolution(SubsetTable(f.b, f.values, "int"), SubsetTable(g.b, g.values, "int"))
    vals = list(conv.values)
    _zeta(vals, f.b)
    return SubsetTable(f.b, _reduce(vals, f.ring), f.ring)


def _check_tuple_pair(f: TupleTable, g: TupleTable) -> None:
    if f.b != g.b or f.p != g.p:
        raise ValueError("radix or position-count mismatch")
    if f.ring != g.ring:
        raise ValueError("ring mismatch")


def generalized_convolution(f: TupleTable, g: TupleTable) -> TupleTable:
    """(f *^p g)(t) = sum over t1 + t2 = t (digit sums taken in Z, no wrap).

    Computed exactly over Z with one Kronecker-substitution big-integer
    multiply (digit lanes wide enough that no lane overflows), then reduced
    into the caller's ring.
    """
    _check_tuple_pair(f, g)
    b, p = f.b, f.p
    size = p**b
    max_f = max((abs(v) for v in f.values), default=0)
    max_g = max((abs(v) for v in g.values), default=0)
    if min(max_f, max_g) == 0:
        return TupleTable(b, p, [0] * size, f.ring)
    if any(v < 0 for v in f.values) or any(v < 0 for v in g.values):
        raise ValueError("generalized convolution expects non-negative entries")
    # Each output coefficient is a sum of at most p**b lane products.
    lane_bits = (max_f * max_g * size).bit_length() + 1
    padded = 2 * p - 1  # digit sums range over 0..2p-2 before truncation

    def pack(vals) -> int:
        acc = 0
        for idx in range(size):
            v = vals[idx]
            if v:
                acc += v << (lane_bits * _reindex(idx, p, padded, b))
        return acc

    prod = pack(f.values) * pack(g.values)
    mask = (1 << lane_bits) - 1
    out = [0] * size
    for idx in range(size):
        lane = _reindex(idx, p, padded, b)
        out[idx] = (prod >> (lane_bits * lane)) & mask
    return TupleTable(b, p, _reduce(out, f.ring), f.ring)


def _reindex(idx: int, p: int, padded: int, b: int) -> int:
    """Mixed-radix index with radix p re-expressed with radix ``padded``."""
    out = 0
    weight = 1
    for _ in range(b):
        out += (idx % p) * weight
        idx //= p
        weight *= padded
    return out


def zp_product(f: TupleTable, g: TupleTable, p: int | None = None) -> TupleTable:
    """(f *_x^p g)(t) = sum over t1 + t2 = t (mod p), for p in {2, 4}.

    Exact Gaussian-integer transform with eps = -1 (p=2) or eps = i (p=4);
    the doubly transformed product equals p^b (f *_x g)(-t), so we divide
    by p^b exactly (asserted) and negate the index.
    """
    _check_tuple_pair(f, g)
    if p is None:
        p = f.p
    if p != f.p:
        raise ValueError("explicit p disagrees with the tables")
    if p not in (2, 4):
        raise ValueError(f"Z_p product supported only for p in {{2, 4}}, got {p}")
    b = f.b
    size = p**b
    max_in = max([1] + [abs(v) for v in f.values] + [abs(v) for v in g.values])
    # magnitudes stay within p^(2b) * max_in^2 throughout; sanity bound
    bound = (p ** (2 * b)) * max_in * max_in * 4

    fr, fi = _eps_transform(list(f.values), [0] * size, b, p)
    gr, gi = _eps_transform(list(g.values), [0] * size, b, p)
    hr = [fr[s] * gr[s] - fi[s] * gi[s] for s in range(size)]
    hi = [fr[s] * gi[s] + fi[s] * gr[s] for s in range(size)]
    hr, hi = _eps_transform(hr, hi, b, p)
    denom = size
    out = [0] * size
    for t in range(size):
        re, im = hr[t], hi[t]
        assert abs(re) <= bound and abs(im) <= bound, "Z_p transform magnitude bound exceeded"
        assert im == 0, "Z_p product transform produced a non-real value"
        assert re % denom == 0, "Z_p product pre-division value not divisible by p^b"
        out[_neg_index(t, p, b)] = re // denom
    return TupleTable(b, p, _reduce(out, f.ring), f.ring)


def _neg_index(idx: int, p: int, b: int) -> int:
    out = 0
    weight = 1
    for _ in range(b):
        out += ((-idx) % p) * weight
        idx //= p
        weight *= p
    return out


def _eps_transform(re: list[int], im: list[int], b: int, p: int):
    """Yates pass of f_hat(s) = sum_t f(t) eps^(s.t), eps a p-th root of 1."""
    size = p**b
    stride = 1
    for _ in range(b):
        block = stride * p
        for base in range(0, size, block):
            for off in range(stride):
                idx = [base + off + k * stride for k in range(p)]
                old = [(re[i], im[i]) for i in idx]
                for s_dig in range(p):
                    acc_r = acc_i = 0
                    for t_dig in range(p):
                        r, i_ = old[t_dig]
                        e = (s_dig * t_dig) % p
                        if p == 2:
                            if e:
                                r, i_ = -r, -i_
                        else:  # powers of i: 1, i, -1, -i
                            if e == 1:
                                r, i_ = -i_, r
                            elif e == 2:
                                r, i_ = -r, -i_
                            elif e == 3:
                                r, i_ = i_, -r
                        acc_r += r
                        acc_i += i_
                    re[idx[s_dig]], im[idx[s_dig]] = acc_r, acc_i
        stride = block
    return re, im
