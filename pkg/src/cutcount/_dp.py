"""Dense GF(2) dynamic-programming tables over nice tree decompositions.

A table is a numpy uint8 array of shape (radix**|bag|, *acc_sizes) holding
0/1 parities.  Axis 0 enumerates bag colourings in mixed radix: the digit
of the j-th smallest bag vertex has stride radix**j.  Join bags combine
children through an exact integer convolution over the accumulator axes
(real FFT, rounded and reduced mod 2, with a rounding-error assertion) and
a per-vertex state-combination table over the colouring digits.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .decomposition import FORGET, INTRODUCE, INTRODUCE_EDGE, JOIN, LEAF, NiceTreeDecomposition

# When set to a list, every table allocation appends
# (radix, bag_size, colouring_axis_length, total_cells); used by the
# acceptance suite and the bench command.
structure_audit: list | None = None

_MAX_TABLE_BYTES = 1 << 29  # 512 MiB safety valve per table


def new_table(radix: int, bag: tuple[int, ...], acc_shape: tuple[int, ...]) -> np.ndarray:
    size = radix ** len(bag)
    cells = size * int(np.prod(acc_shape, dtype=np.int64))
    if cells > _MAX_TABLE_BYTES:
        raise MemoryError(f"DP table too large: {cells} cells")
    t = np.zeros((size,) + acc_shape, dtype=np.uint8)
    _audit(radix, bag, t)
    return t


def _audit(radix: int, bag, table) -> None:
    assert table.shape[0] == radix ** len(bag), "colouring axis must be radix**|bag|"
    if structure_audit is not None:
        structure_audit.append((radix, len(bag), table.shape[0], table.size))


def digit_pos(bag: tuple[int, ...], v: int) -> int:
    i = bisect_left(bag, v)
    assert i < len(bag) and bag[i] == v, f"vertex {v} not in bag {bag}"
    return i


def _digits_view(table: np.ndarray, nbag: int, radix: int) -> np.ndarray:
    return table.reshape((radix,) * nbag + table.shape[1:])


def _axis(nbag: int, pos: int) -> int:
    return nbag - 1 - pos


def introduce_digit(
    table: np.ndarray,
    bag_old: tuple[int, ...],
    v: int,
    radix: int,
    parts: list[np.ndarray | None],
) -> np.ndarray:
    """Stack per-state parts (child-shaped, possibly None) into the new digit."""
    assert len(parts) == radix
    nb = len(bag_old) + 1
    pos = bisect_left(bag_old, v)
    acc = table.shape[1:]
    zero = None
    full_parts = []
    for p in parts:
        if p is None:
            if zero is None:
                zero = np.zeros_like(table)
            p = zero
        full_parts.append(_digits_view(p, nb - 1, radix))
    out = np.stack(full_parts, axis=_axis(nb, pos))
    out = np.ascontiguousarray(out).reshape((radix**nb,) + acc)
    _audit(radix, tuple(sorted(bag_old + (v,))), out)
    return out


def forget_digit(
    table: np.ndarray, bag_old: tuple[int, ...], v: int, radix: int
) -> list[np.ndarray]:
    """Split off the digit of v; returns one child-shaped slice per state."""
    nb = len(bag_old)
    pos = digit_pos(bag_old, v)
    view = _digits_view(table, nb, radix)
    ax = _axis(nb, pos)
    acc = table.shape[1:]
    out = []
    for d in range(radix):
        sl = np.take(view, d, axis=ax)
        out.append(np.ascontiguousarray(sl).reshape((radix ** (nb - 1),) + acc))
    return out


def pair_view(table: np.ndarray, bag: tuple[int, ...], u: int, v: int, radix: int):
    """Expose the digit axes of u and v; returns (view, axis_u, axis_v)."""
    nb = len(bag)
    au = _axis(nb, digit_pos(bag, u))
    av = _axis(nb, digit_pos(bag, v))
    return _digits_view(table, nb, radix), au, av


def take2(view: np.ndarray, au: int, av: int, du: int, dv: int) -> np.ndarray:
    idx: list = [slice(None)] * view.ndim
    idx[au] = du
    idx[av] = dv
    return view[tuple(idx)]


def put2_xor(view: np.ndarray, au: int, av: int, du: int, dv: int, value: np.ndarray) -> None:
    idx: list = [slice(None)] * view.ndim
    idx[au] = du
    idx[av] = dv
    view[tuple(idx)] ^= value


def shift_acc(table: np.ndarray, axis: int, delta: int, saturate: bool = False) -> np.ndarray:
    """Shift along an accumulator axis, zero-filling; overflow is dropped,
    or XOR-folded onto the last index when ``saturate`` (capped axes)."""
    if delta == 0:
        return table
    assert delta > 0
    size = table.shape[axis]
    ndim = table.ndim
    out = np.zeros_like(table)
    if not saturate:
        if delta < size:
            src: list = [slice(None)] * ndim
            dst: list = [slice(None)] * ndim
            src[axis] = slice(0, size - delta)
            dst[axis] = slice(delta, size)
            out[tuple(dst)] = table[tuple(src)]
        return out
    strict = max(size - 1 - delta, 0)  # sources landing strictly below the cap
    if strict > 0:
        src = [slice(None)] * ndim
        dst = [slice(None)] * ndim
        src[axis] = slice(0, strict)
        dst[axis] = slice(delta, strict + delta)
        out[tuple(dst)] = table[tuple(src)]
    src = [slice(None)] * ndim
    src[axis] = slice(strict, size)
    sel: list = [slice(None)] * ndim
    sel[axis] = size - 1
    out[tuple(sel)] = np.bitwise_xor.reduce(table[tuple(src)], axis=axis)
    return out


def shifted(table: np.ndarray, shifts: dict[int, int], sat_axes: frozenset[int] = frozenset()):
    out = table
    for axis, delta in shifts.items():
        out = shift_acc(out, axis, delta, saturate=axis in sat_axes)
    return out


@dataclass(frozen=True)
class JoinSpec:
    """How two child tables combine at a join bag.

    ``pairs`` lists the per-vertex state combinations (d_left, d_right,
    d_out).  ``corrections(digits)`` returns per-acc-axis index offsets for
    an output colouring: the convolution result is read at acc + offset
    (vertex-universe problems double-count bag vertices in both children).
    ``sat_axes`` marks accumulator axes whose convolution saturates at the
    last index instead of overflowing (degree caps).
    """

    radix: int
    pairs: tuple[tuple[int, int, int], ...]
    sat_axes: frozenset[int] = frozenset()

    @property
    def is_diagonal(self) -> bool:
        return self.pairs == tuple((d, d, d) for d in range(self.radix))


def _support_slices(table: np.ndarray) -> tuple[slice, ...]:
    """Trim trailing all-zero accumulator tails to shrink FFT sizes."""
    slices = [slice(None)]
    for ax in range(1, table.ndim):
        other = tuple(i for i in range(table.ndim) if i != ax)
        nz = np.nonzero(table.any(axis=other))[0]
        hi = int(nz[-1]) + 1 if nz.size else 1
        slices.append(slice(0, hi))
    return tuple(slices)


def _fft_exact_mod2(specs: np.ndarray, pad: tuple[int, ...], out_shape) -> np.ndarray:
    """Inverse-transform a product spectrum, round exactly, reduce mod 2."""
    conv = np.fft.irfftn(specs, s=pad, axes=range(specs.ndim - len(pad), specs.ndim))
    rounded = np.rint(conv)
    err = float(np.max(np.abs(conv - rounded))) if conv.size else 0.0
    assert err < 0.25, f"FFT convolution lost exactness (max error {err})"
    out = rounded.astype(np.int64) & 1
    return out.astype(np.uint8)


def join_tables(
    left: np.ndarray,
    right: np.ndarray,
    bag: tuple[int, ...],
    spec: JoinSpec,
    corrections,
) -> np.ndarray:
    """Combine two child tables over the same bag.

    ``corrections(digit_tuple) -> tuple[int, ...]`` gives, per accumulator
    axis, the offset at which the convolution is read for that output
    colouring.
    """
    radix, nb = spec.radix, len(bag)
    acc_shape = left.shape[1:]
    assert left.shape == right.shape and left.shape[0] == radix**nb

    ls = _support_slices(left)
    rs = _support_slices(right)
    lt = left[ls].astype(np.float64)
    rt = right[rs].astype(np.float64)
    pad = tuple(
        a + b - 1 for a, b in zip(lt.shape[1:], rt.shape[1:])
    )
    axes = tuple(range(1, left.ndim))
    out = new_table(radix, bag, acc_shape)

    if spec.is_diagonal:
        fl = np.fft.rfftn(lt, s=pad, axes=axes)
        fr = np.fft.rfftn(rt, s=pad, axes=axes)
        prod = fl * fr
        conv = _fft_exact_mod2(prod, pad, None)
        for s in range(radix**nb):
            if not conv[s].any():
                continue
            _gather(out[s], conv[s], corrections(_digits(s, nb, radix)), spec.sat_axes)
        return out

    # General pair-table join: enumerate compatible colouring triples with
    # prefix pruning, caching per-colouring spectra lazily.
    nzl = left.reshape(left.shape[0], -1).any(axis=1)
    nzr = right.reshape(right.shape[0], -1).any(axis=1)
    pref_l = _prefix_masks(nzl, nb, radix)
    pref_r = _prefix_masks(nzr, nb, radix)
    spec_l: dict[int, np.ndarray] = {}
    spec_r: dict[int, np.ndarray] = {}
    acc_spec: dict[int, np.ndarray] = {}

    def spectrum(cache, data, s):
        f = cache.get(s)
        if f is None:
            f = np.fft.rfftn(data[s], s=pad, axes=tuple(range(data[s].ndim)))
            cache[s] = f
        return f

    def rec(level: int, sl: int, sr: int, so: int):
        # level counts digits from the most significant end
        if level == nb:
            if nzl[sl] and nzr[sr]:
                f = spectrum(spec_l, lt, sl) * spectrum(spec_r, rt, sr)
                if so in acc_spec:
                    acc_spec[so] += f
                else:
                    acc_spec[so] = f
            return
        if not (pref_l[level][sl] and pref_r[level][sr]):
            return
        for dl, dr, do in spec.pairs:
            rec(level + 1, sl * radix + dl, sr * radix + dr, so * radix + do)

    rec(0, 0, 0, 0)
    for so, f in acc_spec.items():
        conv = _fft_exact_mod2(f, pad, None)
        if conv.any():
            _gather(out[so], conv, corrections(_digits(so, nb, radix)), spec.sat_axes)
    return out


def _digits(s: int, nb: int, radix: int) -> tuple[int, ...]:
    """Digits by bag position (position j = stride radix**j)."""
    out = []
    for _ in range(nb):
        out.append(s % radix)
        s //= radix
    return tuple(out)


def _prefix_masks(nz: np.ndarray, nb: int, radix: int) -> list[np.ndarray]:
    """pref[level][prefix] == any nonzero colouring extending the most
    significant ``level`` digits ``prefix``."""
    masks = [None] * (nb + 1)
    cur = nz.copy()
    masks[nb] = cur
    for level in range(nb - 1, -1, -1):
        cur = cur.reshape(-1, radix).any(axis=1)
        masks[level] = cur
    return masks  # type: ignore[return-value]


def _gather(dst: np.ndarray, conv: np.ndarray, offsets: tuple[int, ...], sat_axes) -> None:
    """dst[idx] ^= conv[idx + offset] with per-axis offsets, clipping tails.

    For saturating axes the parity of everything at or beyond the cap index
    is folded onto the cap.
    """
    src_idx: list = []
    for ax, (size, off) in enumerate(zip(dst.shape, offsets)):
        if off >= conv.shape[ax]:
            return
        src_idx.append(slice(off, min(off + size, conv.shape[ax])))
    block = conv[tuple(src_idx)].copy()
    for ax in sat_axes:
        tail_from = offsets[ax] + dst.shape[ax]
        if tail_from < conv.shape[ax]:
            idx = list(src_idx)
            idx[ax] = slice(tail_from, None)
            tail = np.bitwise_xor.reduce(conv[tuple(idx)], axis=ax)
            sel: list = [slice(None)] * block.ndim
            sel[ax] = block.shape[ax] - 1
            block[tuple(sel)] ^= tail
    dst[tuple(slice(0, s) for s in block.shape)] ^= block


def run_dp(ntd: NiceTreeDecomposition, handlers) -> np.ndarray:
    """Bottom-up sweep; ``handlers`` provides leaf/introduce/introduce_edge/
    forget/join callables, each receiving the node and child tables."""
    tables: dict[int, np.ndarray] = {}
    for idx, node in enumerate(ntd.nodes):
        kids = [tables.pop(c) for c in node.children]
        if node.kind == LEAF:
            t = handlers.leaf(node)
        elif node.kind == INTRODUCE:
            t = handlers.introduce(node, kids[0])
        elif node.kind == INTRODUCE_EDGE:
            t = handlers.introduce_edge(node, kids[0])
        elif node.kind == FORGET:
            t = handlers.forget(node, kids[0])
        elif node.kind == JOIN:
            t = handlers.join(node, kids[0], kids[1])
        else:  # pragma: no cover
            raise ValueError(f"unknown node kind {node.kind}")
        tables[idx] = t
    return tables[ntd.root]
