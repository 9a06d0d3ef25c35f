"""Baseline integer sorts benchmarked against TwinArray Sort.

Every sort takes a sequence of unsigned 64-bit integers, leaves it untouched,
and returns a :class:`~twinarray.core.SortReport`.  Auxiliary memory is
tracked by a :class:`WordMeter` that records the peak number of words live at
once; the input and the returned list are not counted unless the algorithm
needs a separate output buffer (counting sort).
"""

from __future__ import annotations

import enum
from typing import Callable, Sequence

from .core import DEFAULT_MAX_SLOTS, SortReport, check_slots, twinarray_sort, value_range

INSERTION_CUTOFF = 32
SPREAD_COMPARISON_CUTOFF = 256
SPREAD_MAX_SPLITS = 11


class BaselineAlgo(str, enum.Enum):
    COUNTING = "counting"
    PIGEONHOLE = "pigeonhole"
    MSD_RADIX = "msd_radix"
    SPREADSORT = "spreadsort"
    FLASHSORT = "flashsort"
    BUCKET = "bucket"
    QUICKSORT = "quicksort"


class WordMeter:
    """Peak tracker for auxiliary word allocations."""

    def __init__(self) -> None:
        self.live = 0
        self.peak = 0

    def alloc(self, words: int) -> None:
        self.live += words
        if self.live > self.peak:
            self.peak = self.live

    def free(self, words: int) -> None:
        self.live -= words


def reference_sort(data: Sequence[int]) -> list[int]:
    """Trusted oracle (the built-in sort). Never benchmarked."""
    return sorted(data)


def _insertion_sort(a: list[int], lo: int, hi: int) -> None:
    """Sort ``a[lo:hi]`` in place."""
    for i in range(lo + 1, hi):
        x = a[i]
        j = i - 1
        while j >= lo and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


# -- counting / pigeonhole ---------------------------------------------------


def counting_sort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    n = len(data)
    if n == 0:
        return SortReport([], aux_words=0, max_value=0)
    k = value_range(data)
    check_slots(k, max_slots)
    counts = [0] * (k + 1)
    for x in data:
        counts[x] += 1
    for i in range(1, k + 1):
        counts[i] += counts[i - 1]
    out = [0] * n
    for x in reversed(data):
        counts[x] -= 1
        out[counts[x]] = x
    return SortReport(out, aux_words=(k + 1) + n, max_value=k)


def pigeonhole_sort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    a = list(data)
    if not a:
        return SortReport([], aux_words=0, max_value=0)
    k = value_range(a)
    check_slots(k, max_slots)
    holes = [0] * (k + 1)
    for x in a:
        holes[x] += 1
    i = 0
    for value, count in enumerate(holes):
        for _ in range(count):
            a[i] = value
            i += 1
    return SortReport(a, aux_words=k + 1, max_value=k)


# -- MSD radix -----------------------------------------------------------------


def _msd_pass(a: list[int], buf: list[int], lo: int, hi: int, shift: int, meter: WordMeter) -> None:
    if hi - lo <= INSERTION_CUTOFF:
        _insertion_sort(a, lo, hi)
        return
    meter.alloc(257 + 256)
    bounds = [0] * 257
    for i in range(lo, hi):
        bounds[((a[i] >> shift) & 0xFF) + 1] += 1
    bounds[0] = lo
    for b in range(1, 257):
        bounds[b] += bounds[b - 1]
    nxt = bounds[:256]
    for i in range(lo, hi):
        x = a[i]
        d = (x >> shift) & 0xFF
        buf[nxt[d]] = x
        nxt[d] += 1
    a[lo:hi] = buf[lo:hi]
    if shift:
        for b in range(256):
            s, e = bounds[b], bounds[b + 1]
            if e - s > 1:
                _msd_pass(a, buf, s, e, shift - 8, meter)
    meter.free(257 + 256)


def msd_radix_sort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    """Byte-wise MSD radix sort with an insertion-sort cutoff.

    Recursion starts at the most significant non-zero byte of the maximum, so
    keys below 2**56 skip the all-zero leading bytes.
    """
    a = list(data)
    n = len(a)
    k = value_range(a)
    meter = WordMeter()
    if n > 1:
        meter.alloc(n)
        buf = [0] * n
        top_shift = 8 * ((k.bit_length() - 1) // 8) if k else 0
        _msd_pass(a, buf, 0, n, top_shift, meter)
    return SortReport(a, aux_words=meter.peak, max_value=k)


# -- quicksort -------------------------------------------------------------------


def _quicksort(a: list[int], lo: int, hi: int, trace: list | None, meter: WordMeter) -> None:
    # hi is inclusive; recurse into the smaller side and loop on the larger one
    meter.alloc(2)
    while lo < hi:
        mid = lo + (hi - lo) // 2
        pivot = a[mid]
        if trace is not None:
            trace.append((lo, hi, mid, pivot))
        i = lo - 1
        j = hi + 1
        while True:
            i += 1
            while a[i] < pivot:
                i += 1
            j -= 1
            while a[j] > pivot:
                j -= 1
            if i >= j:
                break
            a[i], a[j] = a[j], a[i]
        if j - lo < hi - j - 1:
            _quicksort(a, lo, j, trace, meter)
            lo = j + 1
        else:
            _quicksort(a, j + 1, hi, trace, meter)
            hi = j
    meter.free(2)


def quicksort_middle(
    data: Sequence[int],
    *,
    max_slots: int = DEFAULT_MAX_SLOTS,
    trace: list | None = None,
) -> SortReport:
    """Hoare-partition quicksort with the middle element as pivot.

    If ``trace`` is a list, one ``(lo, hi, pivot_index, pivot_value)`` tuple
    (inclusive bounds) is appended per partition step.  ``aux_words`` counts two words
    per live recursion frame.
    """
    a = list(data)
    k = value_range(a)
    meter = WordMeter()
    if len(a) > 1:
        _quicksort(a, 0, len(a) - 1, trace, meter)
    return SortReport(a, aux_words=meter.peak, max_value=k)


# -- spreadsort -------------------------------------------------------------------


def _spread_pass(a: list[int], buf: list[int], lo: int, hi: int, meter: WordMeter) -> None:
    size = hi - lo
    if size <= SPREAD_COMPARISON_CUTOFF:
        _quicksort(a, lo, hi - 1, None, meter)
        return
    chunk = a[lo:hi]
    mn = min(chunk)
    mx = max(chunk)
    if mn == mx:
        return
    bits = (mx - mn).bit_length()
    log_bins = min(SPREAD_MAX_SPLITS, max(1, size.bit_length() - 2))
    shift = max(0, bits - log_bins)
    nbins = ((mx - mn) >> shift) + 1
    meter.alloc(2 * nbins + 1)
    bounds = [0] * (nbins + 1)
    for x in chunk:
        bounds[((x - mn) >> shift) + 1] += 1
    bounds[0] = lo
    for b in range(1, nbins + 1):
        bounds[b] += bounds[b - 1]
    nxt = bounds[:nbins]
    for x in chunk:
        d = (x - mn) >> shift
        buf[nxt[d]] = x
        nxt[d] += 1
    a[lo:hi] = buf[lo:hi]
    if shift:
        for b in range(nbins):
            s, e = bounds[b], bounds[b + 1]
            if e - s > 1:
                _spread_pass(a, buf, s, e, meter)
    meter.free(2 * nbins + 1)


def spreadsort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    """Simplified spreadsort: radix binning on the high bits of ``x - min``.

    Bins of at most 256 elements fall back to the middle-pivot quicksort.
    Bins whose values span a single bin width need no further work.
    """
    a = list(data)
    n = len(a)
    k = value_range(a)
    meter = WordMeter()
    if n > 1:
        meter.alloc(n)
        buf = [0] * n
        _spread_pass(a, buf, 0, n, meter)
    return SortReport(a, aux_words=meter.peak, max_value=k)


# -- flashsort ----------------------------------------------------------------------


def flash_classes(n: int) -> int:
    """Number of classes, ceil(0.43 n), computed in exact integer arithmetic."""
    return max(1, (43 * n + 99) // 100)


def flashsort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    """Neubert's flashsort: classify, cycle-leader permutation, insertion pass."""
    a = list(data)
    n = len(a)
    k = value_range(a)
    if n <= 1:
        return SortReport(a, aux_words=0, max_value=k)
    m = flash_classes(n)
    mn = min(a)
    imax = a.index(k)
    span = k - mn
    if span == 0:
        return SortReport(a, aux_words=0, max_value=k, details={"classes": m})
    scale = m - 1

    bounds = [0] * m
    for x in a:
        bounds[scale * (x - mn) // span] += 1
    for c in range(1, m):
        bounds[c] += bounds[c - 1]

    a[0], a[imax] = a[imax], a[0]
    moved = 0
    j = 0
    c = m - 1
    while moved < n - 1:
        while j > bounds[c] - 1:
            j += 1
            c = scale * (a[j] - mn) // span
        flash = a[j]
        while j != bounds[c]:
            c = scale * (flash - mn) // span
            dest = bounds[c] - 1
            a[dest], flash = flash, a[dest]
            bounds[c] = dest
            moved += 1

    _insertion_sort(a, 0, n)
    return SortReport(a, aux_words=m, max_value=k, details={"classes": m})


# -- bucket sort ------------------------------------------------------------------


def bucket_sort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    """Bucket sort with one bucket per element and insertion-sorted buckets.

    Value ``x`` goes to bucket ``x * n // (k + 1)``.  ``aux_words`` is ``2 n``:
    one header per bucket plus one slot per stored element.
    """
    n = len(data)
    if n == 0:
        return SortReport([], aux_words=0, max_value=0, details={"buckets": 0})
    k = value_range(data)
    buckets: list[list[int]] = [[] for _ in range(n)]
    width = k + 1
    for x in data:
        buckets[x * n // width].append(x)
    out: list[int] = []
    for b in buckets:
        if len(b) > 1:
            _insertion_sort(b, 0, len(b))
        out.extend(b)
    return SortReport(out, aux_words=2 * n, max_value=k, details={"buckets": len(buckets)})


Sorter = Callable[..., SortReport]

BASELINES: dict[BaselineAlgo, Sorter] = {
    BaselineAlgo.COUNTING: counting_sort,
    BaselineAlgo.PIGEONHOLE: pigeonhole_sort,
    BaselineAlgo.MSD_RADIX: msd_radix_sort,
    BaselineAlgo.SPREADSORT: spreadsort,
    BaselineAlgo.FLASHSORT: flashsort,
    BaselineAlgo.BUCKET: bucket_sort,
    BaselineAlgo.QUICKSORT: quicksort_middle,
}

#: Every benchmarked algorithm by CLI name, TwinArray first.
ALGORITHMS: dict[str, Sorter] = {"twinarray": twinarray_sort}
ALGORITHMS.update((algo.value, fn) for algo, fn in BASELINES.items())


def baseline_sort(algo: BaselineAlgo | str, data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    return BASELINES[BaselineAlgo(algo)](data, max_slots=max_slots)


def get_sorter(name: str) -> Sorter:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
