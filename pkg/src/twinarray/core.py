"""TwinArray Sort.

The input is scanned once for its maximum ``k``; two auxiliary arrays of
``k + 1`` slots are then populated by value index: ``values[v] = v`` and
``counts[v] += 1``.  A verifier inspects the counts and picks one of two
reconstructions:

* distinct path: no value repeats, so the non-zero slots of ``values`` are
  already the sorted output (a lone 0 is prepended when ``counts[0] == 1``,
  since 0 doubles as the empty-slot sentinel);
* frequency path: each value ``i`` is emitted ``counts[i]`` times.

Both paths run in O(n + k) time with ``2 (k + 1)`` words of auxiliary storage.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import repeat
from typing import Any, Sequence

from .errors import EmptyInput, InvalidElement, PathMisuse, RangeGuardExceeded

U64_MAX = (1 << 64) - 1

#: Default cap on the number of value-indexed slots (``k + 1``) one array may have.
DEFAULT_MAX_SLOTS = 1 << 32

EMPTY = 0


class SortPath(str, enum.Enum):
    DISTINCT = "distinct"
    FREQUENCY = "frequency"


@dataclass
class SortReport:
    """Result of one sort call.

    ``aux_words`` is the peak number of auxiliary machine words the algorithm
    allocated beyond its input, counted analytically as it allocates.
    ``details`` carries algorithm-specific instrumentation (bucket counts,
    pivot traces, recursion depth).
    """

    output: list[int]
    aux_words: int
    max_value: int
    path: SortPath | None = None
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class TwinArrays:
    values: list[int]
    counts: list[int]
    k: int

    @property
    def n(self) -> int:
        return sum(self.counts)


def value_range(data: Sequence[int]) -> int:
    """Return ``max(data)`` after checking every element is an unsigned 64-bit value.

    Returns 0 for empty input.
    """
    if len(data) == 0:
        return 0
    hi = find_max(data)
    lo = min(data)
    if lo < 0:
        raise InvalidElement(f"negative element {lo}")
    if hi > U64_MAX:
        raise InvalidElement(f"element {hi} exceeds 64 bits")
    return hi


def check_slots(k: int, max_slots: int) -> None:
    if k + 1 > max_slots:
        raise RangeGuardExceeded(k + 1, max_slots)


def find_max(data: Sequence[int]) -> int:
    if len(data) == 0:
        raise EmptyInput("find_max of an empty sequence")
    return max(data)


def build_twin_arrays(data: Sequence[int], k: int, *, max_slots: int = DEFAULT_MAX_SLOTS) -> TwinArrays:
    """Populate the value and count arrays in a single pass over ``data``.

    ``k`` must be the maximum of ``data``.
    """
    check_slots(k, max_slots)
    values = [EMPTY] * (k + 1)
    counts = [0] * (k + 1)
    for x in data:
        values[x] = x
        counts[x] += 1
    return TwinArrays(values, counts, k)


def has_duplicates(twin: TwinArrays) -> bool:
    if not twin.counts:
        return False
    return max(twin.counts) > 1


def _extract_distinct(twin: TwinArrays) -> list[int]:
    out = list(filter(None, twin.values))
    if twin.counts[0]:
        out.insert(0, 0)
    return out


def _expand_frequencies(twin: TwinArrays) -> list[int]:
    counts = twin.counts
    out = [0] * counts[0] if counts else []
    extend = out.extend
    # the values array locates occupied slots (bar the 0 sentinel), counts gives multiplicity
    for value in filter(None, twin.values):
        extend(repeat(value, counts[value]))
    return out


def reconstruct_distinct(twin: TwinArrays) -> list[int]:
    """Extract the occupied slots of a duplicate-free twin structure."""
    if has_duplicates(twin):
        raise PathMisuse("distinct reconstruction requires a duplicate-free input")
    if not twin.counts:
        return []
    return _extract_distinct(twin)


def reconstruct_frequency(twin: TwinArrays) -> list[int]:
    return _expand_frequencies(twin)


def twinarray_sort(data: Sequence[int], *, max_slots: int = DEFAULT_MAX_SLOTS) -> SortReport:
    """Sort non-negative integers with TwinArray Sort.

    Raises :class:`RangeGuardExceeded` when ``max(data) + 1`` exceeds
    ``max_slots``.
    """
    if len(data) == 0:
        return SortReport([], aux_words=0, max_value=0, path=SortPath.DISTINCT)
    k = value_range(data)
    twin = build_twin_arrays(data, k, max_slots=max_slots)
    if has_duplicates(twin):
        path = SortPath.FREQUENCY
        out = _expand_frequencies(twin)
    else:
        path = SortPath.DISTINCT
        out = _extract_distinct(twin)
    return SortReport(out, aux_words=2 * (k + 1), max_value=k, path=path)
