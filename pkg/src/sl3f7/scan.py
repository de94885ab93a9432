"""Exhaustive, partitionable scans over SL3(F7) and derived censuses.

The scan substrate is the base-7 MatCode space [0, 7^9).  Every scan
streams over disjoint code ranges in chunks, evaluates a vectorized
kernel per chunk, and merges partial results by addition or union, so
results are independent of the chunking and of thread count.  The group
is never materialized; only small result sets (centralizers, orbits
under a cap) are collected, keyed by MatCode.
"""

from __future__ import annotations

import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TypeVar

import numpy as np

from .classify import ClassLabel, NotEigenfree, NotInSL3, is_eigenfree_label
from .matrix3 import (
    CODE_SPACE,
    GROUP_ORDER,
    IDENTITY,
    Mat3,
    char_poly,
    decode,
    det,
    encode,
    format_matrix,
    has_fp_eigenvalue,
    is_scalar,
    mat_order,
    mat_pow,
    trace,
)

SCHEMA = "sl3f7/v1"
DEFAULT_CHUNK = 1 << 21

_T = TypeVar("_T")


class OrbitTooLarge(RuntimeError):
    """orbit_oracle exceeded its distinct-element cap."""


class NonIntegerCount(RuntimeError):
    """Order-19 element count not divisible by 18: implementation bug."""


class WrongOrder(ValueError):
    """normalizer_of_cyclic requires a generator of order 19."""


class UnsupportedOrder(ValueError):
    """order_absence_check supports n in {3, 9, 27} only."""


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SL3F7_THREADS", "1")))
    except ValueError:
        return 1


def _chunk_ranges(start: int, stop: int, chunk_size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk_size, stop)) for lo in range(start, stop, chunk_size)]


def _map_chunks(
    worker: Callable[[int, int], _T],
    start: int,
    stop: int,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> Iterator[_T]:
    """Apply worker to disjoint code ranges, yielding results in range order."""
    ranges = _chunk_ranges(start, stop, chunk_size)
    threads = default_threads() if threads is None else max(1, threads)
    done = 0
    t0 = time.time()

    def report() -> None:
        if progress and ranges:
            pct = 100.0 * done / len(ranges)
            print(f"\rscanning codes: {pct:5.1f}% ({time.time() - t0:.1f}s)",
                  end="", file=sys.stderr, flush=True)

    if threads == 1 or len(ranges) <= 1:
        for lo, hi in ranges:
            yield worker(lo, hi)
            done += 1
            report()
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for out in ex.map(lambda r: worker(*r), ranges):
                yield out
                done += 1
                report()
    if progress and ranges:
        print(file=sys.stderr)


def _digit_planes(lo: int, hi: int) -> np.ndarray:
    """Base-7 digit planes of codes in [lo, hi): shape (9, hi-lo) int16."""
    q = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((9, hi - lo), dtype=np.int16)
    for k in range(9):
        out[k] = (q % 7).astype(np.int16)
        q //= 7
    return out


def _det_plane(d: np.ndarray) -> np.ndarray:
    a, b, c, dd, e, f, g, h, i = d
    return (a * (e * i - f * h) + b * (f * g - dd * i) + c * (dd * h - e * g)) % 7


def _mul_planes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Entrywise batched 3x3 product of digit planes, reduced mod 7."""
    out = np.empty_like(x)
    for i in range(3):
        for j in range(3):
            out[3 * i + j] = (x[3 * i] * y[j] + x[3 * i + 1] * y[3 + j] + x[3 * i + 2] * y[6 + j]) % 7
    return out


def _mul_planes_const(x: np.ndarray, m: Mat3, side: str) -> np.ndarray:
    """x @ m (side="right") or m @ x (side="left") with m a fixed matrix."""
    out = np.empty_like(x)
    for i in range(3):
        for j in range(3):
            if side == "right":
                acc = x[3 * i] * m[j] + x[3 * i + 1] * m[3 + j] + x[3 * i + 2] * m[6 + j]
            else:
                acc = m[3 * i] * x[j] + m[3 * i + 1] * x[3 + j] + m[3 * i + 2] * x[6 + j]
            out[3 * i + j] = acc % 7
    return out


def _adjugate_planes(d: np.ndarray) -> np.ndarray:
    """Adjugate of unit-determinant planes, i.e. the inverse when det = 1."""
    a, b, c, dd, e, f, g, h, i = d
    out = np.empty_like(d)
    out[0] = (e * i - f * h) % 7
    out[1] = (c * h - b * i) % 7
    out[2] = (b * f - c * e) % 7
    out[3] = (f * g - dd * i) % 7
    out[4] = (a * i - c * g) % 7
    out[5] = (c * dd - a * f) % 7
    out[6] = (dd * h - e * g) % 7
    out[7] = (b * g - a * h) % 7
    out[8] = (a * e - b * dd) % 7
    return out


def _encode_planes(d: np.ndarray) -> np.ndarray:
    codes = np.zeros(d.shape[1], dtype=np.int64)
    for k in range(9):
        codes += d[k].astype(np.int64) * (7**k)
    return codes


def _eq_identity(d: np.ndarray) -> np.ndarray:
    mask = np.ones(d.shape[1], dtype=bool)
    for k in range(9):
        mask &= d[k] == IDENTITY[k]
    return mask


def _require_sl3(m: Mat3) -> None:
    if det(m) != 1:
        raise NotInSL3(f"det = {det(m)}, expected 1")


# ---------------------------------------------------------------------------
# enumeration and counting


def enumerate_sl3(
    start: int = 0,
    stop: int = CODE_SPACE,
    *,
    chunk_size: int = DEFAULT_CHUNK,
) -> Iterator[Mat3]:
    """Yield the det-1 matrices whose codes lie in [start, stop), ascending."""
    if not (0 <= start <= stop <= CODE_SPACE):
        raise ValueError(f"partition [{start}, {stop}) not within [0, {CODE_SPACE})")
    for lo, hi in _chunk_ranges(start, stop, chunk_size):
        d = _digit_planes(lo, hi)
        for off in np.flatnonzero(_det_plane(d) == 1):
            yield decode(lo + int(off))


def count_sl3(
    start: int = 0,
    stop: int = CODE_SPACE,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> int:
    """Number of det-1 matrices with codes in [start, stop)."""

    def worker(lo: int, hi: int) -> int:
        return int(np.count_nonzero(_det_plane(_digit_planes(lo, hi)) == 1))

    return sum(_map_chunks(worker, start, stop, chunk_size=chunk_size,
                           threads=threads, progress=progress))


def count_invertible(
    start: int = 0,
    stop: int = CODE_SPACE,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
) -> int:
    """Number of det != 0 matrices in the range (GL3 count on the full range)."""

    def worker(lo: int, hi: int) -> int:
        return int(np.count_nonzero(_det_plane(_digit_planes(lo, hi)) != 0))

    return sum(_map_chunks(worker, start, stop, chunk_size=chunk_size, threads=threads))


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class ScanSummary:
    """Census of eigenvector-free matrices in SL3(F7)."""

    group_order: int
    eigenfree_total: int
    by_trace: dict[int, int]
    by_label: dict[ClassLabel, int]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "census",
            "group_order": self.group_order,
            "eigenfree_total": self.eigenfree_total,
            "by_trace": {str(t): n for t, n in sorted(self.by_trace.items())},
            "by_label": [
                {"i": l.i, "j": l.j, "count": n} for l, n in sorted(self.by_label.items())
            ],
        }

    def to_csv(self, by: str = "label") -> str:
        if by == "trace":
            lines = ["trace,count"]
            lines += [f"{t},{n}" for t, n in sorted(self.by_trace.items())]
        elif by == "label":
            lines = ["i,j,count"]
            lines += [f"{l.i},{l.j},{n}" for l, n in sorted(self.by_label.items())]
        else:
            raise ValueError(f"unknown census table {by!r}")
        return "\n".join(lines) + "\n"


def _census_chunk(lo: int, hi: int) -> tuple[int, np.ndarray]:
    d = _digit_planes(lo, hi)
    sl = _det_plane(d) == 1
    ds = d[:, sl]
    a, b, c, dd, e, f, g, h, i = ds
    tr = (a + e + i) % 7
    jc = (a * e - b * dd + e * i - f * h + a * i - c * g) % 7
    has_root = np.zeros(tr.shape, dtype=bool)
    for lam in range(1, 7):  # lam = 0 never solves t^3 - i t^2 + j t - 1 = 0
        has_root |= (lam**3 - tr * lam * lam + jc * lam - 1) % 7 == 0
    ef = ~has_root
    counts = np.bincount((tr[ef] * 7 + jc[ef]).astype(np.int64), minlength=49)
    return int(np.count_nonzero(sl)), counts


_census_cache: dict[tuple[int, int], ScanSummary] = {}


def census(
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> ScanSummary:
    """Full-group census: group order plus eigenfree counts by trace and label.

    Deterministic for any chunk size or thread count (partial results merge
    by pointwise addition); results are cached per partitioning.
    """
    threads = default_threads() if threads is None else max(1, threads)
    key = (chunk_size, threads)
    if key in _census_cache:
        return _census_cache[key]
    group_order = 0
    counts = np.zeros(49, dtype=np.int64)
    for n, part in _map_chunks(_census_chunk, 0, CODE_SPACE, chunk_size=chunk_size,
                               threads=threads, progress=progress):
        group_order += n
        counts += part
    by_label = {
        ClassLabel(k // 7, k % 7): int(v) for k, v in enumerate(counts) if v
    }
    by_trace: dict[int, int] = {}
    for label, n in by_label.items():
        by_trace[label.i] = by_trace.get(label.i, 0) + n
    summary = ScanSummary(
        group_order=group_order,
        eigenfree_total=int(counts.sum()),
        by_trace=by_trace,
        by_label=by_label,
    )
    _census_cache[key] = summary
    return summary


def label_member_codes(
    label: ClassLabel,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
) -> np.ndarray:
    """Sorted codes of every SL3 matrix carrying the given eigenfree label."""
    if not is_eigenfree_label(label):
        raise NotEigenfree(f"{label} is not an eigenvector-free label")

    def worker(lo: int, hi: int) -> np.ndarray:
        d = _digit_planes(lo, hi)
        sl = _det_plane(d) == 1
        ds = d[:, sl]
        a, b, c, dd, e, f, g, h, i = ds
        mask = (a + e + i) % 7 == label.i
        mask &= (a * e - b * dd + e * i - f * h + a * i - c * g) % 7 == label.j
        return lo + np.flatnonzero(sl)[mask]

    parts = list(_map_chunks(worker, 0, CODE_SPACE, chunk_size=chunk_size, threads=threads))
    return np.concatenate(parts)


# ---------------------------------------------------------------------------
# centralizers, conjugacy classes, conjugator search


def _commute_chunk(lo: int, hi: int, a: Mat3, b: Mat3) -> np.ndarray:
    """Codes g in [lo, hi) with det(g) = 1 and g*a = b*g, ascending."""
    d = _digit_planes(lo, hi)
    sl = _det_plane(d) == 1
    ds = d[:, sl]
    mask = np.ones(ds.shape[1], dtype=bool)
    for i in range(3):
        for j in range(3):
            ga = ds[3 * i] * a[j] + ds[3 * i + 1] * a[3 + j] + ds[3 * i + 2] * a[6 + j]
            bg = b[3 * i] * ds[j] + b[3 * i + 1] * ds[3 + j] + b[3 * i + 2] * ds[6 + j]
            mask &= (ga - bg) % 7 == 0
    return lo + np.flatnonzero(sl)[mask]


def intertwiner_codes(
    a: Mat3,
    b: Mat3,
    *,
    first_only: bool = False,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> np.ndarray:
    """Codes of all g in SL3 with g*a*g^-1 = b (equivalently g*a = b*g).

    With first_only, the scan stops at the minimal-code solution and the
    result has length <= 1.
    """
    if first_only:
        for lo, hi in _chunk_ranges(0, CODE_SPACE, chunk_size):
            hits = _commute_chunk(lo, hi, a, b)
            if hits.size:
                return hits[:1]
        return np.empty(0, dtype=np.int64)
    parts = list(_map_chunks(lambda lo, hi: _commute_chunk(lo, hi, a, b),
                             0, CODE_SPACE, chunk_size=chunk_size,
                             threads=threads, progress=progress))
    return np.concatenate(parts)


@dataclass(frozen=True)
class CentralizerReport:
    """Centralizer of a det-1 matrix, found by full scan."""

    subject: Mat3
    size: int
    is_cyclic: bool
    generator: Mat3 | None
    elements: tuple[int, ...] | None  # MatCodes, present only when size <= 1024

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "centralizer",
            "subject": format_matrix(self.subject),
            "size": self.size,
            "is_cyclic": self.is_cyclic,
            "generator": None if self.generator is None else format_matrix(self.generator),
            "elements": None if self.elements is None else list(self.elements),
        }


_ELEMENT_LIST_CAP = 1024
_centralizer_cache: dict[tuple, CentralizerReport] = {}


def centralizer(
    m: Mat3,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> CentralizerReport:
    """All g in SL3(F7) with g*m = m*g, by full scan over the code space."""
    _require_sl3(m)
    threads = default_threads() if threads is None else max(1, threads)
    key = (m, chunk_size, threads)
    if key in _centralizer_cache:
        return _centralizer_cache[key]
    codes = intertwiner_codes(m, m, chunk_size=chunk_size, threads=threads,
                              progress=progress)
    size = int(codes.size)
    if size > _ELEMENT_LIST_CAP:
        # every element of SL3(F7) has order at most 57, so any subgroup
        # larger than that cannot be cyclic
        report = CentralizerReport(m, size, False, None, None)
    else:
        elements = tuple(int(c) for c in codes)
        generator = None
        for c in elements:
            g = decode(c)
            if mat_order(g) == size:
                generator = g
                break
        report = CentralizerReport(m, size, generator is not None, generator, elements)
    _centralizer_cache[key] = report
    return report


def class_size(m: Mat3, **scan_kwargs) -> int:
    """Conjugacy-class size by orbit-stabilizer: |SL3| / |centralizer|."""
    report = centralizer(m, **scan_kwargs)
    q, r = divmod(GROUP_ORDER, report.size)
    if r:
        raise AssertionError("centralizer size does not divide the group order")
    return q


def orbit_oracle(
    m: Mat3,
    *,
    cap: int = 1 << 20,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> set[int]:
    """Brute-force conjugation orbit {encode(g m g^-1) : g in SL3}.

    Independent oracle for class_size and for the fact that the label sets
    are whole conjugacy classes.  Raises OrbitTooLarge past the cap.
    """
    _require_sl3(m)
    seen = np.zeros(CODE_SPACE, dtype=bool)

    def worker(lo: int, hi: int) -> np.ndarray:
        d = _digit_planes(lo, hi)
        sl = _det_plane(d) == 1
        g = d[:, sl]
        gm = _mul_planes_const(g, m, "right")
        conj = _mul_planes(gm, _adjugate_planes(g))
        return _encode_planes(conj)

    for codes in _map_chunks(worker, 0, CODE_SPACE, chunk_size=chunk_size,
                             threads=threads, progress=progress):
        seen[codes] = True
        if int(np.count_nonzero(seen)) > cap:
            raise OrbitTooLarge(f"orbit exceeded cap of {cap} distinct elements")
    return {int(c) for c in np.flatnonzero(seen)}


# ---------------------------------------------------------------------------
# Sylow-19 counting, normalizers, order absence


def _power19_chunk(lo: int, hi: int) -> int:
    d = _digit_planes(lo, hi)
    sl = _det_plane(d) == 1
    g = d[:, sl]
    g2 = _mul_planes(g, g)
    g4 = _mul_planes(g2, g2)
    g8 = _mul_planes(g4, g4)
    g16 = _mul_planes(g8, g8)
    g19 = _mul_planes(_mul_planes(g16, g2), g)
    return int(np.count_nonzero(_eq_identity(g19)))


_order19_cache: dict[tuple[int, int], int] = {}


def count_order19_elements(
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> int:
    """Number of elements of order exactly 19 (g^19 = I and g != I)."""
    threads = default_threads() if threads is None else max(1, threads)
    key = (chunk_size, threads)
    if key not in _order19_cache:
        with_identity = sum(_map_chunks(_power19_chunk, 0, CODE_SPACE,
                                        chunk_size=chunk_size, threads=threads,
                                        progress=progress))
        _order19_cache[key] = with_identity - 1
    return _order19_cache[key]


def sylow19_count(**scan_kwargs) -> int:
    """Number of Sylow 19-subgroups: order-19 elements come 18 per subgroup.

    Validated to be an integer congruent to 1 mod 19 that divides
    2^5 * 3^3 * 7^3.
    """
    elements = count_order19_elements(**scan_kwargs)
    n19, rem = divmod(elements, 18)
    if rem:
        raise NonIntegerCount(f"{elements} order-19 elements not divisible by 18")
    if n19 % 19 != 1 or (GROUP_ORDER // 19) % n19 != 0:
        raise NonIntegerCount(f"n19 = {n19} fails the Sylow constraints")
    return n19


def normalizer_of_cyclic(
    p_generator: Mat3,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> int:
    """Size of N(<P>) = {g : g P g^-1 in <P>} for an order-19 generator P."""
    _require_sl3(p_generator)
    if mat_order(p_generator) != 19:
        raise WrongOrder(f"generator has order {mat_order(p_generator)}, expected 19")
    member_codes = np.sort(np.array(
        [encode(mat_pow(p_generator, k)) for k in range(19)], dtype=np.int64))

    def worker(lo: int, hi: int) -> int:
        d = _digit_planes(lo, hi)
        sl = _det_plane(d) == 1
        g = d[:, sl]
        gm = _mul_planes_const(g, p_generator, "right")
        conj = _mul_planes(gm, _adjugate_planes(g))
        return int(np.count_nonzero(np.isin(_encode_planes(conj), member_codes)))

    return sum(_map_chunks(worker, 0, CODE_SPACE, chunk_size=chunk_size,
                           threads=threads, progress=progress))


_absence_cache: dict[tuple[int, int, int], bool] = {}


def order_absence_check(
    n: int,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    progress: bool = False,
) -> bool:
    """True iff no element g has g^n = I with g^(n/3) != I, for n in {3, 9, 27}."""
    if n not in (3, 9, 27):
        raise UnsupportedOrder(f"order-absence scan supports 3, 9, 27; got {n}")
    threads = default_threads() if threads is None else max(1, threads)
    key = (n, chunk_size, threads)
    if key in _absence_cache:
        return _absence_cache[key]

    def worker(lo: int, hi: int) -> int:
        d = _digit_planes(lo, hi)
        sl = _det_plane(d) == 1
        g = d[:, sl]
        g3 = _mul_planes(_mul_planes(g, g), g)
        lower, upper = g, g3
        if n >= 9:
            g9 = _mul_planes(_mul_planes(g3, g3), g3)
            lower, upper = g3, g9
        if n == 27:
            g27 = _mul_planes(_mul_planes(upper, upper), upper)
            lower, upper = upper, g27
        return int(np.count_nonzero(_eq_identity(upper) & ~_eq_identity(lower)))

    present = sum(_map_chunks(worker, 0, CODE_SPACE, chunk_size=chunk_size,
                              threads=threads, progress=progress))
    _absence_cache[key] = present == 0
    return _absence_cache[key]


# ---------------------------------------------------------------------------
# power tables


@dataclass(frozen=True)
class PowerTableRow:
    k: int
    matrix: Mat3
    trace: int
    pair: tuple[int, int]  # characteristic pair (i, j), display for every row
    label: ClassLabel | None  # set only when the power is eigenvector-free
    note: str | None

    def display_class(self) -> str:
        return f"[{self.pair[0]},{self.pair[1]}]"


def power_table(m: Mat3, limit: int) -> list[PowerTableRow]:
    """Rows k = 1..limit with m^k, its trace, and class label when eigenfree."""
    _require_sl3(m)
    if not 1 <= limit <= 120:
        raise ValueError(f"limit must be in 1..120, got {limit}")
    rows: list[PowerTableRow] = []
    mk = IDENTITY
    for k in range(1, limit + 1):
        mk = tuple((mk[3 * i] * m[j] + mk[3 * i + 1] * m[3 + j] + mk[3 * i + 2] * m[6 + j]) % 7
                   for i in range(3) for j in range(3))
        poly, _ = char_poly(mk)
        pair = (poly.i, poly.j)
        if not has_fp_eigenvalue(mk):
            rows.append(PowerTableRow(k, mk, trace(mk), pair, ClassLabel(*pair), None))
        elif mk == IDENTITY:
            rows.append(PowerTableRow(k, mk, trace(mk), pair, None, "identity"))
        elif is_scalar(mk):
            rows.append(PowerTableRow(k, mk, trace(mk), pair, None, f"scalar {mk[0]}I"))
        else:
            rows.append(PowerTableRow(k, mk, trace(mk), pair, None, "has eigenvector"))
    return rows


def power_table_csv(rows: Iterable[PowerTableRow], signed: bool = False) -> str:
    lines = ["k,matrix,trace,label"]
    for r in rows:
        lines.append(f"{r.k},{format_matrix(r.matrix, signed=signed)},{r.trace},{r.display_class()}")
    return "\n".join(lines) + "\n"


def power_table_json(rows: Iterable[PowerTableRow], signed: bool = False) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "power_table",
        "rows": [
            {
                "k": r.k,
                "matrix": format_matrix(r.matrix, signed=signed),
                "trace": r.trace,
                "class": r.display_class(),
                "eigenfree": r.label is not None,
                "note": r.note,
            }
            for r in rows
        ],
    }


# ---------------------------------------------------------------------------
# the structured centralizer of the zero-rich [0,4] representative


def commutant_family(a: int, b: int, d: int) -> Mat3:
    """The matrices commuting with [[0,1,3],[0,0,1],[1,0,0]] form the
    three-parameter family [[a, b, 3b+d], [d, a-3d, b], [b, d, a]]."""
    return (
        a % 7, b % 7, (3 * b + d) % 7,
        d % 7, (a - 3 * d) % 7, b % 7,
        b % 7, d % 7, a % 7,
    )


def commutant_det_cubic(a: int, b: int, d: int) -> int:
    """det of commutant_family(a, b, d) as the explicit cubic in a."""
    return (
        a**3 + b**3 + d**3 - 3 * a * a * d - 3 * a * b * b
        + 2 * d * b * b - d * d * b - 3 * b * a * d
    ) % 7


def centralizer_parameter_table() -> list[tuple[int, int, tuple[int, ...]]]:
    """For each (b, d) pair, the a values solving the det-1 cubic.

    49 rows; the solution total is the centralizer size 57.
    """
    return [
        (b, d, tuple(a for a in range(7) if commutant_det_cubic(a, b, d) == 1))
        for b in range(7)
        for d in range(7)
    ]


def centralizer_parameter_count() -> int:
    return sum(len(sols) for _, _, sols in centralizer_parameter_table())
