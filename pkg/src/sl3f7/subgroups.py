"""The block-upper-triangular maximal subgroup H of SL3(F7).

H consists of the det-1 matrices with zero (2,1) and (3,1) entries; it
has order (7^2-1)(7^2-7)7^2 = 98784 and index 57.  Maximality is made
constructive: any A outside H can be turned into the generators Y and Z
by multiplying with H elements only, so H together with any outside
element generates the whole group.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .field import fp_inv
from .matrix3 import (
    CODE_SPACE,
    GROUP_ORDER,
    IDENTITY,
    Mat3,
    det,
    encode,
    format_matrix,
    mat,
    mat_inv,
    mat_mul,
)
from .scan import SCHEMA, _encode_planes, _mul_planes_const

# Generators of the full group; X lies in H, Y and Z do not.
X: Mat3 = mat("1 0 1; 0 -1 -1; 0 1 0")
Y: Mat3 = mat("0 1 0; 0 0 1; 1 0 0")
Z: Mat3 = mat("0 1 0; 1 0 0; -1 -1 -1")

PARABOLIC_ORDER = 98_784


class ClosureCapExceeded(RuntimeError):
    """BFS closure grew past its cap (impossible for det-1 generators)."""


class InParabolic(ValueError):
    """reduce_to_generator needs a matrix outside H."""


@dataclass(frozen=True)
class GeneratorSet:
    gens: tuple[Mat3, ...] = (X, Y, Z)

    def __post_init__(self) -> None:
        if not self.gens:
            raise ValueError("generator set must be nonempty")
        for g in self.gens:
            if det(g) != 1:
                raise ValueError(f"generator {format_matrix(g)} has det {det(g)}, expected 1")


def in_parabolic(m: Mat3) -> bool:
    """Membership in H: zero below-diagonal first column and det 1."""
    return m[3] == 0 and m[6] == 0 and det(m) == 1


@functools.cache
def parabolic_size() -> int:
    """Direct count of the 7^7 entry tuples (d = g = 0) with det = 1."""
    codes = np.arange(7**7, dtype=np.int64)
    digits = np.empty((7, codes.size), dtype=np.int16)
    q = codes
    for k in range(7):
        digits[k] = (q % 7).astype(np.int16)
        q //= 7
    a, b, c, e, f, h, i = digits
    dets = (a * (e * i - f * h)) % 7  # block form: det = a * det([[e,f],[h,i]])
    return int(np.count_nonzero(dets == 1))


def generator_closure(
    gens: GeneratorSet | tuple[Mat3, ...] | list[Mat3],
    *,
    cap: int = GROUP_ORDER,
) -> int:
    """Size of the subgroup generated, by breadth-first closure over MatCodes.

    The frontier multiplies on the right by each generator and its inverse;
    visited states live in a flat presence bitmap over the 7^9 code space.
    """
    if not isinstance(gens, GeneratorSet):
        gens = GeneratorSet(tuple(gens))
    step_mats = []
    for g in gens.gens:
        step_mats.append(g)
        step_mats.append(mat_inv(g))

    visited = np.zeros(CODE_SPACE, dtype=bool)
    start = np.array([encode(IDENTITY)], dtype=np.int64)
    visited[start] = True
    frontier = start
    size = 1
    while frontier.size:
        planes = _frontier_planes(frontier)
        neighbors = [_encode_planes(_mul_planes_const(planes, g, "right")) for g in step_mats]
        merged = np.unique(np.concatenate(neighbors))
        fresh = merged[~visited[merged]]
        visited[fresh] = True
        size += int(fresh.size)
        if size > cap:
            raise ClosureCapExceeded(f"closure exceeded cap {cap}")
        frontier = fresh
    return size


def _frontier_planes(codes: np.ndarray) -> np.ndarray:
    out = np.empty((9, codes.size), dtype=np.int16)
    q = codes.copy()
    for k in range(9):
        out[k] = (q % 7).astype(np.int16)
        q //= 7
    return out


# Transvections and torus elements generating H (certified by a closure run
# of size 98784 in the test suite).
PARABOLIC_GENERATORS: tuple[Mat3, ...] = (
    mat("1 1 0; 0 1 0; 0 0 1"),
    mat("1 0 1; 0 1 0; 0 0 1"),
    mat("1 0 0; 0 1 1; 0 0 1"),
    mat("1 0 0; 0 1 0; 0 1 1"),
    mat("3 0 0; 0 5 0; 0 0 1"),
    mat("1 0 0; 0 3 0; 0 0 5"),
)


def maximality_witness(a: Mat3) -> bool:
    """True iff H plus the outside element a generates the whole group."""
    if in_parabolic(a):
        raise InParabolic("witness needs a matrix outside the subgroup")
    return generator_closure(PARABOLIC_GENERATORS + (a,)) == GROUP_ORDER


# ---------------------------------------------------------------------------
# constructive reduction A -> Y or Z by H-multiplications


@dataclass(frozen=True)
class Step:
    side: str  # "left" | "right"
    factor: Mat3


@dataclass(frozen=True)
class ReductionTrace:
    start: Mat3
    target: Mat3
    steps: tuple[Step, ...] = field(default_factory=tuple)

    def recompose(self) -> Mat3:
        cur = self.start
        for step in self.steps:
            cur = mat_mul(step.factor, cur) if step.side == "left" else mat_mul(cur, step.factor)
        return cur

    def verify(self) -> bool:
        return self.recompose() == self.target and all(
            in_parabolic(s.factor) for s in self.steps
        )

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "reduction",
            "start": format_matrix(self.start),
            "target": format_matrix(self.target),
            "steps": [{"side": s.side, "factor": format_matrix(s.factor)} for s in self.steps],
            "verified": self.verify(),
        }


class _Reducer:
    def __init__(self, start: Mat3):
        self.cur = start
        self.steps: list[Step] = []

    def left(self, factor: Mat3) -> None:
        if factor != IDENTITY:
            assert in_parabolic(factor), "reduction factor left the subgroup"
            self.cur = mat_mul(factor, self.cur)
            self.steps.append(Step("left", factor))

    def right(self, factor: Mat3) -> None:
        if factor != IDENTITY:
            assert in_parabolic(factor), "reduction factor left the subgroup"
            self.cur = mat_mul(self.cur, factor)
            self.steps.append(Step("right", factor))


def _reduce_to_y(r: _Reducer) -> None:
    # make the (3,1) entry nonzero, clear the rest of column 1, normalize
    if r.cur[6] == 0:
        r.left(mat("1 0 0; 0 1 0; 0 1 1"))  # row3 += row2 (d != 0 here)
    g = r.cur[6]
    ginv = fp_inv(g)
    ja, jd = -r.cur[0] * ginv % 7, -r.cur[3] * ginv % 7
    r.left(mat((1, 0, ja, 0, 1, jd, 0, 0, 1)))  # rows 1,2 += multiples of row 3
    r.left(mat((1, 0, 0, 0, g, 0, 0, 0, ginv)))  # det-1 rescale: row3 *= 1/g
    s, t = r.cur[7], r.cur[8]
    r.right(mat((1, -s % 7, -t % 7, 0, 1, 0, 0, 0, 1)))  # clear bottom row via col 1
    # state is [[0,b,c],[0,e,f],[1,0,0]] with b*f - c*e = 1
    if r.cur[5] == 0:
        r.right(mat("1 0 0; 0 1 1; 0 0 1"))  # col3 += col2 makes f = e != 0
    if r.cur[1] == 0:
        r.left(mat("1 1 0; 0 1 0; 0 0 1"))  # row1 += row2 makes b = e != 0
    b = r.cur[1]
    binv = fp_inv(b)
    r.right(mat((1, 0, 0, 0, 1, -r.cur[2] * binv % 7, 0, 0, 1)))  # clear c
    r.right(mat((1, 0, 0, 0, 1, 0, 0, -r.cur[4] * b % 7, 1)))  # clear e via col 3
    r.right(mat((1, 0, 0, 0, binv, 0, 0, 0, b)))  # det-1 rescale to Y


def _reduce_to_z(r: _Reducer) -> None:
    # clear the (1,1) entry using column-1 data from row 2 or 3
    if r.cur[0] != 0:
        if r.cur[3] != 0:
            r.left(mat((1, -r.cur[0] * fp_inv(r.cur[3]) % 7, 0, 0, 1, 0, 0, 0, 1)))
        else:
            r.left(mat((1, 0, -r.cur[0] * fp_inv(r.cur[6]) % 7, 0, 1, 0, 0, 0, 1)))
    if r.cur[3] == 0:
        r.left(mat("1 0 0; 0 1 1; 0 0 1"))  # row2 += row3 makes d = g != 0
    d = r.cur[3]
    dinv = fp_inv(d)
    je, jf = -r.cur[4] * dinv % 7, -r.cur[5] * dinv % 7
    r.right(mat((1, je, jf, 0, 1, 0, 0, 0, 1)))  # clear e, f via col 1
    if r.cur[1] == 0:
        r.right(mat("1 0 0; 0 1 0; 0 1 1"))  # col2 += col3 makes b = c != 0
    b = r.cur[1]
    r.right(mat((1, 0, 0, 0, 1, -r.cur[2] * fp_inv(b) % 7, 0, 0, 1)))  # clear c
    # state is [[0,b,0],[d,0,0],[g,h,i]] with -b*d*i = 1
    i = r.cur[8]
    r.left(mat((1, 0, 0, 0, 1, 0, 0, (i - r.cur[6]) * fp_inv(d) % 7, 1)))  # g -> i
    r.right(mat((1, 0, 0, 0, 1, 0, 0, (i - r.cur[7]) * fp_inv(i) % 7, 1)))  # h -> i
    r.left(mat((-i * d % 7, 0, 0, 0, fp_inv(d), 0, 0, 0, -fp_inv(i) % 7)))


def reduce_to_generator(a: Mat3, target: str | Mat3) -> ReductionTrace:
    """H-factor elimination turning A (outside H, det 1) into Y or Z.

    Every factor lies in H and has det 1; the returned trace recomposes to
    the target exactly.
    """
    if isinstance(target, str):
        name = target.upper()
        if name not in ("Y", "Z"):
            raise ValueError(f"target must be Y or Z, got {target!r}")
        target_mat = Y if name == "Y" else Z
    elif target in (Y, Z):
        target_mat = target
    else:
        raise ValueError("target must be the generator Y or Z")
    if det(a) != 1:
        raise ValueError(f"matrix has det {det(a)}, expected 1")
    if in_parabolic(a):
        raise InParabolic("reduction undefined inside the subgroup")

    r = _Reducer(a)
    if target_mat == Y:
        _reduce_to_y(r)
    else:
        _reduce_to_z(r)
    assert r.cur == target_mat, "reduction failed to reach the target"
    return ReductionTrace(start=a, target=target_mat, steps=tuple(r.steps))
