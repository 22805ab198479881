"""Simple support functions over a bitmask frame and their conjunctive conflict.

Focal sets are integer bitmasks: bit ``i`` stands for frame element ``i + 1``.
"""
from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence, Union

from .exceptions import ConflictAtOne, EmptyFocal, MassOutOfRange, TooLarge

MAX_FRAME = 16
BRUTE_FORCE_LIMIT = 20

FocalLike = Union[int, Iterable[int]]


def focal_mask(elements: Iterable[int]) -> int:
    """Bitmask for a collection of 1-based frame elements."""
    mask = 0
    for e in elements:
        e = int(e)
        if e < 1 or e > MAX_FRAME:
            raise ValueError(f"frame element {e} outside 1..{MAX_FRAME}")
        mask |= 1 << (e - 1)
    return mask


def focal_elements(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def theta_mask(frame_size: int) -> int:
    if not 1 <= frame_size <= MAX_FRAME:
        raise ValueError(f"frame size must be in 1..{MAX_FRAME}, got {frame_size}")
    return (1 << frame_size) - 1


@dataclass(frozen=True)
class SimpleEvidence:
    """Mass ``mass`` on ``focal`` and the remainder on the whole frame."""

    id: int
    focal: int
    mass: float

    @property
    def elements(self) -> list[int]:
        return focal_elements(self.focal)

    def to_dict(self) -> dict:
        return {"id": self.id, "focal": self.elements, "mass": self.mass}


def make_evidence(focal: FocalLike, mass: float, id: int = 0,
                  frame_size: int | None = None) -> SimpleEvidence:
    """Validate and build a simple support function.

    ``focal`` is either a bitmask or an iterable of 1-based elements.
    """
    mask = int(focal) if isinstance(focal, numbers.Integral) else focal_mask(focal)
    if mask <= 0:
        raise EmptyFocal(f"evidence {id}: focal element must be nonempty")
    if frame_size is not None and mask & ~theta_mask(frame_size):
        raise ValueError(f"evidence {id}: focal {focal_elements(mask)} exceeds frame of size {frame_size}")
    if mask >> MAX_FRAME:
        raise ValueError(f"evidence {id}: focal uses elements beyond {MAX_FRAME}")
    mass = float(mass)
    if not 0.0 < mass < 1.0:
        raise MassOutOfRange(f"evidence {id}: mass {mass} not in (0, 1)")
    return SimpleEvidence(int(id), mask, mass)


def pairwise_conflict(a: SimpleEvidence, b: SimpleEvidence) -> float:
    return a.mass * b.mass if a.focal & b.focal == 0 else 0.0


def weight_of_conflict(c: float) -> float:
    """Weight of evidence ``-log(1 - c)`` (natural log)."""
    if c >= 1.0:
        raise ConflictAtOne(f"conflict {c} has infinite weight")
    if c < 0.0:
        raise ValueError(f"conflict {c} is negative")
    return -math.log1p(-c)


class BodyOfEvidence:
    """Unnormalized conjunctive combination state.

    Mass landing on the empty set (key 0) is kept, never redistributed.
    ``theta`` is the mask standing for the whole frame; any mask covering
    every focal set that will be folded in gives the same conflict.
    """

    __slots__ = ("theta", "masses")

    def __init__(self, theta: int, masses: dict[int, float] | None = None):
        self.theta = theta
        self.masses = {theta: 1.0} if masses is None else masses

    def copy(self) -> "BodyOfEvidence":
        return BodyOfEvidence(self.theta, dict(self.masses))

    def fold(self, ev: SimpleEvidence) -> "BodyOfEvidence":
        """Return a new body with ``ev`` combined in."""
        m = ev.mass
        keep = 1.0 - m
        out: dict[int, float] = {}
        get = out.get
        for a, ma in self.masses.items():
            inter = a & ev.focal
            out[inter] = get(inter, 0.0) + ma * m
            out[a] = get(a, 0.0) + ma * keep
        return BodyOfEvidence(self.theta, out)

    @property
    def conflict(self) -> float:
        return self.masses.get(0, 0.0)

    def total(self) -> float:
        return math.fsum(self.masses.values())


def combine(evidence: Iterable[SimpleEvidence], theta: int | None = None) -> BodyOfEvidence:
    evidence = list(evidence)
    if theta is None:
        theta = 0
        for ev in evidence:
            theta |= ev.focal
        theta = theta or 1
    body = BodyOfEvidence(theta)
    for ev in evidence:
        body = body.fold(ev)
    return body


def combine_conflict(evidence: Iterable[SimpleEvidence]) -> float:
    """Mass on the empty set after combining all evidence conjunctively."""
    return combine(evidence).conflict


def brute_force_conflict(evidence: Sequence[SimpleEvidence]) -> float:
    """Selection-sum oracle for :func:`combine_conflict`.

    Sums, over every subset S of the evidence whose focal sets have empty
    intersection, the product of m_j for j in S and (1 - m_j) for j not in S.
    """
    n = len(evidence)
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{n} evidence exceeds brute-force limit {BRUTE_FORCE_LIMIT}")
    total = []
    for size in range(2, n + 1):
        for sel in combinations(range(n), size):
            inter = -1
            for j in sel:
                inter &= evidence[j].focal
            if inter != 0:
                continue
            chosen = set(sel)
            p = 1.0
            for j, ev in enumerate(evidence):
                p *= ev.mass if j in chosen else 1.0 - ev.mass
            total.append(p)
    return math.fsum(total)


# -- evidence-set files -------------------------------------------------------

def evidence_to_dict(evidence: Sequence[SimpleEvidence], frame_size: int) -> dict:
    return {"frame_size": frame_size, "evidence": [ev.to_dict() for ev in evidence]}


def evidence_from_dict(doc: dict) -> tuple[list[SimpleEvidence], int]:
    frame_size = int(doc["frame_size"])
    theta_mask(frame_size)
    evidence = [make_evidence(rec["focal"], rec["mass"], rec["id"], frame_size)
                for rec in doc["evidence"]]
    return evidence, frame_size


def save_evidence(path: str | Path, evidence: Sequence[SimpleEvidence], frame_size: int) -> None:
    Path(path).write_text(json.dumps(evidence_to_dict(evidence, frame_size), indent=1) + "\n")


def load_evidence(path: str | Path) -> tuple[list[SimpleEvidence], int]:
    with open(path) as fh:
        return evidence_from_dict(json.load(fh))
