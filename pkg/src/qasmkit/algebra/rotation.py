"""Rotation terms R(theta, P) = (1+e^{i theta})/2 I + (1-e^{i theta})/2 P."""

from __future__ import annotations

from dataclasses import dataclass

from .angle import Angle
from .pauli import PauliString


@dataclass(frozen=True)
class Rotation:
    angle: Angle
    pauli: PauliString

    def is_identity(self) -> bool:
        return self.angle.is_zero() or self.pauli.is_identity()


@dataclass(frozen=True)
class MergeResult:
    rotation: Rotation
    global_phase: Angle


def merge(r1: Rotation, r2: Rotation) -> MergeResult | None:
    """Combine two rotations about the same axis.

    Same Pauli: R(a,P) R(b,P) = R(a+b,P).
    Opposite sign: R(a,P) R(b,-P) = e^{ib} R(a-b,P).
    Anything else is not mergeable and gives ``None``.
    """
    p, q = r1.pauli, r2.pauli
    if not p.same_up_to_sign(q):
        return None
    if p.sign == q.sign:
        return MergeResult(Rotation(r1.angle + r2.angle, p), Angle.zero())
    return MergeResult(Rotation(r1.angle - r2.angle, p), r2.angle)
