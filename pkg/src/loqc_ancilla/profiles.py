"""Amplitude profiles over the register weight j and their transfer schedules.

A profile assigns a real weight f(j) to each number j = 0..n of transferred
photons.  The sequential construction realizes those weights as a chain of
conditional transfers: step k succeeds with probability

    P_k = sum_{j>=k} f(j)^2 / sum_{j>=k-1} f(j)^2

so the product of "go" branches through step j and a "stay" at step j+1
reproduces f(j)^2 exactly.  An exhausted tail (0/0) resolves to P_k = 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidProfile


@dataclass(frozen=True)
class AmplitudeProfile:
    """Normalized weights f(0)..f(n); sum of squares is 1 on construction."""

    n: int
    f: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidProfile(f"need n >= 1, got {self.n}")
        if len(self.f) != self.n + 1:
            raise InvalidProfile(
                f"profile for n={self.n} needs {self.n + 1} values, got {len(self.f)}"
            )
        if not all(math.isfinite(v) for v in self.f):
            raise InvalidProfile("profile values must be finite")
        norm = math.sqrt(sum(v * v for v in self.f))
        if norm == 0.0:
            raise InvalidProfile("profile cannot be all zero")
        object.__setattr__(self, "f", tuple(v / norm for v in self.f))

    @classmethod
    def constant(cls, n: int) -> "AmplitudeProfile":
        """Equal weight on every j (the plain post-selection choice)."""
        return cls(n, (1.0,) * (n + 1))

    @classmethod
    def delta(cls, n: int) -> "AmplitudeProfile":
        """All weight on j = n: every transfer is deterministic."""
        return cls(n, (0.0,) * n + (1.0,))

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "AmplitudeProfile":
        return cls(len(values) - 1, tuple(float(v) for v in values))

    @classmethod
    def from_json_dict(cls, data: dict) -> "AmplitudeProfile":
        f = tuple(float(v) for v in data["f"])
        n = int(data["n"])
        if len(f) != n + 1:
            raise InvalidProfile(f"profile file: n={n} but {len(f)} values")
        return cls(n, f)

    @classmethod
    def load(cls, path: str) -> "AmplitudeProfile":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def to_json_dict(self) -> dict:
        return {"n": self.n, "f": list(self.f)}

    def weights(self) -> tuple[float, ...]:
        """f(j)^2 for j = 0..n."""
        return tuple(v * v for v in self.f)

    @property
    def is_nonnegative(self) -> bool:
        return all(v >= 0.0 for v in self.f)


@dataclass(frozen=True)
class TransferSchedule:
    """Conditional-transfer probabilities P_1..P_n."""

    probabilities: tuple[float, ...]

    def __post_init__(self):
        for p in self.probabilities:
            if not 0.0 <= p <= 1.0 + 1e-15:
                raise InvalidProfile(f"transfer probability {p} outside [0, 1]")
        object.__setattr__(
            self,
            "probabilities",
            tuple(min(1.0, float(p)) for p in self.probabilities),
        )

    @property
    def n(self) -> int:
        return len(self.probabilities)

    def implied_weights(self) -> tuple[float, ...]:
        """Branch weights the schedule generates: should reproduce f(j)^2.

        Weight(j) = (product of P_1..P_j) * (1 - P_{j+1}), with the last
        factor omitted at j = n.
        """
        probs = self.probabilities
        weights = []
        running = 1.0
        for j in range(self.n + 1):
            stay = 1.0 - probs[j] if j < self.n else 1.0
            weights.append(running * stay)
            if j < self.n:
                running *= probs[j]
        return tuple(weights)


def schedule_from_profile(profile: AmplitudeProfile) -> TransferSchedule:
    """Tail-ratio recursion on the squared weights; 0/0 tails give P_k = 0."""
    w = profile.weights()
    n = profile.n
    probs = []
    for k in range(1, n + 1):
        tail_prev = sum(w[k - 1 :])
        tail_here = sum(w[k:])
        probs.append(0.0 if tail_prev == 0.0 else tail_here / tail_prev)
    return TransferSchedule(tuple(probs))
