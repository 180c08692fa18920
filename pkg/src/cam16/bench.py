"""
Throughput benchmark: streamlined inverse vs original-form inverse.

Correlates (J, C, h) are produced once per size by running the forward
model on seeded uniform XYZ in [1e-3, 100]^3; only the inverse calls are
timed (best of ``repetitions``, monotonic clock).
"""

from __future__ import annotations

import json
import platform
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import batch
from .core import ViewingConditions, viewing_conditions

# reference points read off the published timing curve (seconds at 1e6 samples)
PUBLISHED_SECONDS_1E6 = {"legacy": 0.649983358001919, "fixed": 0.616663155989954}

GATE_RTOL = 1e-8


class CorrectnessGateError(AssertionError):
    """The two inverse paths disagree before any timing happens."""


@dataclass
class BenchReport:
    sizes: list[int]
    fixed_seconds: list[float]
    legacy_seconds: list[float]
    speedup: list[float]
    backend: str
    repetitions: int
    seed: int
    environment: dict = field(default_factory=dict)

    def ratio_at_largest(self) -> float:
        """fixed / legacy wall time at the largest size."""
        return self.fixed_seconds[-1] / self.legacy_seconds[-1] if self.legacy_seconds[-1] else 1.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def table(self) -> str:
        lines = [f"# backend: {self.backend}  reps: {self.repetitions}  seed: {self.seed}",
                 f"{'samples':>10} {'legacy_s':>12} {'fixed_s':>12} {'speedup':>8}"]
        for n, lg, fx, sp in zip(self.sizes, self.legacy_seconds, self.fixed_seconds, self.speedup):
            lines.append(f"{n:>10d} {lg:>12.6f} {fx:>12.6f} {sp:>8.3f}")
        return "\n".join(lines)


def environment_note(backend: str) -> dict:
    return {
        "cpu": platform.processor() or platform.machine(),
        "platform": platform.platform(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "backend": backend,
    }


def default_conditions() -> ViewingConditions:
    return viewing_conditions((95.05, 100.0, 108.88), 20.0, 318.31, "average")


def make_correlates(n: int, seed: int, vc: ViewingConditions) -> np.ndarray:
    """(n, 3) array of J, C, h from seeded random XYZ inside the model domain."""
    rng = np.random.default_rng(seed)
    parts, have = [], 0
    while have < n or not parts:
        xyz = rng.uniform(1e-3, 100.0, size=(max(n - have, 1) + 64, 3))
        fb = batch.forward_batch(xyz, vc)
        jch = np.column_stack([fb.J, fb.C, fb.h])
        jch = jch[~np.isnan(jch).any(axis=1)]
        parts.append(jch)
        have += len(jch)
    return np.ascontiguousarray(np.concatenate(parts)[:n])


def _best_time(fn, args, repetitions: int) -> float:
    best = float("inf")
    for _ in range(repetitions):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def check_agreement(jch: np.ndarray, params: np.ndarray, kernels) -> float:
    """Max relative XYZ disagreement between the two paths; raises past the gate."""
    if len(jch) == 0:
        return 0.0
    fixed, _ = kernels.inverse(jch, params)
    legacy, _ = kernels.legacy_inverse(jch, params)
    scale = np.maximum(np.abs(fixed), np.abs(legacy))
    err = float(np.nanmax(np.abs(fixed - legacy) / np.where(scale > 0, scale, 1.0)))
    if not err < GATE_RTOL or np.isnan(fixed).any() != np.isnan(legacy).any():
        raise CorrectnessGateError(f"fixed and legacy inverse disagree: max rel err {err:.3e}")
    return err


def run_benchmark(
    sizes: list[int],
    repetitions: int = 5,
    seed: int = 42,
    backend: str | None = None,
    vc: ViewingConditions | None = None,
) -> BenchReport:
    sizes = [int(n) for n in sizes]
    if not sizes:
        raise ValueError("sizes must be non-empty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or sizes[0] < 0:
        raise ValueError("sizes must be non-negative and strictly increasing")
    if repetitions < 3:
        raise ValueError("repetitions must be at least 3")

    vc = vc or default_conditions()
    kernels = batch.get_backend(backend)
    params = batch.pack_params(vc)
    jch_all = make_correlates(sizes[-1], seed, vc)
    check_agreement(jch_all, params, kernels)

    fixed, legacy = [], []
    for n in sizes:
        jch = np.ascontiguousarray(jch_all[:n])
        legacy.append(_best_time(kernels.legacy_inverse, (jch, params), repetitions))
        fixed.append(_best_time(kernels.inverse, (jch, params), repetitions))

    return BenchReport(
        sizes=sizes,
        fixed_seconds=fixed,
        legacy_seconds=legacy,
        speedup=[lg / fx if fx > 0 else 1.0 for lg, fx in zip(legacy, fixed)],
        backend=kernels.NAME,
        repetitions=repetitions,
        seed=seed,
        environment=environment_note(kernels.NAME),
    )


def linear_fit_correlation(report: BenchReport, which: str = "fixed") -> float:
    times = report.fixed_seconds if which == "fixed" else report.legacy_seconds
    return float(np.corrcoef(report.sizes, times)[0, 1])
