"""Seeded, controlled missingness and noise injection with ground-truth
manifests.

Determinism contract: the random source is a single numpy PCG64 stream seeded
from the plan's seed; steps run in order, variables within a step in dataset
order, and candidate item indices are always ascending before sampling. The
same (dataset, plan) pair therefore yields bit-identical output on any
platform. Removal counts use round-half-to-even.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .data import NUMERIC, Dataset, Variable

MCAR_RATE_RANGE = (0.0, 0.40)
BASE_RATE_RANGE = (0.05, 0.10)
CONDITIONAL_RATE_RANGE = (0.35, 0.70)
NOISE_LEVEL_RANGE = (0.01, 0.15)


class PlanError(ValueError):
    """Invalid injection plan or step."""


def _check_range(value: float, lo: float, hi: float, label: str, override: bool):
    if not override and not (lo <= value <= hi):
        raise PlanError(f"{label} {value} outside [{lo}, {hi}] (set allow_out_of_range to force)")


@dataclass(frozen=True)
class Mcar:
    variable: str
    rate: float
    allow_out_of_range: bool = False

    def validate(self):
        _check_range(self.rate, *MCAR_RATE_RANGE, "mcar rate", self.allow_out_of_range)


@dataclass(frozen=True)
class BaseRandom:
    rate: float
    allow_out_of_range: bool = False

    def validate(self):
        _check_range(self.rate, *BASE_RATE_RANGE, "base removal rate", self.allow_out_of_range)


@dataclass(frozen=True)
class ConditionalRemoval:
    x1: str
    x2: str
    rate: float
    allow_out_of_range: bool = False

    def validate(self):
        if self.x1 == self.x2:
            raise PlanError("conditional removal requires two distinct variables")
        _check_range(self.rate, *CONDITIONAL_RATE_RANGE, "conditional rate", self.allow_out_of_range)


@dataclass(frozen=True)
class UniformNoise:
    level: float
    allow_out_of_range: bool = False

    def validate(self):
        _check_range(self.level, *NOISE_LEVEL_RANGE, "noise level", self.allow_out_of_range)


InjectionStep = Union[Mcar, BaseRandom, ConditionalRemoval, UniformNoise]

_STEP_KINDS = {
    "mcar": Mcar,
    "base_random": BaseRandom,
    "conditional_removal": ConditionalRemoval,
    "uniform_noise": UniformNoise,
}
_KIND_OF = {cls: kind for kind, cls in _STEP_KINDS.items()}


@dataclass(frozen=True)
class InjectionPlan:
    seed: int
    steps: tuple[InjectionStep, ...]

    def validate(self):
        for step in self.steps:
            step.validate()

    def to_json(self) -> str:
        payload = {
            "seed": self.seed,
            "steps": [
                {"kind": _KIND_OF[type(s)], **{k: v for k, v in s.__dict__.items()}}
                for s in self.steps
            ],
        }
        return json.dumps(payload, indent=2)

    @staticmethod
    def from_json(text: str) -> "InjectionPlan":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise PlanError(f"plan is not valid JSON: {e}") from e
        try:
            steps = []
            for raw in payload["steps"]:
                raw = dict(raw)
                cls = _STEP_KINDS[raw.pop("kind")]
                steps.append(cls(**raw))
            return InjectionPlan(seed=int(payload["seed"]), steps=tuple(steps))
        except (KeyError, TypeError) as e:
            raise PlanError(f"malformed plan: {e}") from e


@dataclass
class StepRecord:
    step_index: int
    kind: str
    removed: list[tuple[str, int]] = field(default_factory=list)
    noised: list[tuple[str, int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


@dataclass
class GroundTruthManifest:
    seed: int
    records: list[StepRecord] = field(default_factory=list)

    def removed_cells(self) -> set[tuple[str, int]]:
        out = set()
        for rec in self.records:
            out.update(rec.removed)
        return out

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "steps": [
                    {
                        "step_index": r.step_index,
                        "kind": r.kind,
                        "removed": [[v, int(i)] for v, i in r.removed],
                        "noised": [[v, int(i)] for v, i in r.noised],
                        "warnings": r.warnings,
                    }
                    for r in self.records
                ],
            },
            indent=2,
        )

    def to_cell_list(self, delimiter: str = ",") -> str:
        """Removed cells as delimited (variable, item, step_index) rows."""
        lines = [delimiter.join(("variable", "item", "step_index"))]
        for rec in self.records:
            for v, i in rec.removed:
                lines.append(delimiter.join((v, str(i), str(rec.step_index))))
        return "\n".join(lines) + "\n"


def quartiles(values: np.ndarray) -> tuple[float, float]:
    """First and third quartiles via linear interpolation at ranks
    0.25*(n-1) and 0.75*(n-1) of the sorted array."""
    values = np.asarray(values, dtype=np.float64)
    if len(values) < 4:
        raise ValueError("quartiles require at least 4 values")
    q1, q3 = np.quantile(values, [0.25, 0.75], method="linear")
    return float(q1), float(q3)


def _round_half_even(x: float) -> int:
    return int(round(x))


def _remove_cells(values: np.ndarray, items: np.ndarray) -> np.ndarray:
    out = values.copy()
    out[items] = np.nan
    return out


def apply_plan(ds: Dataset, plan: InjectionPlan) -> tuple[Dataset, GroundTruthManifest]:
    """Apply removal/noise steps in order; returns the corrupted dataset and
    the exact ground truth of which cells were removed or perturbed."""
    plan.validate()
    rng = np.random.Generator(np.random.PCG64(plan.seed))
    manifest = GroundTruthManifest(seed=plan.seed)

    cols: dict[str, np.ndarray] = {
        v.name: v.values.copy() for v in ds.variables
    }
    kinds = {v.name: v.kind for v in ds.variables}
    order = ds.variable_names

    def recorded_items(name: str) -> np.ndarray:
        if kinds[name] == NUMERIC:
            return np.flatnonzero(~np.isnan(cols[name]))
        return np.flatnonzero(np.array([x is not None for x in cols[name]]))

    def remove_random(name: str, rate: float, rec: StepRecord):
        pool = recorded_items(name)
        k = _round_half_even(rate * len(pool))
        if k == 0:
            return
        chosen = np.sort(rng.choice(pool, size=k, replace=False))
        if kinds[name] == NUMERIC:
            cols[name] = _remove_cells(cols[name], chosen)
        else:
            arr = cols[name].copy()
            arr[chosen] = None
            cols[name] = arr
        rec.removed.extend((name, int(i)) for i in chosen)

    for step_index, step in enumerate(plan.steps):
        rec = StepRecord(step_index=step_index, kind=_KIND_OF[type(step)])
        if isinstance(step, Mcar):
            if step.variable not in cols:
                raise PlanError(f"unknown variable: {step.variable!r}")
            remove_random(step.variable, step.rate, rec)
        elif isinstance(step, BaseRandom):
            for name in order:
                remove_random(name, step.rate, rec)
        elif isinstance(step, ConditionalRemoval):
            for name in (step.x1, step.x2):
                if name not in cols:
                    raise PlanError(f"unknown variable: {name!r}")
            if kinds[step.x2] != NUMERIC:
                raise PlanError(f"conditioning variable {step.x2!r} must be numeric")
            x2 = cols[step.x2]
            x2_recorded = x2[~np.isnan(x2)]
            if len(x2_recorded) < 4:
                raise PlanError(
                    f"conditioning variable {step.x2!r} needs >= 4 recorded values"
                )
            q1, q3 = quartiles(x2_recorded)
            outer = ~np.isnan(x2) & ((x2 < q1) | (x2 > q3))
            if kinds[step.x1] == NUMERIC:
                x1_rec = ~np.isnan(cols[step.x1])
            else:
                x1_rec = np.array([x is not None for x in cols[step.x1]])
            candidates = np.flatnonzero(outer & x1_rec)
            k = _round_half_even(step.rate * len(candidates))
            if k > len(candidates):
                rec.warnings.append(
                    f"candidate pool exhausted: wanted {k}, had {len(candidates)}"
                )
                k = len(candidates)
            if k > 0:
                chosen = np.sort(rng.choice(candidates, size=k, replace=False))
                if kinds[step.x1] == NUMERIC:
                    cols[step.x1] = _remove_cells(cols[step.x1], chosen)
                else:
                    arr = cols[step.x1].copy()
                    arr[chosen] = None
                    cols[step.x1] = arr
                rec.removed.extend((step.x1, int(i)) for i in chosen)
        elif isinstance(step, UniformNoise):
            for name in order:
                if kinds[name] != NUMERIC:
                    continue
                arr = cols[name]
                rec_idx = np.flatnonzero(~np.isnan(arr))
                if len(rec_idx) == 0:
                    continue
                span = float(arr[rec_idx].max() - arr[rec_idx].min())
                amp = step.level * span
                noise = rng.uniform(-amp, amp, size=len(rec_idx))
                out = arr.copy()
                out[rec_idx] = out[rec_idx] + noise
                cols[name] = out
                rec.noised.extend((name, int(i)) for i in rec_idx)
        else:  # pragma: no cover
            raise PlanError(f"unknown step type: {type(step).__name__}")
        manifest.records.append(rec)

    out = Dataset(
        ds.name, [Variable(name, kinds[name], cols[name]) for name in order]
    )
    return out, manifest
