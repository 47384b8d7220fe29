"""Missingness statistics: amount missing, joint missingness, conditional
missingness histogram pairs, and randomness diagnostics.

Conventions (fixed so independent oracles agree):

* Amount missing (AM) of a variable is its missing-cell count over the total
  item count; 0 for empty datasets.
* Joint missingness (JM) of a pair is the count of items missing in both
  variables over the total item count. The denominator is always n_items,
  never a variable's own missing count.
* Expected JM under fully random missingness is the product of the two AMs.
* Histograms use equal-width bins over [min, max] of the recorded values,
  half-open on the right except the last bin, which is closed.
* The "red" histogram (values of a target variable restricted to items that
  are missing in the selected variable) shares the grey histogram's bins.
* Shape difference between grey and red is quantified as total-variation
  distance in [0, 1]; it is flagged undefined when either side is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .data import CATEGORICAL, NUMERIC, Dataset

DEFAULT_BINS = 10


@dataclass(frozen=True)
class MissingnessSummary:
    names: tuple[str, ...]
    am: np.ndarray            # (m,) fractions
    jm: np.ndarray            # (m, m) symmetric, diagonal == am
    expected_jm: np.ndarray   # outer product of am
    jm_deviation: np.ndarray  # jm - expected_jm

    def index_of(self, name: str) -> int:
        return self.names.index(name)


def amount_missing(ds: Dataset) -> np.ndarray:
    if ds.n_items == 0:
        return np.zeros(ds.n_variables)
    return ds.missing_mask().sum(axis=1) / ds.n_items


def joint_missing(ds: Dataset, a: Union[int, str], b: Union[int, str]) -> float:
    if ds.n_items == 0:
        return 0.0
    ma = ds.variable(a).mask
    mb = ds.variable(b).mask
    return float(np.count_nonzero(ma & mb)) / ds.n_items


def summarize(ds: Dataset) -> MissingnessSummary:
    am = amount_missing(ds)
    if ds.n_items == 0:
        jm = np.zeros((ds.n_variables, ds.n_variables))
    else:
        # float matmul is BLAS-backed and exact here: every partial sum is an
        # integer <= n_items, far below 2**53
        mask = ds.missing_mask().astype(np.float64)
        jm = (mask @ mask.T) / ds.n_items
    expected = np.outer(am, am)
    return MissingnessSummary(
        names=tuple(ds.variable_names),
        am=am,
        jm=jm,
        expected_jm=expected,
        jm_deviation=jm - expected,
    )


def expected_joint_missing(
    summary: MissingnessSummary, a: Union[int, str], b: Union[int, str]
) -> float:
    if isinstance(a, str):
        a = summary.index_of(a)
    if isinstance(b, str):
        b = summary.index_of(b)
    return float(summary.am[a] * summary.am[b])


@dataclass(frozen=True)
class HistogramSpec:
    kind: str
    edges: Optional[np.ndarray] = None       # numeric: k+1 increasing reals
    categories: Optional[tuple] = None       # categorical: first-appearance order

    @property
    def n_bins(self) -> int:
        if self.kind == NUMERIC:
            return len(self.edges) - 1
        return len(self.categories)


def histogram_spec(ds: Dataset, v: Union[int, str], bins: int = DEFAULT_BINS) -> HistogramSpec:
    var = ds.variable(v)
    recorded = var.recorded()
    if len(recorded) == 0:
        raise ValueError(f"no recorded data in variable {var.name!r}")
    if var.kind == NUMERIC:
        lo = float(recorded.min())
        hi = float(recorded.max())
        if lo == hi:
            edges = np.array([lo, lo + 1.0])
        else:
            edges = np.linspace(lo, hi, bins + 1)
        return HistogramSpec(kind=NUMERIC, edges=edges)
    seen: dict = {}
    for label in recorded:
        seen.setdefault(label, None)
    return HistogramSpec(kind=CATEGORICAL, categories=tuple(seen))


def _bin_counts(values: np.ndarray, spec: HistogramSpec) -> np.ndarray:
    k = spec.n_bins
    if len(values) == 0:
        return np.zeros(k, dtype=np.int64)
    if spec.kind == NUMERIC:
        idx = np.searchsorted(spec.edges, values, side="right") - 1
        idx = np.clip(idx, 0, k - 1)
    else:
        lookup = {c: i for i, c in enumerate(spec.categories)}
        idx = np.array([lookup[v] for v in values], dtype=np.int64)
    return np.bincount(idx, minlength=k).astype(np.int64)


def histogram(ds: Dataset, v: Union[int, str], spec: HistogramSpec) -> np.ndarray:
    """Per-bin counts over all recorded values of the variable."""
    return _bin_counts(ds.variable(v).recorded(), spec)


@dataclass(frozen=True)
class HistogramPair:
    spec: HistogramSpec
    grey: np.ndarray
    red: np.ndarray
    grey_total: int
    red_total: int


def histogram_pair(
    ds: Dataset,
    target: Union[int, str],
    selected: Union[int, str],
    spec: HistogramSpec,
) -> HistogramPair:
    tvar = ds.variable(target)
    svar = ds.variable(selected)
    if tvar is svar:
        raise ValueError("target and selected variable must differ")
    grey = _bin_counts(tvar.recorded(), spec)
    subset = svar.mask & ~tvar.mask
    red = _bin_counts(tvar.values[subset], spec)
    return HistogramPair(
        spec=spec,
        grey=grey,
        red=red,
        grey_total=int(grey.sum()),
        red_total=int(red.sum()),
    )


@dataclass(frozen=True)
class CmDivergence:
    value: float
    defined: bool


def cm_divergence(pair: HistogramPair) -> CmDivergence:
    if pair.grey_total == 0 or pair.red_total == 0:
        return CmDivergence(value=0.0, defined=False)
    p = pair.grey / pair.grey_total
    q = pair.red / pair.red_total
    return CmDivergence(value=float(0.5 * np.abs(p - q).sum()), defined=True)


def randomness_report(
    ds: Dataset, bins: int = DEFAULT_BINS, select: Optional[str] = None
) -> dict:
    """Full diagnostic report, JSON-shaped.

    CM entries are ordered pairs (selected, target) since conditional
    missingness is directional; with `select` given they are restricted to
    that selection. Fractions are decimals, not percentages.
    """
    summary = summarize(ds)
    m = ds.n_variables
    variables = [
        {
            "name": v.name,
            "kind": v.kind,
            "am": float(summary.am[i]),
            "n_recorded": int(len(v) - v.mask.sum()),
        }
        for i, v in enumerate(ds.variables)
    ]
    pairs = [
        {
            "a": summary.names[a],
            "b": summary.names[b],
            "jm": float(summary.jm[a, b]),
            "expected_jm": float(summary.expected_jm[a, b]),
            "deviation": float(summary.jm_deviation[a, b]),
        }
        for a in range(m)
        for b in range(a + 1, m)
    ]

    if select is not None:
        sel_indices = [ds.index_of(select)]
    else:
        sel_indices = list(range(m))

    specs = {}
    for t in range(m):
        if len(ds.variable(t).recorded()) > 0:
            specs[t] = histogram_spec(ds, t, bins)

    cm = []
    for s in sel_indices:
        for t in range(m):
            if t == s:
                continue
            if t not in specs:
                cm.append(
                    {
                        "selected": summary.names[s],
                        "target": summary.names[t],
                        "divergence": 0.0,
                        "defined": False,
                    }
                )
                continue
            div = cm_divergence(histogram_pair(ds, t, s, specs[t]))
            cm.append(
                {
                    "selected": summary.names[s],
                    "target": summary.names[t],
                    "divergence": div.value,
                    "defined": div.defined,
                }
            )

    return {"variables": variables, "pairs": pairs, "cm": cm}
