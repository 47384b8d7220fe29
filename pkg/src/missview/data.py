"""Columnar dataset model with first-class missingness.

Numeric columns are float64 arrays where NaN marks a missing cell; any
non-finite value supplied at construction time is coerced to missing.
Categorical columns are object arrays where None marks a missing cell.
Datasets are immutable after construction; item-subset selection returns
a new Dataset sharing no mutable state with the source.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence, Union

import numpy as np

NUMERIC = "numeric"
CATEGORICAL = "categorical"


class Variable:
    """A single named column with an explicit missingness mask."""

    __slots__ = ("name", "kind", "_values", "_mask")

    def __init__(self, name: str, kind: str, values: np.ndarray):
        if not name:
            raise ValueError("variable name must be non-empty")
        if kind not in (NUMERIC, CATEGORICAL):
            raise ValueError(f"unknown variable kind: {kind!r}")
        self.name = name
        self.kind = kind
        if kind == NUMERIC:
            arr = np.asarray(values, dtype=np.float64).copy()
            arr[~np.isfinite(arr)] = np.nan
            mask = np.isnan(arr)
        else:
            arr = np.asarray(values, dtype=object).copy()
            mask = np.array([v is None for v in arr], dtype=bool)
        arr.setflags(write=False)
        mask.setflags(write=False)
        self._values = arr
        self._mask = mask

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def mask(self) -> np.ndarray:
        """Boolean vector, True where the cell is missing."""
        return self._mask

    def recorded(self) -> np.ndarray:
        """Non-missing payloads in item order."""
        return self._values[~self._mask]

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"Variable({self.name!r}, {self.kind}, n={len(self)})"


def numeric_variable(name: str, values: Iterable[float]) -> Variable:
    return Variable(name, NUMERIC, np.asarray(list(values), dtype=np.float64))


def categorical_variable(name: str, labels: Iterable) -> Variable:
    return Variable(name, CATEGORICAL, np.asarray(list(labels), dtype=object))


class Dataset:
    """Ordered collection of equal-length variables."""

    def __init__(self, name: str, variables: Sequence[Variable]):
        variables = list(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        lengths = {len(v) for v in variables}
        if len(lengths) > 1:
            raise ValueError(f"variables have differing lengths: {sorted(lengths)}")
        self.name = name
        self.variables = tuple(variables)
        self.n_items = lengths.pop() if lengths else 0
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable: {name!r}") from None

    def variable(self, key: Union[int, str]) -> Variable:
        if isinstance(key, str):
            key = self.index_of(key)
        return self.variables[key]

    def missing_mask(self) -> np.ndarray:
        """(n_variables, n_items) boolean matrix, True = missing."""
        if not self.variables:
            return np.zeros((0, self.n_items), dtype=bool)
        return np.stack([v.mask for v in self.variables])

    def recorded_values(self, v: Union[int, str]) -> np.ndarray:
        return self.variable(v).recorded()

    def select_items(
        self, predicate: Union[Callable[[int], bool], np.ndarray]
    ) -> "Dataset":
        """Subset of items for which the predicate holds, order preserved."""
        if callable(predicate):
            keep = np.fromiter(
                (bool(predicate(i)) for i in range(self.n_items)),
                dtype=bool,
                count=self.n_items,
            )
        else:
            keep = np.asarray(predicate, dtype=bool)
            if keep.shape != (self.n_items,):
                raise ValueError("selection mask length must equal n_items")
        return Dataset(
            self.name,
            [Variable(v.name, v.kind, v.values[keep]) for v in self.variables],
        )

    def __repr__(self) -> str:
        return f"Dataset({self.name!r}, {self.n_variables} variables, {self.n_items} items)"
