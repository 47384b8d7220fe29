import numpy as np
import pytest

from missview.data import Dataset, numeric_variable


def random_masked_dataset(seed, n_vars=8, n_items=200, max_rate=0.5, name="random"):
    """Numeric dataset with an independent random mask per variable."""
    rng = np.random.default_rng(seed)
    variables = []
    for j in range(n_vars):
        values = rng.normal(size=n_items)
        rate = rng.uniform(0, max_rate)
        missing = rng.random(n_items) < rate
        values[missing] = np.nan
        variables.append(numeric_variable(f"x{j + 1}", values))
    return Dataset(name, variables)


def dataset_from_masks(masks, seed=0, name="masked"):
    """Numeric dataset whose missingness equals the given per-variable masks."""
    rng = np.random.default_rng(seed)
    variables = []
    for name_, mask in masks.items():
        mask = np.asarray(mask, dtype=bool)
        values = rng.normal(size=len(mask))
        values[mask] = np.nan
        variables.append(numeric_variable(name_, values))
    return Dataset(name, variables)


@pytest.fixture
def small_dataset():
    return random_masked_dataset(seed=42, n_vars=4, n_items=50)
