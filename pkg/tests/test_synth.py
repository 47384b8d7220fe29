import numpy as np
import pytest

from missview.data import Dataset, categorical_variable, numeric_variable
from missview.stats import joint_missing
from missview.synth import (
    BaseRandom,
    ConditionalRemoval,
    InjectionPlan,
    Mcar,
    PlanError,
    UniformNoise,
    apply_plan,
    quartiles,
)


def complete_numeric(seed=0, n_vars=4, n_items=200, name="clean"):
    rng = np.random.default_rng(seed)
    return Dataset(
        name,
        [
            numeric_variable(f"x{j + 1}", rng.normal(size=n_items))
            for j in range(n_vars)
        ],
    )


# quartiles


def test_quartiles_symmetric_odd_array():
    assert quartiles(np.array([1.0, 2, 3, 4, 5])) == (2.0, 4.0)


def test_quartiles_constant():
    assert quartiles(np.array([1.0, 1, 1, 1])) == (1.0, 1.0)


def test_quartiles_match_sort_interpolate_oracle():
    rng = np.random.default_rng(3)
    vals = rng.normal(size=392)
    q1, q3 = quartiles(vals)
    s = np.sort(vals)
    n = len(s)

    def interp(rank):
        lo = int(np.floor(rank))
        frac = rank - lo
        return s[lo] * (1 - frac) + s[min(lo + 1, n - 1)] * frac

    assert q1 == pytest.approx(interp(0.25 * (n - 1)))
    assert q3 == pytest.approx(interp(0.75 * (n - 1)))


def test_quartiles_require_four_values():
    with pytest.raises(ValueError):
        quartiles(np.array([1.0, 2, 3]))


# plan application


def test_mcar_rate_zero_is_identity():
    ds = complete_numeric()
    out, manifest = apply_plan(ds, InjectionPlan(seed=1, steps=(Mcar("x1", 0.0),)))
    assert not out.missing_mask().any()
    assert manifest.removed_cells() == set()


def test_mcar_removes_rounded_count():
    ds = complete_numeric(n_items=100)
    out, manifest = apply_plan(ds, InjectionPlan(seed=2, steps=(Mcar("x1", 0.3),)))
    assert out.variable("x1").mask.sum() == 30
    assert len(manifest.removed_cells()) == 30


def test_mcar_half_half_jm_near_quarter():
    ds = complete_numeric(n_vars=2, n_items=10_000)
    plan = InjectionPlan(
        seed=5,
        steps=(
            Mcar("x1", 0.5, allow_out_of_range=True),
            Mcar("x2", 0.5, allow_out_of_range=True),
        ),
    )
    out, _ = apply_plan(ds, plan)
    assert joint_missing(out, "x1", "x2") == pytest.approx(0.25, abs=0.02)


def test_conditional_removal_respects_quartiles():
    ds = complete_numeric(seed=7, n_vars=3, n_items=392)
    plan = InjectionPlan(seed=11, steps=(ConditionalRemoval("x1", "x2", 0.5),))
    out, manifest = apply_plan(ds, plan)
    q1, q3 = quartiles(ds.variable("x2").recorded())
    x2 = ds.variable("x2").values
    removed = manifest.removed_cells()
    assert removed
    for var, item in removed:
        assert var == "x1"
        assert x2[item] < q1 or x2[item] > q3


def test_conditional_removal_count():
    ds = complete_numeric(seed=9, n_vars=2, n_items=400)
    plan = InjectionPlan(seed=13, steps=(ConditionalRemoval("x1", "x2", 0.5),))
    out, manifest = apply_plan(ds, plan)
    q1, q3 = quartiles(ds.variable("x2").recorded())
    x2 = ds.variable("x2").values
    candidates = np.count_nonzero((x2 < q1) | (x2 > q3))
    assert len(manifest.removed_cells()) == round(0.5 * candidates)


def test_conditional_removal_exhausted_pool_warns():
    ds = Dataset(
        "d",
        [
            numeric_variable("x1", [np.nan] * 8 + [1.0, 2.0]),
            numeric_variable("x2", list(range(10))),
        ],
    )
    plan = InjectionPlan(seed=1, steps=(ConditionalRemoval("x1", "x2", 0.7),))
    out, manifest = apply_plan(ds, plan)
    # pool is tiny; no crash, warnings only when requested exceeds pool
    assert out.variable("x1").mask.sum() >= 8


def test_conditional_removal_same_variable_rejected():
    with pytest.raises(PlanError):
        InjectionPlan(seed=1, steps=(ConditionalRemoval("a", "a", 0.5),)).validate()


def test_conditional_removal_non_numeric_conditioner_rejected():
    ds = Dataset(
        "d",
        [
            numeric_variable("x1", [1.0, 2.0, 3.0, 4.0]),
            categorical_variable("c", ["a", "b", "a", "b"]),
        ],
    )
    plan = InjectionPlan(seed=1, steps=(ConditionalRemoval("x1", "c", 0.5),))
    with pytest.raises(PlanError, match="numeric"):
        apply_plan(ds, plan)


def test_rate_out_of_range_rejected_unless_overridden():
    with pytest.raises(PlanError):
        InjectionPlan(seed=1, steps=(Mcar("a", 0.9),)).validate()
    InjectionPlan(seed=1, steps=(Mcar("a", 0.9, allow_out_of_range=True),)).validate()


def test_base_random_hits_all_variables():
    ds = complete_numeric(n_vars=4, n_items=1000)
    out, _ = apply_plan(ds, InjectionPlan(seed=3, steps=(BaseRandom(0.08),)))
    for v in out.variables:
        assert v.mask.sum() == 80


def test_noise_does_not_alter_mask():
    ds = complete_numeric(n_vars=3, n_items=200)
    ds1, _ = apply_plan(ds, InjectionPlan(seed=4, steps=(Mcar("x1", 0.2),)))
    ds2, manifest = apply_plan(ds1, InjectionPlan(seed=4, steps=(UniformNoise(0.05),)))
    np.testing.assert_array_equal(ds1.missing_mask(), ds2.missing_mask())
    assert manifest.records[0].noised
    assert not manifest.records[0].removed


def test_noise_amplitude_bounded():
    ds = complete_numeric(n_vars=1, n_items=500)
    vals = ds.variable("x1").values
    span = vals.max() - vals.min()
    out, _ = apply_plan(ds, InjectionPlan(seed=6, steps=(UniformNoise(0.1),)))
    delta = np.abs(out.variable("x1").values - vals)
    assert delta.max() <= 0.1 * span + 1e-12


def test_determinism_bit_identical():
    ds = complete_numeric(seed=10, n_vars=5, n_items=300)
    plan = InjectionPlan(
        seed=99,
        steps=(BaseRandom(0.07), ConditionalRemoval("x1", "x2", 0.5), UniformNoise(0.03)),
    )
    out1, m1 = apply_plan(ds, plan)
    out2, m2 = apply_plan(ds, plan)
    for a, b in zip(out1.variables, out2.variables):
        np.testing.assert_array_equal(a.values, b.values)
    assert m1.to_json() == m2.to_json()


def test_missing_count_monotone_across_steps():
    ds = complete_numeric(seed=12, n_vars=3, n_items=200)
    plan = InjectionPlan(seed=1, steps=(BaseRandom(0.05), Mcar("x1", 0.3)))
    current = ds
    prev = 0
    for step in plan.steps:
        current, _ = apply_plan(current, InjectionPlan(seed=1, steps=(step,)))
        count = int(current.missing_mask().sum())
        assert count >= prev
        prev = count


def test_manifest_completeness():
    ds = complete_numeric(seed=14, n_vars=4, n_items=250)
    pre, _ = apply_plan(ds, InjectionPlan(seed=2, steps=(Mcar("x2", 0.2),)))
    out, manifest = apply_plan(
        pre, InjectionPlan(seed=3, steps=(BaseRandom(0.06), ConditionalRemoval("x1", "x3", 0.4),))
    )
    initial = {
        (v.name, i) for v in pre.variables for i in np.flatnonzero(v.mask)
    }
    final = {
        (v.name, i) for v in out.variables for i in np.flatnonzero(v.mask)
    }
    assert final == initial | manifest.removed_cells()
    # removed cells were recorded before the step
    assert not (initial & manifest.removed_cells())


def test_seed_independence():
    ds = complete_numeric(seed=16, n_vars=3, n_items=150)
    differing = 0
    for s in range(10):
        p1 = InjectionPlan(seed=s, steps=(Mcar("x1", 0.3),))
        p2 = InjectionPlan(seed=s + 1000, steps=(Mcar("x1", 0.3),))
        _, m1 = apply_plan(ds, p1)
        _, m2 = apply_plan(ds, p2)
        if m1.removed_cells() != m2.removed_cells():
            differing += 1
    assert differing == 10


def test_plan_json_round_trip():
    plan = InjectionPlan(
        seed=42,
        steps=(
            Mcar("a", 0.2),
            BaseRandom(0.05),
            ConditionalRemoval("a", "b", 0.5),
            UniformNoise(0.1),
        ),
    )
    back = InjectionPlan.from_json(plan.to_json())
    assert back == plan


def test_plan_from_bad_json_errors():
    with pytest.raises(PlanError):
        InjectionPlan.from_json("{not json")
    with pytest.raises(PlanError):
        InjectionPlan.from_json('{"seed": 1}')


def test_manifest_cell_list_format():
    ds = complete_numeric(seed=18, n_vars=2, n_items=50)
    _, manifest = apply_plan(ds, InjectionPlan(seed=8, steps=(Mcar("x1", 0.2),)))
    lines = manifest.to_cell_list().strip().split("\n")
    assert lines[0] == "variable,item,step_index"
    assert len(lines) == 1 + 10
    for line in lines[1:]:
        var, item, step = line.split(",")
        assert var == "x1"
        assert step == "0"
