import math
import random

import pytest

from quopatlas.mitigation import (
    MitigationModel,
    budget_max_quops_uniform,
    mitigated_frontier,
    mitigated_shots,
    noise_strength,
    sampling_overhead,
)
from quopatlas.model import (
    AnalysisConfig,
    ErrorRates,
    ProgramShape,
    capability_frontier,
)

CFG = AnalysisConfig(include_measurement=False, width_max=8, depth_max=10**4)


class TestNoiseStrength:
    def test_zero_rates(self):
        assert noise_strength(ProgramShape(5, 7), ErrorRates(), CFG) == 0.0

    def test_kiloquop_value(self):
        lam = noise_strength(ProgramShape(1, 1000), ErrorRates.uniform(1e-3), CFG)
        assert lam == pytest.approx(1.0005, abs=1e-4)
        assert lam == pytest.approx(-1000 * math.log1p(-1e-3), rel=1e-12)

    def test_additive_across_depth(self):
        rates = ErrorRates.uniform(2e-3)
        whole = noise_strength(ProgramShape(4, 70), rates, CFG)
        parts = noise_strength(ProgramShape(4, 30), rates, CFG) + noise_strength(
            ProgramShape(4, 40), rates, CFG
        )
        assert whole == pytest.approx(parts, rel=1e-12)

    def test_survives_deep_underflow(self):
        cfg = AnalysisConfig(include_measurement=False, width_max=10**4, depth_max=10**9)
        lam = noise_strength(ProgramShape(10**4, 10**9), ErrorRates.uniform(1e-3), cfg)
        assert lam == pytest.approx(1e13 * -math.log1p(-1e-3), rel=1e-12)


class TestSamplingOverhead:
    def test_identity_at_zero_noise(self):
        model = MitigationModel()
        assert sampling_overhead(ProgramShape(3, 3), ErrorRates(), model, CFG) == 1.0

    def test_kiloquop_overhead(self):
        model = MitigationModel(overhead_exponent=4.0, base_shots=1000, shot_budget=10**6)
        ov = sampling_overhead(ProgramShape(1, 1000), ErrorRates.uniform(1e-3), model, CFG)
        assert ov == pytest.approx(54.7, abs=0.05)

    def test_doubling_depth_squares_overhead(self):
        model = MitigationModel()
        rates = ErrorRates.uniform(5e-3)
        a = sampling_overhead(ProgramShape(2, 40), rates, model, CFG)
        b = sampling_overhead(ProgramShape(2, 80), rates, model, CFG)
        assert b == pytest.approx(a * a, rel=1e-9)

    def test_overflow_is_infeasible_marker(self):
        cfg = AnalysisConfig(include_measurement=False, width_max=10**4, depth_max=10**6)
        model = MitigationModel()
        ov = sampling_overhead(
            ProgramShape(10**4, 10**6), ErrorRates.uniform(1e-2), model, cfg
        )
        assert ov == math.inf
        assert mitigated_shots(
            ProgramShape(10**4, 10**6), ErrorRates.uniform(1e-2), model, cfg
        ) == math.inf

    def test_strictly_increasing_in_shape(self):
        model = MitigationModel()
        rates = ErrorRates.uniform(1e-3)
        base = sampling_overhead(ProgramShape(4, 50), rates, model, CFG)
        assert sampling_overhead(ProgramShape(5, 50), rates, model, CFG) > base
        assert sampling_overhead(ProgramShape(4, 51), rates, model, CFG) > base


class TestMitigatedFrontier:
    def test_budget_equal_to_base_is_identity(self):
        rates = ErrorRates.uniform(1e-3)
        model = MitigationModel(shot_budget=1000, base_shots=1000)
        mit = mitigated_frontier(rates, model, CFG)
        base = capability_frontier(rates, CFG)
        assert mit.frontier == base.frontier
        assert mit.source == "mitigated"

    def test_budget_below_base_warns_and_returns_base(self):
        rates = ErrorRates.uniform(1e-3)
        model = MitigationModel(shot_budget=10, base_shots=1000)
        mit = mitigated_frontier(rates, model, CFG)
        assert "budget_warning" in mit.metadata
        assert mit.frontier == capability_frontier(rates, CFG).frontier

    def test_superset_of_unmitigated(self):
        rates = ErrorRates.uniform(2e-3)
        base = capability_frontier(rates, CFG)
        for budget in (10**4, 10**6, 10**9):
            mit = mitigated_frontier(rates, MitigationModel(shot_budget=budget), CFG)
            assert mit.covers(base)

    def test_monotone_in_budget(self):
        rnd = random.Random(11)
        rates = ErrorRates.uniform(1e-3)
        for _ in range(20):
            b1 = rnd.randint(1000, 10**8)
            b2 = rnd.randint(b1, 10**9)
            r1 = mitigated_frontier(rates, MitigationModel(shot_budget=b1), CFG)
            r2 = mitigated_frontier(rates, MitigationModel(shot_budget=b2), CFG)
            assert r2.covers(r1)

    def test_known_budget_values(self):
        # b=4, eps=1e-3: max quops floor(ln(B/N0) / (4 * -ln(0.999)))
        rates = ErrorRates.uniform(1e-3)
        expected = {10**5: 1150, 10**7: 2301, 10**9: 3452}
        for budget, quops in expected.items():
            mit = mitigated_frontier(rates, MitigationModel(shot_budget=budget), CFG)
            assert mit.max_quops() == quops

    def test_closed_form_matches_region_scan(self):
        rnd = random.Random(77)
        for _ in range(25):
            eps = 10 ** rnd.uniform(-4, -2)
            budget = rnd.randint(10**4, 10**9)
            model = MitigationModel(shot_budget=budget)
            rates = ErrorRates.uniform(eps)
            region = mitigated_frontier(rates, model, CFG)
            formula = budget_max_quops_uniform(eps, model, CFG)
            base = capability_frontier(rates, CFG).max_quops()
            assert region.max_quops() == max(formula, base)

    def test_downward_closed(self):
        mit = mitigated_frontier(
            ErrorRates.uniform(1e-3), MitigationModel(shot_budget=10**7), CFG
        )
        for w in mit.widths():
            d = mit.frontier[w]
            if d:
                assert mit.contains(w, 1) and mit.contains(w, d)
            assert not mit.contains(w, d + 1)


class TestModelValidation:
    def test_rejects_bad_exponent(self):
        with pytest.raises(ValueError, match="overhead_exponent"):
            MitigationModel(overhead_exponent=0.0)

    def test_rejects_bad_shots(self):
        with pytest.raises(ValueError, match="base_shots"):
            MitigationModel(base_shots=0)
        with pytest.raises(ValueError, match="shot_budget"):
            MitigationModel(shot_budget=0)
