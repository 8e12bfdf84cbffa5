from __future__ import annotations

import importlib


def test_numerics_defaults() -> None:
    import lib.utils.config as config_module

    config_module = importlib.reload(config_module)
    assert config_module.config.numerics.degeneracy_threshold == 1e-8
    assert config_module.config.numerics.max_generators == 16
    assert config_module.config.numerics.max_pairing_degree == 12
    assert config_module.config.numerics.continuity_ratio == 0.5


def test_integration_and_quadrature_defaults() -> None:
    import lib.utils.config as config_module

    config_module = importlib.reload(config_module)
    assert config_module.config.integration.steps_per_unit == 200
    assert config_module.config.integration.min_steps == 10
    assert config_module.config.quadrature.nodes == 40


def test_environment_does_not_change_numerics(monkeypatch) -> None:
    monkeypatch.setenv("QUANTLAB_MAX_GENERATORS", "20")
    monkeypatch.setenv("QUANTLAB_STEPS_PER_UNIT", "7")
    monkeypatch.setenv("QUANTLAB_QUAD_NODES", "3")

    import lib.utils.config as config_module

    config_module = importlib.reload(config_module)
    assert config_module.config.numerics.max_generators == 16
    assert config_module.config.integration.steps_per_unit == 200
    assert config_module.config.quadrature.nodes == 40


def test_environment_sets_output_dir(monkeypatch) -> None:
    monkeypatch.setenv("QUANTLAB_OUTPUT_DIR", "/tmp/quantlab-reports")

    import lib.utils.config as config_module

    config_module = importlib.reload(config_module)
    try:
        assert config_module.config.paths.output_dir == "/tmp/quantlab-reports"
    finally:
        monkeypatch.delenv("QUANTLAB_OUTPUT_DIR")
        importlib.reload(config_module)
