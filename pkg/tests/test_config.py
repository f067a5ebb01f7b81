import math
from pathlib import Path

import numpy as np
import pytest

from closedloop.config import RunConfig, load_config, parse_config, parse_number
from closedloop.errors import ConfigError
from closedloop.model import SystemParams

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

POINT = """
kappa_a = 1.0
kappa_b = 1.0
gamma_c = 2.0
lambda = 0.4
phi = "1.5pi"
g_a = 3.2
g_b = 5.0
"""


class TestParseNumber:
    @pytest.mark.parametrize("text, expected", [
        ("1.5pi", 1.5 * math.pi),
        ("pi", math.pi),
        ("2*pi", 2 * math.pi),
        ("-0.5 pi", -0.5 * math.pi),
        ("1e-3", 1e-3),
        (2, 2.0),
    ])
    def test_values(self, text, expected):
        assert parse_number(text) == expected

    def test_exact_three_half_pi(self):
        assert parse_number("1.5pi") == 3 * math.pi / 2

    @pytest.mark.parametrize("bad", ["abc", "pipi", "", True, None])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_number(bad)


class TestParseConfig:
    def test_point(self):
        cfg = parse_config(POINT)
        assert cfg.params == SystemParams(1.0, 1.0, 2.0, 0.4, 1.5 * math.pi, 3.2, 5.0)
        assert cfg.axis1 is None and cfg.pairs == ("ab",)

    def test_occupations_default_to_zero(self):
        p = parse_config(POINT).params
        assert (p.nbar_a, p.nbar_b, p.nbar_c) == (0.0, 0.0, 0.0)

    def test_comments_and_blank_lines(self):
        cfg = parse_config("# header\n\n" + POINT.replace("g_b = 5.0", "g_b = 5.0  # trailing"))
        assert cfg.params.g_b == 5.0

    def test_fig2a_file_matches_caption(self):
        spec = load_config(CONFIGS / "fig2a.toml").sweep_spec()
        base = spec.base
        assert (base.kappa_a, base.kappa_b, base.gamma_c) == (1.0, 1.0, 2.0)
        assert (base.lam, base.g_a, base.g_b) == (0.4, 3.2, 5.0)
        assert (base.nbar_a, base.nbar_b, base.nbar_c) == (0.0, 0.0, 0.0)
        name, values = spec.axis1
        assert name == "phi" and len(values) == 629
        assert values[0] == 0.0 and values[-1] == 2 * math.pi
        assert spec.pairs == ("ab",)

    def test_shipped_configs_parse(self):
        for path in sorted(CONFIGS.glob("*.toml")):
            assert isinstance(load_config(path), RunConfig)

    def test_axis_values_and_lambda_alias(self):
        cfg = parse_config(POINT + 'axis1 = "lambda"\naxis1_values = [0.1, 0.2]\n'
                                   'axis2 = "gamma_c"\naxis2_range = [1, 3, 3]\n')
        spec = cfg.sweep_spec()
        assert spec.axis1 == ("lam", (0.1, 0.2))
        assert spec.axis2 == ("gamma_c", (1.0, 2.0, 3.0))

    def test_swept_parameter_may_be_omitted(self):
        text = POINT.replace('phi = "1.5pi"\n', "") + 'axis1 = "phi"\naxis1_range = [0, "pi", 3]\n'
        spec = parse_config(text).sweep_spec()
        np.testing.assert_allclose(spec.axis1[1], [0, math.pi / 2, math.pi])

    def test_output_settings(self):
        cfg = parse_config(POINT + 'out = "x"\nworkers = 3\nformat = "json"\nplot = true\n')
        assert (cfg.out, cfg.workers, cfg.format, cfg.plot) == ("x", 3, "json", True)

    def test_sweep_spec_needs_axis(self):
        with pytest.raises(ConfigError):
            parse_config(POINT).sweep_spec()


class TestConfigErrors:
    def test_all_errors_collected_with_lines(self):
        text = POINT.replace("g_a = 3.2", 'g_a = "lots"') + "colour = 3\naxis1 = \"phi\"\naxis1_values = []\n"
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        problems = info.value.problems
        joined = "\n".join(problems)
        assert "g_a" in joined and "colour" in joined and "axis1" in joined
        assert len(problems) >= 3
        assert all(p.startswith("line ") for p in problems)
        assert any(p.startswith("line 7:") for p in problems)

    def test_missing_required_key(self):
        with pytest.raises(ConfigError, match="gamma_c"):
            parse_config(POINT.replace("gamma_c = 2.0\n", ""))

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(POINT + "g_b = 6.0\n")

    def test_invalid_parameter_value(self):
        with pytest.raises(ConfigError, match="kappa_a"):
            parse_config(POINT.replace("kappa_a = 1.0", "kappa_a = -1.0"))

    def test_non_monotone_grid(self):
        with pytest.raises(ConfigError, match="monotone"):
            parse_config(POINT + 'axis1 = "phi"\naxis1_values = [0, 2, 1]\n')

    def test_bad_format(self):
        with pytest.raises(ConfigError, match="format"):
            parse_config(POINT + 'format = "xml"\n')

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "nope.toml")
