import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from finwell import WellConfig, hydrogen_well, well_strength


@pytest.fixture
def hydrogen_cfg() -> WellConfig:
    return hydrogen_well()


@pytest.fixture
def hydrogen_scale(hydrogen_cfg):
    """(K, V0, m) of the hydrogen preset, handy for building scaled wells."""
    strength = well_strength(hydrogen_cfg)
    return strength.characteristic_length, hydrogen_cfg.depth, hydrogen_cfg.mass
