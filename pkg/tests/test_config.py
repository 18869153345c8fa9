import io
import pathlib

import pytest

from arrangealex import corpus
from arrangealex.config import EngineConfig
from arrangealex.errors import ParseError


@pytest.fixture
def test_data_dir():
    """Return path to the data directory of this test file."""
    p = pathlib.Path(__file__)
    p = p.parent / p.stem  # same path but without file extension
    assert p.is_dir(), f"{p} is not a directory."
    return p


def test_bundled_config_matches_defaults():
    config = EngineConfig.load_file(corpus.get_data_dir() / "engine.yml")
    assert config == EngineConfig()


def test_partial_config(test_data_dir):
    config = EngineConfig.load_file(test_data_dir / "partial.yml")
    assert config.seed == 42
    assert config.falk_max_conductor == 13
    assert config.falk_epsilon == (1, 1, 2, 3, 5)
    # everything else keeps the default
    assert config.shear_retry_cap == 1000
    assert config.root_listing_max_degree == 64


def test_unknown_keys(test_data_dir):
    with pytest.raises(ParseError) as info:
        EngineConfig.load_file(test_data_dir / "unknown_key.yml")
    assert "shear_retries" in str(info.value)


def test_empty_config():
    assert EngineConfig.load(io.StringIO("")) == EngineConfig()


def test_dump():
    config = EngineConfig(seed=3, falk_epsilon=(2, 1))
    stream = io.StringIO()
    config.dump(stream)
    assert "falk_epsilon:\n- 2\n- 1\n" in stream.getvalue()
    stream.seek(0)
    assert EngineConfig.load(stream) == config
