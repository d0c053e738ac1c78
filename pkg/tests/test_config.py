import pytest

from utils.config import Config, load_config, parse_ladder, read_config_file, read_environment
from utils.errors import InputContractError, ParseError


def test_defaults():
    config = load_config(environ={})
    assert config == Config()
    assert config.order == 8
    assert config.ladder == (64, 128, 256, 512)
    assert config.output_format == "json"


def test_file_then_environment_then_flags(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\norder = 5\nladder = 10, 20\nformat = csv\nworkers = 2\n", encoding="utf-8")
    assert read_config_file(str(path)) == {"order": 5, "ladder": (10, 20), "output_format": "csv", "workers": 2}
    config = load_config(str(path), environ={"FFF_WORKERS": "4", "FFF_CACHE_DIR": "/tmp/cache"}, order=None)
    assert (config.order, config.workers, config.cache_dir) == (5, 4, "/tmp/cache")
    config = load_config(str(path), environ={}, order=3, ladder=(8, 16, 32))
    assert (config.order, config.ladder) == (3, (8, 16, 32))


def test_example_config(examples_dir):
    config = load_config(str(examples_dir / "pipeline.cfg"), environ={})
    assert config.ladder == (128, 256, 512)
    assert config.output_format == "csv"


def test_parse_errors(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("colour = blue\n", encoding="utf-8")
    with pytest.raises(ParseError):
        read_config_file(str(path))
    path.write_text("order 5\n", encoding="utf-8")
    with pytest.raises(ParseError):
        read_config_file(str(path))
    with pytest.raises(ParseError):
        parse_ladder("8,x")
    with pytest.raises(ParseError):
        read_environment({"FFF_WORKERS": "many"})
    with pytest.raises(InputContractError):
        read_config_file(str(tmp_path / "missing.cfg"))


@pytest.mark.parametrize("overrides", [
    {"order": 11},
    {"order": 0},
    {"ladder": (32,)},
    {"ladder": (32, 16)},
    {"output_format": "xml"},
    {"workers": 0},
])
def test_validation(overrides):
    with pytest.raises(ParseError):
        load_config(environ={}, **overrides)
