from models.errors import StorageError
from models.experiment import ProblemKind
from repositories.spec_file_parser import KeyValueSpecFileParser
from pydantic import ValidationError
import pytest

DKP_SPEC = """
# d-KP grid
problem = dkp
n = 6, 10, 20
d = 2, 4
tightness = 0.25
trials = 50
seed = 0x2A
pilot = 10
auto_k = yes
"""


@pytest.fixture
def parser(monkeypatch) -> KeyValueSpecFileParser:
    monkeypatch.delenv("DCOPT_SEED", raising=False)
    return KeyValueSpecFileParser()


def test_experiment_spec_from_text(parser):
    spec = parser.experiment_spec(parser.parse_pairs(DKP_SPEC))
    assert spec.problem == ProblemKind.DKP
    assert spec.n_values == [6, 10, 20]
    assert spec.d_values == [2, 4]
    assert spec.tightness_values == [0.25]
    assert spec.oracles == ["exact"]
    assert spec.trials == 50
    assert spec.base_seed == 42
    assert spec.pilot == 10
    assert spec.auto_k
    assert len(spec.cells()) == 6


def test_bpp_defaults_to_all_algorithms(parser):
    spec = parser.experiment_spec(parser.parse_pairs("problem = bpp\nn = 20, 50\ntrials = 10\n"))
    assert spec.oracles == ["nfd", "ffd", "bfd"]
    assert [c.label for c in spec.cells()][:3] == ["N=20 nfd", "N=20 ffd", "N=20 bfd"]


def test_environment_seed_wins(parser, monkeypatch):
    monkeypatch.setenv("DCOPT_SEED", "7")
    spec = parser.experiment_spec(parser.parse_pairs(DKP_SPEC))
    assert spec.base_seed == 7
    gen = parser.gen_spec(parser.parse_pairs("problem = bpp\nn = 5\nseed = 3\n"))
    assert gen.seed == 7


def test_gen_spec(parser):
    gen = parser.gen_spec(parser.parse_pairs("problem = dkp\nn = 8\nd = 3\ntightness = 0.75\nseed = 11\n"))
    assert (gen.problem, gen.n, gen.d, gen.tightness, gen.seed) == (ProblemKind.DKP, 8, 3, 0.75, 11)


def test_unknown_keys_are_rejected(parser):
    with pytest.raises(ValueError, match="colour"):
        parser.experiment_spec(parser.parse_pairs("problem = bpp\nn = 20\ntrials = 10\ncolour = red\n"))


def test_missing_keys_are_rejected(parser):
    with pytest.raises(ValueError):
        parser.experiment_spec(parser.parse_pairs("problem = bpp\nn = 20\n"))
    with pytest.raises(ValueError):
        parser.gen_spec(parser.parse_pairs("n = 20\n"))


def test_lines_without_equals_are_rejected(parser):
    with pytest.raises(ValueError, match="line 2"):
        parser.parse_pairs("problem = bpp\nn 20\n")


@pytest.mark.parametrize(
    "text",
    [
        "problem = bpp\nn = 50, 20\ntrials = 10\n",
        "problem = bpp\nn = 20\ntrials = 1\n",
        "problem = bpp\nn = 20\ntrials = 10\noracle = exact\n",
        "problem = tsp-ms\nn = 5\ntrials = 10\n",
        "problem = dkp\nn = 6\ntrials = 10\ntightness = 1.0\n",
        "problem = knapsack\nn = 6\ntrials = 10\n",
    ],
)
def test_invalid_specs(parser, text):
    with pytest.raises(ValidationError):
        parser.experiment_spec(parser.parse_pairs(text))


def test_missing_spec_file(parser, tmp_path):
    with pytest.raises(StorageError):
        parser.read_pairs(tmp_path / "missing.spec")
