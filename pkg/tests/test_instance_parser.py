from models.binpacking import BppInstance
from models.errors import (
    CountMismatchError,
    InstanceFormatError,
    MalformedHeaderError,
    OutOfRangeError,
    StorageError,
)
from models.experiment import GenSpec, ProblemKind
from models.knapsack import DkpInstance
from repositories.instance_parser import TextInstanceParser
import pytest


@pytest.fixture
def parser() -> TextInstanceParser:
    return TextInstanceParser()


def test_parse_dkp_with_comments(parser):
    text = """
    # two constraints
    dkp 3 2
    10 12        # capacities
    5 6 7
    4 5 6
    7 8 9
    """
    instance = parser.parse(text)
    assert isinstance(instance, DkpInstance)
    assert instance.capacities == [10, 12]
    assert instance.profits == [5, 6, 7]
    assert instance.weights == [[4, 5, 6], [7, 8, 9]]


def test_parse_bpp_accepts_weights_over_several_lines(parser):
    instance = parser.parse("bpp 4\n0.5 0.25\n0.125 1\n")
    assert isinstance(instance, BppInstance)
    assert instance.weights == [0.5, 0.25, 0.125, 1.0]


def test_parse_tsp_flags(parser):
    instance = parser.parse("tsp 3 asym metric\n0 1 2\n2 0 1\n1 2 0\n")
    assert not instance.symmetric
    assert instance.metric
    assert instance.dist[1] == [2.0, 0.0, 1.0]


def test_generated_instances_survive_a_file(parser, generator, tmp_path):
    specs = [
        GenSpec(problem=ProblemKind.DKP, n=10, d=3, tightness=0.5, seed=1),
        GenSpec(problem=ProblemKind.BPP, n=25, seed=2),
        GenSpec(problem=ProblemKind.TSP_MS, n=7, seed=3),
        GenSpec(problem=ProblemKind.TSP_MA, n=7, seed=4),
    ]
    for i, spec in enumerate(specs):
        instance = generator.generate(spec)
        path = tmp_path / f"instance-{i}.txt"
        parser.write(instance, path)
        assert parser.read(path) == instance


@pytest.mark.parametrize(
    "text",
    [
        "",
        "# only a comment\n",
        "lp 3\n1 2 3\n",
        "dkp 3\n1\n1 2 3\n1 2 3\n",
        "dkp three 1\n1\n1 2 3\n1 2 3\n",
        "bpp 0\n",
        "tsp 3 sym\n0 1 1\n1 0 1\n1 1 0\n",
        "tsp 3 both metric\n0 1 1\n1 0 1\n1 1 0\n",
    ],
)
def test_malformed_headers(parser, text):
    with pytest.raises(MalformedHeaderError):
        parser.parse(text)


@pytest.mark.parametrize(
    "text",
    [
        "dkp 3 1\n5\n1 2\n1 2 3\n",
        "dkp 3 2\n5 5\n1 2 3\n1 2 3\n",
        "bpp 3\n0.5 0.5\n",
        "tsp 3 sym metric\n0 1 1\n1 0 1\n",
        "tsp 3 sym metric\n0 1\n1 0 1\n1 1 0\n",
    ],
)
def test_count_mismatches(parser, text):
    with pytest.raises(CountMismatchError):
        parser.parse(text)


@pytest.mark.parametrize(
    "text",
    [
        "bpp 2\n0.5 1.5\n",
        "bpp 2\n0.5 0\n",
        "dkp 2 1\n-1\n1 2\n1 1\n",
        "dkp 2 1\n3\n0 2\n1 1\n",
        "dkp 2 1\n3\n1 1\n5 1\n",
        "dkp 2 1\n0\n1 1\n1 1\n",
        "dkp 2 1\n9\n1 1\n4 5\n",
        "tsp 3 sym metric\n0 1 2\n1 0 1\n1 1 0\n",
        "tsp 3 asym metric\n1 1 2\n1 0 1\n1 1 0\n",
    ],
)
def test_out_of_range_values(parser, text):
    with pytest.raises(OutOfRangeError):
        parser.parse(text)


def test_unparsable_numbers(parser):
    with pytest.raises(InstanceFormatError):
        parser.parse("dkp 2 1\n3\n1 x\n1 1\n")


def test_errors_carry_the_path(parser, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("bpp 2\n0.5\n")
    with pytest.raises(CountMismatchError) as excinfo:
        parser.read(path)
    assert excinfo.value.path == str(path)


def test_missing_file(parser, tmp_path):
    with pytest.raises(StorageError):
        parser.read(tmp_path / "missing.txt")
