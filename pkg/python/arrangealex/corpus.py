"""The bundled regression corpus and the twist families checked on it."""
import pathlib
import typing

import numpy as np
import yaml

from .arrangement import Arrangement
from .errors import InputError, ParseError
from .fields import FieldConfig
from .fox import TwistSpec

#: Random number generator.  Replace with a seeded version for deterministic
#: samples.
random = np.random.RandomState()


def seed(seed: int):
    """Set random seed for this module."""
    global random
    random = np.random.RandomState(seed)


def get_data_dir() -> pathlib.Path:
    """Get path to the data directory of this package."""
    p = pathlib.Path(__file__)
    return p.parent / "data"


class Case(typing.NamedTuple):
    name: str
    arrangement: Arrangement
    #: Seed of the frame search.
    seed: int
    description: str = ""


def _manifest() -> typing.List[dict]:
    with open(get_data_dir() / "corpus.yml", "r") as fh:
        data = yaml.safe_load(fh)
    return data["cases"]


def _load(entry: dict) -> Case:
    arr = Arrangement.load_file(get_data_dir() / entry["file"])
    arr.name = entry["name"]
    return Case(
        entry["name"],
        arr,
        int(entry.get("seed", 0)),
        entry.get("description", ""),
    )


def corpus() -> typing.List[Case]:
    """All bundled cases, in manifest order."""
    return [_load(entry) for entry in _manifest()]


def case_names() -> typing.List[str]:
    return [entry["name"] for entry in _manifest()]


def load_case(name: str) -> Case:
    """
    Raises:
        InputError: if there is no case with this name.
    """
    for entry in _manifest():
        if entry["name"] == name:
            return _load(entry)
    raise InputError("Unknown corpus case '{}'".format(name))


def load_arrangement(path_or_name: str) -> Arrangement:
    """Load an arrangement from a JSON file or by corpus case name.

    Raises:
        InputError: if the path does not exist and is no case name.
        ParseError: if the file is malformed.
    """
    path = pathlib.Path(path_or_name)
    if path.is_file():
        return Arrangement.load_file(path)
    if path.suffix == ".json":
        raise ParseError("No such arrangement file '{}'".format(path))
    return load_case(path_or_name).arrangement


def standard_twists(
    arr: Arrangement,
) -> typing.List[typing.Tuple[str, TwistSpec]]:
    """Twists checked on every corpus case.

    * the trivial 1-dimensional representation with ε = (1, …, 1),
    * ρ(a_j) = ζ₅^j with ε = (1, 2, 1, 2, …),
    * ρ(a_j) = X·diag(ζ₃^j, ζ₃^{2j})·X⁻¹ with X = [[1, 1], [0, 1]] and
      ε = (1, …, 1); it factors through H₁ and so respects every relation.
    """
    m = len(arr)
    field = FieldConfig(3)
    unipotent = (
        (field.one(), field.one()),
        (field.zero(), field.one()),
    )
    return [
        ("trivial", TwistSpec.trivial(m)),
        (
            "zeta5",
            TwistSpec.cyclotomic(
                [1 + j % 2 for j in range(m)], range(1, m + 1), 5
            ),
        ),
        (
            "diagonal_zeta3",
            TwistSpec.diagonal(
                [1] * m, [(j % 3, 2 * j % 3) for j in range(1, m + 1)], 3
            ).conjugated(unipotent),
        ),
    ]


def sample_cyclotomic_twist(
    generator_count: int, conductor: int, max_weight: int = 3
) -> TwistSpec:
    """Random 1-dimensional twist ρ(a_j) = ζ_N^{c_j} with positive ε."""
    epsilon = random.randint(1, max_weight + 1, size=generator_count)
    exponents = random.randint(0, conductor, size=generator_count)
    return TwistSpec.cyclotomic(
        [int(e) for e in epsilon], [int(c) for c in exponents], conductor
    )
