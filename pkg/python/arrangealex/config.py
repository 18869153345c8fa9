"""Engine configuration: search bounds and seeds, loaded from YAML."""
import typing

import yaml

from .errors import ParseError


class EngineConfig(typing.NamedTuple):
    """Tunable bounds of the searches and checks of the engine."""

    #: Seed of all randomness (shear candidates, sampled families).
    seed: int = 0
    #: Number of shear candidates tried before giving up.
    shear_retry_cap: int = 1000
    #: Numerators of random shear parts are drawn from [-bound, bound].
    shear_numerator_bound: int = 12
    #: Denominators of random shear parts are drawn from [1, bound].
    shear_denominator_bound: int = 7
    #: Largest conductor scanned by the distinguishing twist search.
    falk_max_conductor: int = 101
    #: Meridian weights ε used by the distinguishing twist search.
    falk_epsilon: typing.Tuple[int, ...] = (1, 2, 3, 4, 5)
    #: Literal minor-gcd cross-checks are skipped above this many minors.
    minor_gcd_limit: int = 10000
    #: Jump loci are listed root by root only up to this field degree.
    root_listing_max_degree: int = 64

    @classmethod
    def load(cls, stream: typing.TextIO) -> "EngineConfig":
        """Load a configuration from a YAML stream.

        Keys that are missing keep their default value.

        Raises:
            ParseError: if the stream contains unknown keys.
        """
        data = yaml.safe_load(stream) or {}
        unknown = set(data) - set(cls._fields)
        if unknown:
            raise ParseError(
                "Unknown configuration keys: {}".format(
                    ", ".join(sorted(unknown))
                )
            )
        if "falk_epsilon" in data:
            data["falk_epsilon"] = tuple(int(e) for e in data["falk_epsilon"])
        return cls(**data)

    @classmethod
    def load_file(cls, filename) -> "EngineConfig":
        with open(filename, "r") as fh:
            return cls.load(fh)

    def dump(self, stream: typing.TextIO):
        """Dump the configuration in YAML format to the given stream."""
        data = self._asdict()
        # plain lists and ints, no tuples or numpy scalars
        data["falk_epsilon"] = [int(e) for e in self.falk_epsilon]
        yaml.dump(data, stream, default_flow_style=False, sort_keys=False)
