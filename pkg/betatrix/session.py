"""
A `RunRecord` is the metadata written next to every output: the command, its full
parameter set, the seed and library version, wall time and output paths. Together with
the seed it is enough to reproduce the numeric payload of the output exactly.
"""
from __future__ import annotations

import getpass
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime

from betatrix.errors import ParameterError
from betatrix.statistics.serialization import decode_statistic, encode_statistic

SEED_ENV_VAR = "BETATRIX_SEED"


def default_seed() -> int:
    """Seed from the BETATRIX_SEED environment variable, else 0"""
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or value == "":
        return 0
    try:
        return int(value)
    except ValueError:
        raise ParameterError(f"{SEED_ENV_VAR} must be an integer, got {value!r}") from None


def dumps(data: dict | list) -> str:
    return json.dumps(data, indent=4, default=encode_statistic)


def loads(text: str):
    """Inverse of `dumps`: encoded statistics come back as Statistic instances"""
    return json.loads(text, object_hook=decode_statistic)


@dataclass
class RunRecord:
    command: str
    params: dict
    seed: int
    version: str
    timestamp: str = ""
    argv: list = field(default_factory=list)
    platform: str = ""
    system_user: str = ""
    wall_time: float = None
    outputs: list = field(default_factory=list)
    _start: float = field(default=None, repr=False, compare=False)

    @classmethod
    def create(cls, command: str, params: dict, seed: int):
        from betatrix import __version__

        try:
            user = getpass.getuser()
        except (KeyError, OSError):
            user = ""
        return cls(
            command=command,
            params=dict(params),
            seed=seed,
            version=__version__,
            timestamp=datetime.now().strftime("%Y-%m-%d_%H:%M:%S"),
            argv=list(sys.argv),
            platform=sys.platform,
            system_user=user,
            _start=time.perf_counter(),
        )

    def add_output(self, path):
        self.outputs.append(str(path))

    def finish(self):
        if self._start is not None:
            self.wall_time = time.perf_counter() - self._start
        return self

    def to_json(self):
        out = asdict(self)
        out.pop("_start")
        return out

    @classmethod
    def from_json(cls, obj: dict):
        return cls(**obj)
