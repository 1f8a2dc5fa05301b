"""
Writers for CLI outputs. Every output embeds the RunRecord of the run that produced it:
JSON files under the "run_record" key, CSV files as a leading "# run_record: {...}" line.
A path of "-" writes to stdout.
"""
import abc
import json
import sys

from betatrix.buffers import DataBuffer
from betatrix.errors import ParameterError
from betatrix.matrices import BidiagonalPos, TridiagonalSym
from betatrix.session import RunRecord, dumps, loads

STDOUT = "-"


def _open(path, mode):
    if str(path) == STDOUT:
        return sys.stdout, False
    return open(path, mode, newline=""), True


class Recorder(abc.ABC):
    def __init__(self, path, record: RunRecord):
        self.path = path
        self.record = record
        if str(path) != STDOUT:
            record.add_output(path)

    @abc.abstractmethod
    def write(self, data: DataBuffer):
        pass

    @abc.abstractmethod
    def stop(self):
        pass


class MatrixJsonRecorder(Recorder):
    """Tridiagonal or bidiagonal matrices in the shared matrix JSON schema"""

    def __init__(self, path, record: RunRecord, kind: str = "tridiagonal", prefix: str = ""):
        super().__init__(path, record)
        if kind not in ("tridiagonal", "bidiagonal"):
            raise ParameterError(f"Unknown matrix kind {kind!r}")
        self.kind = kind
        self.prefix = prefix
        self._matrices = []

    def write(self, data: DataBuffer):
        cls = TridiagonalSym if self.kind == "tridiagonal" else BidiagonalPos
        matrices = cls(data[f"{self.prefix}diag"], data[f"{self.prefix}subdiag"])
        self._matrices.extend(matrices.to_json())

    def stop(self):
        payload = {"run_record": self.record.finish().to_json(), "matrices": self._matrices}
        write_json(self.path, payload)


class CsvFileRecorder(Recorder):
    """
    CSV with '.' decimals and shortest round-trip floats, preceded by the run record.
    Rows are held until more than rec_buffer_size samples are pending, then appended.
    """

    def __init__(self, path, record: RunRecord, rec_buffer_size=1_000_000):
        super().__init__(path, record)
        self.rec_buffer_size = rec_buffer_size
        self._pending = DataBuffer()
        self._started = False

    def _append_pending(self):
        frame = self._pending.to_dataframe()
        header = not self._started
        FILE, owned = _open(self.path, "a" if self._started else "w")
        try:
            if header:
                FILE.write(f"# run_record: {json.dumps(self.record.to_json())}\n")
            frame.to_csv(FILE, index=False, header=header)
        finally:
            if owned:
                FILE.close()
        self._started = True
        self._pending = DataBuffer()

    def write(self, data: DataBuffer):
        self._pending.extend(data)
        if len(self._pending) > self.rec_buffer_size:
            self._append_pending()

    def stop(self):
        self.record.finish()
        # an empty run still gets the run record line
        if len(self._pending) or not self._started:
            self._append_pending()


def write_json(path, payload: dict):
    FILE, owned = _open(path, "w")
    try:
        FILE.write(dumps(payload))
        FILE.write("\n")
    finally:
        if owned:
            FILE.close()


def read_json(path) -> dict:
    """A JSON output, with any encoded statistics decoded"""
    with open(path) as FILE:
        return loads(FILE.read())


def read_csv_record(path) -> dict:
    """The run record embedded in the first line of a CSV output"""
    with open(path) as FILE:
        first = FILE.readline()
    prefix = "# run_record: "
    if not first.startswith(prefix):
        raise ParameterError(f"{path} has no embedded run record")
    return json.loads(first[len(prefix):])
