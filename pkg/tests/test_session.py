import pytest
import numpy as np

from betatrix.errors import ParameterError
from betatrix.session import RunRecord, default_seed, dumps, loads
from betatrix.statistics import Eigenvalues


@pytest.mark.parametrize("value, expected", [(None, 0), ("", 0), ("42", 42), ("-3", -3)])
def test_default_seed(monkeypatch, value, expected):
    if value is None:
        monkeypatch.delenv("BETATRIX_SEED", raising=False)
    else:
        monkeypatch.setenv("BETATRIX_SEED", value)
    assert default_seed() == expected


def test_default_seed_rejects_garbage(monkeypatch):
    monkeypatch.setenv("BETATRIX_SEED", "1.5")
    with pytest.raises(ParameterError):
        default_seed()


def test_run_record_round_trip(tmp_path):
    record = RunRecord.create("sample", {"beta": 2.0, "n": 4}, seed=9)
    record.add_output(tmp_path / "out.json")
    encoded = record.finish().to_json()
    assert "_start" not in encoded
    assert encoded["wall_time"] >= 0
    assert RunRecord.from_json(encoded) == record


def test_json_keeps_statistics():
    loaded = loads(dumps({"statistics": [Eigenvalues("diag", "subdiag", name="eig")], "edges": np.arange(3.0)}))
    (stat,) = loaded["statistics"]
    assert isinstance(stat, Eigenvalues) and stat.params == {"method": "bisection"}
    assert loaded["edges"] == [0.0, 1.0, 2.0]
