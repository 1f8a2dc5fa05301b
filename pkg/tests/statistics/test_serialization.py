import json

import pytest
import numpy as np

from betatrix.statistics import Discriminant, ElementarySymmetric, Eigenvalues, Entry, Tridiagonalize
from betatrix.statistics.serialization import decode_statistic, encode_statistic


@pytest.mark.parametrize(
    "input_class",
    [
        (Eigenvalues("diag", "subdiag", name="eig", method="lapack")),
        (Discriminant("eig", name="logD", log=True)),
        (ElementarySymmetric("eig", name="e3", order=3)),
        (Entry("q", name="q0", index=0)),
        (Tridiagonalize("matrix", name="T")),
    ],
)
def test_serialization(input_class):
    encoded_class = encode_statistic(input_class)
    output_class = decode_statistic(encoded_class)
    assert type(output_class) is type(input_class)
    np.testing.assert_equal(input_class.input_signals, output_class.input_signals)
    np.testing.assert_equal(input_class.name, output_class.name)
    np.testing.assert_equal(input_class.params, output_class.params)


def test_json_hooks():
    text = json.dumps({"stat": Entry("q", name="q1", index=1), "values": np.arange(3)}, default=encode_statistic)
    decoded = json.loads(text, object_hook=decode_statistic)
    assert isinstance(decoded["stat"], Entry) and decoded["stat"].index == 1
    assert decoded["values"] == [0, 1, 2]


def test_unserializable():
    with pytest.raises(TypeError):
        encode_statistic(object())
