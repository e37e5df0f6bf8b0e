import numpy as np
import pytest

from infoquanta import io as qio
from infoquanta.errors import ValidationError
from infoquanta.signal import TimeSeries, welch_psd
from infoquanta.stochastic import RandomSource


def test_series_round_trip(tmp_path):
    s = TimeSeries(1024.0, RandomSource(0).normal(500), start_time=0.0)
    path = tmp_path / "s.csv"
    qio.write_series_csv(path, s)
    back = qio.read_series_csv(path)
    assert back.sample_rate == 1024.0
    assert np.array_equal(back.samples, s.samples)


def test_seventeen_digits(tmp_path):
    path = tmp_path / "s.csv"
    qio.write_series_csv(path, TimeSeries(3.0, [1 / 3, 2 / 3]))
    lines = path.read_text().splitlines()
    assert lines[0] == "t,value"
    assert lines[1] == "0,0.33333333333333331"


def test_psd_header(tmp_path):
    p = welch_psd(TimeSeries(8.0, np.zeros(64)), 16)
    qio.write_psd_csv(tmp_path / "p.csv", p)
    assert (tmp_path / "p.csv").read_text().startswith("freq_hz,psd\n0,0\n")


@pytest.mark.parametrize("body, line", [
    ("t,value\n0,1\n0.5,2\n1.0,\n", 4),
    ("t,value\n0,1\n0.5\n", 3),
    ("t,value\n0,1\n0.5,abc\n", 3),
    ("time,value\n0,1\n", 1),
    ("t,value\n0,1\n0.5,1\n0.7,1\n", 4),
    ("t,value\n0,1\n", 2),
])
def test_parse_errors_name_the_line(tmp_path, body, line):
    path = tmp_path / "bad.csv"
    path.write_text(body)
    with pytest.raises(qio.CsvParseError) as info:
        qio.read_series_csv(path)
    assert info.value.line == line
    assert f":{line}:" in str(info.value)


def test_complex_codec():
    m = np.array([[0.5, 0.25j], [-0.25j, 0.5]])
    enc = qio.encode_complex(m)
    assert enc[0][1] == [0.0, 0.25]
    np.testing.assert_array_equal(qio.decode_complex(enc, 2), m)
    np.testing.assert_array_equal(qio.decode_complex([[1, 0], [0, 0]], 2), np.diag([1, 0]))
    np.testing.assert_array_equal(qio.decode_complex([[1, 0], [0, 1]], 1), np.array([1, 1j]))
    with pytest.raises(ValidationError):
        qio.decode_complex([1, 2, 3], 2)


def test_json_numpy(tmp_path):
    qio.write_json(tmp_path / "x.json", {"a": np.float64(0.1), "b": np.arange(3), "c": np.int64(4)})
    assert '"a": 0.1' in (tmp_path / "x.json").read_text()
