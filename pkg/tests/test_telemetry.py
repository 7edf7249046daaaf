import numpy as np
import pytest

from amphisim.errors import DomainError, ParseError
from amphisim.telemetry import (
    TimeSeries,
    average_speed,
    lowpass_filter,
    read_series,
    write_series,
)


def _series(values, dt=1.0 / 30.0):
    t = np.arange(len(values)) * dt
    return TimeSeries(t, np.asarray(values, dtype=float))


def test_series_validation():
    with pytest.raises(DomainError):
        TimeSeries(np.array([0.0, 1.0]), np.array([1.0]))
    with pytest.raises(DomainError):
        TimeSeries(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
    with pytest.raises(DomainError):
        TimeSeries(np.array([0.0, 1.0]), np.array([1.0, np.nan]))


def test_filter_identity_at_alpha_one():
    s = _series([1.0, 5.0, -2.0, 3.0])
    out = lowpass_filter(s, 1.0)
    assert np.array_equal(out.value_cm, s.value_cm)


def test_filter_fixed_point_on_constant():
    s = _series([4.2] * 50)
    out = lowpass_filter(s, 0.3)
    assert np.allclose(out.value_cm, 4.2, atol=1e-12)


def test_filter_recurrence_by_hand():
    # y[0]=x[0]; y[i] = 0.5*x[i] + 0.5*y[i-1]
    s = _series([0.0, 2.0, 2.0, 6.0])
    out = lowpass_filter(s, 0.5)
    assert out.value_cm == pytest.approx([0.0, 1.0, 1.5, 3.75], abs=1e-12)


def test_filter_alpha_validation():
    s = _series([1.0, 2.0])
    with pytest.raises(DomainError):
        lowpass_filter(s, 0.0)
    with pytest.raises(DomainError):
        lowpass_filter(s, 1.5)


def test_average_speed_on_affine_trace():
    t = np.arange(0.0, 10.0, 1.0 / 30.0)
    s = TimeSeries(t, 3.0 + 0.7 * t)
    assert average_speed(s, (0.0, t[-1])) == pytest.approx(0.7, abs=1e-9)
    assert average_speed(s, (2.0, 5.0)) == pytest.approx(0.7, abs=1e-9)


def test_average_speed_window_validation():
    s = _series([0.0, 1.0, 2.0])
    with pytest.raises(DomainError):
        average_speed(s, (0.05, 0.01))
    with pytest.raises(DomainError):
        average_speed(s, (0.0, 99.0))


def test_csv_round_trip_lossless(tmp_path):
    t = np.arange(0.0, 2.0, 1.0 / 30.0)
    rng = np.random.default_rng(7)
    s = TimeSeries(t, np.round(rng.uniform(-30.0, 5.0, len(t)), 6))
    path = tmp_path / "series.csv"
    write_series(path, s)
    back = read_series(path)
    assert np.allclose(back.t_s, s.t_s, atol=1e-9)
    assert np.allclose(back.value_cm, s.value_cm, atol=1e-9)


def test_read_series_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time,depth\n0.0,1.0\n")
    with pytest.raises(ParseError) as excinfo:
        read_series(path)
    assert excinfo.value.line_no == 1


def test_read_series_bad_cell(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t_s,value_cm\n0.0,1.0\n0.1,oops\n")
    with pytest.raises(ParseError) as excinfo:
        read_series(path)
    assert excinfo.value.line_no == 3


def test_read_series_non_increasing_time(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t_s,value_cm\n0.0,1.0\n0.0,2.0\n")
    with pytest.raises(ParseError) as excinfo:
        read_series(path)
    assert excinfo.value.line_no == 3
