import math

import numpy as np
import pytest

from fracqm.io.csvio import emit_csv, format_value, read_csv
from fracqm.io.svg import N_POINTS, fig1_svg


def test_format_value():
    assert format_value(3) == "3"
    assert format_value(True) == "1"
    assert format_value(np.int64(7)) == "7"
    assert format_value(0.1) == "0.1"
    assert float(format_value(math.pi)) == math.pi


def test_csv_round_trip_is_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    data = rng.standard_normal((50, 3)) * 10.0 ** rng.integers(-300, 300, (50, 3))
    path = emit_csv(("a", "b", "c"), data.tolist(), tmp_path / "t.csv")
    raw = path.read_bytes()
    assert raw.startswith(b"a,b,c\n") and b"\r" not in raw
    header, rows = read_csv(path)
    assert header == ["a", "b", "c"]
    assert np.array_equal(np.array(rows), data)


def test_csv_rejects_ragged_rows(tmp_path):
    with pytest.raises(ValueError, match="fields"):
        emit_csv(("a", "b"), [(1.0,)], tmp_path / "bad.csv")


def test_svg_is_deterministic_and_labelled(solve):
    sols = [solve(a) for a in (1.1, 1.5, 2.0)]
    text = fig1_svg(sols)
    assert text == fig1_svg(sols)
    assert text.startswith("<svg") and text.endswith("</svg>\n")
    assert text.count("<polyline") == 3
    for label in ("alpha=1.1", "alpha=1.5", "alpha=2"):
        assert f">{label}</text>" in text
    first = text.split('points="', 1)[1].split('"', 1)[0].split()
    assert len(first) == N_POINTS
    # omega(0) = 1 sits on the top edge of the plot area, x = 10 on the right edge
    assert first[0] == "70.00,20.00"
    assert first[-1].startswith("620.00,")


def test_svg_skips_unconverged(solve, caplog):
    class Stub:
        alpha = 1.3
        converged = False
        classification = "crossing"

    text = fig1_svg([Stub(), solve(2.0)])
    assert text.count("<polyline") == 1
    assert "skipping alpha=1.3" in caplog.text
    with pytest.raises(ValueError):
        fig1_svg([Stub()])
