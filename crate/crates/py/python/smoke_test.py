"""Smoke test for the compiled `superres` extension.

Build with `cargo build --release -p superres-py --features extension-module`, copy
`target/release/libsuperres.so` to `superres.so` somewhere on PYTHONPATH, then run this file.
"""

import json
import math

import superres


def main():
    mu = superres.DiscreteMeasure([0.8, -0.8], [2.0, 1.0])
    assert mu.supports == [-0.8, 0.8]
    assert abs(mu.d_min - 1.6) < 1e-15 and mu.m_min == 1.0
    assert abs(mu.transform([0.0])[0] - 3.0) < 1e-15

    meas = superres.Measurement(mu, 1.0, sigma=1e-4, seed=3)
    assert len(meas) == 9 and meas.sigma == 1e-4
    again = superres.Measurement.from_json(meas.to_json())
    assert again.values == meas.values

    assert superres.detect_count(meas) == 2
    n, svs, threshold = superres.detect_count_fixed_s(meas, 2)
    assert n == 2 and svs[2] <= threshold < svs[1]

    peaks = superres.music_peaks(meas, 2, d_min=mu.d_min)
    assert len(peaks) == 2 and max(abs(p - y) for p, y in zip(peaks, mu.supports)) < 0.8
    assert superres.run_single_experiment(mu, meas, 2)
    xs, js = superres.music_image(meas, 2, window=(-2.0, 2.0, 0.01))
    assert len(xs) == len(js) == 401

    pair = superres.construct("number", 2, 1.0, 0.01)
    tau = 0.1 / math.e
    assert pair.passes() and abs(pair.verified_gap - 4 * math.sin(tau / 2) ** 2) < 1e-12
    assert json.loads(pair.to_json())["kind"] == "NumberDetection"
    try:
        superres.construct("number", 2, 1.0, 2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("sigma > m_min must raise")

    bounds = superres.separation_bounds(2, 1.0, 1.0, 1.0)
    assert abs(bounds["num_lower"] - 2 / math.e) < 1e-15

    found = superres.l0_grid_oracle(superres.Measurement(mu, 1.0, sigma=1e-5), [-1.6, -0.8, 0.0, 0.8, 1.6])
    assert found is not None and len(found) == 2

    slope, records = superres.run_phase_sweep("number", 2, 400, seed=1)
    assert len(records) == 400 and slope is not None

    idx, ln_max = superres.extremal_product([1.0, 2.0, 3.0, 4.0], "max")
    assert idx == 0 and abs(ln_max - math.log(6)) < 1e-12

    print("superres smoke test OK")


if __name__ == "__main__":
    main()
