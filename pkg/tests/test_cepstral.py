"""Cepstral front end: scales, filterbank geometry, and DCT properties."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.fft import idct

from conftest import tone
from syllasep import (
    AudioClip,
    CepstralConfig,
    ParameterError,
    cepstral_features,
    triangular_filterbank,
)
from syllasep.cepstral import hz_to_mel, mel_to_hz

# closed-form values of 2595*log10(1 + f/700)
MEL_700 = 781.1728387480312
MEL_1000 = 999.9855371396244

# orthonormal DCT-II of 26 floored log energies: sqrt(26) * ln(1e-10)
SILENT_C0 = -117.40926320884495


class TestFrequencyScales:
    def test_mel_anchor_values(self):
        assert hz_to_mel(0.0) == 0.0
        assert hz_to_mel(700.0) == pytest.approx(MEL_700, abs=1e-9)
        assert hz_to_mel(1000.0) == pytest.approx(MEL_1000, abs=1e-9)

    def test_mel_inverse(self):
        freqs = np.array([0.0, 123.4, 700.0, 4000.0, 8000.0, 32000.0])
        assert np.allclose(mel_to_hz(hz_to_mel(freqs)), freqs, atol=1e-9)

    def test_mel_monotone(self):
        freqs = np.linspace(0, 20000, 500)
        assert np.all(np.diff(hz_to_mel(freqs)) > 0)


class TestFilterbank:
    def test_linear_two_filter_hand_values(self):
        # centers at 1000 and 2000 Hz, edges at neighbors
        fb = triangular_filterbank("linear", 2, 0.0, 3000.0,
                                   np.array([500.0, 1000.0, 1500.0, 2000.0, 2500.0]))
        assert fb.shape == (2, 5)
        assert np.allclose(fb[0], [0.5, 1.0, 0.5, 0.0, 0.0], atol=1e-12)
        assert np.allclose(fb[1], [0.0, 0.0, 0.5, 1.0, 0.5], atol=1e-12)

    def test_mel_center_has_unit_peak(self):
        # the single filter of a 1-filter bank peaks at the mel midpoint
        center = 700.0 * (10.0 ** (hz_to_mel(8000.0) / 2.0 / 2595.0) - 1.0)
        fb = triangular_filterbank("mel", 1, 0.0, 8000.0, np.array([center]))
        assert fb[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_weights_bounded(self):
        freqs = np.fft.rfftfreq(400, d=1.0 / 16000)
        for kind in ("mel", "linear"):
            fb = triangular_filterbank(kind, 26, 0.0, 8000.0, freqs)
            assert fb.shape == (26, 201)
            assert fb.min() >= 0.0
            assert fb.max() <= 1.0 + 1e-12
            assert np.all(fb.max(axis=1) > 0.0)

    def test_linear_filters_partition_unity_between_centers(self):
        points = np.linspace(0.0, 8000.0, 28)
        inner = np.linspace(points[1], points[-2], 257)
        fb = triangular_filterbank("linear", 26, 0.0, 8000.0, inner)
        assert np.allclose(fb.sum(axis=0), 1.0, atol=1e-9)

    def test_out_of_band_weights_zero(self):
        fb = triangular_filterbank("linear", 4, 1000.0, 2000.0,
                                   np.array([0.0, 999.0, 2001.0, 8000.0]))
        assert np.all(fb == 0.0)

    def test_kind_validation(self):
        with pytest.raises(ParameterError):
            triangular_filterbank("bark", 4, 0.0, 8000.0, np.zeros(3))


class TestCepstralFeatures:
    def test_frame_grid(self):
        clip = AudioClip(np.zeros(16000, dtype=np.float32), 16000)
        fm = cepstral_features(clip, CepstralConfig())
        assert fm.num_frames == 49
        assert fm.dim == 13
        assert fm.hop_seconds == 0.02
        assert fm.offset_seconds == 0.0125
        assert fm.frame_times()[0] == 0.0125
        assert fm.frame_times()[-1] == pytest.approx(0.0125 + 48 * 0.02, abs=1e-12)

    @pytest.mark.parametrize("n,expected", [(400, 1), (719, 1), (720, 2), (16000, 49)])
    def test_frame_count(self, n, expected):
        clip = AudioClip(np.zeros(n, dtype=np.float32), 16000)
        assert cepstral_features(clip, CepstralConfig()).num_frames == expected

    def test_too_short_clip_rejected(self):
        clip = AudioClip(np.zeros(399, dtype=np.float32), 16000)
        with pytest.raises(ParameterError, match="399"):
            cepstral_features(clip, CepstralConfig())

    def test_silent_clip_hits_log_floor(self):
        clip = AudioClip(np.zeros(16000, dtype=np.float32), 16000)
        fm = cepstral_features(clip, CepstralConfig())
        assert np.allclose(fm.data[:, 0], SILENT_C0, atol=1e-9)
        assert np.abs(fm.data[:, 1:]).max() < 1e-9

    def test_hop_shift_reproduces_frames(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(-1, 1, 4000).astype(np.float32)
        config = CepstralConfig()
        full = cepstral_features(AudioClip(x, 16000), config)
        shifted = cepstral_features(AudioClip(x[320:], 16000), config)
        assert np.array_equal(shifted.data, full.data[1:])

    def test_gain_shifts_only_c0(self):
        # log power: scaling the waveform adds 2*ln(g) to every log
        # energy, which an orthonormal DCT routes entirely into c0
        rng = np.random.default_rng(6)
        x = (0.4 * rng.standard_normal(4000)).astype(np.float32)
        config = CepstralConfig()
        base = cepstral_features(AudioClip(x, 16000), config)
        half = cepstral_features(AudioClip((0.5 * x.astype(np.float64)).astype(np.float32), 16000), config)
        c0_shift = math.sqrt(26) * 2.0 * math.log(0.5)
        assert np.allclose(half.data[:, 0] - base.data[:, 0], c0_shift, atol=1e-5)
        assert np.abs(half.data[:, 1:] - base.data[:, 1:]).max() < 1e-6

    def test_truncation_prefix_consistency(self):
        rng = np.random.default_rng(7)
        x = rng.uniform(-1, 1, 4000).astype(np.float32)
        full = cepstral_features(AudioClip(x, 16000), CepstralConfig(num_coeffs=26))
        head = cepstral_features(AudioClip(x, 16000), CepstralConfig(num_coeffs=13))
        assert np.allclose(full.data[:, :13], head.data, atol=1e-12)

    def test_dct_reconstructs_reference_log_energies(self):
        # independent front-end recomputation: frame, window, power,
        # filterbank, floored natural log; the inverse orthonormal DCT
        # of a full coefficient set must match it
        rng = np.random.default_rng(8)
        x = rng.uniform(-1, 1, 2000).astype(np.float32)
        config = CepstralConfig(kind="linear", num_coeffs=26)
        fm = cepstral_features(AudioClip(x, 16000), config)

        n_frames = (2000 - 400) // 320 + 1
        win = 0.5 - 0.5 * np.cos(2 * np.pi * np.arange(400) / 400)
        freqs = np.fft.rfftfreq(400, d=1 / 16000)
        fb = triangular_filterbank("linear", 26, 0.0, 8000.0, freqs)
        ref = np.empty((n_frames, 26))
        for i in range(n_frames):
            frame = x[i * 320:i * 320 + 400].astype(np.float64)
            power = np.abs(np.fft.rfft(frame * win)) ** 2 / 400
            ref[i] = np.log(np.maximum(fb @ power, 1e-10))
        assert np.abs(idct(fm.data, type=2, norm="ortho", axis=1) - ref).max() < 1e-9

    def test_tone_energy_lands_in_matching_filter(self):
        clip = tone(3000.0, 16000, 0.5, amplitude=0.5)
        fm = cepstral_features(clip, CepstralConfig(kind="linear", num_coeffs=26))
        log_energy = idct(fm.data, type=2, norm="ortho", axis=1)
        centers = np.linspace(0.0, 8000.0, 28)[1:-1]
        hottest = centers[int(np.argmax(log_energy.mean(axis=0)))]
        assert abs(hottest - 3000.0) < 300.0

    def test_mel_and_linear_differ(self):
        clip = tone(500.0, 16000, 0.3, amplitude=0.5)
        mel = cepstral_features(clip, CepstralConfig(kind="mel"))
        lin = cepstral_features(clip, CepstralConfig(kind="linear"))
        assert not np.allclose(mel.data, lin.data, atol=1e-3)

    def test_dropping_c0_shifts_coefficient_window(self):
        rng = np.random.default_rng(9)
        x = rng.uniform(-1, 1, 4000).astype(np.float32)
        with_c0 = cepstral_features(AudioClip(x, 16000), CepstralConfig(num_coeffs=14))
        without = cepstral_features(AudioClip(x, 16000),
                                    CepstralConfig(num_coeffs=13, include_c0=False))
        assert without.dim == 13
        assert np.allclose(without.data, with_c0.data[:, 1:], atol=1e-12)

    def test_pre_emphasis_matches_filtered_input(self):
        # y[t] = x[t] - a*x[t-1] applied before framing must equal
        # running the plain front end on the filtered waveform
        rng = np.random.default_rng(10)
        x = (0.5 * rng.standard_normal(4000)).astype(np.float32)
        emphasized = cepstral_features(AudioClip(x, 16000),
                                       CepstralConfig(pre_emphasis=0.97))
        y = x.astype(np.float64)
        y = np.concatenate([y[:1], y[1:] - 0.97 * y[:-1]])
        plain = cepstral_features(AudioClip(y.astype(np.float32), 16000), CepstralConfig())
        assert np.allclose(emphasized.data, plain.data, atol=1e-4)
        assert not np.allclose(
            emphasized.data,
            cepstral_features(AudioClip(x, 16000), CepstralConfig()).data,
            atol=1e-3,
        )

    def test_rate_too_low_for_fmax(self):
        clip = AudioClip(np.zeros(8000, dtype=np.float32), 8000)
        with pytest.raises(ParameterError, match="fmax"):
            cepstral_features(clip, CepstralConfig())

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            CepstralConfig(kind="plp")
        with pytest.raises(ParameterError):
            CepstralConfig(num_coeffs=27)
        with pytest.raises(ParameterError):
            CepstralConfig(num_coeffs=0)
        with pytest.raises(ParameterError):
            CepstralConfig(hop=0)
        with pytest.raises(ParameterError):
            CepstralConfig(fft_size=1)
        with pytest.raises(ParameterError):
            CepstralConfig(fmin_hz=-1.0)
        with pytest.raises(ParameterError):
            CepstralConfig(fmin_hz=8000.0, fmax_hz=8000.0)
        with pytest.raises(ParameterError):
            CepstralConfig(num_coeffs=26, include_c0=False)
        with pytest.raises(ParameterError):
            CepstralConfig(pre_emphasis=1.0)
        with pytest.raises(ParameterError):
            CepstralConfig(pre_emphasis=-0.1)

    @settings(max_examples=20, deadline=None)
    @given(n=st.integers(400, 3000), seed=st.integers(0, 2 ** 31))
    def test_shape_and_finiteness_property(self, n, seed):
        rng = np.random.default_rng(seed)
        clip = AudioClip(rng.uniform(-1, 1, n).astype(np.float32), 16000)
        fm = cepstral_features(clip, CepstralConfig())
        assert fm.data.shape == ((n - 400) // 320 + 1, 13)
        assert np.all(np.isfinite(fm.data))
