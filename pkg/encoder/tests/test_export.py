"""Exporter units: WAV input, model resolution, export contract, CLI."""

import numpy as np
import pytest
import torch

from wavfixtures import silence, write_float32, write_pcm16
from encoder_export import (
    ExportRequest,
    FormatError,
    KNOWN_MODELS,
    ModelResolutionError,
    ValidationError,
    export_features,
    load_encoder,
    read_wav,
)
from encoder_export import models as models_mod
from encoder_export.cli import main

UNTRAINED = "hubert-base-untrained"


class TestWavReader:
    def test_pcm16_scaling(self, tmp_path):
        path = tmp_path / "a.wav"
        write_pcm16(path, np.array([0, 16384, -32768], dtype=np.int16), 16000)
        samples, rate = read_wav(path)
        assert rate == 16000
        assert samples.dtype == np.float32
        assert np.allclose(samples, [0.0, 0.5, -1.0])

    def test_float32_passthrough(self, tmp_path):
        path = tmp_path / "a.wav"
        values = np.array([0.25, -0.5, 1.0, 0.0], dtype=np.float32)
        write_float32(path, values, 16000)
        samples, rate = read_wav(path)
        assert rate == 16000
        assert np.array_equal(samples, values)

    def test_stereo_rejected(self, tmp_path):
        path = tmp_path / "stereo.wav"
        import wave
        with wave.open(str(path), "wb") as fh:
            fh.setnchannels(2)
            fh.setsampwidth(2)
            fh.setframerate(16000)
            fh.writeframes(b"\x00\x00" * 64)
        with pytest.raises(ValidationError, match="mono"):
            read_wav(path)

    def test_garbage_rejected(self, tmp_path):
        path = tmp_path / "bad.wav"
        path.write_bytes(b"definitely not audio")
        with pytest.raises(FormatError, match="RIFF"):
            read_wav(path)

    def test_truncated_chunk_rejected(self, tmp_path):
        path = tmp_path / "trunc.wav"
        write_pcm16(path, silence(0.01, 16000), 16000)
        path.write_bytes(path.read_bytes()[:-20])
        with pytest.raises(FormatError, match="truncated"):
            read_wav(path)

    def test_unsupported_depth_rejected(self, tmp_path):
        path = tmp_path / "odd.wav"
        write_pcm16(path, silence(0.01, 16000), 16000)
        raw = bytearray(path.read_bytes())
        raw[34:36] = (24).to_bytes(2, "little")  # bits-per-sample field
        path.write_bytes(bytes(raw))
        with pytest.raises(FormatError, match="unsupported format"):
            read_wav(path)


class TestModelResolution:
    def test_unknown_id_lists_known_models(self):
        with pytest.raises(ModelResolutionError, match="hubert-base-untrained"):
            load_encoder("whisper-large")

    def test_pretrained_load_failure_wrapped(self, monkeypatch):
        import transformers

        def refuse(*args, **kwargs):
            raise OSError("weights not on disk")

        monkeypatch.setattr(transformers.AutoModel, "from_pretrained", refuse)
        with pytest.raises(ModelResolutionError, match="hubert-base-ls960"):
            load_encoder("hubert-base")

    def test_one_instance_per_process(self):
        first = load_encoder(UNTRAINED)
        second = load_encoder(UNTRAINED)
        assert first is second
        assert first.num_layers == 12

    def test_untrained_init_is_seeded(self):
        a = models_mod._build_untrained("hubert")
        b = models_mod._build_untrained("hubert")
        pa, pb = list(a.parameters()), list(b.parameters())
        assert torch.equal(pa[0], pb[0])
        assert torch.equal(pa[len(pa) // 2], pb[len(pb) // 2])


class TestExport:
    def test_wrong_rate_rejected(self, tmp_path):
        wav = tmp_path / "slow.wav"
        write_pcm16(wav, silence(1.0, 8000), 8000)
        with pytest.raises(ValidationError, match="16000"):
            export_features(ExportRequest(str(wav), UNTRAINED, str(tmp_path / "o.sylf")))

    def test_too_short_input_rejected(self, tmp_path):
        wav = tmp_path / "blip.wav"
        write_pcm16(wav, silence(0.01, 16000), 16000)
        with pytest.raises(ValidationError, match="too short"):
            export_features(ExportRequest(str(wav), UNTRAINED, str(tmp_path / "o.sylf")))

    def test_layer_out_of_range_rejected(self, tmp_path):
        wav = tmp_path / "s.wav"
        write_pcm16(wav, silence(0.5, 16000), 16000)
        with pytest.raises(ValidationError, match="layer"):
            export_features(ExportRequest(str(wav), UNTRAINED, str(tmp_path / "o.sylf"), layer=13))
        with pytest.raises(ValidationError, match="layer"):
            ExportRequest(str(wav), UNTRAINED, str(tmp_path / "o.sylf"), layer=-1)

    def test_layer_selection_changes_payload(self, tmp_path):
        from syllasep import read_frames as primary_read

        wav = tmp_path / "s.wav"
        rng = np.random.default_rng(0)
        write_float32(wav, rng.uniform(-0.5, 0.5, 8000).astype(np.float32), 16000)
        deep = tmp_path / "deep.sylf"
        shallow = tmp_path / "shallow.sylf"
        export_features(ExportRequest(str(wav), UNTRAINED, str(deep), layer=12))
        export_features(ExportRequest(str(wav), UNTRAINED, str(shallow), layer=0))
        fm_deep, name_deep = primary_read(deep)
        fm_shallow, name_shallow = primary_read(shallow)
        assert name_deep == f"{UNTRAINED} layer=12"
        assert name_shallow == f"{UNTRAINED} layer=0"
        assert fm_deep.data.shape == fm_shallow.data.shape
        assert not np.allclose(fm_deep.data, fm_shallow.data)

    def test_half_second_frame_count(self, tmp_path):
        wav = tmp_path / "s.wav"
        write_pcm16(wav, silence(0.5, 16000), 16000)
        frames, dim = export_features(
            ExportRequest(str(wav), UNTRAINED, str(tmp_path / "o.sylf"))
        )
        assert dim == 768
        assert 24 <= frames <= 25

    def test_second_family_exports(self, tmp_path):
        wav = tmp_path / "s.wav"
        write_pcm16(wav, silence(1.0, 16000), 16000)
        frames, dim = export_features(
            ExportRequest(str(wav), "wav2vec2-base-untrained", str(tmp_path / "o.sylf"))
        )
        assert dim == 768
        assert frames in (49, 50)


class TestCli:
    def test_happy_path(self, tmp_path):
        wav = tmp_path / "s.wav"
        write_pcm16(wav, silence(0.5, 16000), 16000)
        out = tmp_path / "o.sylf"
        code = main(["--input", str(wav), "--model", UNTRAINED, "--output", str(out)])
        assert code == 0
        assert out.read_bytes()[:4] == b"SYLF"

    def test_wrong_rate_is_2(self, tmp_path, capsys):
        wav = tmp_path / "s.wav"
        write_pcm16(wav, silence(0.5, 22050), 22050)
        code = main(["--input", str(wav), "--model", UNTRAINED,
                     "--output", str(tmp_path / "o.sylf")])
        assert code == 2
        assert "16000" in capsys.readouterr().err

    def test_unknown_model_is_2(self, tmp_path, capsys):
        wav = tmp_path / "s.wav"
        write_pcm16(wav, silence(0.5, 16000), 16000)
        code = main(["--input", str(wav), "--model", "encodec",
                     "--output", str(tmp_path / "o.sylf")])
        assert code == 2
        capsys.readouterr()

    def test_missing_input_is_1(self, tmp_path, capsys):
        code = main(["--input", str(tmp_path / "none.wav"), "--model", UNTRAINED,
                     "--output", str(tmp_path / "o.sylf")])
        assert code == 1
        capsys.readouterr()

    def test_corrupt_input_is_1(self, tmp_path, capsys):
        wav = tmp_path / "bad.wav"
        wav.write_bytes(b"RIFFxxxxNOPE")
        code = main(["--input", str(wav), "--model", UNTRAINED,
                     "--output", str(tmp_path / "o.sylf")])
        assert code == 1
        capsys.readouterr()

    def test_help_is_0(self, capsys):
        assert main(["--help"]) == 0
        capsys.readouterr()

    def test_missing_flag_is_2(self, capsys):
        assert main(["--input", "x.wav"]) == 2
        capsys.readouterr()
