"""Command-line front end.

Exit codes: 0 success, 1 file or container errors, 2 bad parameters,
3 completed pooling with at least one skipped syllable.
"""

from __future__ import annotations

import argparse
import sys

from . import dataset, dsp, report as report_mod, sylf
from .audio_io import read_wav, write_wav
from .cepstral import CepstralConfig, cepstral_features
from .errors import FormatError, NumericalError, ParameterError, ValidationError
from .separability import analyze, fit_lda, project, stack_embeddings

KIND_BY_FLAG = {"mfcc": "mel", "lfcc": "linear"}


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def cmd_synth(args) -> int:
    _check(args.classes >= 1, "--classes must be at least 1")
    try:
        counts = [int(v) for v in args.counts.split(",")]
    except ValueError:
        raise ParameterError(f"--counts must be comma-separated integers, got {args.counts!r}") from None
    _check(len(counts) == args.classes,
           f"--counts lists {len(counts)} values but --classes is {args.classes}")
    _check(all(c >= 1 for c in counts), "--counts entries must be at least 1")
    clip, annotations = dataset.synthesize_dataset(args.classes, counts, seed=args.seed)
    write_wav(clip, args.wav)
    with open(args.annotations, "w", encoding="utf-8", newline="") as fh:
        fh.write(dataset.format_annotations(annotations))
    return 0


def cmd_preprocess(args) -> int:
    _check(-120.0 <= args.noise_threshold_db <= 0.0, "--noise-threshold-db must lie in [-120, 0]")
    _check(args.noise_reduction_db >= 0.0, "--noise-reduction-db must be nonnegative")
    _check(args.highpass_hz > 0.0, "--highpass-hz must be positive")
    _check(args.stretch >= 1, "--stretch must be an integer >= 1")
    _check(args.target_rate >= 1, "--target-rate must be a positive integer")
    config = dsp.PreprocessConfig(
        noise_threshold_db=args.noise_threshold_db,
        noise_reduction_db=args.noise_reduction_db,
        highpass_cutoff_hz=args.highpass_hz,
        stretch_factor=args.stretch,
        target_rate_hz=args.target_rate,
    )
    clip = read_wav(args.input)
    write_wav(dsp.preprocess_pipeline(clip, config), args.output)
    return 0


def cmd_features(args) -> int:
    _check(args.fft >= 2, "--fft must be at least 2")
    _check(args.hop >= 1, "--hop must be a positive integer")
    _check(args.filters >= 1, "--filters must be a positive integer")
    _check(1 <= args.coeffs <= args.filters, "--coeffs must lie in [1, --filters]")
    _check(args.fmin >= 0.0, "--fmin must be nonnegative")
    _check(args.fmax > args.fmin, "--fmax must exceed --fmin")
    config = CepstralConfig(
        kind=KIND_BY_FLAG[args.kind],
        fft_size=args.fft,
        hop=args.hop,
        num_filters=args.filters,
        num_coeffs=args.coeffs,
        fmin_hz=args.fmin,
        fmax_hz=args.fmax,
    )
    clip = read_wav(args.input)
    matrix = cepstral_features(clip, config)
    source = f"{args.kind} fft={args.fft} hop={args.hop} coeffs={args.coeffs}"
    sylf.write_frames(matrix, source, args.output)
    return 0


def cmd_pool(args) -> int:
    _check(args.stretch >= 1, "--stretch must be an integer >= 1")
    matrix, _source = sylf.read_frames(args.features)
    with open(args.annotations, "r", encoding="utf-8") as fh:
        annotations = dataset.parse_annotations(fh.read())
    embeddings, failures = dataset.pool_syllables(matrix, annotations, stretch_factor=args.stretch)
    body = dataset.format_embeddings(embeddings) if embeddings else ""
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        fh.write(body)
    for failure in failures:
        print(f"skipped {failure.syllable_id}: {failure.reason}", file=sys.stderr)
    return 3 if failures else 0


def cmd_analyze(args) -> int:
    _check(args.lda_dims >= 1, "--lda-dims must be at least 1")
    _check(0.0 <= args.gamma_lda <= 1.0, "--gamma-lda must lie in [0, 1]")
    _check(0.0 <= args.gamma_cov <= 1.0, "--gamma-cov must lie in [0, 1]")
    _check(args.bootstrap >= 0, "--bootstrap must be nonnegative")
    with open(args.embeddings, "r", encoding="utf-8") as fh:
        embeddings = dataset.parse_embeddings(fh.read())
    result = analyze(
        embeddings,
        num_dims=args.lda_dims,
        gamma_lda=args.gamma_lda,
        gamma_cov=args.gamma_cov,
        cov_mode=args.cov_mode,
        bootstrap_n=args.bootstrap,
        seed=args.seed,
    )
    with open(args.report, "w", encoding="utf-8", newline="") as fh:
        fh.write(report_mod.format_report(result))

    model = fit_lda(embeddings, num_dims=args.lda_dims, gamma=args.gamma_lda)
    vectors, _labels = stack_embeddings(embeddings)
    points = project(model, vectors)
    ids = [emb.syllable_id for emb in embeddings]
    labels = [emb.label for emb in embeddings]
    with open(args.scatter, "w", encoding="utf-8", newline="") as fh:
        fh.write(report_mod.format_scatter_csv(ids, labels, points))
    if args.scatter_svg:
        with open(args.scatter_svg, "w", encoding="utf-8", newline="") as fh:
            fh.write(report_mod.render_scatter_svg(labels, points))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syllasep",
        description="Syllable separability analysis for ultrasonic recordings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a labeled synthetic recording")
    p.add_argument("--classes", type=int, required=True, help="number of syllable classes")
    p.add_argument("--counts", required=True, help="comma-separated syllables per class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wav", required=True, help="output WAV path")
    p.add_argument("--annotations", required=True, help="output annotation CSV path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("preprocess", help="gate, high-pass, stretch, and resample a recording")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--noise-threshold-db", type=float, default=-65.0, help="gate threshold, dBFS")
    p.add_argument("--noise-reduction-db", type=float, default=90.0, help="gate attenuation, dB")
    p.add_argument("--highpass-hz", type=float, default=10000.0, help="high-pass cutoff, Hz")
    p.add_argument("--stretch", type=int, default=8, help="integer slow-down factor")
    p.add_argument("--target-rate", type=int, default=16000, help="output sample rate, Hz")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("features", help="extract framewise cepstral features")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="output SYLF path")
    p.add_argument("--kind", choices=sorted(KIND_BY_FLAG), default="mfcc")
    p.add_argument("--fft", type=int, default=400, help="window length, samples")
    p.add_argument("--hop", type=int, default=320, help="hop length, samples")
    p.add_argument("--filters", type=int, default=26)
    p.add_argument("--coeffs", type=int, default=13)
    p.add_argument("--fmin", type=float, default=0.0)
    p.add_argument("--fmax", type=float, default=8000.0)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("pool", help="average frames into per-syllable embeddings")
    p.add_argument("--features", required=True, help="input SYLF path")
    p.add_argument("--annotations", required=True, help="annotation CSV on the original timeline")
    p.add_argument("--stretch", type=int, default=8, help="slow-down factor used in preprocessing")
    p.add_argument("--output", required=True, help="output embedding CSV path")
    p.set_defaults(func=cmd_pool)

    p = sub.add_parser("analyze", help="discriminant projection and silhouette report")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--lda-dims", type=int, default=4)
    p.add_argument("--gamma-lda", type=float, default=1e-3)
    p.add_argument("--gamma-cov", type=float, default=1e-6)
    p.add_argument("--cov-mode", choices=("pooled_within", "global"), default="pooled_within")
    p.add_argument("--bootstrap", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", required=True, help="output report text path")
    p.add_argument("--scatter", required=True, help="output scatter CSV path")
    p.add_argument("--scatter-svg", default=None, help="optional scatter SVG path")
    p.set_defaults(func=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ParameterError, ValidationError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
