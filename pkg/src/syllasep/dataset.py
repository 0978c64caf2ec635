"""Syllable annotations, per-syllable pooling, and a synthetic corpus.

Annotations live on the original recording timeline. Pooling maps them
onto the stretched feature timeline, averages the frames whose centers
fall inside each interval, and reports syllables it had to skip.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .audio_io import AudioClip
from .errors import FormatError, ParameterError, ValidationError
from .frames import FrameMatrix

ANNOTATION_COLUMNS = ("recording_id", "syllable_id", "onset_s", "offset_s", "label")

SYNTH_RATE_HZ = 256000
SYNTH_BAND_HZ = (12000.0, 60000.0)
SYNTH_AMPLITUDE = 0.5
SYNTH_NOISE_DB = -45.0
SYNTH_GAP_S = 0.050
SYNTH_DUR_RANGE_S = (0.080, 0.400)
SYNTH_RAMP_S = 0.005


@dataclass
class SyllableAnnotation:
    """One labeled interval on the original recording timeline."""

    recording_id: str
    syllable_id: str
    onset_s: float
    offset_s: float
    label: str

    def __post_init__(self) -> None:
        if not self.syllable_id:
            raise ValidationError("syllable_id must be nonempty")
        if not self.label:
            raise ValidationError(f"syllable {self.syllable_id}: label must be nonempty")
        if not (np.isfinite(self.onset_s) and np.isfinite(self.offset_s)):
            raise ValidationError(f"syllable {self.syllable_id}: onset/offset must be finite")
        if self.onset_s < 0.0 or self.offset_s <= self.onset_s:
            raise ValidationError(
                f"syllable {self.syllable_id}: need 0 <= onset_s < offset_s, "
                f"got [{self.onset_s}, {self.offset_s}]"
            )


@dataclass
class SyllableEmbedding:
    """A pooled feature vector for one syllable."""

    syllable_id: str
    label: str
    vector: np.ndarray

    def __post_init__(self) -> None:
        vec = np.asarray(self.vector, dtype=np.float64)
        if vec.ndim != 1 or vec.shape[0] < 1:
            raise ValidationError(f"syllable {self.syllable_id}: vector must be a nonempty 1-D array")
        if not np.all(np.isfinite(vec)):
            raise ValidationError(f"syllable {self.syllable_id}: vector contains NaN or infinity")
        self.vector = vec


@dataclass
class PoolFailure:
    """Why one annotated syllable produced no embedding."""

    syllable_id: str
    reason: str


def parse_annotations(text: str) -> list[SyllableAnnotation]:
    """Parse annotation CSV text with the fixed five-column header.

    Raises FormatError naming the offending line for missing columns,
    unparseable numbers, inverted intervals, or duplicate
    (recording_id, syllable_id) pairs.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise FormatError("empty annotation file")
    missing = [c for c in ANNOTATION_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise FormatError(f"missing column: {', '.join(missing)}")

    annotations = []
    seen = {}
    for line_no, row in enumerate(reader, start=2):
        try:
            onset = float(row["onset_s"])
            offset = float(row["offset_s"])
        except (TypeError, ValueError):
            raise FormatError(
                f"line {line_no}: onset_s/offset_s must be numbers, "
                f"got {row.get('onset_s')!r}/{row.get('offset_s')!r}"
            ) from None
        rec = row["recording_id"] or ""
        syl = row["syllable_id"] or ""
        label = row["label"] or ""
        try:
            ann = SyllableAnnotation(rec, syl, onset, offset, label)
        except ValidationError as exc:
            raise FormatError(f"line {line_no}: {exc}") from None
        key = (rec, syl)
        if key in seen:
            raise FormatError(
                f"line {line_no}: duplicate (recording_id, syllable_id) = {key}, first seen on line {seen[key]}"
            )
        seen[key] = line_no
        annotations.append(ann)
    return annotations


def format_annotations(annotations: list[SyllableAnnotation]) -> str:
    """Render annotations back to CSV text."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(ANNOTATION_COLUMNS)
    for ann in annotations:
        writer.writerow([ann.recording_id, ann.syllable_id,
                         format(ann.onset_s, ".9g"), format(ann.offset_s, ".9g"), ann.label])
    return out.getvalue()


def pool_syllables(matrix: FrameMatrix, annotations: list[SyllableAnnotation],
                   stretch_factor: int = 8) -> tuple[list[SyllableEmbedding], list[PoolFailure]]:
    """Average frames per annotated syllable.

    Annotation times are scaled by stretch_factor onto the feature
    timeline. A frame belongs to a syllable when its center lies in
    [onset, offset). Intervals that cover no center but still overlap
    the frame grid fall back to the single nearest-center frame;
    intervals wholly outside the grid are reported as failures.
    """
    if not isinstance(stretch_factor, (int, np.integer)) or stretch_factor < 1:
        raise ParameterError(f"stretch_factor must be an integer >= 1, got {stretch_factor!r}")
    if matrix.num_frames < 1:
        raise ParameterError("feature matrix has no frames")

    centers = matrix.frame_times()
    half_hop = matrix.hop_seconds / 2.0
    grid_lo = matrix.offset_seconds - half_hop
    grid_hi = centers[-1] + half_hop

    embeddings = []
    failures = []
    for ann in annotations:
        onset = ann.onset_s * stretch_factor
        offset = ann.offset_s * stretch_factor
        if offset <= grid_lo or onset >= grid_hi:
            failures.append(PoolFailure(
                ann.syllable_id,
                f"interval [{onset:g}, {offset:g}) s lies outside the frame grid [{grid_lo:g}, {grid_hi:g}) s",
            ))
            continue
        inside = (centers >= onset) & (centers < offset)
        if inside.any():
            vector = matrix.data[inside].mean(axis=0)
        else:
            nearest = int(np.argmin(np.abs(centers - (onset + offset) / 2.0)))
            vector = matrix.data[nearest].copy()
        embeddings.append(SyllableEmbedding(ann.syllable_id, ann.label, vector))
    return embeddings, failures


def format_embeddings(embeddings: list[SyllableEmbedding]) -> str:
    """Render embeddings as CSV: syllable_id, label, v0..v{dim-1}."""
    if not embeddings:
        raise ValidationError("no embeddings to write")
    dim = embeddings[0].vector.shape[0]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["syllable_id", "label"] + [f"v{i}" for i in range(dim)])
    for emb in embeddings:
        if emb.vector.shape[0] != dim:
            raise ValidationError(
                f"syllable {emb.syllable_id}: dimension {emb.vector.shape[0]} != {dim}"
            )
        writer.writerow([emb.syllable_id, emb.label] + [format(v, ".9g") for v in emb.vector])
    return out.getvalue()


def parse_embeddings(text: str) -> list[SyllableEmbedding]:
    """Parse embedding CSV text produced by format_embeddings."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty embedding file") from None
    if header[:2] != ["syllable_id", "label"]:
        raise FormatError("missing column: syllable_id, label must lead the header")
    dim = len(header) - 2
    if dim < 1:
        raise FormatError("missing column: no vector columns found")

    embeddings = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != dim + 2:
            raise FormatError(f"line {line_no}: expected {dim + 2} fields, found {len(row)}")
        try:
            vector = np.array([float(v) for v in row[2:]], dtype=np.float64)
        except ValueError:
            raise FormatError(f"line {line_no}: vector fields must be numbers") from None
        try:
            embeddings.append(SyllableEmbedding(row[0], row[1], vector))
        except ValidationError as exc:
            raise FormatError(f"line {line_no}: {exc}") from None
    return embeddings


def synthesize_dataset(num_classes: int, per_class: list[int],
                       seed: int = 0) -> tuple[AudioClip, list[SyllableAnnotation]]:
    """Build a labeled ultrasonic test recording from chirp families.

    Each class occupies its own slice of the 12-60 kHz band; syllables
    are linear chirps of random duration separated by fixed silent
    gaps, with white noise well below the default gate threshold laid
    over the whole recording. Same seed, same bytes.
    """
    if num_classes < 1:
        raise ParameterError(f"num_classes must be at least 1, got {num_classes}")
    if len(per_class) != num_classes:
        raise ParameterError(
            f"per_class has {len(per_class)} entries but num_classes is {num_classes}"
        )
    if any(c < 1 for c in per_class):
        raise ParameterError("every class needs at least one syllable")

    rng = np.random.default_rng(seed)
    rate = SYNTH_RATE_HZ
    gap = int(round(SYNTH_GAP_S * rate))
    ramp = int(round(SYNTH_RAMP_S * rate))
    band_lo, band_hi = SYNTH_BAND_HZ
    slice_width = (band_hi - band_lo) / num_classes

    pieces = [np.zeros(gap)]
    cursor = gap
    annotations = []
    index = 0
    for k in range(num_classes):
        lo = band_lo + k * slice_width
        f_start = lo + 0.15 * slice_width
        f_end = lo + 0.85 * slice_width
        if k % 2 == 1:
            f_start, f_end = f_end, f_start
        for _ in range(per_class[k]):
            dur = rng.uniform(*SYNTH_DUR_RANGE_S)
            n = int(round(dur * rate))
            t = np.arange(n) / rate
            # linear chirp phase: 2*pi*(f0*t + (f1-f0)*t^2/(2*dur))
            phase = 2.0 * np.pi * (f_start * t + (f_end - f_start) * t * t / (2.0 * dur))
            burst = SYNTH_AMPLITUDE * np.sin(phase)
            # short raised-cosine edges limit onset splatter
            env = np.ones(n)
            env[:ramp] = 0.5 - 0.5 * np.cos(np.pi * np.arange(ramp) / ramp)
            env[n - ramp:] = env[:ramp][::-1]
            pieces.append(burst * env)
            pieces.append(np.zeros(gap))
            annotations.append(SyllableAnnotation(
                recording_id="synth",
                syllable_id=f"s{index:04d}",
                onset_s=cursor / rate,
                offset_s=(cursor + n) / rate,
                label=f"C{k}",
            ))
            cursor += n + gap
            index += 1

    wave = np.concatenate(pieces)
    noise_rms = 10.0 ** (SYNTH_NOISE_DB / 20.0)
    wave = wave + rng.normal(0.0, noise_rms, wave.shape[0])
    return AudioClip(wave.astype(np.float32), rate), annotations
