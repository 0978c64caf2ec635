#!/usr/bin/env python3
"""Run the whole desk-scale pipeline on a synthetic corpus.

Synthesizes a labeled ultrasonic recording, preprocesses it (noise
gate, high-pass, time stretch, resample), extracts cepstral features,
pools per-syllable embeddings, analyzes separability, and prints the
report. All artifacts land in --workdir.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from syllasep.cli import main as cli


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", default="desk_run")
    parser.add_argument("--classes", type=int, default=5)
    parser.add_argument("--counts", default="30,30,30,30,30")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--kind", choices=("mfcc", "lfcc"), default="mfcc")
    parser.add_argument("--lda-dims", type=int, default=4)
    parser.add_argument("--bootstrap", type=int, default=200)
    args = parser.parse_args(argv)

    work = pathlib.Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)
    wav = work / "corpus.wav"
    ann = work / "annotations.csv"
    pre = work / "preprocessed.wav"
    feats = work / "features.sylf"
    emb = work / "embeddings.csv"
    report = work / "report.txt"

    steps = [
        ["synth", "--classes", str(args.classes), "--counts", args.counts,
         "--seed", str(args.seed), "--wav", str(wav), "--annotations", str(ann)],
        ["preprocess", "--input", str(wav), "--output", str(pre)],
        ["features", "--input", str(pre), "--kind", args.kind, "--output", str(feats)],
        ["pool", "--features", str(feats), "--annotations", str(ann),
         "--output", str(emb)],
        ["analyze", "--embeddings", str(emb), "--lda-dims", str(args.lda_dims),
         "--bootstrap", str(args.bootstrap),
         "--seed", str(args.seed), "--report", str(report),
         "--scatter", str(work / "scatter.csv"),
         "--scatter-svg", str(work / "scatter.svg")],
    ]
    for step in steps:
        code = cli(step)
        if code != 0:
            print(f"step '{step[0]}' failed with exit code {code}", file=sys.stderr)
            return code

    print(report.read_text(), end="")
    print(f"\nartifacts in {work}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
