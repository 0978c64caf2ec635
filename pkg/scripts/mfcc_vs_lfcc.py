#!/usr/bin/env python3
"""Compare mel- vs linear-frequency cepstra on one synthetic corpus.

Builds a single corpus, runs feature extraction and pooling once per
filterbank kind, and prints the overall mean silhouette with its
bootstrap interval side by side.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from syllasep import analyze, parse_embeddings
from syllasep.cli import main as cli


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", default="mfcc_vs_lfcc_run")
    parser.add_argument("--classes", type=int, default=5)
    parser.add_argument("--counts", default="30,30,30,30,30")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--lda-dims", type=int, default=4)
    parser.add_argument("--bootstrap", type=int, default=200)
    args = parser.parse_args(argv)

    work = pathlib.Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)
    wav = work / "corpus.wav"
    ann = work / "annotations.csv"
    pre = work / "preprocessed.wav"

    for step in (
        ["synth", "--classes", str(args.classes), "--counts", args.counts,
         "--seed", str(args.seed), "--wav", str(wav), "--annotations", str(ann)],
        ["preprocess", "--input", str(wav), "--output", str(pre)],
    ):
        code = cli(step)
        if code != 0:
            print(f"step '{step[0]}' failed with exit code {code}", file=sys.stderr)
            return code

    print(f"{'features':<8} {'overall mean silhouette':>24} {'ci95':>20}")
    for kind in ("mfcc", "lfcc"):
        feats = work / f"{kind}.sylf"
        emb = work / f"{kind}_embeddings.csv"
        for step in (
            ["features", "--input", str(pre), "--kind", kind, "--output", str(feats)],
            ["pool", "--features", str(feats), "--annotations", str(ann),
             "--output", str(emb)],
        ):
            code = cli(step)
            if code != 0:
                print(f"step '{step[0]}' failed with exit code {code}", file=sys.stderr)
                return code
        embeddings = parse_embeddings(emb.read_text())
        result = analyze(embeddings, num_dims=args.lda_dims,
                         bootstrap_n=args.bootstrap, seed=args.seed)
        lo, hi = result.overall_ci
        print(f"{kind:<8} {result.overall_mean:>24.3f} {f'[{lo:.3f}, {hi:.3f}]':>20}")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
