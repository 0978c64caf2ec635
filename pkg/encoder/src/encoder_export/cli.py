"""Command-line front end for the exporter.

Exit codes: 0 success, 1 file or container errors, 2 bad parameters or
unresolvable models.
"""

from __future__ import annotations

import argparse
import sys

from .errors import FormatError, ModelResolutionError, ValidationError
from .export import ExportRequest, export_features
from .models import KNOWN_MODELS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="encoder-export",
        description="Export encoder hidden-state frames from a 16 kHz WAV as SYLF",
    )
    parser.add_argument("--input", required=True, help="16 kHz mono WAV path")
    parser.add_argument("--model", required=True,
                        help=f"model id ({', '.join(sorted(KNOWN_MODELS))}) or checkpoint path")
    parser.add_argument("--layer", type=int, default=12,
                        help="transformer layer to export (default: 12, the final layer)")
    parser.add_argument("--output", required=True, help="output SYLF path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        request = ExportRequest(input_wav=args.input, model_id=args.model,
                                output=args.output, layer=args.layer)
        export_features(request)
        return 0
    except (ValidationError, ModelResolutionError) as exc:
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
