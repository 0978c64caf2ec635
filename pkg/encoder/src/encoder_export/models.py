"""Encoder registry and deterministic model loading.

Aliases cover the two supported architectures. The "-untrained"
variants build the base configuration with a fixed init seed, so they
run offline and produce identical weights in every process; they stand
in for pretrained checkpoints wherever only the interface matters.
Any identifier not in the registry is treated as a checkpoint path or
hub id and handed to transformers directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch

from .errors import ModelResolutionError

# alias -> (family, checkpoint id or None for seeded untrained init)
KNOWN_MODELS = {
    "aves-bio-base": ("hubert", "earthspecies/aves-base-bio"),
    "hubert-base": ("hubert", "facebook/hubert-base-ls960"),
    "wav2vec2-base": ("wav2vec2", "facebook/wav2vec2-base"),
    "hubert-base-untrained": ("hubert", None),
    "wav2vec2-base-untrained": ("wav2vec2", None),
}

UNTRAINED_INIT_SEED = 0

_cache: dict[str, "LoadedEncoder"] = {}


@dataclass
class LoadedEncoder:
    model_id: str
    model: torch.nn.Module
    num_layers: int


def _build_untrained(family: str) -> torch.nn.Module:
    from transformers import HubertConfig, HubertModel, Wav2Vec2Config, Wav2Vec2Model

    torch.manual_seed(UNTRAINED_INIT_SEED)
    if family == "hubert":
        return HubertModel(HubertConfig())
    return Wav2Vec2Model(Wav2Vec2Config())


def _load_pretrained(checkpoint: str) -> torch.nn.Module:
    from transformers import AutoModel

    try:
        return AutoModel.from_pretrained(checkpoint)
    except (OSError, ValueError) as exc:
        raise ModelResolutionError(
            f"cannot load weights for {checkpoint!r}: {exc}"
        ) from exc


def load_encoder(model_id: str) -> LoadedEncoder:
    """Resolve and load an encoder, one instance per process."""
    if model_id in _cache:
        return _cache[model_id]

    torch.set_num_threads(1)  # single-threaded CPU inference is bitwise-stable
    if model_id in KNOWN_MODELS:
        family, checkpoint = KNOWN_MODELS[model_id]
        model = _build_untrained(family) if checkpoint is None else _load_pretrained(checkpoint)
    elif "/" in model_id or model_id.startswith("."):
        model = _load_pretrained(model_id)
    else:
        known = ", ".join(sorted(KNOWN_MODELS))
        raise ModelResolutionError(f"unknown model {model_id!r}; known models: {known}")

    model.eval()
    num_layers = int(model.config.num_hidden_layers)
    loaded = LoadedEncoder(model_id=model_id, model=model, num_layers=num_layers)
    _cache[model_id] = loaded
    return loaded
