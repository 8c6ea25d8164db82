"""Pipeline configuration: one YAML file that sets defaults for every knob.

Command-line flags override config values, which override the built-in
defaults.  Unknown keys are rejected so typos fail loudly.  The default
config path can be set through the ``SEGMT_CONFIG`` environment variable
and overridden with ``--config``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import yaml

from .align import AlignmentConfig
from .augment import AugmentationConfig
from .bleu import BleuConfig
from .noise import NoiseConfig
from .segment import PauseSplitConfig
from .text import NormalizationPolicy

ENV_CONFIG_PATH = "SEGMT_CONFIG"


class ConfigError(Exception):
    """Invalid configuration file."""


@dataclass
class PipelineConfig:
    seed: int = 0
    normalization: NormalizationPolicy = NormalizationPolicy(
        strip_punctuation=True, lowercase=True, strip_symbols=True
    )
    alignment: AlignmentConfig = AlignmentConfig()
    pause_split: PauseSplitConfig = PauseSplitConfig()
    fixed_length: int = 10
    augmentation: AugmentationConfig = AugmentationConfig()
    mixture_augmented_fraction: float = 0.2
    bleu: BleuConfig = BleuConfig()
    noise: NoiseConfig = NoiseConfig()
    input_path: Optional[str] = None
    output_path: Optional[str] = None


_SECTION_BUILDERS = {
    "normalization": (
        NormalizationPolicy,
        {"strip_punctuation", "lowercase", "strip_symbols"},
    ),
    "pause_split": (PauseSplitConfig, {"pause_threshold_sec", "max_tokens"}),
    "augmentation": (AugmentationConfig, {"p_max", "seed"}),
    "bleu": (BleuConfig, {"max_ngram_order", "case_sensitive", "smoothing"}),
    "noise": (
        NoiseConfig,
        {
            "substitution_rate",
            "deletion_rate",
            "insertion_rate",
            "boundary_merge_rate",
            "boundary_split_rate",
            "vocabulary",
            "seed",
        },
    ),
}

_SCALAR_KEYS = {"seed", "fixed_length", "mixture_augmented_fraction", "input_path", "output_path"}


def _build_section(name: str, data: dict):
    cls, allowed = _SECTION_BUILDERS[name]
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in section {name!r}: {sorted(unknown)}")
    if name == "noise" and "vocabulary" in data:
        data = dict(data, vocabulary=tuple(data["vocabulary"]))
    try:
        return cls(**data)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"invalid section {name!r}: {err}") from err


def _build_alignment(data: dict) -> AlignmentConfig:
    allowed = {"lowercase", "strip_punctuation", "strip_symbols", "band_width"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in section 'alignment': {sorted(unknown)}")
    policy_kwargs = {k: data[k] for k in ("lowercase", "strip_punctuation", "strip_symbols") if k in data}
    base = AlignmentConfig()
    policy = base.normalize_for_alignment
    if policy_kwargs:
        merged = {
            "strip_punctuation": policy.strip_punctuation,
            "lowercase": policy.lowercase,
            "strip_symbols": policy.strip_symbols,
        }
        merged.update(policy_kwargs)
        policy = NormalizationPolicy(**merged)
    try:
        return AlignmentConfig(
            normalize_for_alignment=policy,
            band_width=data.get("band_width"),
        )
    except ValueError as err:
        raise ConfigError(f"invalid section 'alignment': {err}") from err


def load_config(path) -> PipelineConfig:
    """Load a PipelineConfig from a YAML file."""
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except yaml.YAMLError as err:
        raise ConfigError(f"{path}: invalid YAML: {err}") from err
    if raw is None:
        return PipelineConfig()
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")

    known = _SCALAR_KEYS | set(_SECTION_BUILDERS) | {"alignment"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"{path}: unknown keys: {sorted(unknown)}")

    kwargs = {}
    for key in _SCALAR_KEYS & set(raw):
        kwargs[key] = raw[key]
    for name in set(_SECTION_BUILDERS) & set(raw):
        section = raw[name] or {}
        if not isinstance(section, dict):
            raise ConfigError(f"{path}: section {name!r} must be a mapping")
        kwargs[name] = _build_section(name, section)
    if "alignment" in raw:
        section = raw["alignment"] or {}
        if not isinstance(section, dict):
            raise ConfigError(f"{path}: section 'alignment' must be a mapping")
        kwargs["alignment"] = _build_alignment(section)
    try:
        return PipelineConfig(**kwargs)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"{path}: {err}") from err
