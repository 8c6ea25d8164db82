import pytest

from segmt.config import ConfigError, PipelineConfig, load_config

FULL_CONFIG = """
seed: 7
fixed_length: 25
mixture_augmented_fraction: 0.1
input_path: in.txt
output_path: out.txt
normalization:
  strip_punctuation: false
  lowercase: true
  strip_symbols: false
alignment:
  lowercase: false
  band_width: 50
pause_split:
  pause_threshold_sec: 0.8
  max_tokens: 70
augmentation:
  p_max: 0.25
  seed: 3
bleu:
  max_ngram_order: 3
  case_sensitive: false
  smoothing: add-one
noise:
  substitution_rate: 0.1
  deletion_rate: 0.05
  boundary_merge_rate: 0.2
  vocabulary: [x, y, z]
  seed: 9
"""


def write_config(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_load_full_config(tmp_path):
    cfg = load_config(write_config(tmp_path, FULL_CONFIG))
    assert cfg.seed == 7
    assert cfg.fixed_length == 25
    assert cfg.mixture_augmented_fraction == 0.1
    assert cfg.input_path == "in.txt"
    assert cfg.normalization.strip_punctuation is False
    assert cfg.normalization.lowercase is True
    assert cfg.alignment.normalize_for_alignment.lowercase is False
    # Unset alignment keys keep their defaults.
    assert cfg.alignment.normalize_for_alignment.strip_punctuation is True
    assert cfg.alignment.band_width == 50
    assert cfg.pause_split.pause_threshold_sec == 0.8
    assert cfg.pause_split.max_tokens == 70
    assert cfg.augmentation.p_max == 0.25
    assert cfg.augmentation.seed == 3
    assert cfg.bleu.max_ngram_order == 3
    assert cfg.bleu.smoothing == "add-one"
    assert cfg.noise.vocabulary == ("x", "y", "z")
    assert cfg.noise.seed == 9


def test_empty_config_gives_defaults(tmp_path):
    cfg = load_config(write_config(tmp_path, ""))
    assert cfg == PipelineConfig()


def test_defaults():
    cfg = PipelineConfig()
    assert cfg.seed == 0
    assert cfg.fixed_length == 10
    assert cfg.mixture_augmented_fraction == 0.2
    assert cfg.normalization.strip_punctuation is True
    assert cfg.pause_split.pause_threshold_sec == 1.0
    assert cfg.augmentation.p_max == 0.3
    assert cfg.bleu.max_ngram_order == 4
    assert cfg.bleu.case_sensitive is True


def test_top_level_must_be_mapping(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "- a\n- b\n"))


def test_unknown_top_level_key(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "sedd: 3\n"))


def test_unknown_section_key(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "bleu:\n  order: 4\n"))


def test_bad_section_value(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "bleu:\n  max_ngram_order: 0\n"))


def test_section_must_be_mapping(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "bleu: [1, 2]\n"))


def test_invalid_yaml(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "a: [unclosed\n"))


def test_null_section_gives_defaults(tmp_path):
    cfg = load_config(write_config(tmp_path, "bleu:\n"))
    assert cfg.bleu.max_ngram_order == 4
