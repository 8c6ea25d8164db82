import math

import pytest

from segmt.augment import (
    AugmentationConfig,
    BitextPair,
    MixtureSpec,
    augment_corpus,
    augment_pair,
    build_training_mixture,
)


def pair(src, tgt, origin=""):
    return BitextPair(list(src), list(tgt), origin=origin)


def indexed_pairs(count, width=4, origin=""):
    """Pairs whose tokens encode (pair index, position) for provenance checks."""
    return [
        pair([f"s{i}.{j}" for j in range(width)], [f"t{i}.{j}" for j in range(width)], origin)
        for i in range(count)
    ]


def test_augment_pair_zero_p():
    first = pair(["a", "b"], ["x", "y"], origin="c1")
    second = pair(["c", "d"], ["z", "w"])
    out = augment_pair(first, second, 0.0)
    assert out.source == first.source
    assert out.target == first.target
    assert out.origin == "c1"


def test_augment_pair_proportional_truncation():
    first = pair([f"a{i}" for i in range(10)], ["t1"] * 4)
    second = pair([f"b{i}" for i in range(10)], ["t2"] * 4)
    out = augment_pair(first, second, 0.3)
    # ceil(0.3 * 10) = 3: drop 3 leading tokens of S1, keep 3 of S2.
    assert out.source == [f"a{i}" for i in range(3, 10)] + ["b0", "b1", "b2"]
    assert len(out.source) == 10
    # ceil(0.3 * 4) = 2 on the 4-token targets.
    assert out.target == ["t1", "t1"] + ["t2", "t2"]


def test_augment_pair_ceiling():
    first = pair([f"a{i}" for i in range(7)], ["t"] * 7)
    second = pair(["b"] * 7, ["u"] * 7)
    out = augment_pair(first, second, 0.25)
    # ceil(0.25 * 7) = ceil(1.75) = 2 tokens dropped from the front.
    assert out.source[: 7 - 2] == [f"a{i}" for i in range(2, 7)]


def test_augment_pair_rejects_negative_p():
    with pytest.raises(ValueError):
        augment_pair(pair(["a"], ["b"]), pair(["c"], ["d"]), -0.1)


def test_augment_pair_full_truncation_keeps_sides_non_empty():
    # p = 1 drops all of S1 and keeps all of S2.
    first = pair(["a", "b"], ["x"])
    second = pair(["c"], ["y", "z"])
    out = augment_pair(first, second, 1.0)
    assert out.source == ["c"]
    assert out.target == ["y", "z"]


def test_augment_corpus_pairing_counts():
    cfg = AugmentationConfig(p_max=0.3, seed=11)
    assert len(augment_corpus(indexed_pairs(4), cfg).pairs) == 2
    result = augment_corpus(indexed_pairs(5), cfg)
    assert len(result.pairs) == 3
    assert result.pairs[-1] == indexed_pairs(5)[-1]  # trailing passthrough
    assert result.skipped == 0


def test_augment_corpus_deterministic():
    cfg = AugmentationConfig(p_max=0.3, seed=42)
    pairs = indexed_pairs(40)
    first = augment_corpus(pairs, cfg)
    second = augment_corpus(pairs, cfg)
    assert first == second


def test_augment_corpus_seed_changes_output():
    pairs = indexed_pairs(40, width=12)
    a = augment_corpus(pairs, AugmentationConfig(seed=1)).pairs
    b = augment_corpus(pairs, AugmentationConfig(seed=2)).pairs
    assert a != b


def test_augment_corpus_chunked_offsets_match_whole():
    pairs = indexed_pairs(12)
    cfg = AugmentationConfig(p_max=0.3, seed=9)
    whole = augment_corpus(pairs, cfg).pairs
    chunked = (
        augment_corpus(pairs[:6], cfg, index_offset=0).pairs
        + augment_corpus(pairs[6:], cfg, index_offset=6).pairs
    )
    assert chunked == whole


def test_augment_corpus_output_structure():
    width = 9
    pairs = indexed_pairs(200, width=width)
    cfg = AugmentationConfig(p_max=0.3, seed=3)
    cap = math.ceil(cfg.p_max * width)
    for out in augment_corpus(pairs, cfg).pairs:
        # Tokens encode their pair index, so the S1/S2 split is recoverable.
        i = int(out.source[0][1:].split(".")[0])
        split = sum(1 for tok in out.source if tok.startswith(f"s{i}."))
        # Source is a contiguous suffix of S1 followed by a prefix of S2.
        assert out.source[:split] == [f"s{i}.{j}" for j in range(width - split, width)]
        assert out.source[split:] == [f"s{i + 1}.{j}" for j in range(len(out.source) - split)]
        assert width - split <= cap
        assert len(out.source) - split <= cap


def test_augmentation_config_validation():
    with pytest.raises(ValueError):
        AugmentationConfig(p_max=0.0)
    with pytest.raises(ValueError):
        AugmentationConfig(p_max=1.5)


def test_bitext_pair_rejects_empty_sides():
    with pytest.raises(ValueError):
        BitextPair([], ["a"])
    with pytest.raises(ValueError):
        BitextPair(["a"], [])


def test_mixture_spec_validation():
    with pytest.raises(ValueError):
        MixtureSpec(corpus_weights={})
    with pytest.raises(ValueError):
        MixtureSpec(corpus_weights={"a": 0.5})
    with pytest.raises(ValueError):
        MixtureSpec(corpus_weights={"a": 1.5, "b": -0.5})
    with pytest.raises(ValueError):
        MixtureSpec(corpus_weights={"a": 1.0}, augmented_fraction=1.2)


def test_mixture_degenerate_weights():
    originals = indexed_pairs(5, origin="A")
    spec = MixtureSpec(corpus_weights={"A": 1.0}, augmented_fraction=0.0, seed=5)
    out = build_training_mixture({"A": (originals, [])}, spec, 50)
    assert len(out) == 50
    assert all(p in originals for p in out)


def test_mixture_deterministic():
    corpora = {
        "A": (indexed_pairs(10, origin="A"), indexed_pairs(4, origin="A")),
        "B": (indexed_pairs(10, origin="B"), indexed_pairs(4, origin="B")),
    }
    spec = MixtureSpec(corpus_weights={"A": 0.7, "B": 0.3}, augmented_fraction=0.2, seed=8)
    assert build_training_mixture(corpora, spec, 100) == build_training_mixture(
        corpora, spec, 100
    )


def test_mixture_unknown_corpus():
    spec = MixtureSpec(corpus_weights={"missing": 1.0})
    with pytest.raises(ValueError):
        build_training_mixture({"A": (indexed_pairs(2), indexed_pairs(2))}, spec, 1)


def test_mixture_empty_pools_rejected():
    spec = MixtureSpec(corpus_weights={"A": 1.0}, augmented_fraction=0.2)
    with pytest.raises(ValueError):
        build_training_mixture({"A": ([], indexed_pairs(2))}, spec, 1)
    with pytest.raises(ValueError):
        build_training_mixture({"A": (indexed_pairs(2), [])}, spec, 1)


def test_mixture_zero_total():
    spec = MixtureSpec(corpus_weights={"A": 1.0}, augmented_fraction=0.0)
    assert build_training_mixture({"A": (indexed_pairs(2), [])}, spec, 0) == []
