import pytest
from hypothesis import given, strategies as st

from segmt.text import (
    PUNCTUATED,
    STRIPPED,
    BoundarySet,
    NormalizationPolicy,
    SegmentedDocument,
    detokenize,
    flatten,
    normalize,
    normalize_document,
    normalize_token,
    rebuild,
    tokenize,
)

tokens_st = st.text(
    alphabet=st.characters(blacklist_categories=("Z", "C")), min_size=1, max_size=6
)
segment_st = st.lists(tokens_st, min_size=1, max_size=5)
document_st = st.builds(SegmentedDocument, st.lists(segment_st, min_size=0, max_size=6))


def test_tokenize_basic():
    assert tokenize("the weather today") == ["the", "weather", "today"]


def test_tokenize_empty():
    assert tokenize("") == []
    assert tokenize("   \t\n") == []


def test_tokenize_whitespace_runs():
    assert tokenize("  a\tb  ") == ["a", "b"]


def test_detokenize_inverts_tokenize():
    seg = ["a", "b,", "c!"]
    assert tokenize(detokenize(seg)) == seg


def test_normalize_strips_and_lowercases():
    assert normalize(["Hello,", "World!"], STRIPPED) == ["hello", "world"]


def test_normalize_fixpoint():
    assert normalize(["hello", "world"], STRIPPED) == ["hello", "world"]


def test_normalize_drops_emptied_tokens():
    assert normalize(["...", "---"], STRIPPED) == []


def test_normalize_identity_policy():
    seg = ["Hello,", "World!"]
    assert normalize(seg, PUNCTUATED) == seg


def test_normalize_token_inner_punctuation():
    assert normalize_token("don't", STRIPPED) == "dont"


def test_normalize_token_symbols():
    # "$" is Unicode category Sc; stripped only when strip_symbols is set.
    assert normalize_token("$5", STRIPPED) == "5"
    keep_symbols = NormalizationPolicy(strip_punctuation=True, lowercase=True)
    assert normalize_token("$5", keep_symbols) == "$5"


def test_normalize_token_unicode_punctuation():
    assert normalize_token("“quoted”", STRIPPED) == "quoted"


@given(tokens_st)
def test_normalize_token_idempotent(token):
    once = normalize_token(token, STRIPPED)
    assert normalize_token(once, STRIPPED) == once


@given(segment_st)
def test_normalize_idempotent(segment):
    once = normalize(segment, STRIPPED)
    assert normalize(once, STRIPPED) == once


@given(segment_st)
def test_normalize_never_grows(segment):
    assert len(normalize(segment, STRIPPED)) <= len(segment)


def test_flatten_two_segments():
    tokens, bounds = flatten(SegmentedDocument([["a", "b"], ["c"]]))
    assert tokens == ["a", "b", "c"]
    assert bounds.positions == (1, 2)
    assert bounds.total_tokens == 3


def test_flatten_empty_document():
    tokens, bounds = flatten(SegmentedDocument([]))
    assert tokens == []
    assert bounds.positions == ()


def test_flatten_single_segment():
    tokens, bounds = flatten(SegmentedDocument([["a"]]))
    assert tokens == ["a"]
    assert bounds.positions == (0,)


def test_rebuild_inverts_flatten():
    doc = rebuild(["a", "b", "c"], BoundarySet((1, 2), 3))
    assert doc.segments == [["a", "b"], ["c"]]


def test_rebuild_implicit_final_boundary():
    assert rebuild(["a", "b"], []).segments == [["a", "b"]]


def test_rebuild_collapses_duplicates():
    assert rebuild(["a", "b"], [0, 0]).segments == [["a"], ["b"]]


def test_rebuild_out_of_range():
    with pytest.raises(ValueError):
        rebuild(["a", "b"], [2])


def test_rebuild_empty_tokens():
    assert rebuild([], []).segments == []


def test_boundary_set_rejects_out_of_range():
    with pytest.raises(ValueError):
        BoundarySet((3,), 3)
    with pytest.raises(ValueError):
        BoundarySet((-1,), 3)


def test_boundary_set_rejects_non_increasing():
    with pytest.raises(ValueError):
        BoundarySet((1, 1), 3)


def test_document_rejects_empty_segment():
    with pytest.raises(ValueError):
        SegmentedDocument([["a"], []])


def test_document_tokens_and_len():
    doc = SegmentedDocument([["a", "b"], ["c"]], doc_id="d1")
    assert doc.tokens() == ["a", "b", "c"]
    assert len(doc) == 2


@given(document_st)
def test_flatten_rebuild_round_trip(doc):
    tokens, bounds = flatten(doc)
    assert rebuild(tokens, bounds, doc_id=doc.doc_id) == doc


@given(document_st)
def test_flatten_preserves_token_count(doc):
    tokens, bounds = flatten(doc)
    assert len(tokens) == sum(len(seg) for seg in doc.segments)
    assert bounds.total_tokens == len(tokens)


def test_normalize_document_drops_empty_segments():
    doc = SegmentedDocument([["Hello,"], ["..."], ["World!"]], doc_id="d")
    out = normalize_document(doc, STRIPPED)
    assert out.segments == [["hello"], ["world"]]
    assert out.doc_id == "d"
