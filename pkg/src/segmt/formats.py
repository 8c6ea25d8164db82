"""File formats: documents, timed transcripts, bitext, and reports.

Documents
    UTF-8 text; one segment per line (tokens separated by spaces); a blank
    line separates documents.  Runs of blank lines count as one separator.

Timed transcripts
    JSON Lines; one document per line, shaped as
    ``{"doc_id": str, "words": [{"text": str, "start": sec, "end": sec}]}``.

Bitext
    Tab-separated ``source<TAB>target`` token lines; a blank line separates
    documents (adjacency within a document drives augmentation pairing).

Reports
    JSON Lines records with a ``"type"`` discriminator, plus human-readable
    tables rendered by the CLI.

All readers raise :class:`ParseError` with a file/line diagnostic on
malformed input.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from .augment import BitextPair
from .bleu import BleuReport
from .evaluate import LengthBucketReport
from .segment import TimedTranscript, TimedWord
from .text import SegmentedDocument

PathLike = Union[str, Path]


class ParseError(Exception):
    """Malformed input file."""

    def __init__(self, path: PathLike, line: Optional[int], message: str):
        self.path = str(path)
        self.line = line
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


def read_documents(path: PathLike) -> List[SegmentedDocument]:
    """Read a document file; doc ids are assigned as doc0, doc1, ..."""
    blocks: List[List[List[str]]] = []
    current: List[List[str]] = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            tokens = line.split()
            if tokens:
                current.append(tokens)
            elif current:
                blocks.append(current)
                current = []
    if current:
        blocks.append(current)
    return [SegmentedDocument(block, doc_id=f"doc{i}") for i, block in enumerate(blocks)]


def write_documents(path: PathLike, docs: Sequence[SegmentedDocument]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for i, doc in enumerate(docs):
            if i:
                handle.write("\n")
            for seg in doc.segments:
                handle.write(" ".join(seg) + "\n")


def read_transcripts(path: PathLike) -> List[TimedTranscript]:
    transcripts = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise ParseError(path, lineno, f"invalid JSON: {err.msg}") from err
            if not isinstance(record, dict) or "words" not in record:
                raise ParseError(path, lineno, "expected an object with a 'words' list")
            words = []
            for i, item in enumerate(record["words"]):
                try:
                    words.append(
                        TimedWord(
                            text=str(item["text"]),
                            start=float(item["start"]),
                            end=float(item["end"]),
                        )
                    )
                except (KeyError, TypeError, ValueError) as err:
                    raise ParseError(
                        path, lineno, f"word {i} needs text/start/end fields: {err}"
                    ) from err
            try:
                transcripts.append(
                    TimedTranscript(words, doc_id=str(record.get("doc_id", f"doc{lineno}")))
                )
            except ValueError as err:
                raise ParseError(path, lineno, str(err)) from err
    return transcripts


def write_transcripts(path: PathLike, transcripts: Sequence[TimedTranscript]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for t in transcripts:
            record = {
                "doc_id": t.doc_id,
                "words": [{"text": w.text, "start": w.start, "end": w.end} for w in t.words],
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_bitext(path: PathLike, origin: str = "") -> List[List[BitextPair]]:
    """Read a bitext file as a list of documents (lists of pairs)."""
    blocks: List[List[BitextPair]] = []
    current: List[BitextPair] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip():
                if current:
                    blocks.append(current)
                    current = []
                continue
            fields = stripped.split("\t")
            if len(fields) != 2:
                raise ParseError(
                    path, lineno, f"expected 'source<TAB>target', got {len(fields)} fields"
                )
            source, target = fields[0].split(), fields[1].split()
            if not source or not target:
                raise ParseError(path, lineno, "empty source or target side")
            current.append(BitextPair(source, target, origin=origin))
    if current:
        blocks.append(current)
    return blocks


def write_bitext(path: PathLike, blocks: Sequence[Sequence[BitextPair]]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for i, block in enumerate(blocks):
            if i:
                handle.write("\n")
            for pair in block:
                handle.write(" ".join(pair.source) + "\t" + " ".join(pair.target) + "\n")


def bleu_record(report: BleuReport) -> Dict:
    return {
        "type": "bleu",
        "score": report.score,
        "precisions": report.ngram_precisions,
        "brevity_penalty": report.brevity_penalty,
        "hyp_len": report.hyp_len,
        "ref_len": report.ref_len,
    }


def wer_record(rate: float, errors: int, ref_len: int) -> Dict:
    return {"type": "wer", "wer": rate, "errors": errors, "ref_len": ref_len}


def bucket_records(report: LengthBucketReport) -> List[Dict]:
    return [
        {
            "type": "bucket",
            "lower": b.lower,
            "upper": b.upper,
            "mean_bleu": b.mean_score,
            "count": b.count,
        }
        for b in report.buckets
    ]


def write_records(path: PathLike, records: Sequence[Dict]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
