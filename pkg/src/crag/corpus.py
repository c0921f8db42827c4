"""Corpus loading, fixed-window chunking, and glossary extraction.

Chunks are non-overlapping character windows: every document is covered
exactly, all chunks except a document's last have length ``chunk_len``, and
lengths count Unicode code points (Python string slicing), never bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, EncodingError, IntegrityError

DEFAULT_CHUNK_LEN = 500
ALT_CHUNK_LEN = 250


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    body: str


@dataclass(frozen=True)
class Chunk:
    chunk_id: int
    doc_id: str
    char_offset: int
    text: str


@dataclass
class SkippedLine:
    """One glossary line that failed to parse; kept for diagnostics."""

    source: str
    line_no: int
    line: str


@dataclass
class Glossary:
    """Abbreviation and term dictionaries plus parse diagnostics.

    ``skipped`` records malformed lines encountered while building the maps;
    parsing is never fatal.
    """

    abbreviations: dict[str, str] = field(default_factory=dict)
    terms: dict[str, str] = field(default_factory=dict)
    skipped: list[SkippedLine] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not self.abbreviations and not self.terms


def chunk_document(doc: Document, chunk_len: int, start_id: int = 0) -> list[Chunk]:
    """Split a document body into consecutive windows of ``chunk_len`` chars.

    Only the final chunk may be shorter. ``start_id`` is the chunk_id of the
    first chunk; corpus-level ingestion threads it through documents so ids
    stay dense and 0-based in document order then offset order.
    """
    if chunk_len < 1:
        raise ValueError(f"chunk_len must be >= 1, got {chunk_len}")
    body = doc.body
    return [
        Chunk(start_id + i, doc.doc_id, off, body[off : off + chunk_len])
        for i, off in enumerate(range(0, len(body), chunk_len))
    ]


def chunk_corpus(docs: list[Document], chunk_len: int) -> list[Chunk]:
    """Chunk every document, assigning dense chunk ids across the corpus."""
    chunks: list[Chunk] = []
    for doc in docs:
        chunks.extend(chunk_document(doc, chunk_len, start_id=len(chunks)))
    return chunks


def load_corpus_dir(path: str | Path) -> list[Document]:
    """Load all ``*.txt`` files of a directory; file stem becomes doc_id.

    Files are taken in sorted name order so ingestion is reproducible.
    """
    root = Path(path)
    if not root.is_dir():
        raise ConfigError(f"corpus directory not found: {root}")
    docs = []
    for txt in sorted(root.glob("*.txt")):
        try:
            body = txt.read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"{txt} is not valid UTF-8: {exc}") from exc
        docs.append(Document(doc_id=txt.stem, title=txt.stem, body=body))
    return docs


def load_corpus_jsonl(path: str | Path) -> list[Document]:
    """Load a JSON-lines corpus with fields doc_id, title, body."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"corpus file not found: {p}")
    docs = []
    try:
        raw = p.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{p} is not valid UTF-8: {exc}") from exc
    for line_no, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{p}:{line_no}: invalid JSON: {exc.msg}") from exc
        for key in ("doc_id", "title", "body"):
            if key not in obj:
                raise ConfigError(f"{p}:{line_no}: missing field {key!r}")
        docs.append(Document(doc_id=str(obj["doc_id"]), title=str(obj["title"]), body=str(obj["body"])))
    return docs


def load_corpus(path: str | Path) -> list[Document]:
    """Dispatch on path type: directory of .txt files or a .jsonl file."""
    p = Path(path)
    docs = load_corpus_dir(p) if p.is_dir() else load_corpus_jsonl(p)
    seen: set[str] = set()
    for doc in docs:
        if not doc.doc_id:
            raise IntegrityError("empty doc_id in corpus")
        if doc.doc_id in seen:
            raise IntegrityError(f"duplicate doc_id in corpus: {doc.doc_id!r}")
        seen.add(doc.doc_id)
    return docs


_HEADING_RE = re.compile(r"^\s*(definitions|abbreviations)\s*:?\s*$", re.IGNORECASE)


def _has_upper_or_digit(s: str) -> bool:
    return any(c.isupper() or c.isdigit() for c in s)


def _parse_entry(line: str) -> tuple[str, str] | None:
    """Parse 'KEY<TAB>value' or 'KEY: value'; None when malformed."""
    if "\t" in line:
        key, value = line.split("\t", 1)
    elif ":" in line:
        key, value = line.split(":", 1)
    else:
        return None
    key = key.strip()
    value = value.strip()
    if not key or not value:
        return None
    return key, value


def extract_glossary(docs: list[Document]) -> Glossary:
    """Scan documents for Definitions / Abbreviations sections.

    A heading is a line whose stripped text equals "Definitions" or
    "Abbreviations" (case-insensitive, optional trailing colon). The section
    body runs until the next heading or the first blank line after at least
    one candidate entry. Entries are "KEY: value" or tab-separated lines;
    anything else inside a section is skipped and recorded in the returned
    glossary's ``skipped`` list. Later documents override earlier ones on key
    collision, and within a document the last line wins.

    Abbreviation keys must contain at least one uppercase letter or digit;
    purely lowercase keys are treated as malformed.
    """
    glossary = Glossary()
    for doc in docs:
        section = None  # "definitions" | "abbreviations" | None
        entries_seen = False
        for line_no, line in enumerate(doc.body.splitlines(), start=1):
            heading = _HEADING_RE.match(line)
            if heading:
                section = heading.group(1).lower()
                entries_seen = False
                continue
            if section is None:
                continue
            if not line.strip():
                if entries_seen:
                    section = None
                continue
            entries_seen = True
            entry = _parse_entry(line)
            if entry is None:
                glossary.skipped.append(SkippedLine(doc.doc_id, line_no, line))
                continue
            key, value = entry
            if section == "abbreviations":
                if not _has_upper_or_digit(key):
                    glossary.skipped.append(SkippedLine(doc.doc_id, line_no, line))
                    continue
                glossary.abbreviations[key] = value
            else:
                glossary.terms[key] = value
    return glossary


def _parse_tsv(text: str, source: str, abbrev_rule: bool, out: dict[str, str], skipped: list[SkippedLine]) -> None:
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            skipped.append(SkippedLine(source, line_no, line))
            continue
        key, value = line.split("\t", 1)
        key = key.strip()
        value = value.strip()
        if not key or not value or (abbrev_rule and not _has_upper_or_digit(key)):
            skipped.append(SkippedLine(source, line_no, line))
            continue
        out[key] = value


def _read_utf8(path: Path) -> str:
    if not path.is_file():
        raise ConfigError(f"glossary file not found: {path}")
    try:
        return path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{path} is not valid UTF-8: {exc}") from exc


def load_glossary_files(abbrev_path: str | Path | None, terms_path: str | Path | None) -> Glossary:
    """Load externally curated glossaries from tab-separated files.

    Each line is ``key<TAB>value``; duplicate keys resolve to the last line.
    Either path may be None to skip that map.
    """
    glossary = Glossary()
    if abbrev_path is not None:
        text = _read_utf8(Path(abbrev_path))
        _parse_tsv(text, str(abbrev_path), True, glossary.abbreviations, glossary.skipped)
    if terms_path is not None:
        text = _read_utf8(Path(terms_path))
        _parse_tsv(text, str(terms_path), False, glossary.terms, glossary.skipped)
    return glossary


def glossary_to_tsv(mapping: dict[str, str]) -> str:
    """Serialize one glossary map as TSV in insertion order.

    Values parsed from single lines cannot contain newlines; tabs inside
    values survive a roundtrip because parsing splits on the first tab only.
    """
    return "".join(f"{k}\t{v}\n" for k, v in mapping.items())


def glossary_from_tsv(abbrev_text: str, terms_text: str) -> Glossary:
    """Inverse of glossary_to_tsv for the two embedded store blobs."""
    glossary = Glossary()
    _parse_tsv(abbrev_text, "<store>", True, glossary.abbreviations, glossary.skipped)
    _parse_tsv(terms_text, "<store>", False, glossary.terms, glossary.skipped)
    return glossary
