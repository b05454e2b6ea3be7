"""Email corpus ingestion: parsing, BCC isolation, recipient statistics.

Only the envelope matters here (sender plus the to/cc/bcc lists); message
bodies and subjects are never inspected. Two input formats are supported:

* ``csv``  — header ``message_id,timestamp,sender,to,cc,bcc``; recipient
  lists are ``;``-separated inside their field, RFC-4180 quoting.
* ``jsonl`` — one object per line, same field names, lists as arrays.

Malformed rows are skipped with a logged diagnostic instead of aborting:
multi-million-row corpora always contain junk rows.
"""

from __future__ import annotations

import csv
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .errors import UsageError

log = logging.getLogger(__name__)

CSV_HEADER = ("message_id", "timestamp", "sender", "to", "cc", "bcc")

#: Recipient-count cutoff separating broadcast-style mail from the small
#: personal emails the trust analysis runs on. Overridable via --threshold.
DEFAULT_RECIPIENT_THRESHOLD = 5


def normalize_address(address: str) -> str:
    """Lowercase, trim, and strip one pair of surrounding angle brackets."""
    address = address.strip()
    if address.startswith("<") and address.endswith(">"):
        address = address[1:-1].strip()
    return address.lower()


@dataclass(frozen=True)
class EmailRecord:
    """One parsed email envelope. Recipient lists keep duplicates; the
    per-list dedup happens in :func:`recipient_stats`."""

    message_id: str
    sender: str
    to: tuple[str, ...] = ()
    cc: tuple[str, ...] = ()
    bcc: tuple[str, ...] = ()
    timestamp: str | None = None

    def __post_init__(self):
        if not self.sender:
            raise ValueError("sender must be non-empty")
        for name in ("to", "cc", "bcc"):
            if any(not addr for addr in getattr(self, name)):
                raise ValueError(f"{name} list contains an empty address")


@dataclass(frozen=True)
class RecipientStats:
    total_recipients: int
    bcc_count: int
    bcc_ratio: float


@dataclass
class ParseResult:
    records: list[EmailRecord]
    skipped: list[tuple[int, str]] = field(default_factory=list)

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)


def parse_email_records(stream: IO[str], fmt: str) -> ParseResult:
    """Parse a record stream in the given format ("csv" or "jsonl").

    Malformed rows are reported with their line number in the result's
    ``skipped`` list (and logged) rather than raising.
    """
    if fmt == "csv":
        return _parse_csv(stream)
    if fmt == "jsonl":
        return _parse_jsonl(stream)
    raise UsageError(f"unknown input format {fmt!r} (expected 'csv' or 'jsonl')")


def _split_semicolon_list(raw: str) -> tuple[str, ...]:
    if not raw:
        return ()
    return tuple(normalize_address(part) for part in raw.split(";") if part.strip())


def _parse_csv(stream: IO[str]) -> ParseResult:
    result = ParseResult([])
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        return result
    if tuple(h.strip().lower() for h in header) != CSV_HEADER:
        raise UsageError(
            "csv header must be exactly " + ",".join(CSV_HEADER)
        )
    for row in reader:
        line = reader.line_num
        if len(row) != len(CSV_HEADER):
            _skip(result, line, f"expected {len(CSV_HEADER)} fields, got {len(row)}")
            continue
        message_id, timestamp, sender, to, cc, bcc = (f.strip() for f in row)
        sender = normalize_address(sender)
        if not sender:
            _skip(result, line, "empty sender")
            continue
        result.records.append(
            EmailRecord(
                message_id=message_id,
                sender=sender,
                to=_split_semicolon_list(to),
                cc=_split_semicolon_list(cc),
                bcc=_split_semicolon_list(bcc),
                timestamp=timestamp or None,
            )
        )
    return result


def _parse_jsonl(stream: IO[str]) -> ParseResult:
    result = ParseResult([])
    for line_num, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            _skip(result, line_num, f"invalid json: {exc.msg}")
            continue
        if not isinstance(obj, dict):
            _skip(result, line_num, "row is not an object")
            continue
        sender = obj.get("sender")
        if not isinstance(sender, str) or not normalize_address(sender):
            _skip(result, line_num, "missing or empty sender")
            continue
        lists: dict[str, tuple[str, ...]] = {}
        bad = None
        for name in ("to", "cc", "bcc"):
            value = obj.get(name, [])
            if not isinstance(value, list) or any(not isinstance(a, str) for a in value):
                bad = f"field {name!r} is not a list of strings"
                break
            lists[name] = tuple(
                normalize_address(a) for a in value if a.strip()
            )
        if bad:
            _skip(result, line_num, bad)
            continue
        timestamp = obj.get("timestamp")
        result.records.append(
            EmailRecord(
                message_id=str(obj.get("message_id", "")),
                sender=normalize_address(sender),
                to=lists["to"],
                cc=lists["cc"],
                bcc=lists["bcc"],
                timestamp=timestamp if isinstance(timestamp, str) and timestamp else None,
            )
        )
    return result


def _skip(result: ParseResult, line: int, reason: str) -> None:
    result.skipped.append((line, reason))
    log.warning("skipped row at line %d: %s", line, reason)


def recipient_stats(record: EmailRecord) -> RecipientStats:
    """Recipient counts after per-list, case-insensitive dedup.

    An address repeated inside one list counts once; the same address
    appearing in two different lists counts twice (it materialises in two
    headers).
    """
    to_n = len({normalize_address(a) for a in record.to})
    cc_n = len({normalize_address(a) for a in record.cc})
    bcc_n = len({normalize_address(a) for a in record.bcc})
    total = to_n + cc_n + bcc_n
    # bcc_count > 0 with total == 0 would mean the parser produced a bcc
    # entry it did not count; structurally impossible.
    assert not (total == 0 and bcc_n > 0), "recipient accounting bug"
    return RecipientStats(total, bcc_n, bcc_n / total if total else 0.0)


def filter_bcc_emails(records: Iterable[EmailRecord]) -> list[EmailRecord]:
    """The subsequence of records carrying at least one BCC recipient."""
    return [r for r in records if r.bcc]


def bcc_histogram(records: Iterable[EmailRecord]) -> dict[int, int]:
    """Frequency of each distinct BCC-recipient count."""
    return dict(Counter(recipient_stats(r).bcc_count for r in records))


def partition_by_recipient_count(
    records: Sequence[EmailRecord],
    threshold: int = DEFAULT_RECIPIENT_THRESHOLD,
) -> tuple[list[EmailRecord], list[EmailRecord]]:
    """Split into (at most ``threshold`` recipients, more than ``threshold``),
    both parts in input order."""
    at_most: list[EmailRecord] = []
    above: list[EmailRecord] = []
    for r in records:
        if recipient_stats(r).total_recipients <= threshold:
            at_most.append(r)
        else:
            above.append(r)
    return at_most, above


def select_k_bcc(
    records: Iterable[EmailRecord],
    k: int,
    threshold: int = DEFAULT_RECIPIENT_THRESHOLD,
) -> list[EmailRecord]:
    """Records with at most ``threshold`` total recipients of which exactly
    ``k`` were bcc-ed: the k-BCC email group."""
    if k < 1:
        raise UsageError("k must be >= 1: a 0-BCC trust edge is undefined")
    selected = []
    for r in records:
        stats = recipient_stats(r)
        if stats.total_recipients <= threshold and stats.bcc_count == k:
            selected.append(r)
    return selected
