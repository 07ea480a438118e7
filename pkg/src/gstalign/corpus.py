"""Sequence sets: file loaders and synthetic message generators.

Messages are byte strings over the full 0..255 alphabet.  Text and binary
protocols are handled uniformly; hex mode is the lossless transport for
traces that contain line terminators.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass


class CorpusError(ValueError):
    """Raised for unreadable, malformed or empty inputs."""


@dataclass(frozen=True)
class Sequence:
    """One message: an immutable byte string plus its corpus index.

    The index doubles as the sequence's colour in the suffix tree.
    """

    id: int
    data: bytes

    def __post_init__(self):
        if len(self.data) == 0:
            raise CorpusError(f"sequence {self.id} is empty")

    @property
    def length(self) -> int:
        return len(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def hex(self) -> str:
        return self.data.hex()


@dataclass(frozen=True)
class Corpus:
    sequences: tuple[Sequence, ...]
    source: str = ""

    def __post_init__(self):
        for i, s in enumerate(self.sequences):
            if s.id != i:
                raise CorpusError(f"sequence id {s.id} at position {i}")

    @property
    def n(self) -> int:
        return len(self.sequences)

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)

    def __getitem__(self, i: int) -> Sequence:
        return self.sequences[i]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sequences)

    def byte_seqs(self) -> list[bytes]:
        return [s.data for s in self.sequences]

    def require(self, min_sequences: int) -> None:
        if self.n < min_sequences:
            raise CorpusError(
                f"need at least {min_sequences} sequences, corpus has {self.n}"
            )


def from_bytes(items: list[bytes], source: str = "<memory>") -> Corpus:
    return Corpus(tuple(Sequence(i, bytes(b)) for i, b in enumerate(items)), source)


_HEX_DIGITS = frozenset(string.hexdigits.encode())


def load_lines(path, mode: str = "raw") -> Corpus:
    """Load one message per non-empty line.

    raw mode takes the line's bytes verbatim (``\\n`` / ``\\r\\n`` stripped);
    hex mode decodes pairs of hex digits.  Raw mode cannot represent
    messages that contain line terminators.
    """
    if mode not in ("raw", "hex"):
        raise CorpusError(f"unknown line mode {mode!r}")
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    out: list[bytes] = []
    for lineno, line in enumerate(blob.split(b"\n"), start=1):
        line = line.rstrip(b"\r")
        if not line:
            continue
        if mode == "hex":
            if len(line) % 2 or any(c not in _HEX_DIGITS for c in line):
                raise CorpusError(f"{path}: line {lineno}: not an even-length hex string")
            line = bytes.fromhex(line.decode("ascii"))
        out.append(line)
    if not out:
        raise CorpusError(f"{path}: no messages found")
    return from_bytes(out, source=f"{path} ({mode})")


def take_prefix(corpus: Corpus, n: int) -> Corpus:
    """First n sequences of the corpus, ids unchanged (0..n-1)."""
    if not 1 <= n <= corpus.n:
        raise CorpusError(f"prefix size {n} out of range 1..{corpus.n}")
    return Corpus(corpus.sequences[:n], source=f"{corpus.source}[:{n}]")


def load_fasta(path, truncate: int | None = None) -> Corpus:
    """Load FASTA records ('>' headers, sequence lines concatenated).

    ``truncate`` limits each record to its first that-many symbols.
    """
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    records: list[bytes] = []
    cur: list[bytes] | None = None
    for lineno, line in enumerate(blob.split(b"\n"), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(b">"):
            if cur is not None:
                records.append(b"".join(cur))
            cur = []
        else:
            if cur is None:
                raise CorpusError(f"{path}: line {lineno}: sequence data before first header")
            cur.append(line)
    if cur is not None:
        records.append(b"".join(cur))
    if not records:
        raise CorpusError(f"{path}: no FASTA records found")
    if truncate is not None:
        records = [r[:truncate] for r in records]
    for i, r in enumerate(records):
        if not r:
            raise CorpusError(f"{path}: record {i} has no symbols")
    return from_bytes(records, source=f"{path} (fasta)")


# Synthetic templates.  Field names and name lists are fixed constants: the
# generators only need a realistic structure-plus-payload mix, not a
# faithful protocol imitation.

_SURNAMES = [
    "Nguyen", "Garcia", "Okafor", "Ivanov", "Chen", "Patel", "Muller",
    "Santos", "Kowalski", "Haddad", "Larsen", "Takeda", "Moreau", "Byrne",
]
_GIVEN = [
    "Ana", "Tomas", "Priya", "Jonas", "Mei", "Sofia", "Ravi", "Elena",
    "Marco", "Aisha", "Lukas", "Nora",
]
_ALNUM = (string.ascii_letters + string.digits).encode()
_PAD_WIDTH = 10  # fixed-width field size for the fixed_width template


def generate_synthetic(template: str, n: int, seed: int) -> Corpus:
    """Deterministic synthetic corpora: 'ldap_like' or 'fixed_width'."""
    if n < 2:
        raise CorpusError("synthetic corpora need n >= 2")
    rng = random.Random(seed)
    if template == "ldap_like":
        # one operation letter per corpus: a corpus models one cluster
        op = rng.choice(string.ascii_uppercase)
        items = [_ldap_like_message(rng, op) for _ in range(n)]
    elif template == "fixed_width":
        items = [_fixed_width_record(rng) for _ in range(n)]
    else:
        raise CorpusError(f"unknown template {template!r}")
    return from_bytes(items, source=f"synthetic:{template}:n={n}:seed={seed}")


def _ldap_like_message(rng: random.Random, op: str) -> bytes:
    sn = rng.choice(_SURNAMES)
    gn = rng.choice(_GIVEN)
    ident = rng.randint(1, 99999)
    uid = "".join(rng.choice("0123456789abcdef") for _ in range(8))
    payload = bytes(rng.choice(_ALNUM) for _ in range(rng.randint(100, 160)))
    msg = (
        f"{{id:{ident},op:{op},sn:{sn},gn:{gn},"
        f"mail:{gn.lower()}.{sn.lower()}@example.org,"
        f"dn:cn={gn} {sn},ou=people,dc=example,dc=org,"
        f"uid:{uid},desc:".encode()
        + payload
        + b"}"
    )
    return msg


def _fixed_width_record(rng: random.Random) -> bytes:
    # surname / given name padded to _PAD_WIDTH, then a 3-digit area code,
    # a fixed run of 7 spaces and a 5-digit number: every record is the
    # same length and the 7-space run is the longest guaranteed common run
    sn = rng.choice(_SURNAMES)[: _PAD_WIDTH - 1]
    gn = rng.choice(_GIVEN)[: _PAD_WIDTH - 1]
    area = rng.randint(100, 999)
    phone = rng.randint(10000, 99999)
    rec = f"{sn:<{_PAD_WIDTH}}{gn:<{_PAD_WIDTH}}{area}{'':7}{phone}"
    return rec.encode()
