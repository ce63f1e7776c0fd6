"""Ingestion of claims-style delimited files into canonical graphs.

Two inputs: a shared-activity file pairing provider identifiers with a
count, and a provider roster carrying state and specialty. Provider type
is derived from a configurable list of primary-care specialty strings;
everything else falls into the specialty bucket and is tallied so callers
can audit the mapping.
"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import EmptyNetworkError, ParseError, SchemaError
from .graph import Graph, NodeType

__all__ = [
    "DEFAULT_PRIMARY_SPECIALTIES",
    "IngestConfig",
    "load_ingest_config",
    "SharedPatientRecord",
    "ProviderRecord",
    "ProviderParseResult",
    "parse_shared_patient_file",
    "parse_provider_file",
    "build_state_graph",
]

DEFAULT_PRIMARY_SPECIALTIES = (
    "Family Practice",
    "Internal Medicine",
    "General Practice",
    "Geriatric Medicine",
    "Pediatric Medicine",
)


@dataclass(frozen=True)
class IngestConfig:
    """File format and mapping settings, loadable from a TOML file."""

    delimiter: str = ","
    npi_a_column: str = "npi_a"
    npi_b_column: str = "npi_b"
    count_column: str = "shared_count"
    npi_column: str = "npi"
    state_column: str = "state"
    specialty_column: str = "specialty"
    threshold: int = 1
    include_isolates: bool = False
    primary_specialties: tuple[str, ...] = DEFAULT_PRIMARY_SPECIALTIES

    def __post_init__(self):
        if self.threshold < 1:
            raise SchemaError(f"threshold must be at least 1, got {self.threshold}")
        if len(self.delimiter) != 1:
            raise SchemaError("delimiter must be a single character")

    def primary_lookup(self) -> frozenset[str]:
        return frozenset(s.strip().casefold() for s in self.primary_specialties)


def load_ingest_config(path: str | Path) -> IngestConfig:
    """Read an IngestConfig from a TOML file; keys mirror the field names
    and every key is optional."""
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    known = set(IngestConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise SchemaError(f"unknown ingest config keys: {sorted(unknown)}")
    if "primary_specialties" in raw:
        raw["primary_specialties"] = tuple(raw["primary_specialties"])
    return IngestConfig(**raw)


@dataclass(frozen=True)
class SharedPatientRecord:
    """One undirected provider pair with its shared activity count;
    npi_a < npi_b lexicographically."""

    npi_a: str
    npi_b: str
    shared_count: int


@dataclass(frozen=True)
class ProviderRecord:
    npi: str
    state: str
    specialty: str
    derived_type: NodeType


@dataclass(frozen=True)
class ProviderParseResult(Sequence):
    """Parsed roster plus a tally of specialty strings that fell through
    to the default bucket."""

    records: tuple[ProviderRecord, ...]
    unmapped_counts: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "unmapped_counts", dict(self.unmapped_counts))

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def __iter__(self) -> Iterator[ProviderRecord]:
        return iter(self.records)


def _header_indices(header: list[str], wanted: Sequence[str], path) -> list[int]:
    cleaned = [h.strip() for h in header]
    out = []
    for name in wanted:
        if name not in cleaned:
            raise SchemaError(f"{path}: missing column {name!r} (found {cleaned})")
        out.append(cleaned.index(name))
    return out


def parse_shared_patient_file(
    path: str | Path, config: IngestConfig | None = None
) -> list[SharedPatientRecord]:
    """Parse, canonicalize unordered pairs keeping the max count per pair,
    then drop pairs below the threshold. The result is sorted, so it does
    not depend on input row order.
    """
    cfg = config or IngestConfig()
    best: dict[tuple[str, str], int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=cfg.delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty") from None
        ia, ib, ic = _header_indices(
            header, (cfg.npi_a_column, cfg.npi_b_column, cfg.count_column), path
        )
        width = max(ia, ib, ic) + 1
        for row in reader:
            if not row or all(not f.strip() for f in row):
                continue
            line = reader.line_num
            if len(row) < width:
                raise ParseError(f"{path}: too few fields", line=line)
            a, b, raw_count = row[ia].strip(), row[ib].strip(), row[ic].strip()
            if not a or not b:
                raise ParseError(f"{path}: empty provider identifier", line=line)
            if a == b:
                raise ParseError(f"{path}: self-pair for provider {a!r}", line=line)
            try:
                count = int(raw_count)
            except ValueError:
                raise ParseError(
                    f"{path}: shared count {raw_count!r} is not an integer", line=line
                ) from None
            if count < 1:
                raise ParseError(f"{path}: shared count must be positive", line=line)
            key = (a, b) if a < b else (b, a)
            if count > best.get(key, 0):
                best[key] = count
    return [
        SharedPatientRecord(a, b, c)
        for (a, b), c in sorted(best.items())
        if c >= cfg.threshold
    ]


def parse_provider_file(
    path: str | Path, config: IngestConfig | None = None
) -> ProviderParseResult:
    """Parse the roster and derive each provider's type.

    Specialty strings are matched case-insensitively against the
    configured primary-care list; anything else maps to the specialty
    bucket and is counted in unmapped_counts.
    """
    cfg = config or IngestConfig()
    primary = cfg.primary_lookup()
    records: list[ProviderRecord] = []
    unmapped: dict[str, int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=cfg.delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty") from None
        ii, isx, isp = _header_indices(
            header, (cfg.npi_column, cfg.state_column, cfg.specialty_column), path
        )
        width = max(ii, isx, isp) + 1
        for row in reader:
            if not row or all(not f.strip() for f in row):
                continue
            line = reader.line_num
            if len(row) < width:
                raise ParseError(f"{path}: too few fields", line=line)
            npi, state = row[ii].strip(), row[isx].strip()
            specialty = row[isp].strip()
            if not npi or not state:
                raise SchemaError(f"{path}: line {line}: missing NPI or state")
            if specialty.casefold() in primary:
                derived = NodeType.PRIMARY
            else:
                derived = NodeType.SPECIALTY
                unmapped[specialty] = unmapped.get(specialty, 0) + 1
            records.append(ProviderRecord(npi, state.upper(), specialty, derived))
    return ProviderParseResult(tuple(records), unmapped)


def build_state_graph(
    shared: Iterable[SharedPatientRecord],
    providers: Iterable[ProviderRecord],
    state: str,
    include_isolates: bool = False,
) -> Graph:
    """Graph of one state's providers; edges need both endpoints in-state.

    Nodes are the providers that appear in a retained edge (plus isolated
    in-state providers when include_isolates is set), sorted by identifier.
    """
    state = state.strip().upper()
    roster: dict[str, ProviderRecord] = {}
    for rec in providers:
        if rec.state != state:
            continue
        seen = roster.get(rec.npi)
        if seen is not None and seen != rec:
            raise SchemaError(
                f"conflicting roster rows for provider {rec.npi!r} in {state}"
            )
        roster[rec.npi] = rec
    pairs = [
        (r.npi_a, r.npi_b) for r in shared if r.npi_a in roster and r.npi_b in roster
    ]
    if include_isolates:
        node_set = set(roster)
    else:
        node_set = {npi for pair in pairs for npi in pair}
    if not node_set:
        raise EmptyNetworkError(f"no qualifying providers for state {state!r}")
    ids = tuple(sorted(node_set))
    index = {npi: i for i, npi in enumerate(ids)}
    types = tuple(roster[npi].derived_type for npi in ids)
    edges = [(index[a], index[b]) for a, b in pairs]
    return Graph.build(ids, edges, node_type=types)
