"""Named root data shipped with the package (overridable with ENDOWB_CATALOG_DIR)."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import yaml

from .rootdatum import RootDatum, RootDatumError, build_root_datum

BUNDLED_DIR = Path(__file__).with_name("catalog")


class UnknownDatum(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    datum: RootDatum
    provenance: str = ""
    side: str = "group"
    aliases: tuple[str, ...] = field(default=())


def catalog_dir() -> Path:
    override = os.environ.get("ENDOWB_CATALOG_DIR")
    return Path(override) if override else BUNDLED_DIR


@lru_cache(maxsize=8)
def _load(directory: str) -> tuple[CatalogEntry, ...]:
    entries = []
    names: set[str] = set()
    for path in sorted(Path(directory).glob("*.yaml")):
        data = yaml.safe_load(path.read_text())
        try:
            datum = build_root_datum(data)
        except RootDatumError as exc:
            raise RootDatumError(f"{path.name}: {exc}") from exc
        entry = CatalogEntry(datum.name or path.stem, datum, str(data.get("provenance", "")),
                             str(data.get("side", "group")), tuple(data.get("aliases") or ()))
        for key in (entry.name,) + entry.aliases:
            if key in names:
                raise RootDatumError(f"duplicate catalog name {key!r}")
            names.add(key)
        entries.append(entry)
    return tuple(entries)


def load_catalog(directory: str | Path | None = None) -> list[CatalogEntry]:
    return list(_load(str(directory or catalog_dir())))


def catalog_names(directory=None) -> list[str]:
    return [e.name for e in load_catalog(directory)]


def get_entry(name: str, directory=None) -> CatalogEntry:
    for e in load_catalog(directory):
        if name == e.name or name in e.aliases:
            return e
    raise UnknownDatum(name)


def get_datum(name_or_path: str, directory=None) -> RootDatum:
    """Look up a catalog name or alias; fall back to reading a datum file."""
    try:
        return get_entry(name_or_path, directory).datum
    except UnknownDatum:
        path = Path(name_or_path)
        if path.is_file():
            return build_root_datum(yaml.safe_load(path.read_text()))
        raise
