"""Allocation accounting: node counts by kind, environment items and bytes.

Counting happens in the core (``Meter``); this module turns counters into
immutable reports and applies the byte model.  The byte model charges every
node and environment item a fixed number of machine words:

    Const, FreeVar, BoundIdx, Lam, Indirection   2 words
    App                                          3 words
    Susp                                         5 words
    Dummy                                        2 words
    Binding                                      3 words

with 8-byte words.  Override any of these with ``LAMRED_BYTE_MODEL``, e.g.
``LAMRED_BYTE_MODEL="word=4,Susp=4"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from lamred.terms import KIND_NAMES, Meter

__all__ = [
    "Meter", "ByteModel", "MeterReport", "NODE_KINDS", "ENV_KINDS",
    "record_alloc", "report", "combine",
]

NODE_KINDS = KIND_NAMES
ENV_KINDS = ("Dummy", "Binding")

_DEFAULT_WORDS = {
    "Const": 2, "FreeVar": 2, "BoundIdx": 2, "Lam": 2, "Indirection": 2,
    "App": 3, "Susp": 5, "Dummy": 2, "Binding": 3,
}


@dataclass(frozen=True)
class ByteModel:
    word: int = 8
    words: Mapping[str, int] = field(default_factory=lambda: MappingProxyType(dict(_DEFAULT_WORDS)))

    @classmethod
    def parse(cls, spec: str) -> "ByteModel":
        word = 8
        words = dict(_DEFAULT_WORDS)
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, value = part.partition("=")
            key = key.strip()
            if not sep or not value.strip().isdigit():
                raise ValueError("bad byte model entry %r" % part)
            if key == "word":
                word = int(value)
            elif key in words:
                words[key] = int(value)
            else:
                raise ValueError("unknown kind %r in byte model" % key)
        return cls(word, MappingProxyType(words))

    @classmethod
    def from_env(cls) -> "ByteModel":
        return cls.parse(os.environ.get("LAMRED_BYTE_MODEL", ""))

    def size(self, kind: str) -> int:
        return self.word * self.words[kind]

    def to_json(self) -> dict:
        return {"word": self.word, "words": {k: self.words[k] for k in NODE_KINDS + ENV_KINDS}}

    def describe(self) -> str:
        sizes = " ".join("%s=%d" % (k, self.words[k]) for k in NODE_KINDS + ENV_KINDS)
        return "word=%d bytes; words per kind: %s" % (self.word, sizes)


@dataclass(frozen=True)
class MeterReport:
    nodes_by_kind: Mapping[str, int]
    env_by_kind: Mapping[str, int]
    beta_steps: int
    reading_steps: int
    byte_model: ByteModel

    @property
    def total_nodes(self) -> int:
        return sum(self.nodes_by_kind.values())

    @property
    def env_items(self) -> int:
        return sum(self.env_by_kind.values())

    @property
    def total_bytes(self) -> int:
        bm = self.byte_model
        return (sum(n * bm.size(k) for k, n in self.nodes_by_kind.items())
                + sum(n * bm.size(k) for k, n in self.env_by_kind.items()))

    def to_json(self) -> dict:
        return {
            "nodes_by_kind": {k: self.nodes_by_kind[k] for k in NODE_KINDS},
            "env_by_kind": {k: self.env_by_kind[k] for k in ENV_KINDS},
            "env_items": self.env_items,
            "total_nodes": self.total_nodes,
            "total_bytes": self.total_bytes,
            "beta_steps": self.beta_steps,
            "reading_steps": self.reading_steps,
        }


def record_alloc(m: Meter, kind: str) -> None:
    """Count one fresh node or environment item of ``kind``."""
    if kind == "Dummy":
        m.dummies += 1
    elif kind == "Binding":
        m.bindings += 1
    else:
        m.record(NODE_KINDS.index(kind))


def report(m: Meter, byte_model: ByteModel | None = None) -> MeterReport:
    counts = m.node_counts()
    return MeterReport(
        nodes_by_kind=MappingProxyType(dict(zip(NODE_KINDS, counts))),
        env_by_kind=MappingProxyType({"Dummy": m.dummies, "Binding": m.bindings}),
        beta_steps=m.beta_steps,
        reading_steps=m.reading_steps,
        byte_model=byte_model if byte_model is not None else ByteModel.from_env(),
    )


def combine(reports, byte_model: ByteModel | None = None) -> MeterReport:
    """Sum several reports; the byte model of the first wins unless given."""
    reports = list(reports)
    if byte_model is None:
        byte_model = reports[0].byte_model if reports else ByteModel.from_env()
    nodes = {k: sum(r.nodes_by_kind[k] for r in reports) for k in NODE_KINDS}
    env = {k: sum(r.env_by_kind[k] for r in reports) for k in ENV_KINDS}
    return MeterReport(
        nodes_by_kind=MappingProxyType(nodes),
        env_by_kind=MappingProxyType(env),
        beta_steps=sum(r.beta_steps for r in reports),
        reading_steps=sum(r.reading_steps for r in reports),
        byte_model=byte_model,
    )

