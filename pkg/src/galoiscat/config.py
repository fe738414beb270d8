"""Size caps. ``GALOIS_CAP`` overrides them, e.g. ``GALOIS_CAP=96`` (group cap
only) or ``GALOIS_CAP=group=96,objects=80,sheets=6``."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    group: int = 64
    objects: int = 80
    arrows: int = 200_000
    sheets: int = 7
    threads: int = 4096


def _from_env(base: Caps) -> Caps:
    raw = os.environ.get("GALOIS_CAP", "").strip()
    if not raw:
        return base
    if raw.isdigit():
        return replace(base, group=int(raw))
    fields = {}
    for part in raw.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in Caps.__dataclass_fields__ or not value.strip().isdigit():
            raise ValueError(f"bad GALOIS_CAP entry {part!r}")
        fields[key] = int(value)
    caps = replace(base, **fields)
    if min(caps.group, caps.objects, caps.arrows, caps.sheets, caps.threads) <= 0:
        raise ValueError("caps must be positive")
    return caps


def caps() -> Caps:
    return _from_env(Caps())
