"""
Persistent KL cache files.

Line 1 is the JSON header ``{"format":"klcache","version":1,"n":N,
"normalization":"soergel"}``; every further line is one entry
``[x_id, w_id, [[exp, coeff], ...]]`` holding p_{w,x} for x <= w, where ids
are lexicographic ranks of the one-line notation. Entries are grouped by w
and each group ends with its diagonal entry ``[w_id, w_id, [[0, 1]]]``, which
marks the group as complete.

Writes go to ``<path>.part`` and are renamed into place at the end, so a
finished file is never partial. ``resume=True`` keeps the complete groups of
an interrupted ``.part`` file and computes only the rest.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, CacheNotFilled, VersionMismatch
from .groupdata import group_tables
from .hecke import KLCache
from .hecke.klcache import NORMALIZATION

FORMAT = "klcache"
VERSION = 1
DEFAULT_MAX_RANK = 8
ENV_DIR = "CELLKIT_CACHE_DIR"


@dataclass(frozen=True)
class CacheFile:
    path: Path
    header: dict
    entries: int

    @property
    def n(self) -> int:
        return self.header["n"]

    def to_json(self) -> dict:
        return {"path": str(self.path), "header": self.header, "entries": self.entries}


def header_for(n: int) -> dict:
    return {"format": FORMAT, "version": VERSION, "n": n, "normalization": NORMALIZATION}


def default_path(n: int) -> Path | None:
    root = os.environ.get(ENV_DIR)
    return Path(root) / f"s{n}.klc" if root else None


def _check_header(header: dict, n: int | None = None):
    if header.get("format") != FORMAT or header.get("version") != VERSION:
        raise VersionMismatch(f"unsupported cache header {header}")
    if header.get("normalization") != NORMALIZATION:
        raise VersionMismatch(f"cache normalization {header.get('normalization')!r} is not {NORMALIZATION!r}")
    if n is not None and header.get("n") != n:
        raise VersionMismatch(f"cache is for S_{header.get('n')}, expected S_{n}")


def _column_lines(cache: KLCache, w: int, col: np.ndarray) -> list[str]:
    length = cache.g.length
    lw = int(length[w])
    xs = np.nonzero(col[:, 0])[0]
    lines = []
    for x in xs.tolist():
        if x == w:
            continue
        d = lw - int(length[x])
        pairs = ",".join(f"[{d - 2 * k},{int(a)}]" for k, a in enumerate(col[x].tolist()) if a)
        lines.append(f"[{x},{w},[{pairs}]]\n")
    lines.append(f"[{w},{w},[[0,1]]]\n")
    return lines


def _table_for(n: int) -> np.ndarray:
    N = group_tables(n).size
    return np.zeros((N, N, KLCache(n).degree_bound), dtype=np.int8 if n >= 7 else np.int16)


def _read_groups(path: Path, n: int, table: np.ndarray) -> tuple[set[int], int]:
    """
    Copy the complete w-groups of a cache file into ``table``.

    Returns the set of complete w ids and the byte offset just after the
    last complete group.
    """
    g = group_tables(n)
    N = g.size
    length = g.length
    lo, hi = np.iinfo(table.dtype).min, np.iinfo(table.dtype).max
    done: set[int] = set()
    cur_w = None
    with open(path, "rb") as fh:
        _check_header(json.loads(fh.readline()), n)
        good_offset = fh.tell()
        for raw in fh:
            if not raw.endswith(b"\n"):
                break
            try:
                x, w, pairs = json.loads(raw)
            except ValueError:
                break
            if not (0 <= x < N and 0 <= w < N):
                raise VersionMismatch(f"entry ids ({x}, {w}) out of range for S_{n}")
            if cur_w is not None and w != cur_w:
                table[cur_w] = 0
            cur_w = w
            d = int(length[w]) - int(length[x])
            for e, a in pairs:
                if not lo <= a <= hi:
                    raise VersionMismatch(f"coefficient {a} does not fit the table storage")
                table[w, x, (d - e) // 2] = a
            if x == w:
                done.add(w)
                cur_w = None
                good_offset = fh.tell()
    if cur_w is not None:
        table[cur_w] = 0
    return done, good_offset


def cache_build(n: int, out: str | os.PathLike, resume: bool = False,
                max_rank: int = DEFAULT_MAX_RANK) -> CacheFile:
    """Fill the KL table for S_n and write it to ``out`` atomically."""
    if n > max_rank:
        raise BudgetExceeded(f"cache build for S_{n} exceeds the configured maximum {max_rank}")
    out = Path(out)
    part = out.with_name(out.name + ".part")
    preloaded: dict[int, np.ndarray] = {}
    done: set[int] = set()
    if resume and part.exists():
        stored = _table_for(n)
        done, offset = _read_groups(part, n, stored)
        preloaded = {w: stored[w] for w in done}
        with open(part, "r+b") as fh:
            fh.truncate(offset)
        mode = "a"
    else:
        mode = "w"
    cache = KLCache(n)
    entries = sum(int(np.count_nonzero(c[:, 0])) for c in preloaded.values())
    with open(part, mode) as fh:
        if mode == "w":
            fh.write(json.dumps(header_for(n), separators=(",", ":")) + "\n")
        if 0 not in done:
            fh.write("[0,0,[[0,1]]]\n")
            entries += 1

        def emit(w, col):
            nonlocal entries
            lines = _column_lines(cache, w, col)
            entries += len(lines)
            fh.writelines(lines)

        if 0 in preloaded:
            preloaded.pop(0)
        cache.fill(preloaded=preloaded, on_column=emit)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(part, out)
    return CacheFile(out, header_for(n), entries)


def cache_info(path: str | os.PathLike) -> CacheFile:
    path = Path(path)
    with open(path, "rb") as fh:
        header = json.loads(fh.readline())
        _check_header(header)
        count = sum(1 for _ in fh)
    return CacheFile(path, header, count)


def cache_load(path: str | os.PathLike, n: int | None = None) -> KLCache:
    """Read a complete cache file into a filled KLCache."""
    path = Path(path)
    with open(path, "rb") as fh:
        header = json.loads(fh.readline())
    _check_header(header, n)
    n = header["n"]
    table = _table_for(n)
    done, _ = _read_groups(path, n, table)
    if len(done) != table.shape[0]:
        raise CacheNotFilled(f"{path} holds {len(done)} of {table.shape[0]} columns")
    cache = KLCache(n)
    cache.load_table(table)
    return cache
