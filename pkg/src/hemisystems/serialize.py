"""JSON descriptors, JSON reports, point-set files and the Cayley-graph edge list."""

from __future__ import annotations

import json
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .conic import ConicData, partition_from_X
from .construction import J1, J2, HemisystemDescriptor
from .errors import InvalidInput

DESCRIPTOR_VERSION = 1


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_jsonable) + "\n"


def provenance(timestamp: bool = True) -> dict:
    out = {"tool": "hemisystems", "tool_version": __version__}
    if timestamp:
        out["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return out


def descriptor_to_dict(desc: HemisystemDescriptor, *, timestamp: bool = True) -> dict:
    d = {
        "version": DESCRIPTOR_VERSION,
        "p": desc.p,
        "f": desc.f,
        "q": desc.q,
        "N": desc.N,
        "polynomial": list(desc.polynomial),
        "d0": desc.d0,
    }
    if desc.conic is not None:
        d["conic"] = desc.conic.to_json()
    d.update(
        {
            "J1": list(desc.J1),
            "J2": list(desc.J2),
            "I": list(desc.I),
            "J": list(desc.J),
            "sizes": desc.sizes,
            "provenance": provenance(timestamp),
        }
    )
    return d


def _conic_from_dict(q: int, c: dict) -> ConicData:
    N = int(c["N"])
    X = tuple(int(x) for x in c["X"])
    s1pp, s2pp, s1p, s2p, s1, s2 = partition_from_X(X, N)
    if list(s1) != list(c["S1"]) or list(s2) != list(c["S2"]):
        raise InvalidInput("conic S1/S2 do not match the partition induced by X")
    eps = 1 if q % 4 == 1 else -1
    t = lambda key: tuple(int(v) for v in c[key])  # noqa: E731
    return ConicData(q, N, t("S"), t("IQ"), t("Is"), t("In"), int(c["d0"]), X, s1pp, s2pp, s1p, s2p, s1, s2, eps)


def descriptor_from_dict(d: dict) -> HemisystemDescriptor:
    try:
        if d.get("version") != DESCRIPTOR_VERSION:
            raise InvalidInput(f"unsupported descriptor version {d.get('version')!r}")
        q = int(d["q"])
        conic = _conic_from_dict(q, d["conic"]) if "conic" in d else None
        return HemisystemDescriptor(
            p=int(d["p"]),
            f=int(d["f"]),
            q=q,
            N=int(d["N"]),
            polynomial=tuple(int(c) for c in d["polynomial"]),
            d0=int(d["d0"]),
            I=tuple(sorted(int(i) for i in d["I"])),
            J=tuple(sorted(int(j) for j in d["J"])),
            conic=conic,
            J1=tuple(d.get("J1", J1)),
            J2=tuple(d.get("J2", J2)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed descriptor: {exc!r}") from exc


def write_descriptor(path, desc: HemisystemDescriptor, *, timestamp: bool = True) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(descriptor_to_dict(desc, timestamp=timestamp)))


def read_descriptor(path) -> HemisystemDescriptor:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path}: not JSON ({exc})") from exc
    return descriptor_from_dict(data)


def write_report(path, report_dict: dict, *, timestamp: bool = True) -> None:
    out = dict(report_dict)
    out["provenance"] = provenance(timestamp)
    with open(path, "w") as fh:
        fh.write(dumps(out))


def read_point_ids(path) -> np.ndarray:
    """Whitespace separated point ids; '#' starts a comment."""
    ids = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0]
            ids.extend(int(tok) for tok in line.split())
    return np.array(ids, dtype=np.int64)


def write_point_ids(path, ids) -> None:
    with open(path, "w") as fh:
        for i in ids:
            fh.write(f"{int(i)}\n")


def iter_cayley_edges(ctx, desc: HemisystemDescriptor, chunk: int = 4096):
    """Edges (u, v), u < v, of the Cayley graph x ~ y iff x - y in D.

    Vertices are vector forms: the integer whose base-p digits are the
    coordinates of x in the basis 1, gamma, ..., gamma^(n-1).
    """
    from .construction import d_exponents

    d_vec = ctx.antilog[d_exponents(ctx, desc.I, desc.modulus)].astype(np.int64)
    d_dig = ctx.digits(d_vec)
    v = ctx.order + 1
    for lo in range(0, v, chunk):
        xs = np.arange(lo, min(v, lo + chunk), dtype=np.int64)
        x_dig = ctx.digits(xs)
        ys = ctx.from_digits((x_dig[:, None, :] + d_dig[None, :, :]) % ctx.p)
        for x, row in zip(xs, ys):
            for y in np.sort(row[row > x]):
                yield int(x), int(y)


def write_edge_list(path, ctx, desc: HemisystemDescriptor) -> int:
    n = 0
    with open(path, "w") as fh:
        fh.write(f"# Cayley graph Cay(F_{{q^6}}, D), q = {desc.q}\n")
        fh.write(f"# p = {desc.p}, f = {desc.f}, polynomial (low to high) = {list(desc.polynomial)}\n")
        fh.write(f"# I (mod {desc.modulus}) = {list(desc.I)}\n")
        fh.write("# vertex id = sum_i c_i p^i for x = sum_i c_i gamma^i\n")
        fh.write("# one undirected edge per line: u v with u < v\n")
        for u, v in iter_cayley_edges(ctx, desc):
            fh.write(f"{u} {v}\n")
            n += 1
    return n


def read_edge_list(path):
    edges = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
    return edges
