"""Wire encoding of reports and bulletins, plus the client/server session loop.

Wire format (little-endian, minimal-width integers)
---------------------------------------------------

Integers are encoded with the minimal byte width that can hold any value of
their declared domain: 1 byte for domains of size <= 2^8, 2 for <= 2^16, 3 for
<= 2^24, else 4. Both ends derive the width from the declared sizes, so no
length prefix is needed.

Report frames (uplink)::

    tag 0  FULL_DOMAIN   [1 tag byte][item id, width(d)]
    tag 1  HOT_SET       [1 tag byte][item id, width(d)]
    tag 2  BOT           [1 tag byte]
    tag 3  OLH_PAIR      [1 tag byte][hash seed, 8 bytes][symbol, width(g)]
    tag 4  HR_INDEX      [1 tag byte][column, width(K)]

Bulletin frames (downlink)::

    [sequence number, 4 bytes][flags, 1 byte (bit 0 = weakest count low)]
    [hot id count m, 1 byte][m item ids, width(d) each]

``decode`` is the exact inverse of ``encode``; truncated or over-long frames,
unknown tags, and out-of-domain values raise ``MalformedFrameError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .core import RngHandle
from .errors import MalformedFrameError
from .schemes import (
    BOT,
    Bulletin,
    SchemeBase,
    SchemeConfig,
    TAG_BOT,
    TAG_FULL_DOMAIN,
    TAG_HOT_SET,
    TAG_HR_INDEX,
    TAG_OLH_PAIR,
    TopKReport,
    build_scheme,
)


def int_width(domain_size: int) -> int:
    """Minimal byte width holding every value in [0, domain_size)."""
    if domain_size <= 1 << 8:
        return 1
    if domain_size <= 1 << 16:
        return 2
    if domain_size <= 1 << 24:
        return 3
    if domain_size <= 1 << 32:
        return 4
    raise ValueError(f"domain too large for the wire format: {domain_size}")


@dataclass(frozen=True)
class WireContext:
    """Declared domain sizes both ends agree on."""

    domain_size: int
    olh_g: Optional[int] = None
    hr_k: Optional[int] = None
    id_width: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "id_width", int_width(self.domain_size))


def encode_report(report: tuple, ctx: WireContext) -> bytes:
    tag, payload = report
    if tag == TAG_BOT:
        return b"\x02"
    if tag in (TAG_FULL_DOMAIN, TAG_HOT_SET):
        if not 0 <= payload < ctx.domain_size:
            raise ValueError(f"id {payload} outside declared domain")
        return bytes([tag]) + payload.to_bytes(ctx.id_width, "little")
    if tag == TAG_OLH_PAIR:
        seed, y = payload
        if ctx.olh_g is None:
            raise ValueError("wire context declares no OLH domain")
        if not 0 <= y < ctx.olh_g:
            raise ValueError(f"symbol {y} outside declared OLH domain")
        return (b"\x03" + seed.to_bytes(8, "little")
                + y.to_bytes(int_width(ctx.olh_g), "little"))
    if tag == TAG_HR_INDEX:
        if ctx.hr_k is None:
            raise ValueError("wire context declares no HR domain")
        if not 0 <= payload < ctx.hr_k:
            raise ValueError(f"column {payload} outside declared HR domain")
        return b"\x04" + payload.to_bytes(int_width(ctx.hr_k), "little")
    raise ValueError(f"unknown report tag {tag}")


def decode_report(data: bytes, ctx: WireContext) -> tuple:
    if not data:
        raise MalformedFrameError("empty frame")
    tag = data[0]
    body = data[1:]
    if tag == TAG_BOT:
        if body:
            raise MalformedFrameError("BOT frame carries a payload")
        return BOT
    if tag in (TAG_FULL_DOMAIN, TAG_HOT_SET):
        if len(body) != ctx.id_width:
            raise MalformedFrameError(f"expected {ctx.id_width} payload bytes")
        value = int.from_bytes(body, "little")
        if value >= ctx.domain_size:
            raise MalformedFrameError(f"id {value} outside declared domain")
        return (tag, value)
    if tag == TAG_OLH_PAIR:
        if ctx.olh_g is None:
            raise MalformedFrameError("wire context declares no OLH domain")
        w = int_width(ctx.olh_g)
        if len(body) != 8 + w:
            raise MalformedFrameError(f"expected {8 + w} payload bytes")
        seed = int.from_bytes(body[:8], "little")
        y = int.from_bytes(body[8:], "little")
        if y >= ctx.olh_g:
            raise MalformedFrameError(f"symbol {y} outside declared OLH domain")
        return (TAG_OLH_PAIR, (seed, y))
    if tag == TAG_HR_INDEX:
        if ctx.hr_k is None:
            raise MalformedFrameError("wire context declares no HR domain")
        w = int_width(ctx.hr_k)
        if len(body) != w:
            raise MalformedFrameError(f"expected {w} payload bytes")
        value = int.from_bytes(body, "little")
        if value >= ctx.hr_k:
            raise MalformedFrameError(f"column {value} outside declared HR domain")
        return (TAG_HR_INDEX, value)
    raise MalformedFrameError(f"unknown report tag {tag}")


def encode_bulletin(bulletin: Bulletin, ctx: WireContext) -> bytes:
    ids = bulletin.hot_ids
    if len(ids) > 255:
        raise ValueError("bulletin carries too many hot ids for the format")
    out = bytearray()
    out += (bulletin.seq & 0xFFFFFFFF).to_bytes(4, "little")
    out.append(1 if bulletin.weakest_low else 0)
    out.append(len(ids))
    w = ctx.id_width
    for i in ids:
        if not 0 <= i < ctx.domain_size:
            raise ValueError(f"id {i} outside declared domain")
        out += i.to_bytes(w, "little")
    return bytes(out)


def decode_bulletin(data: bytes, ctx: WireContext) -> Bulletin:
    if len(data) < 6:
        raise MalformedFrameError("bulletin frame too short")
    seq = int.from_bytes(data[:4], "little")
    flags = data[4]
    if flags > 1:
        raise MalformedFrameError(f"unknown bulletin flags {flags:#x}")
    m = data[5]
    w = ctx.id_width
    if len(data) != 6 + m * w:
        raise MalformedFrameError(f"expected {6 + m * w} bulletin bytes")
    ids = tuple(
        int.from_bytes(data[6 + j * w:6 + (j + 1) * w], "little") for j in range(m)
    )
    if any(i >= ctx.domain_size for i in ids):
        raise MalformedFrameError("bulletin id outside declared domain")
    if len(set(ids)) != m:
        raise MalformedFrameError("bulletin ids must be distinct")
    return Bulletin(ids, frozenset(ids), bool(flags), seq)


def bulletin_nbytes(hot_count: int, ctx: WireContext) -> int:
    """Encoded bulletin size, without materializing the frame."""
    return 6 + hot_count * ctx.id_width


def wire_context_for(cfg: SchemeConfig) -> WireContext:
    olh_g = hr_k = None
    if cfg.scheme == "olh":
        from .mechanisms import olh_params
        olh_g = olh_params(cfg.epsilon, cfg.olh_g).g
    elif cfg.scheme == "hr":
        from .mechanisms import hr_params
        hr_k = hr_params(cfg.epsilon, cfg.domain_size).K
    return WireContext(cfg.domain_size, olh_g, hr_k)


# ---------------------------------------------------------------------------
# Session loop
# ---------------------------------------------------------------------------

@dataclass
class TrafficStats:
    uplink_bytes: int = 0
    downlink_bytes: int = 0
    events: int = 0


class SessionResult(NamedTuple):
    scheme: SchemeBase
    report: TopKReport
    traffic: TrafficStats


def run_session(stream: Sequence[int], cfg: SchemeConfig,
                seed: int | RngHandle = 0) -> SessionResult:
    """Drive one collection session over an in-memory event stream.

    The leading ``cfg.warmup_frac`` fraction of the stream is inserted
    without randomization (heavy part only), then each remaining event runs
    the full round trip: snapshot the bulletin, randomize client-side,
    encode, decode, insert server-side. Traffic totals count serialized
    payload bytes only — transport framing is out of scope.

    The client and the server draw from independently derived sub-streams of
    ``seed``, so a noiseless session consumes server randomness exactly like
    the non-private structure fed the same reports.
    """
    root = seed if isinstance(seed, RngHandle) else RngHandle(seed)
    client_rng = root.spawn("client")
    server_rng = root.spawn("server")
    scheme = build_scheme(cfg)
    ctx = wire_context_for(cfg)

    if hasattr(stream, "tolist"):
        stream = stream.tolist()
    warm_n = int(round(len(stream) * cfg.warmup_frac))
    scheme.warmup(stream[:warm_n], server_rng)

    traffic = TrafficStats()
    uses_bulletin = scheme.uses_bulletin
    randomize = scheme.randomize
    insert = scheme.insert
    get_bulletin = scheme.bulletin
    for v in stream[warm_n:]:
        if uses_bulletin:
            bulletin = get_bulletin()
            traffic.downlink_bytes += bulletin_nbytes(len(bulletin.hot_ids), ctx)
        else:
            bulletin = None
        report = randomize(v, bulletin, client_rng)
        frame = encode_report(report, ctx)
        traffic.uplink_bytes += len(frame)
        insert(decode_report(frame, ctx), server_rng)
        traffic.events += 1

    return SessionResult(scheme, scheme.response(), traffic)
