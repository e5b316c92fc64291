"""Range scans over S_{n-1} mod n, K_n mod n and B_{n-1} mod n.

Every scan splits [lo, hi) into fixed blocks.  Blocks are independent, so
they can run in worker processes and be checkpointed one at a time; the
merged output is always in ascending n regardless of how the work was
split.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from . import _kernels
from .arith import (
    FactoredInteger,
    Residue,
    balanced,
    crt_combine,
    factorize_with,
    is_prime,
    prime_powers_below,
    primes_in_range,
    smallest_prime_factors,
)
from .determinants import kurepa_det_mod_via_derangement
from .errors import CheckpointError, DomainError, ResourceLimitError
from .sequences import prime_power_residue, seed_prime_power_residues

KINDS = ("kurepa", "strong", "table1", "table2", "prime-powers", "bell-one")
FILTERS = ("all", "primes", "odd-composites", "prime-powers", "even", "odd")
NATURAL_FILTER = {
    "kurepa": "primes",
    "strong": "odd-composites",
    "table1": "all",
    "table2": "odd",
    "prime-powers": "prime-powers",
    "bell-one": "all",
}
BELL_SCAN_CEILING = 20000
LONG_RUNNING_BOUND = 2**23
CSV_HEADER = ("n", "factorization", "r_signed", "s_signed", "near_miss", "ratio")


@dataclass(frozen=True)
class ScanConfig:
    lo: int
    hi: int
    residue_bound: int = 2
    ratio_bound: Optional[float] = None
    filter: Optional[str] = None
    block_size: int = 10000
    bell_ceiling: int = BELL_SCAN_CEILING

    def __post_init__(self):
        if self.lo < 2:
            raise DomainError(f"lo must be at least 2, got {self.lo}")
        if self.hi <= self.lo:
            raise DomainError(f"empty range [{self.lo}, {self.hi})")
        if self.residue_bound < 0:
            raise DomainError(f"residue bound must be nonnegative, got {self.residue_bound}")
        if self.block_size < 1:
            raise DomainError("block size must be positive")
        if self.filter is not None and self.filter not in FILTERS:
            raise DomainError(f"unknown class filter {self.filter!r}")

    @property
    def long_running(self) -> bool:
        return self.hi > LONG_RUNNING_BOUND

    def blocks(self) -> list[tuple[int, int]]:
        return [(a, min(a + self.block_size, self.hi)) for a in range(self.lo, self.hi, self.block_size)]


def parse_factorization(text: str) -> FactoredInteger:
    factors = []
    n = 1
    if text != "1":
        for part in text.split("*"):
            p, _, e = part.partition("^")
            p, e = int(p), int(e or 1)
            factors.append((p, e))
            n *= p**e
    return FactoredInteger(n, tuple(factors))


@dataclass(frozen=True)
class ScanRecord:
    n: int
    factorization: FactoredInteger
    r_signed: int
    s_signed: Optional[int] = None

    @property
    def near_miss(self) -> int:
        return min(abs(self.r_signed), self.n - abs(self.r_signed))

    @property
    def ratio(self) -> float:
        return abs(self.r_signed) / self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "factorization": str(self.factorization),
            "r_signed": self.r_signed,
            "s_signed": self.s_signed,
            "near_miss": self.near_miss,
            "ratio": self.ratio,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRecord":
        fac = parse_factorization(d["factorization"])
        if fac.n != d["n"]:
            raise CheckpointError(f"factorization {d['factorization']} does not match n = {d['n']}")
        return cls(d["n"], fac, d["r_signed"], d["s_signed"])


# --- per-kind block workers -------------------------------------------------


def _classify(n: int, fac: FactoredInteger) -> set[str]:
    tags = {"all", "even" if n % 2 == 0 else "odd"}
    if fac.is_prime:
        tags.add("primes")
    elif n % 2:
        tags.add("odd-composites")
    if fac.is_prime_power and not fac.is_prime:
        tags.add("prime-powers")
    return tags


def _signed_residue(n: int, fac: FactoredInteger) -> int:
    """Balanced S_{n-1} mod n from the prime power cache."""
    if fac.is_prime_power:
        return balanced(prime_power_residue(n), n)
    parts = []
    for Q in fac.prime_powers:
        r = prime_power_residue(Q)
        parts.append(Residue.of(-r if (n + Q) % 2 else r, Q))
    return crt_combine(parts).signed


def _factor_block(lo: int, hi: int) -> list[FactoredInteger]:
    spf = smallest_prime_factors(hi - 1)
    return [factorize_with(n, spf) for n in range(lo, hi)]


def _block_kurepa(cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    ps = primes_in_range(max(lo, 3), hi)
    if ps.size == 0:
        return []
    res = _kernels.subfactorial_residues(ps - 1, ps)
    out = []
    for p, r in zip(ps.tolist(), res.tolist()):
        if min(r, p - r) <= cfg.residue_bound:
            out.append(ScanRecord(p, FactoredInteger(p, ((p, 1),)), balanced(r, p)))
    return out


def _block_prime_powers(cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    pps = [(q, e, Q) for q, e, Q in prime_powers_below(hi, 2) if Q >= lo]
    if not pps:
        return []
    Qs = np.array([Q for _, _, Q in pps], dtype=np.int64)
    res = _kernels.subfactorial_residues(Qs - 1, Qs)
    out = []
    for (q, e, Q), r in zip(pps, res.tolist()):
        if min(r, Q - r) <= cfg.residue_bound:
            out.append(ScanRecord(Q, FactoredInteger(Q, ((q, e),)), balanced(r, Q)))
    return out


def _block_table1(cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    facs = _factor_block(lo, hi)
    want = cfg.filter or "all"
    facs = [f for f in facs if want in _classify(f.n, f)]
    seed_prime_power_residues({Q for f in facs for Q in f.prime_powers})
    out = []
    for f in facs:
        r = _signed_residue(f.n, f)
        a = abs(r)
        if a <= cfg.residue_bound or (cfg.ratio_bound is not None and 0 < a / f.n <= cfg.ratio_bound):
            out.append(ScanRecord(f.n, f, r))
    return out


def _block_strong(cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    out = []
    for f in _factor_block(lo, hi):
        n = f.n
        if n % 2 == 0 or n < 9 or f.is_prime:
            continue
        # S_{n-1} = 2 (mod n) iff S_{Q-1} = 2 (mod Q) for every odd prime power Q || n
        if all(prime_power_residue(Q) == 2 % Q for Q in f.prime_powers):
            out.append(ScanRecord(n, f, _signed_residue(n, f), 0))
    return out


def _block_table2(cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    out = []
    for f in _factor_block(max(lo, 7), hi) if hi > max(lo, 7) else []:
        n = f.n
        if n % 2 == 0:
            continue
        r = _signed_residue(n, f)
        if f.is_prime:
            # -8 K_p = S_{p-1} (mod p) for primes p >= 7
            s = r
        else:
            s = balanced(-8 * kurepa_det_mod_via_derangement(n).value, n)
        if abs(s) <= cfg.residue_bound:
            out.append(ScanRecord(n, f, r, s))
    return out


# prime power Q -> (covered hi, array of B_{aQ-1} mod Q for a = 1, 2, ...)
_BELL_AT_MULTIPLES: dict[int, tuple[int, np.ndarray]] = {}
_BELL_LANES = 16


def _seed_bell(prime_powers: Iterable[tuple[int, int]], hi: int) -> None:
    """Fill B_{aQ-1} mod Q for all multiples aQ < hi.

    Prime moduli run the Bell triangle only to row q and extend with
    Touchard's congruence B_{k+q} = B_k + B_{k+1}; higher prime powers run
    the triangle to the last row needed.
    """
    todo = sorted(
        {(q, e) for q, e in prime_powers if _BELL_AT_MULTIPLES.get(q**e, (0,))[0] < hi},
        key=lambda t: t[0] ** t[1],
    )
    primes = [q for q, e in todo if e == 1]
    powers = [q**e for q, e in todo if e > 1]
    for g in range(0, len(primes), _BELL_LANES):
        group = primes[g : g + _BELL_LANES]
        table = _kernels.bell_prefix_lanes(max(group), np.array(group, dtype=np.int64))
        for lane, q in enumerate(group):
            seq = _kernels.touchard_extend(np.ascontiguousarray(table[: q + 1, lane]), q, hi - 1)
            _BELL_AT_MULTIPLES[q] = (hi, seq[q - 1 :: q].copy())
    for g in range(0, len(powers), _BELL_LANES):
        group = powers[g : g + _BELL_LANES]
        top = max((hi - 1) // Q * Q - 1 for Q in group)
        table = _kernels.bell_prefix_lanes(top, np.array(group, dtype=np.int64))
        for lane, Q in enumerate(group):
            _BELL_AT_MULTIPLES[Q] = (hi, table[Q - 1 :: Q, lane].copy())


def _bell_at(Q: int, n: int) -> int:
    """B_{n-1} mod Q for a multiple n of Q."""
    return int(_BELL_AT_MULTIPLES[Q][1][n // Q - 1])


def _block_bell(cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    facs = _factor_block(lo, hi)
    _seed_bell({fe for f in facs for fe in f.factors}, cfg.hi)
    seed_prime_power_residues({Q for f in facs for Q in f.prime_powers})
    out = []
    for f in facs:
        if all(_bell_at(Q, f.n) == 1 % Q for Q in f.prime_powers):
            out.append(ScanRecord(f.n, f, _signed_residue(f.n, f)))
    return out


_BLOCK_WORKERS: dict[str, Callable[[ScanConfig, int, int], list[ScanRecord]]] = {
    "kurepa": _block_kurepa,
    "strong": _block_strong,
    "table1": _block_table1,
    "table2": _block_table2,
    "prime-powers": _block_prime_powers,
    "bell-one": _block_bell,
}


def scan_block(kind: str, cfg: ScanConfig, lo: int, hi: int) -> list[ScanRecord]:
    return _BLOCK_WORKERS[kind](cfg, lo, hi)


def _scan_block_star(args) -> list[ScanRecord]:
    return scan_block(*args)


# --- checkpointing ------------------------------------------------------------


@dataclass
class ScanState:
    kind: str
    cfg: ScanConfig
    done: dict[tuple[int, int], list[ScanRecord]] = field(default_factory=dict)

    def header(self) -> dict:
        return {"scan": self.kind, "config": asdict(self.cfg)}

    def records(self) -> list[ScanRecord]:
        out = []
        for key in sorted(self.done):
            out.extend(self.done[key])
        return out


def save_checkpoint(state: ScanState, path: Path) -> None:
    """Rewrite the whole checkpoint to a temp file, then rename over the old one."""
    path = Path(path)
    lines = [json.dumps(state.header(), sort_keys=True)]
    for (blo, bhi) in sorted(state.done):
        lines.extend(json.dumps(r.to_dict(), sort_keys=True) for r in state.done[(blo, bhi)])
        lines.append(json.dumps({"block_lo": blo, "block_hi": bhi, "status": "done"}, sort_keys=True))
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: Path, kind: str, cfg: ScanConfig) -> ScanState:
    state = ScanState(kind, cfg)
    try:
        with open(path) as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not lines:
        raise CheckpointError(f"checkpoint {path} is empty")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path}: bad header") from exc
    if header != json.loads(json.dumps(state.header(), sort_keys=True)):
        raise CheckpointError(f"checkpoint {path} was written by a different scan: {header}")
    valid = set(cfg.blocks())
    pending: list[ScanRecord] = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            obj = json.loads(line)
            if "block_lo" in obj:
                key = (obj["block_lo"], obj["block_hi"])
                if obj.get("status") != "done" or key not in valid:
                    raise CheckpointError(f"checkpoint {path}:{lineno}: unexpected block {obj}")
                if any(not key[0] <= r.n < key[1] for r in pending):
                    raise CheckpointError(f"checkpoint {path}:{lineno}: record outside block {key}")
                state.done[key] = pending
                pending = []
            else:
                pending.append(ScanRecord.from_dict(obj))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"checkpoint {path}:{lineno}: {exc}") from exc
    # records after the last done-marker belong to an unfinished block; drop them
    return state


# --- driver -------------------------------------------------------------------


def _check_kind(kind: str, cfg: ScanConfig) -> None:
    if kind not in KINDS:
        raise DomainError(f"unknown scan kind {kind!r}; choose from {', '.join(KINDS)}")
    natural = NATURAL_FILTER[kind]
    if cfg.filter is not None and cfg.filter != natural and kind != "table1":
        raise DomainError(f"{kind} scans only support the {natural!r} class filter")
    if kind == "bell-one" and cfg.hi > cfg.bell_ceiling:
        raise ResourceLimitError(f"bell scan limited to hi <= {cfg.bell_ceiling} (O(n^2) per modulus)")
    if kind == "table2" and cfg.lo < 7:
        raise DomainError("K_n is defined for n >= 7")


def run_scan(
    kind: str,
    cfg: ScanConfig,
    *,
    checkpoint: Optional[os.PathLike] = None,
    resume: bool = False,
    jobs: int = 1,
    max_blocks: Optional[int] = None,
    on_block: Optional[Callable[[tuple[int, int], list[ScanRecord]], None]] = None,
) -> list[ScanRecord]:
    """Run a scan, optionally resuming from and writing to a checkpoint.

    ``max_blocks`` stops after that many new blocks (the checkpoint stays
    valid); a later call with ``resume=True`` picks up where it stopped.
    """
    _check_kind(kind, cfg)
    path = Path(checkpoint) if checkpoint is not None else None
    if resume and path is not None and path.exists():
        state = load_checkpoint(path, kind, cfg)
    else:
        state = ScanState(kind, cfg)
    todo = [b for b in cfg.blocks() if b not in state.done]
    if max_blocks is not None:
        todo = todo[:max_blocks]
    if on_block is not None:
        # blocks always complete in ascending order, so resumed ones precede new ones
        for block in sorted(state.done):
            on_block(block, state.done[block])

    def finish(block, recs):
        state.done[block] = recs
        if path is not None:
            save_checkpoint(state, path)
        if on_block is not None:
            on_block(block, recs)

    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for block, recs in zip(todo, pool.map(_scan_block_star, [(kind, cfg, a, b) for a, b in todo])):
                finish(block, recs)
    else:
        for a, b in todo:
            finish((a, b), scan_block(kind, cfg, a, b))
    if path is not None and not todo:
        save_checkpoint(state, path)
    return state.records()


def is_complete(kind: str, cfg: ScanConfig, checkpoint: os.PathLike) -> bool:
    state = load_checkpoint(Path(checkpoint), kind, cfg)
    return set(state.done) == set(cfg.blocks())


def kurepa_prime_scan(cfg: ScanConfig, **kw) -> list[ScanRecord]:
    """Primes p in [lo, hi) whose S_{p-1} mod p lies within residue_bound of 0."""
    return run_scan("kurepa", cfg, **kw)


def strong_kurepa_scan(cfg: ScanConfig, **kw) -> list[ScanRecord]:
    """Odd composite n with S_{n-1} = 2 (mod n), i.e. n | K_n."""
    return run_scan("strong", cfg, **kw)


def residue_table_scan(cfg: ScanConfig, **kw) -> list[ScanRecord]:
    return run_scan("table1", cfg, **kw)


def kurepa_det_table_scan(cfg: ScanConfig, **kw) -> list[ScanRecord]:
    """Odd n with |(-8 K_n mod n)| <= residue_bound, with S_{n-1} mod n alongside."""
    return run_scan("table2", cfg, **kw)


def prime_power_scan(cfg: ScanConfig, **kw) -> list[ScanRecord]:
    return run_scan("prime-powers", cfg, **kw)


def bell_one_scan(cfg: ScanConfig, **kw) -> list[ScanRecord]:
    """n with B_{n-1} = 1 (mod n), annotated with S_{n-1} mod n."""
    return run_scan("bell-one", cfg, **kw)


# --- report output --------------------------------------------------------------


def write_csv(records: Iterable[ScanRecord], fh, header: bool = True) -> None:
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(
            [r.n, str(r.factorization), r.r_signed, "" if r.s_signed is None else r.s_signed, r.near_miss, repr(r.ratio)]
        )


def write_jsonl(records: Iterable[ScanRecord], fh) -> None:
    for r in records:
        fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")


def write_pretty(records: Iterable[ScanRecord], fh) -> None:
    rows = [CSV_HEADER] + [
        (str(r.n), str(r.factorization), str(r.r_signed), "" if r.s_signed is None else str(r.s_signed),
         str(r.near_miss), f"{r.ratio:.6g}")
        for r in records
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(len(CSV_HEADER))]
    for row in rows:
        fh.write("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def to_csv_text(records: Iterable[ScanRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def is_counterexample(kind: str, rec: ScanRecord) -> bool:
    """Kurepa scans: residue 0 at a prime.  Strong scans: every hit."""
    if kind == "kurepa":
        return rec.r_signed == 0 and is_prime(rec.n) and rec.n > 2
    if kind == "strong":
        return True
    return False

