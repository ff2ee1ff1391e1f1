"""Command-line front end.

Exit codes: 0 for match or success, 1 for no match, 2 for errors.  An
argument of the form ``@path`` is replaced by the contents of that file
(one trailing newline stripped).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .approx import ApproxMatcher, approx_dp_naive
from .editdist import cell_table, edit_distance_4r, edit_distance_naive
from .nfa import accepts_naive, build_nfa, simulate_naive
from .oracles import FuzzConfig, gen_regex, gen_string, make_alphabet
from .regex_ast import PatternSyntaxError, parse
from .subseq import Engine, IndexFormatError, build_index, load_index, subsequence_naive
from .tables import DEFAULT_K, MIN_K, WORD_BITS, TableCache
from .matcher import TabulatedMatcher

BENCH_SUITES = ("exact", "approx", "editdist", "subseq")


class CliError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    engine: str = "tabulated"
    k: int = DEFAULT_K
    json: bool = False
    output: Optional[str] = None


def _read_arg(s: str) -> str:
    if s.startswith("@"):
        return _read_file(s[1:])
    return s


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            data = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None
    if data.endswith("\r\n"):
        return data[:-2]
    if data.endswith("\n"):
        return data[:-1]
    return data


def _k_arg(s: str) -> int:
    k = int(s)
    if not MIN_K <= k <= WORD_BITS:
        raise argparse.ArgumentTypeError(f"k must be in [{MIN_K}, {WORD_BITS}]")
    return k


def _d_arg(s: str) -> int:
    d = int(s)
    if d < 0:
        raise argparse.ArgumentTypeError("d must be non-negative")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--engine", choices=("tabulated", "naive"), default="tabulated")
    common.add_argument("-k", type=_k_arg, default=DEFAULT_K, help="table budget in bits")
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("-o", dest="output", help="write output to this file")

    p = argparse.ArgumentParser(prog="tabmatch", description="Tabulated string matching algorithms.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", parents=[common], help="exact regular expression match")
    m.add_argument("pattern")
    m.add_argument("text")
    m.add_argument("--table-cache", help="load/save built tables at this path")

    a = sub.add_parser("amatch", parents=[common], help="approximate regular expression match")
    a.add_argument("-d", type=_d_arg, required=True, help="edit distance threshold")
    a.add_argument("pattern")
    a.add_argument("text")

    e = sub.add_parser("editdist", parents=[common], help="edit distance of two strings")
    e.add_argument("s")
    e.add_argument("t")

    s = sub.add_parser("subseq", help="subsequence index")
    ssub = s.add_subparsers(dest="action", required=True)
    si = ssub.add_parser("index", parents=[common], help="build an index of a text file")
    si.add_argument("textfile")
    si.add_argument("--index-engine", choices=[x.value for x in Engine], default=Engine.HYBRID.value)
    sq = ssub.add_parser("query", parents=[common], help="query a built index")
    sq.add_argument("idxfile")
    sq.add_argument("q")

    b = sub.add_parser("bench", parents=[common], help="micro-benchmark, one JSON row per engine")
    b.add_argument("suite", choices=BENCH_SUITES)
    b.add_argument("--size", type=int, default=2000, help="pattern and text length")
    b.add_argument("-d", type=_d_arg, default=1)
    b.add_argument("--seed", type=int, default=FuzzConfig.seed)
    return p


def _match_result(ok: bool, cfg: CliConfig, extra: dict) -> tuple[str, int]:
    if cfg.json:
        return json.dumps({"result": "match" if ok else "no match", "match": ok, **extra}, sort_keys=True), 0 if ok else 1
    return ("match" if ok else "no match"), 0 if ok else 1


def _cmd_match(args, cfg: CliConfig) -> tuple[str, int]:
    pattern = _read_arg(args.pattern)
    text = _read_arg(args.text)
    tree = parse(pattern)
    if cfg.engine == "naive":
        ok = accepts_naive(build_nfa(tree), text)
    else:
        cache = None
        path = args.table_cache
        if path and os.path.exists(path):
            with open(path, "rb") as fh:
                cache = TableCache.load(fh)
            if cache.k != cfg.k:
                cache = None
        m = TabulatedMatcher(tree, k=cfg.k, cache=cache)
        ok = m.accepts(text)
        if path:
            with open(path, "wb") as fh:
                m.cache.save(fh)
    return _match_result(ok, cfg, {})


def _cmd_amatch(args, cfg: CliConfig) -> tuple[str, int]:
    tree = parse(_read_arg(args.pattern))
    text = _read_arg(args.text)
    if cfg.engine == "naive":
        ok = approx_dp_naive(tree, text, args.d)
    else:
        ok = ApproxMatcher(tree, args.d, k=cfg.k).accepts(text)
    return _match_result(ok, cfg, {"d": args.d})


def _cmd_editdist(args, cfg: CliConfig) -> tuple[str, int]:
    s, t = _read_arg(args.s), _read_arg(args.t)
    if cfg.engine == "naive":
        dist = edit_distance_naive(s, t)
    else:
        dist = edit_distance_4r(s, t, k=cfg.k)
    if cfg.json:
        return json.dumps({"distance": dist}), 0
    return str(dist), 0


def _cmd_subseq(args, cfg: CliConfig) -> tuple[str, int]:
    if args.action == "index":
        if not cfg.output:
            raise CliError("subseq index needs -o <idxfile>")
        idx = build_index(_read_file(args.textfile), args.index_engine)
        try:
            with open(cfg.output, "wb") as fh:
                idx.save(fh)
        except OSError as e:
            raise CliError(f"cannot write {cfg.output}: {e.strerror}") from None
        cfg.output = None  # the index itself is the output
        info = {"engine": idx.engine.value, "n": idx.n, "sigma": idx.sigma, "entries": idx.space_entries()}
        return (json.dumps(info, sort_keys=True) if cfg.json else f"indexed {idx.n} characters"), 0
    try:
        with open(args.idxfile, "rb") as fh:
            idx = load_index(fh)
    except OSError as e:
        raise CliError(f"cannot read {args.idxfile}: {e.strerror}") from None
    q = _read_arg(args.q)
    if cfg.engine == "naive":
        text = "".join(idx.alphabet[c] for c in idx.codes.tolist())
        ok = subsequence_naive(text, q)
    else:
        ok = idx.query(q)
    return _match_result(ok, cfg, {})


# --- bench --------------------------------------------------------------------


def _timed(fn, chars: int) -> tuple[object, float]:
    t0 = time.perf_counter()
    r = fn()
    dt = time.perf_counter() - t0
    return r, dt * 1e9 / max(1, chars)


def bench_rows(suite: str, size: int, k: int, d: int = 1, seed: int = FuzzConfig.seed) -> list[dict]:
    """Run one benchmark suite; each row names an engine and its cost."""
    rng = FuzzConfig(seed=seed).rng(BENCH_SUITES.index(suite))
    alpha = make_alphabet(2)
    rows = []
    if suite in ("exact", "approx"):
        pattern = gen_regex(rng, size, alpha)
        text = gen_string(rng, size, alpha)
        tree = parse(pattern)
        m = len(tree)
        if suite == "exact":
            nfa = build_nfa(tree)

            def naive():
                s = None
                for s in simulate_naive(nfa, text):
                    pass
                return nfa.accept in s

            tm = TabulatedMatcher(tree, k=k)
            r1, ns1 = _timed(naive, len(text))
            r2, cold = _timed(lambda: tm.accepts(text), len(text))
            _, ns2 = _timed(lambda: tm.accepts(text), len(text))
            words, nbytes = tm.cache.words, tm.cache.bytes_used
        else:
            am = ApproxMatcher(tree, d, k=k)
            r1, ns1 = _timed(lambda: approx_dp_naive(tree, text, d), len(text))
            r2, cold = _timed(lambda: am.accepts(text), len(text))
            _, ns2 = _timed(lambda: am.accepts(text), len(text))
            words, nbytes = am.cache.words, am.cache.bytes_used
        if r1 != r2:
            raise AssertionError("engines disagree in benchmark")
        rows.append(dict(suite=suite, engine="naive", m=m, n=len(text), k=k, ns_per_char=ns1, bytes=0, words=0))
        # the second run of the tabulated engine reads warm tables
        rows.append(dict(suite=suite, engine="tabulated", m=m, n=len(text), k=k, ns_per_char=ns2,
                         cold_ns_per_char=round(cold, 1), bytes=nbytes, words=words))
    elif suite == "editdist":
        s = gen_string(rng, size, alpha)
        t = gen_string(rng, size, alpha)
        table = cell_table(k)
        r1, ns1 = _timed(lambda: edit_distance_naive(s, t), len(s) * len(t))
        r2, ns2 = _timed(lambda: edit_distance_4r(s, t, table=table), len(s) * len(t))
        if r1 != r2:
            raise AssertionError("engines disagree in benchmark")
        rows.append(dict(suite=suite, engine="naive", m=len(s), n=len(t), k=k, ns_per_char=ns1, bytes=0, words=0))
        rows.append(dict(suite=suite, engine="tabulated", m=len(s), n=len(t), k=k, ns_per_char=ns2,
                         bytes=table.words * 8, words=table.words))
    else:
        alpha = make_alphabet(26)
        t = gen_string(rng, size * 10, alpha)
        queries = [gen_string(rng, 50, alpha) for _ in range(200)]
        qchars = sum(map(len, queries))
        _, ns0 = _timed(lambda: [subsequence_naive(t, q) for q in queries], qchars)
        rows.append(dict(suite=suite, engine="naive", m=50, n=len(t), k=k, ns_per_char=ns0, bytes=0, words=0))
        for eng in Engine:
            idx = build_index(t, eng)
            _, ns = _timed(lambda: [idx.query(q) for q in queries], qchars)
            ent = idx.space_entries()
            rows.append(dict(suite=suite, engine=eng.value, m=50, n=len(t), k=k, ns_per_char=ns, bytes=ent * 4, words=ent))
    for r in rows:
        r["ns_per_char"] = round(r["ns_per_char"], 1)
        r["budget_words"] = 1 << k
    return rows


def _cmd_bench(args, cfg: CliConfig) -> tuple[str, int]:
    if args.size < 1:
        raise CliError("--size must be positive")
    rows = bench_rows(args.suite, args.size, cfg.k, args.d, args.seed)
    return "\n".join(json.dumps(r, sort_keys=True) for r in rows), 0


_COMMANDS = {
    "match": _cmd_match,
    "amatch": _cmd_amatch,
    "editdist": _cmd_editdist,
    "subseq": _cmd_subseq,
    "bench": _cmd_bench,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cfg = CliConfig(args.command, getattr(args, "engine", "tabulated"), getattr(args, "k", DEFAULT_K),
                    getattr(args, "json", False), getattr(args, "output", None))
    try:
        out, code = _COMMANDS[args.command](args, cfg)
    except PatternSyntaxError as e:
        print(f"tabmatch: syntax error at offset {e.offset}: {e.msg}", file=stderr)
        return 2
    except (CliError, IndexFormatError) as e:
        print(f"tabmatch: {e}", file=stderr)
        return 2
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(out + "\n")
        except OSError as e:
            print(f"tabmatch: cannot write {cfg.output}: {e.strerror}", file=stderr)
            return 2
    else:
        print(out, file=stdout)
    return code


def main() -> None:
    sys.exit(run())
