"""Command-line front end: ``python -m mpvrel <command> ...``.

Every command prints ``key=value`` lines, or one JSON document with
``--json``.  The JSON document carries a run manifest (command,
parameters, engine version, matrix checksums, mode, wall time).  The exit
code is 0 iff every gate of the command passed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__

MODULAR_NOTE = "modular rank is a lower bound for the rational rank: reported dimensions are certified upper bounds"

RESULT_SCHEMA = {
    "type": "object",
    "required": ["manifest", "result", "ok"],
    "properties": {
        "ok": {"type": "boolean"},
        "result": {"type": "object"},
        "manifest": {
            "type": "object",
            "required": ["command", "parameters", "engine_version", "checksums", "mode", "certified", "wall_time"],
            "properties": {
                "command": {"type": "string"},
                "parameters": {"type": "object"},
                "engine_version": {"type": "string"},
                "checksums": {"type": "object", "additionalProperties": {"type": "string"}},
                "mode": {"enum": ["exact", "modular", "n/a"]},
                "certified": {"type": "string"},
                "wall_time": {"type": "number", "minimum": 0},
            },
        },
    },
}


@dataclass
class RunManifest:
    command: str
    parameters: dict
    engine_version: str = __version__
    checksums: dict = field(default_factory=dict)
    mode: str = "n/a"
    certified: str = "exact"
    wall_time: float = 0.0


class CommandFailed(Exception):
    pass


# ----------------------------------------------------------------- cache


def cache_dir():
    d = Path(os.environ.get("MPV_CACHE_DIR", ".mpv-cache"))
    d.mkdir(parents=True, exist_ok=True)
    return d


def _checksum(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def cached_matrix(module, params, build, manifest, use_cache=True):
    """Load or build a SparseMatrix; the cache key is (module, params, version)."""
    from .relations import read_matrix_cache, write_matrix_cache

    key = "-".join([module] + [f"{k}={params[k]}" for k in sorted(params)] + [f"v{__version__}"])
    key = key.replace(",", "+").replace("/", "_")
    path = cache_dir() / f"{key}.mat"
    if use_cache and path.exists():
        M, *_ = read_matrix_cache(path)
    else:
        M = build()
        if use_cache:
            write_matrix_cache(path, M, params["w"], params["N"], params.get("families", "std").split(","))
    if use_cache:
        manifest.checksums[path.name] = _checksum(path)
    return M


# -------------------------------------------------------------- commands


def cmd_bounds(args, man):
    from .bounds import bound_report

    if args.N < 1 or args.w < 0:
        raise CommandFailed("need N >= 1 and w >= 0")
    return bound_report(args.w, args.N, args.improved).as_dict(), True


def _families(args):
    fam = [f.strip() for f in args.families.split(",") if f.strip()]
    if args.octahedral and "OCTA" not in fam:
        fam.append("OCTA")
    return fam


def cmd_rank(args, man):
    from .linalg import echelon
    from .relations import assemble_standard_matrix, standard_matrix

    man.mode = args.mode
    man.certified = "upper-bound" if args.mode == "modular" else "exact"
    if args.bound:
        params = {"w": args.w, "N": args.N, "families": "std"}
        M = cached_matrix("value", params, lambda: standard_matrix(args.w, args.N), man, not args.no_cache)
    else:
        fam = _families(args)
        if "OCTA" in fam and args.N != 4:
            raise CommandFailed("octahedral rows exist only at N = 4")
        params = {"w": args.w, "N": args.N, "families": ",".join(fam), "splits": args.splits}
        M = cached_matrix(
            "lie",
            params,
            lambda: assemble_standard_matrix(args.w, args.N, fam, splits=args.splits),
            man,
            not args.no_cache,
        )
    E = echelon(M, mode=args.mode, seed=args.seed)
    rows, cols = M.shape
    out = {"rows": rows, "cols": cols, "rank": E.rank, "kernel": cols - E.rank}
    if args.bound:
        out["bound"] = cols - E.rank
    if args.mode == "modular":
        out["prime"] = E.p
        out["note"] = MODULAR_NOTE
    return out, True


def cmd_derive(args, man):
    from .numeric import eval_composition_lincomb, eval_lincomb
    from .octahedral import conj_coefficients, derive_conj, extract_octahedral_rows, octahedral_rank_gain
    from .words import composition_str

    man.mode = args.mode
    ok = True
    if args.w == 3:
        rel = derive_conj()
        a, b = conj_coefficients(rel)
        out = {
            "relation": {composition_str(c, 4): str(v) for c, v in rel.items()},
            "normalized": [str(a)] + [str(x) for x in b],
        }
        gain, bound = octahedral_rank_gain(3, mode=args.mode)
        out.update(gain=gain, bound=bound)
        if args.verify is not None:
            res = abs(eval_composition_lincomb(rel, 4))
            out["residual"] = res
            ok = res < args.verify
    elif args.w == 4:
        words = "all" if args.words == "all" else None
        rows = extract_octahedral_rows(4, True, words)
        gain, bound = octahedral_rank_gain(4, words, mode=args.mode)
        out = {"rows": [r.to_json(4, 4) for r in rows] if args.emit_rows else len(rows), "gain": gain, "bound": bound}
        if args.verify is not None:
            res = max((abs(eval_lincomb(r.entries, 4)) for r in rows), default=0.0)
            out["residual"] = res
            ok = res < args.verify
    else:
        raise CommandFailed("derive supports w = 3 and w = 4")
    if args.mode == "modular":
        out["note"] = MODULAR_NOTE
    return out, ok


def cmd_octahedral(args, man):
    from .octahedral import FIVE_WORDS, octahedral_rank_gain
    from .words import word_str

    man.mode = args.mode
    words = "all" if args.words == "all" else None
    gain, bound = octahedral_rank_gain(args.w, words, mode=args.mode)
    used = "all" if words == "all" or args.w == 3 else [word_str(w) for w in FIVE_WORDS]
    return {"weight": args.w, "words": used, "gain": gain, "bound": bound}, True


def cmd_claim(args, man):
    from .lie import verify_claim

    zero, terms = verify_claim(args.p, drop_zero=args.drop_zero)
    h = (args.p - 3) // 2
    return {"p": args.p, "zero": zero, "terms": terms, "expected_terms": h * args.p**2}, zero


def cmd_beta(args, man):
    from .lie import beta_kernel

    dim, basis = beta_kernel(args.level, drop_zero=args.drop_zero)
    out = {"level": args.level, "kernel": dim}
    if args.basis:
        out["basis"] = [{f"{i}^{j}": str(v) for (i, j), v in sorted(b.items())} for b in basis]
    return out, True


def cmd_lie(args, man):
    from .lie import dmrd_kernel, generator_tower_check
    from .words import word_str

    out = {}
    ok = True
    if args.kernel:
        for o in (False, True):
            k = len(dmrd_kernel(args.w, args.N, o, splits=args.splits)) if (not o or args.N == 4) else None
            out["kernel_with_octahedral" if o else "kernel"] = k
    if args.check_generators or not args.kernel:
        rep = generator_tower_check(args.N)
        out["checks"] = rep["checks"]
        out["dims"] = {str(k): v for k, v in rep["dims"].items()}
        out["v3"] = {word_str(w): str(c) for w, c in sorted(rep["v3"].items())}
        ok = rep["ok"]
    return out, ok


def cmd_eval(args, man):
    from .numeric import eval_composition, eval_lincomb
    from .words import parse_composition, parse_word

    out = {}
    if args.symbol:
        c, N = parse_composition(args.symbol)
        methods = ["path", "series"] if args.method == "both" else [args.method]
        for m in methods:
            r = eval_composition(c, N, method=m)
            out[m] = {"re": r.value.real, "im": r.value.imag, "est_error": r.est_error}
        if len(methods) == 2:
            out["agreement"] = abs(complex(out["path"]["re"], out["path"]["im"]) - complex(out["series"]["re"], out["series"]["im"]))
    elif args.word:
        if args.N is None:
            raise CommandFailed("--word needs -N")
        from .lincomb import LinComb

        v = eval_lincomb(LinComb.term(parse_word(args.word, args.N)), args.N)
        out["value"] = {"re": v.real, "im": v.imag}
    else:
        raise CommandFailed("give --symbol or --word")
    return out, True


def cmd_reduce(args, man):
    from .relations import NINE_BASIS, fact_reduction, reduce_row, row_from_json
    from .lincomb import LinComb
    from .words import composition_str, composition_to_word, parse_composition

    red = fact_reduction()
    if args.relation:
        data = json.loads(Path(args.relation).read_text())
        rows = data if isinstance(data, list) else [data]
        images = []
        for obj in rows:
            if (obj["weight"], obj["level"]) != (3, 4):
                raise CommandFailed("reduction is defined at weight 3, level 4")
            images.append(reduce_row(row_from_json(obj).entries, red))
    elif args.symbol:
        c, N = parse_composition(args.symbol)
        if N != 4:
            raise CommandFailed("reduction is defined at level 4")
        s, w = composition_to_word(c, N)
        images = [reduce_row(LinComb.term(w, s), red)]
    else:
        raise CommandFailed("give --symbol or --relation")
    basis = {composition_to_word(c, 4)[1]: c for c in NINE_BASIS}
    sign = {composition_to_word(c, 4)[1]: composition_to_word(c, 4)[0] for c in NINE_BASIS}
    res = []
    for img in images:
        res.append({composition_str(basis[w], 4): str(Fraction(v) * sign[w]) for w, v in sorted(img.items())})
    return {"images": res}, True


COMMANDS = {
    "bounds": cmd_bounds,
    "rank": cmd_rank,
    "derive": cmd_derive,
    "octahedral": cmd_octahedral,
    "claim": cmd_claim,
    "beta": cmd_beta,
    "lie": cmd_lie,
    "eval": cmd_eval,
    "reduce": cmd_reduce,
}


def build_parser():
    p = argparse.ArgumentParser(prog="mpvrel", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    heavy = argparse.ArgumentParser(add_help=False)
    heavy.add_argument("--mode", choices=["exact", "modular"], default="exact")
    heavy.add_argument("--seed", type=int, default=0, help="seed for the modular prime")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", parents=[common], help="closed-form dimension bounds")
    s.add_argument("-w", type=int, required=True)
    s.add_argument("-N", type=int, required=True)
    s.add_argument("--improved", action="store_true")

    s = sub.add_parser("rank", parents=[common, heavy], help="rank of a relation matrix")
    s.add_argument("-w", type=int, required=True)
    s.add_argument("-N", type=int, required=True)
    s.add_argument("--families", default="I,II,III,IV")
    s.add_argument("--octahedral", action="store_true")
    s.add_argument("--splits", choices=["letter", "all"], default="letter")
    s.add_argument("--bound", action="store_true", help="value-level standard system instead")
    s.add_argument("--no-cache", action="store_true")

    s = sub.add_parser("derive", parents=[common, heavy], help="octahedral relations")
    s.add_argument("-w", type=int, required=True)
    s.add_argument("--verify", type=float, default=None, metavar="TOL")
    s.add_argument("--words", choices=["five", "all"], default="five")
    s.add_argument("--emit-rows", action="store_true")

    s = sub.add_parser("octahedral", parents=[common, heavy], help="octahedral rank gain")
    s.add_argument("-w", type=int, choices=[3, 4], required=True)
    s.add_argument("--words", choices=["five", "all"], default="five")

    s = sub.add_parser("claim", parents=[common], help="level p^2 bracket identity")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--drop-zero", action="store_true")

    s = sub.add_parser("beta", parents=[common], help="kernel of the wedge bracket map")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--drop-zero", action="store_true")
    s.add_argument("--basis", action="store_true")

    s = sub.add_parser("lie", parents=[common], help="Lie algebra checks")
    s.add_argument("--check-generators", action="store_true")
    s.add_argument("--kernel", action="store_true")
    s.add_argument("-w", type=int, default=3)
    s.add_argument("-N", type=int, default=4)
    s.add_argument("--splits", choices=["letter", "all"], default="all")

    s = sub.add_parser("eval", parents=[common], help="numeric values")
    s.add_argument("--symbol", help="e.g. 'Li[1,2; 2,3]@4'")
    s.add_argument("--word", help="e.g. 'z3.0.z1'")
    s.add_argument("-N", type=int)
    s.add_argument("--method", choices=["path", "series", "both"], default="path")

    s = sub.add_parser("reduce", parents=[common], help="reduce into the nine-symbol basis")
    s.add_argument("--symbol")
    s.add_argument("--relation", help="relation JSON file")
    return p


def _plain(d, prefix=""):
    for k, v in d.items():
        if isinstance(v, dict) and v and all(not isinstance(x, (dict, list)) for x in v.values()) and len(v) <= 20:
            yield from _plain(v, f"{prefix}{k}.")
        elif isinstance(v, (dict, list)):
            yield f"{prefix}{k}={json.dumps(v, sort_keys=True)}"
        else:
            yield f"{prefix}{k}={str(v).lower() if isinstance(v, bool) else v}"


def main(argv=None):
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "json")}
    man = RunManifest(args.command, params)
    t0 = time.perf_counter()
    try:
        result, ok = COMMANDS[args.command](args, man)
    except (CommandFailed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    man.wall_time = round(time.perf_counter() - t0, 3)
    if man.mode == "modular":
        man.certified = "upper-bound"
    if args.json:
        print(json.dumps({"manifest": asdict(man), "result": result, "ok": ok}, indent=1, sort_keys=True, default=str))
    else:
        for line in _plain(result):
            print(line)
        print(f"ok={str(ok).lower()}")
    return 0 if ok else 1
