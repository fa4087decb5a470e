"""Command-line harness.

Every verb accepts --config FILE (JSON); explicit flags override file
values, file values override built-in defaults.  Each CSV starts with a
`# config:` line echoing the full merged configuration, so a run can be
reproduced from its output alone.  Exit status: 0 success, 1 usage error,
2 acceptance failure from `verify`.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import core, coverage, depth, series, verify, walks
from .core import ColoredWord, FormatError
from .sampler import sample_simple_melon, sample_uniform_tree, make_rng


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags (argparse defaults are all
    None so an unset flag is distinguishable from an explicit one)."""
    cfg = dict(defaults)
    path = getattr(args, "config", None)
    if path:
        with open(path) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise FormatError("config file must hold a JSON object")
        unknown = set(loaded) - set(defaults)
        if unknown:
            raise FormatError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _emit_csv(path, verb: str, cfg: dict, header: str, rows) -> None:
    fh = _open_out(path)
    try:
        echo = dict(cfg, verb=verb)
        fh.write("# config: " + json.dumps(echo, sort_keys=True) + "\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _emit_json(path, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_data_lines(path):
    fh = open(path) if path else sys.stdin
    try:
        return [ln.strip() for ln in fh
                if ln.strip() and not ln.lstrip().startswith("#")]
    finally:
        if fh is not sys.stdin:
            fh.close()


def _parse_sizes(raw) -> list:
    if isinstance(raw, list):
        return [int(x) for x in raw]
    return [int(tok) for tok in str(raw).split(",") if tok]


# --- verbs ------------------------------------------------------------------


def cmd_sample(args) -> int:
    cfg = _merge_config(args, {
        "dim": 2, "size": 8, "count": 1, "seed": 0, "simple": False,
        "out": None,
    })
    draw = sample_simple_melon if cfg["simple"] else sample_uniform_tree
    fh = _open_out(cfg["out"])
    try:
        fh.write("# config: " + json.dumps(dict(cfg, verb="sample"),
                                           sort_keys=True) + "\n")
        for i in range(cfg["count"]):
            rng = make_rng(cfg["seed"], ("sample", i))
            fh.write(core.serialize_tree(draw(cfg["dim"], cfg["size"], rng)) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _parse_word_line(line: str, alphabet=None) -> ColoredWord:
    if ";" not in line:
        raise FormatError(f"word line needs 'root;letters': {line!r}")
    root_tok, rest = line.split(";", 1)
    if "," in rest or "," in root_tok:
        letters = [int(t) for t in rest.split(",") if t]
    else:
        letters = [int(ch) for ch in rest]
    root = int(root_tok)
    if alphabet is None:
        alphabet = tuple(range(max([root] + letters) + 1))
    return ColoredWord(root, tuple(letters), tuple(alphabet))


def _word_repr(word: ColoredWord) -> str:
    if max(word.alphabet) > 9:
        return f"{word.root_letter};" + ",".join(str(x) for x in word.letters)
    return f"{word.root_letter};" + "".join(str(x) for x in word.letters)


def cmd_depth(args) -> int:
    cfg = _merge_config(args, {
        "input": None, "alphabet": None, "out": None,
    })
    alphabet = None
    if cfg["alphabet"]:
        alphabet = tuple(int(t) for t in str(cfg["alphabet"]).split(","))
    rows = []
    warned = False
    for line in _read_data_lines(cfg["input"]):
        w = _parse_word_line(line, alphabet)
        if len(w.alphabet) > 3 and not warned:
            print("note: stack_depth for alphabets larger than 3 letters is "
                  "experimental", file=sys.stderr)
            warned = True
        rows.append((_word_repr(w), depth.tree_depth(w),
                     depth.depth_via_array(w), depth.stack_depth(w)))
    _emit_csv(cfg["out"], "depth", cfg, "word,tree_depth,depth,stack_depth", rows)
    return 0


def cmd_lemma2(args) -> int:
    cfg = _merge_config(args, {"dim": 2, "json": None})
    lam = coverage.lambda_delta(cfg["dim"])
    _emit_json(cfg["json"], {
        "dim": cfg["dim"],
        "lambda_delta": str(lam),
        "lambda_delta_float": float(lam),
        "mean_block_length": str(1 / lam),
    })
    return 0


def cmd_hausdorff(args) -> int:
    cfg = _merge_config(args, {
        "dim": 2, "sizes": "1024,2048,4096,8192,16384,32768,65536",
        "reps": 200, "seed": 0, "metric": "tree", "out": None, "json": None,
    })
    if cfg["metric"] not in ("tree", "ball"):
        raise FormatError("metric must be 'tree' or 'ball'")
    sizes = _parse_sizes(cfg["sizes"])
    stats = coverage.mc_depth_samples(cfg["dim"], sizes, cfg["reps"], cfg["seed"])
    col = 0 if cfg["metric"] == "tree" else 2
    means = [stats[s][col] for s in sizes]
    errs = [stats[s][col + 1] for s in sizes]
    fit = coverage.fit_loglog(sizes, means, errs)
    slope = float(np.polyfit([stats[s][0] for s in sizes],
                             [stats[s][2] for s in sizes], 1)[0])
    _emit_csv(cfg["out"], "hausdorff", cfg, "n,mean_depth,stderr",
              [(s, repr(float(m)), repr(float(e)))
               for s, m, e in zip(sizes, means, errs)])
    _emit_json(cfg["json"], {
        "exponent": float(fit.exponent),
        "exponent_err": float(fit.exponent_err),
        "d_H": 1.0 / float(fit.exponent),
        "lambda_delta_ratio": slope,
        "lambda_delta_exact": str(coverage.lambda_delta(cfg["dim"])),
        "metric": cfg["metric"],
    })
    return 0


def cmd_spectral(args) -> int:
    cfg = _merge_config(args, {
        "dim": 2, "size": 2**15, "t_max": 2048, "walkers": 100,
        "graphs": 1000, "seed": 0, "ensemble": "general",
        "out": None, "json": None,
    })
    curve = walks.simulate_return_curve(
        cfg["dim"], cfg["size"], cfg["t_max"], cfg["walkers"], cfg["graphs"],
        cfg["seed"], cfg["ensemble"])
    fit = walks.estimate_spectral_dimension(curve)
    _emit_csv(cfg["out"], "spectral", cfg, "t,P,stderr",
              [(t, repr(float(p)), repr(float(e)))
               for t, p, e in zip(curve.times, curve.probs, curve.stderrs)])
    _emit_json(cfg["json"], {
        "d_S": float(fit.d_s),
        "err": float(fit.d_s_err),
        "window": [int(x) for x in fit.window],
        "n": cfg["size"],
        "D": cfg["dim"],
        "ensemble": cfg["ensemble"],
    })
    return 0


def cmd_series(args) -> int:
    cfg = _merge_config(args, {
        "dim": 2, "order": 128, "target": "Hempty", "fit": False,
        "out": None, "json": None,
    })
    target = cfg["target"]
    if target not in verify.SERIES_TARGETS:
        raise FormatError(f"target must be one of {sorted(verify.SERIES_TARGETS)}")
    h = verify.series_by_name(cfg["dim"], cfg["order"], target)
    _emit_csv(cfg["out"], "series", cfg, "N,coefficient",
              [(n, h.coeffs[n]) for n in range(cfg["order"] + 1)])
    if cfg["fit"]:
        fit = series.fit_singularity(h, cfg["dim"])
        _emit_json(cfg["json"], {
            "z0": float(series.singular_point(cfg["dim"])),
            "z0_exact": str(series.singular_point(cfg["dim"])),
            "exponent": float(fit.exponent),
            "predicted_exponent": verify.SERIES_TARGETS[target],
        })
    return 0


def cmd_walk_exact(args) -> int:
    cfg = _merge_config(args, {
        "tree": None, "t_max": 20, "out": None, "json": None,
    })
    if not cfg["tree"]:
        raise FormatError("walk-exact needs --tree FILE (serialized tree)")
    lines = _read_data_lines(cfg["tree"])
    if not lines:
        raise FormatError("tree file is empty")
    tree = core.parse_tree(lines[0])
    g = core.build_melon_graph(tree, closed=False)
    dist = walks.exact_walk_distribution(g, cfg["t_max"], g.ext_in, exact=True)
    rows = [(t, dist[t][g.ext_in], dist[t][g.ext_out])
            for t in range(cfg["t_max"] + 1)]
    P = walks.return_matrix(walks.first_return_matrix(tree, cfg["t_max"]))
    match = all(P.oo[t] == dist[t][g.ext_in] and P.ob[t] == dist[t][g.ext_out]
                for t in range(cfg["t_max"] + 1))
    _emit_csv(cfg["out"], "walk-exact", cfg, "t,return_prob,transit_prob", rows)
    _emit_json(cfg["json"], {
        "dim": tree.dim,
        "n": tree.n,
        "t_max": cfg["t_max"],
        "series_match": match,
    })
    return 0 if match else 2


def cmd_verify(args) -> int:
    cfg = _merge_config(args, {"quick": False, "full": False, "seed": 0})
    if cfg["quick"] and cfg["full"]:
        raise FormatError("choose one of --quick / --full")
    tier = verify.full_checks if cfg["full"] else verify.quick_checks
    failed = 0
    for r in tier(cfg["seed"]):
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name}: {r.detail}")
        failed += not r.ok
    print(f"{'OK' if not failed else 'FAILED'}: {failed} failing check(s)")
    return 0 if failed == 0 else 2


# --- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="melonlab")
    sub = top.add_subparsers(dest="verb", required=True)

    def verb(name, fn, **flags):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--config", type=str, default=None,
                       help="JSON config file; flags override its values")
        for flag, kind in flags.items():
            opt = "--" + flag.replace("_", "-")
            if kind is bool:
                p.add_argument(opt, action="store_const", const=True,
                               default=None, dest=flag)
            else:
                p.add_argument(opt, type=kind, default=None, dest=flag)
        return p

    verb("sample", cmd_sample, dim=int, size=int, count=int, seed=int,
         simple=bool, out=str)
    verb("depth", cmd_depth, input=str, alphabet=str, out=str)
    verb("lemma2", cmd_lemma2, dim=int, json=str)
    verb("hausdorff", cmd_hausdorff, dim=int, sizes=str, reps=int, seed=int,
         metric=str, out=str, json=str)
    verb("spectral", cmd_spectral, dim=int, size=int, t_max=int, walkers=int,
         graphs=int, seed=int, ensemble=str, out=str, json=str)
    verb("series", cmd_series, dim=int, order=int, target=str, fit=bool,
         out=str, json=str)
    verb("walk-exact", cmd_walk_exact, tree=str, t_max=int, out=str, json=str)
    verb("verify", cmd_verify, quick=bool, full=bool, seed=int)
    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except (FormatError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
