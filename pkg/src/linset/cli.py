"""Command-line front end: set-expression and op-sequence parsing,
experiment dispatch, deterministic JSON/CSV/text reports.

Exit codes: 0 complete/PASS, 1 verification FAIL, 2 resource-limited or
inconclusive, 3 usage error.  The window cap honors the LINSET_WINDOW_CAP
environment variable.  JSON is the format of record (schema field: 1);
text output is rendered from the JSON dict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import constructions
from .analysis import dplus, stability_time, stability_time_bounds
from .constructions import TruncatedSet
from .epset import EPSet, WindowCapExceeded
from .linops import OpSequence
from .residue import (
    DecompositionCertificate,
    ResidueSet,
    decompose_equality_case,
    residue_orbit,
)
from .stability import iterate_trace, verify_stabilization

SCHEMA = 1


class SetSyntaxError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


class SetSemanticError(ValueError):
    pass


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# recursive-descent parsing

class _Scanner:
    def __init__(self, text):
        self.text = text
        self.i = 0

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, ch):
        self.skip_ws()
        if self.i >= len(self.text) or self.text[self.i] != ch:
            raise SetSyntaxError("expected '%s'" % ch, self.i)
        self.i += 1

    def at_end(self):
        self.skip_ws()
        return self.i >= len(self.text)

    def integer(self):
        self.skip_ws()
        start = self.i
        if self.i < len(self.text) and self.text[self.i] in "+-":
            self.i += 1
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start or not self.text[start:self.i].lstrip("+-"):
            raise SetSyntaxError("expected an integer", start)
        return int(self.text[start:self.i])

    def fraction(self):
        num = self.integer()
        self.skip_ws()
        if self.i < len(self.text) and self.text[self.i] == "/":
            self.i += 1
            den = self.integer()
            if den == 0:
                raise SetSemanticError("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def name(self):
        self.skip_ws()
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalpha()):
            self.i += 1
        if self.i < len(self.text) and self.text[self.i] in "+-" and \
                self.text[start:self.i] == "AP":
            self.i += 1
        if self.i == start:
            raise SetSyntaxError("expected a name", start)
        return self.text[start:self.i]


def _parse_set(sc: _Scanner):
    ch = sc.peek()
    if ch == "{":
        sc.take("{")
        elems = []
        if sc.peek() != "}":
            elems.append(sc.integer())
            while sc.peek() == ",":
                sc.take(",")
                elems.append(sc.integer())
        sc.take("}")
        return EPSet.from_iterable(elems)
    if not ch:
        raise SetSyntaxError("expected a set expression", sc.i)
    if not ch.isalpha():
        raise SetSyntaxError("unexpected character '%s'" % ch, sc.i)
    name = sc.name()
    if name == "Z":
        return EPSet.integers()
    if name == "N":
        return EPSet.naturals()
    if name == "U":
        sc.take("(")
        parts = [_parse_set(sc)]
        while sc.peek() == ",":
            sc.take(",")
            parts.append(_parse_set(sc))
        sc.take(")")
        out = EPSet.empty()
        for p in parts:
            if isinstance(p, TruncatedSet):
                p = p.to_epset()
            out = out.union(p)
        return out
    if name in ("AP", "AP+", "AP-"):
        sc.take("(")
        r = sc.integer()
        sc.take(",")
        g = sc.integer()
        n0 = None
        if name != "AP":
            sc.take(",")
            n0 = sc.integer()
        sc.take(")")
        if g <= 0:
            raise SetSemanticError("modulus must be positive")
        if name == "AP":
            return EPSet.residue_class(r, g)
        if name == "AP+":
            return EPSet.half_line(r, g, max(r, n0))
        return EPSet.half_line_down(r, g, min(r, n0))
    if name == "bohr":
        sc.take("(")
        alpha = sc.fraction()
        sc.take(",")
        delta = sc.fraction()
        sc.take(",")
        n = sc.integer()
        sc.take(")")
        try:
            return constructions.bohr_truncation(alpha, delta, n)
        except ValueError as e:
            raise SetSemanticError(str(e))
    if name == "sparse":
        sc.take("(")
        delta = sc.fraction()
        sc.take(",")
        n = sc.integer()
        xs = []
        while sc.peek() == ",":
            sc.take(",")
            xs.append(sc.fraction())
        sc.take(")")
        try:
            return constructions.sparse_interval_union(xs, delta, n)
        except ValueError as e:
            raise SetSemanticError(str(e))
    raise SetSyntaxError("unknown set constructor '%s'" % name, sc.i)


def parse_set_expression(text: str):
    """Parse the set grammar: Z, N, {..}, AP, AP+, AP-, U(..), bohr(..),
    sparse(..).  Returns an EPSet or a TruncatedSet."""
    sc = _Scanner(text)
    out = _parse_set(sc)
    if not sc.at_end():
        raise SetSyntaxError("trailing input", sc.i)
    return out


def parse_residue_set(text: str) -> ResidueSet:
    """Parse the residue-set form ``mod g {e1,e2,...}``."""
    sc = _Scanner(text)
    if sc.name() != "mod":
        raise SetSyntaxError("expected 'mod'", 0)
    g = sc.integer()
    if g <= 0:
        raise SetSemanticError("modulus must be positive")
    sc.take("{")
    elems = []
    if sc.peek() != "}":
        elems.append(sc.integer())
        while sc.peek() == ",":
            sc.take(",")
            elems.append(sc.integer())
    sc.take("}")
    if not sc.at_end():
        raise SetSyntaxError("trailing input", sc.i)
    return ResidueSet(g, elems)


def parse_ops(text: str) -> OpSequence:
    """Parse op sequences: ``(a,b)`` atoms, ``^k`` repetition, and the
    cyclic extension marker ``cyc[...]``."""
    sc = _Scanner(text)
    cyclic = False
    if sc.peek() == "c":
        if sc.name() != "cyc":
            raise SetSyntaxError("expected 'cyc'", sc.i)
        sc.take("[")
        cyclic = True
    ops = []
    while sc.peek() == "(":
        sc.take("(")
        a = sc.integer()
        sc.take(",")
        b = sc.integer()
        sc.take(")")
        if a < 1 or b < 1:
            raise SetSemanticError("operation entries must be positive")
        reps = 1
        if sc.peek() == "^":
            sc.take("^")
            reps = sc.integer()
            if reps < 1:
                raise SetSemanticError("repetition count must be positive")
        ops.extend([(a, b)] * reps)
    if cyclic:
        sc.take("]")
    if not sc.at_end():
        raise SetSyntaxError("trailing input", sc.i)
    if not ops:
        raise SetSyntaxError("empty operation sequence", sc.i)
    return OpSequence(tuple(ops), cyclic=cyclic)


def random_ops(length: int, bound: int, seed: int, cyclic: bool = True) -> OpSequence:
    """Seeded pseudo-random sequence of coprime pairs with entries <= bound."""
    rng = random.Random(seed)
    ops = []
    while len(ops) < length:
        a = rng.randint(1, bound)
        b = rng.randint(1, bound)
        if math.gcd(a, b) == 1:
            ops.append((a, b))
    return OpSequence(tuple(ops), bound=bound, cyclic=cyclic)


# ---------------------------------------------------------------------------
# report rendering

def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def render_text(obj, prefix="") -> str:
    lines = []

    def walk(o, pre):
        if isinstance(o, dict):
            for k in sorted(o):
                v = o[k]
                if isinstance(v, (dict, list)):
                    lines.append("%s%s:" % (pre, k))
                    walk(v, pre + "  ")
                else:
                    lines.append("%s%s: %s" % (pre, k, v))
        elif isinstance(o, list):
            for i, v in enumerate(o):
                if isinstance(v, (dict, list)):
                    lines.append("%s- [%d]" % (pre, i))
                    walk(v, pre + "  ")
                else:
                    lines.append("%s- %s" % (pre, v))
        else:
            lines.append("%s%s" % (pre, o))

    walk(obj, prefix)
    return "\n".join(lines) + "\n"


def render_csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _emit(report, rows, header, fmt):
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(rows, header)
    return render_text(report)


def _set_expr(s) -> str:
    return s.to_expr()


# ---------------------------------------------------------------------------
# commands

def cmd_iterate(args) -> tuple[str, int]:
    s = parse_set_expression(args.set)
    if isinstance(s, TruncatedSet):
        s = s.to_epset()
    seq = parse_ops(args.ops)
    tr = iterate_trace(s, seq, max_k=args.max_k)
    report = {
        "schema": SCHEMA,
        "command": "iterate",
        "set": _set_expr(s),
        "ops": str(seq),
        "distinct_count": tr.distinct_count,
        "cycle": list(tr.cycle) if tr.cycle else None,
        "periodicity_onset": list(tr.periodicity_onset) if tr.periodicity_onset else None,
        "closed": tr.closed,
        "resource_flag": tr.resource_flag,
        "iterates": [{"k": k, "set": _set_expr(x)} for k, x in enumerate(tr.iterates)],
    }
    rows = [(k, _set_expr(x), x.full_period()) for k, x in enumerate(tr.iterates)]
    out = _emit(report, rows, ("k", "set", "full_period"), args.format)
    return out, (2 if tr.resource_flag else 0)


def cmd_residue(args) -> tuple[str, int]:
    u = parse_residue_set(args.set)
    if args.g is not None and args.g != u.modulus:
        raise UsageError("--g disagrees with the modulus in --set")
    orb = residue_orbit(u, args.a, args.b, max_steps=args.max_steps)
    report = {
        "schema": SCHEMA,
        "command": "residue",
        "set": u.to_expr(),
        "a": args.a,
        "b": args.b,
        "onset": orb.onset,
        "cycle_length": orb.length,
        "cardinality_preserved": orb.cardinality_preserved,
        "order_divisibility": orb.order_divisibility,
        "states": [s.to_expr() for s in orb.states],
    }
    rows = [(k, s.to_expr()) for k, s in enumerate(orb.states)]
    return _emit(report, rows, ("k", "state"), args.format), 0


def cmd_decompose(args) -> tuple[str, int]:
    u = parse_residue_set(args.set)
    if args.g is not None and args.g != u.modulus:
        raise UsageError("--g disagrees with the modulus in --set")
    res = decompose_equality_case(u, args.a, args.b)
    if isinstance(res, DecompositionCertificate):
        report = {
            "schema": SCHEMA,
            "command": "decompose",
            "set": u.to_expr(),
            "a": args.a,
            "b": args.b,
            "result": "certificate",
            "translation": res.translation,
            "a1": res.a1,
            "b1": res.b1,
            "v": list(res.v),
            "x": list(res.x),
            "subgroup": res.subgroup().to_expr(),
            "verified": res.verify(u),
        }
        code = 0
        rows = [("a1", res.a1), ("b1", res.b1), ("v", " ".join(map(str, res.v))),
                ("x", " ".join(map(str, res.x))), ("subgroup", res.subgroup().to_expr())]
    else:
        report = {
            "schema": SCHEMA,
            "command": "decompose",
            "set": u.to_expr(),
            "a": args.a,
            "b": args.b,
            "result": "failure",
            "failed_hypothesis": res.hypothesis,
        }
        code = 1
        rows = [("failed_hypothesis", res.hypothesis)]
    return _emit(report, rows, ("field", "value"), args.format), code


def cmd_dplus(args) -> tuple[str, int]:
    s = parse_set_expression(args.set)
    if isinstance(s, TruncatedSet):
        s = s.to_epset()
    t, its = stability_time(s, max_k=args.max_k)
    dens = s.upper_density()
    bounds = None
    if 0 < dens <= Fraction(1, 2):
        st, rz = stability_time_bounds(dens)
        bounds = {"doubling": st, "refined": rz}
    report = {
        "schema": SCHEMA,
        "command": "dplus",
        "set": _set_expr(s),
        "density": str(dens),
        "stability_time": t,
        "bounds": bounds,
        "iterates": [{"k": k, "set": _set_expr(x)} for k, x in enumerate(its)],
    }
    rows = [(k, _set_expr(x)) for k, x in enumerate(its)]
    return _emit(report, rows, ("k", "set"), args.format), 0


def cmd_verify(args) -> tuple[str, int]:
    s = parse_set_expression(args.set)
    if isinstance(s, TruncatedSet):
        raise UsageError("the stabilization verifier needs an infinite set")
    seq = parse_ops(args.ops)
    rep = verify_stabilization(s, seq, bound=args.L, c=args.c,
                               max_steps=args.max_steps)
    d = rep.to_json_dict()
    d["command"] = "verify-thm61"
    d["set"] = _set_expr(s)
    d["ops"] = str(seq)
    rows = [(k, d[k]) for k in sorted(d)]
    code = {"PASS": 0, "FAIL": 1, "INCONCLUSIVE": 2}[rep.verdict]
    return _emit(d, rows, ("field", "value"), args.format), code


def cmd_construct(args) -> tuple[str, int]:
    kind = args.kind
    if kind == "ap":
        orbit = constructions.ap_counterexample(args.a, args.b)
        report = {
            "schema": SCHEMA,
            "command": "construct",
            "kind": "ap",
            "set": orbit.start.to_expr(),
            "cycle_length": orbit.cycle_length,
            "stable": orbit.stable,
            "predicted": [{"k": k, "set": orbit.predicted(k).to_expr()}
                          for k in range(0, 2 * orbit.cycle_length + 1)],
        }
        rows = [(p["k"], p["set"]) for p in report["predicted"]]
        return _emit(report, rows, ("k", "set"), args.format), 0
    if kind == "bohr":
        t = constructions.bohr_truncation(Fraction(args.alpha), Fraction(args.delta), args.N)
        points = sorted({max(1, args.N * i // 10) for i in range(1, 11)})
        profile = []
        for n in points:
            cnt = sum(1 for x in t.elems if 1 <= x <= n)
            profile.append((n, cnt, Fraction(cnt, n)))
        report = {
            "schema": SCHEMA, "command": "construct", "kind": "bohr",
            "alpha": args.alpha, "delta": args.delta, "n": args.N,
            "count": len(t), "density": str(t.density()),
            "profile": [{"n": n, "count": c, "density": str(d)}
                        for n, c, d in profile],
            "set": t.to_expr(),
        }
        rows = [(n, c, str(d)) for n, c, d in profile]
        return _emit(report, rows, ("n", "count", "density"), args.format), 0
    if kind == "sparse":
        xs = [Fraction(x) for x in args.xs.split(",")]
        t = constructions.sparse_interval_union(xs, Fraction(args.delta), args.N)
        report = {
            "schema": SCHEMA, "command": "construct", "kind": "sparse",
            "delta": args.delta, "n": args.N, "count": len(t),
            "set": t.to_expr(),
        }
        rows = [(x,) for x in t.elems]
        return _emit(report, rows, ("element",), args.format), 0
    if kind == "parity":
        fx = constructions.parity_flip_sequence([int(c) for c in args.bits])
        report = {
            "schema": SCHEMA, "command": "construct", "kind": "parity",
            "bits": args.bits,
            "prediction_rule": "prefix-parity",
            "ops": str(fx.seq),
            "predictions": [{"k": k, "set": x.to_expr()}
                            for k, x in enumerate(fx.predictions)],
        }
        rows = [(p["k"], p["set"]) for p in report["predictions"]]
        return _emit(report, rows, ("k", "set"), args.format), 0
    if kind == "scaled":
        rep = constructions.scaled_divergence(args.d, args.a, args.b, steps=args.steps)
        report = {
            "schema": SCHEMA, "command": "construct", "kind": "scaled",
            "d": args.d,
            "iterates": [{"k": k, "set": x.to_expr(),
                          "divisible": rep.divisible[k],
                          "min_nonzero_abs": rep.min_nonzero_abs[k]}
                         for k, x in enumerate(rep.iterates)],
            "all_distinct": rep.all_distinct,
        }
        rows = [(i["k"], i["set"], i["divisible"], i["min_nonzero_abs"])
                for i in report["iterates"]]
        return _emit(report, rows, ("k", "set", "divisible", "min_nonzero_abs"),
                     args.format), 0
    raise UsageError("unknown construction kind '%s'" % kind)


def _sweep_cell(cell):
    set_expr, ops_expr, bound, c, max_steps = cell
    s = parse_set_expression(set_expr)
    if isinstance(s, TruncatedSet):
        s = s.to_epset()
    seq = parse_ops(ops_expr)
    rep = verify_stabilization(s, seq, bound=bound, c=c, max_steps=max_steps)
    d = rep.to_json_dict()
    d["set"] = set_expr
    d["ops"] = ops_expr
    return d


def cmd_sweep(args) -> tuple[str, int]:
    sets = [x.strip() for x in args.sets.split(";") if x.strip()]
    ops_entries = [x.strip() for x in args.ops_list.split(";") if x.strip()]
    expanded_ops = []
    for entry in ops_entries:
        if entry.startswith("rand("):
            inner = entry[5:].rstrip(")")
            n_str, l_str = inner.split(",")
            seq = random_ops(int(n_str), int(l_str), args.seed)
            expanded_ops.append(str(seq))
        else:
            expanded_ops.append(entry)
    cells = [(se, oe, args.L, args.c, args.max_steps)
             for se in sets for oe in expanded_ops]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_sweep_cell, cells))
    else:
        results = [_sweep_cell(c) for c in cells]
    summary = {"PASS": 0, "FAIL": 0, "INCONCLUSIVE": 0}
    for r in results:
        summary[r["verdict"]] += 1
    report = {
        "schema": SCHEMA,
        "command": "sweep",
        "seed": args.seed,
        "cells": results,
        "summary": summary,
    }
    rows = [(r["set"], r["ops"], r["verdict"], r["distinct_count"],
             r["bound"], r["observed_k0"], r["observed_g"]) for r in results]
    code = 0
    if summary["FAIL"]:
        code = 1
    elif summary["INCONCLUSIVE"]:
        code = 2
    return _emit(report, rows, ("set", "ops", "verdict", "distinct",
                                "bound", "k0", "g"), args.format), code


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="linset", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("iterate", help="trace iterates of composed operations")
    p.add_argument("--set", required=True)
    p.add_argument("--ops", required=True)
    p.add_argument("--max-k", type=int, default=256, dest="max_k")
    common(p)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("residue", help="orbit of a residue set under aU+bU")
    p.add_argument("--set", required=True, help='e.g. "mod 12 {0,3,4}"')
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=None, dest="max_steps")
    common(p)
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("decompose", help="equality-case decomposition certificate")
    p.add_argument("--set", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dplus", help="iterated positive difference sets")
    p.add_argument("--set", required=True)
    p.add_argument("--max-k", type=int, default=128, dest="max_k")
    common(p)
    p.set_defaults(func=cmd_dplus)

    p = sub.add_parser("verify-thm61", help="bounded-composition stabilization check")
    p.add_argument("--set", required=True)
    p.add_argument("--ops", required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--c", type=int, default=10)
    p.add_argument("--max-steps", type=int, default=20000, dest="max_steps")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="generate a named construction")
    p.add_argument("--kind", required=True,
                   choices=("ap", "bohr", "sparse", "parity", "scaled"))
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--alpha", default="0")
    p.add_argument("--delta", default="1/6")
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--xs", default="1,4,27,256,3125,46656")
    p.add_argument("--bits", default="0")
    p.add_argument("--steps", type=int, default=5)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="cartesian stabilization sweep")
    p.add_argument("--sets", required=True, help="semicolon-separated set expressions")
    p.add_argument("--ops-list", required=True, dest="ops_list",
                   help="semicolon-separated op expressions; rand(n,L) allowed")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--c", type=int, default=10)
    p.add_argument("--max-steps", type=int, default=20000, dest="max_steps")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_sweep)
    return ap


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        out, code = args.func(args)
    except UsageError as e:
        sys.stderr.write("usage error: %s\n" % e)
        return 3
    except (SetSyntaxError, SetSemanticError, ValueError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 3
    except WindowCapExceeded as e:
        sys.stderr.write("resource limit: %s\n" % e)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
