"""Command-line front end.  Every subcommand prints one JSON report on stdout.

Exit status: 0 success, 1 certificate rejected by ``verify``, 2 bad input,
3 cap exceeded or inconclusive, 4 internal postcondition failure.
"""

import argparse
import json
import sys
import time

from . import __version__
from .autgrp import SearchCapExceeded, automorphism_group, canonical_labeling, fixing_number
from .constructions import PostconditionError, cached_witness, cayley_digraph, fixing_family, frucht_graph
from .graph import Graph6Error, decode_graph6, encode_graph6
from .groups import (
    CapExceeded, faithful_actions, find_embedding, isomorphic_to_spec, mu_search, parse_spec,
)
from .perm import PermGroup
from .search import (
    DEFAULT_BUDGET, alpha_sweep, decide_realizable, edge_orbits, find_graph_with_aut,
    first_realizable, orbit_witness, verify_certificate,
)

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_CAP, EXIT_POSTCONDITION = 0, 1, 2, 3, 4

CERTIFIED = "certified"
VERIFIED = "constructed-and-verified"
INCONCLUSIVE = "inconclusive"


class InputError(ValueError):
    pass


class Inconclusive(Exception):
    """Carries a full report whose outcome is not decided at this budget."""

    def __init__(self, payload):
        super().__init__(payload.get("reason", "inconclusive"))
        self.payload = payload


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _spec(text):
    try:
        return parse_spec(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _graph(text):
    if text is None or text == "-":
        text = sys.stdin.readline()
    try:
        return decode_graph6(text.strip())
    except Graph6Error as exc:
        raise InputError(f"graph6: {exc}") from None


def _cycles(perms):
    return [str(p) for p in perms]


def _action_json(action):
    return {
        "key": list(action.key) if action.key is not None else None,
        "generators": _cycles(action.images),
        "orbit_sizes": action.orbit_sizes(),
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_aut(args):
    g = _graph(args.graph6)
    aut = automorphism_group(g, cap=args.cap)
    return {
        "n": g.n,
        "order": aut.order,
        "generators": _cycles(aut.generators),
        "orbits": [[x + 1 for x in o] for o in aut.orbits()] if g.n else [],
        "status": CERTIFIED,
    }


def cmd_fix(args):
    g = _graph(args.graph6)
    size, witness = fixing_number(g, cap=args.cap)
    return {"n": g.n, "fixing_number": size, "fixing_set": [v + 1 for v in witness], "status": CERTIFIED}


def cmd_canon(args):
    g = _graph(args.graph6)
    lab = canonical_labeling(g, cap=args.cap)
    inv = [0] * g.n
    for pos, v in enumerate(lab.tolist()):
        inv[v] = pos
    canon = g.relabel(inv)
    return {"n": g.n, "canonical_graph6": encode_graph6(canon),
            "labeling": [int(v) + 1 for v in lab], "status": CERTIFIED}


def _gens_arg(spec, text):
    if text is None:
        return list(spec.generators)
    try:
        gens = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError("--gens expects comma-separated element indices") from None
    for x in gens:
        if not 0 <= x < spec.order:
            raise InputError(f"element index {x} out of range for {spec}")
    return gens


def cmd_cayley(args):
    spec = _spec(args.group)
    try:
        cd = cayley_digraph(spec, _gens_arg(spec, args.gens))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {
        "group": spec.text(),
        "n": cd.n,
        "colors": cd.ncolors,
        "arcs": [[s + 1, t + 1, c] for s, t, c in sorted(cd.arcs)],
        "status": VERIFIED,
    }
    if args.dot:
        out["dot"] = cd.to_dot()
    return out


def cmd_frucht(args):
    spec = _spec(args.group)
    try:
        g = frucht_graph(spec, _gens_arg(spec, args.gens))
    except ValueError as exc:
        if isinstance(exc, CapExceeded):
            raise
        raise InputError(str(exc)) from None
    aut = automorphism_group(g, cap=max(g.n, 1))
    size, _ = fixing_number(g, cap=max(g.n, 1))
    out = {"group": spec.text(), "n": g.n, "graph6": encode_graph6(g), "aut_order": aut.order,
           "aut_isomorphic": True, "fixing_number": size, "status": VERIFIED}
    if args.dot:
        out["dot"] = g.to_dot()
    return out


def cmd_mu(args):
    spec = _spec(args.group)
    mu = mu_search(spec, args.max)
    return {"group": spec.text(), "max": args.max, "mu": mu, "status": CERTIFIED}


def cmd_embed(args):
    spec = _spec(args.group)
    images, exhaustive = find_embedding(spec, args.sym)
    out = {"group": spec.text(), "k": args.sym, "embeddable": images is not None,
           "exhaustive": exhaustive}
    if images is not None:
        group = PermGroup(args.sym, images) if args.sym else PermGroup(1, [])
        if not isomorphic_to_spec(group, spec):
            raise PostconditionError("embedding image is not isomorphic to the group")
        out["witness"] = _cycles(images)
        out["witness_isomorphic"] = True
        out["status"] = CERTIFIED if exhaustive else VERIFIED
    elif exhaustive:
        out["status"] = CERTIFIED
    else:
        out["status"] = INCONCLUSIVE
        out["reason"] = "k above the exhaustive cap and no coset construction found"
        raise Inconclusive(out)
    return out


def cmd_orbits(args):
    spec = _spec(args.group)
    rows = []
    for action in faithful_actions(spec, args.degree):
        part = edge_orbits(action)
        row = _action_json(action)
        row["edge_orbit_sizes"] = part.sizes
        row["edge_orbits"] = [[[a + 1, b + 1] for a, b in orb] for orb in part.orbits]
        rows.append(row)
    return {"group": spec.text(), "degree": args.degree, "actions": rows, "status": CERTIFIED}


def cmd_witness(args):
    spec = _spec(args.group)
    rows = []
    for action in faithful_actions(spec, args.degree):
        gamma = orbit_witness(action)
        row = _action_json(action)
        row["gamma"] = str(gamma) if gamma is not None else None
        rows.append(row)
    return {"group": spec.text(), "degree": args.degree, "actions": rows, "status": CERTIFIED}


def cmd_realizable(args):
    spec = _spec(args.group)
    verdict = decide_realizable(spec, args.n, threads=args.threads)
    cert = verdict.certificate()
    if args.cert:
        with open(args.cert, "w") as fh:
            fh.write(verdict.certificate_text())
    out = {"group": spec.text(), "n": args.n, "outcome": verdict.outcome,
           "realizable": verdict.realizable, "certificate": cert}
    if verdict.witness is not None:
        out["witness_graph6"] = encode_graph6(verdict.witness)
        out["status"] = VERIFIED
    elif verdict.outcome == "inconclusive":
        out["status"] = INCONCLUSIVE
        out["reason"] = "edge-orbit unions exceed the enumeration cap"
        raise Inconclusive(out)
    else:
        out["status"] = CERTIFIED
    return out


def cmd_alpha(args):
    spec = _spec(args.group)
    rows = alpha_sweep(spec, args.max, threads=args.threads, budget=args.budget, seed=args.seed)
    table = []
    for row in rows:
        entry = {"n": row.n, "outcome": row.outcome,
                 "status": CERTIFIED if row.certified else ("upper-bound-search" if row.n > 12 else INCONCLUSIVE)}
        if row.witness is not None:
            entry["witness_graph6"] = encode_graph6(row.witness)
        table.append(entry)
    alpha = first_realizable(rows)
    certified_below = all(r.certified for r in rows if alpha is None or r.n <= alpha)
    return {"group": spec.text(), "max": args.max, "rows": table, "alpha": alpha,
            "alpha_certified": alpha is not None and certified_below,
            "status": CERTIFIED if certified_below else INCONCLUSIVE}


def cmd_findgraph(args):
    spec = _spec(args.group)
    if args.no_cache:
        g, cached = find_graph_with_aut(spec, args.n, budget=args.budget, seed=args.seed,
                                        threads=args.threads), False
    else:
        g, cached = cached_witness(spec, args.n, seed=args.seed, budget=args.budget)
    out = {"group": spec.text(), "n": args.n, "budget": args.budget, "found": g is not None}
    if g is not None:
        aut = automorphism_group(g, cap=max(g.n, 1))
        if not isomorphic_to_spec(aut, spec):
            raise PostconditionError("found graph has the wrong automorphism group")
        out.update(graph6=encode_graph6(g), aut_order=aut.order, aut_isomorphic=True, status=VERIFIED)
    else:
        out["status"] = "not-found"
    return out


def cmd_fixfamily(args):
    spec = _spec(args.group)
    try:
        family = fixing_family(spec)
    except ValueError as exc:
        if isinstance(exc, CapExceeded):
            raise
        raise InputError(str(exc)) from None
    graphs = [{"m": m, "n": g.n, "fixing_number": m, "graph6": encode_graph6(g)} for g, m in family]
    return {"group": spec.text(), "graphs": graphs, "fixing_numbers": [m for _, m in family],
            "status": VERIFIED}


def cmd_verify(args):
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read certificate: {exc}") from None
    if isinstance(doc, dict) and "certificate" in doc and "format" not in doc:
        doc = doc["certificate"]
    if not isinstance(doc, dict):
        raise InputError("certificate must be a JSON object")
    ok, problems = verify_certificate(doc)
    return {"file": args.certificate, "valid": ok, "problems": problems,
            "outcome": doc.get("outcome"), "status": CERTIFIED if ok else "rejected"}


# ---------------------------------------------------------------------------
# parser and driver
# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")

    parser = argparse.ArgumentParser(prog="hamsym", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, text in (("aut", cmd_aut, "automorphism group of a graph6 graph"),
                             ("fix", cmd_fix, "fixing number of a graph6 graph"),
                             ("canon", cmd_canon, "canonical relabelling of a graph6 graph")):
        p = add(name, func, text)
        p.add_argument("graph6", nargs="?", help="graph6 string; '-' or omitted reads stdin")
        p.add_argument("--cap", type=int, default=4096, help="vertex cap for the search")

    p = add("cayley", cmd_cayley, "Cayley colour digraph")
    p.add_argument("--group", required=True)
    p.add_argument("--gens", help="comma-separated element indices (default: catalog generators)")
    p.add_argument("--dot", action="store_true")

    p = add("frucht", cmd_frucht, "Frucht graph, verified")
    p.add_argument("--group", required=True)
    p.add_argument("--gens")
    p.add_argument("--dot", action="store_true")

    p = add("mu", cmd_mu, "minimal faithful permutation degree")
    p.add_argument("--group", required=True)
    p.add_argument("--max", type=int, required=True)

    p = add("embed", cmd_embed, "does the group embed in S_K")
    p.add_argument("--group", required=True)
    p.add_argument("--sym", type=int, required=True)

    for name, func, text in (("orbits", cmd_orbits, "edge orbits of every faithful action"),
                             ("witness", cmd_witness, "orbit witness of every faithful action")):
        p = add(name, func, text)
        p.add_argument("--group", required=True)
        p.add_argument("--degree", type=int, required=True)

    p = add("realizable", cmd_realizable, "decide exact realizability on N vertices")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cert", help="also write the certificate to this file")

    p = add("alpha", cmd_alpha, "realizability sweep over n = 1..N")
    p.add_argument("--group", required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)

    p = add("findgraph", cmd_findgraph, "random search for a graph with a given group")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-cache", action="store_true")

    p = add("fixfamily", cmd_fixfamily, "graphs realizing every fixing number of the group")
    p.add_argument("--group", required=True)

    p = add("verify", cmd_verify, "re-check a realizability certificate")
    p.add_argument("certificate")
    return parser


def _inputs(args):
    # thread count is left out so reports match byte for byte at any value
    skip = {"func", "command", "pretty", "timing", "threads"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def render_pretty(report):
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            cols = list(value[0].keys())
            lines.append(f"{key}:")
            cells = [[json.dumps(r.get(c)) if not isinstance(r.get(c), str) else r.get(c)
                      for c in cols] for r in value]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for row in cells:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)))
        elif isinstance(value, dict):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value if isinstance(value, str) else json.dumps(value)}")
    return "\n".join(lines) + "\n"


def run_command(argv, stdout=None, stderr=None):
    """Run one subcommand; returns ``(exit_status, report or None)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    start = time.perf_counter()
    status = EXIT_OK
    try:
        payload = args.func(args)
        if payload.get("status") == "rejected":
            status = EXIT_REJECTED
    except Inconclusive as exc:
        payload, status = exc.payload, EXIT_CAP
    except InputError as exc:
        print(f"hamsym {args.command}: {exc}", file=stderr)
        return EXIT_INPUT, None
    except (CapExceeded, SearchCapExceeded) as exc:
        print(f"hamsym {args.command}: cap exceeded: {exc}", file=stderr)
        payload, status = {"status": INCONCLUSIVE, "reason": str(exc)}, EXIT_CAP
    except (PostconditionError, AssertionError) as exc:
        print(f"hamsym {args.command}: postcondition failed: {exc}", file=stderr)
        return EXIT_POSTCONDITION, None
    report = {"command": args.command, "inputs": _inputs(args), "version": __version__,
              "seed": getattr(args, "seed", None)}
    report.update(payload)
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    if args.pretty:
        stdout.write(render_pretty(report))
    else:
        stdout.write(json.dumps(report, sort_keys=True) + "\n")
    return status, report


def main(argv=None):
    status, _ = run_command(sys.argv[1:] if argv is None else argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
