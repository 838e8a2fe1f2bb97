"""Command-line entry point: ``lmrm <subcommand> ...``.

Results go to stdout as JSON (CSV for ``asymptote``). Counts, sizes,
messages and bounds are decimal strings so arbitrarily large integers
survive any JSON reader. Exit status: 0 success, 1 precondition failure
(JSON error on stderr), 2 usage error.
"""

import argparse
import json
import re
import sys

from . import asymptotics, ballvolume, bounds, channel, codec, oracle
from .constructions import (
    construct_congruence,
    construct_direct_product,
    construct_semidirect,
    subgroup_closure,
)
from .errors import LMRMError
from .perm import Permutation, dist_inf

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text, n=None):
    """One-line images ("2 3 1", "2,3,1", "[2, 3, 1]") or cycle notation ("(1,2,6)(3,4)").

    Cycle notation needs ``n`` unless the largest moved point is the degree.
    """
    text = text.strip()
    if text.startswith("("):
        if _CYCLE.sub("", text).strip():
            raise LMRMError(f"malformed cycle notation: {text!r}")
        cycles = [[int(x) for x in re.split(r"[,\s]+", c.strip()) if x] for c in _CYCLE.findall(text)]
        points = [p for c in cycles for p in c]
        if len(points) != len(set(points)):
            raise LMRMError(f"cycles are not disjoint: {text!r}")
        degree = n if n is not None else max(points, default=1)
        if any(not 1 <= p <= degree for p in points):
            raise LMRMError(f"cycle point outside [1, {degree}]: {text!r}")
        images = list(range(1, degree + 1))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                images[a - 1] = b
        return Permutation(images)
    tokens = [t for t in re.split(r"[,\s\[\]]+", text) if t]
    try:
        f = Permutation(int(t) for t in tokens)
    except ValueError as exc:
        raise LMRMError(str(exc)) from None
    if n is not None and len(f) != n:
        raise LMRMError(f"permutation has degree {len(f)}, expected {n}")
    return f


def parse_generator_file(path):
    """Read ``degree N``, ``[Name]`` section headers and one permutation per line.

    Returns ``(degree, {section: [Permutation]})``; lines before any header go to section "".
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    degree = None
    sections = {"": []}
    current = ""
    pending = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"degree\s+(\d+)", line, flags=re.IGNORECASE)
        if m:
            degree = int(m.group(1))
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            current = m.group(1)
            sections.setdefault(current, [])
            continue
        pending.append((current, line))
    for name, line in pending:
        sections[name].append(parse_permutation(line, degree))
    if degree is None:
        found = {len(g) for gens in sections.values() for g in gens}
        if len(found) != 1:
            raise LMRMError(f"{path}: cannot infer the degree; add a 'degree N' line")
        degree = found.pop()
    return degree, sections


def _constituent(spec):
    kind, _, rest = spec.partition(":")
    if kind == "cong":
        m, e = (int(x) for x in rest.split(":"))
        return construct_congruence(m, e)
    if kind == "gens":
        degree, sections = parse_generator_file(rest)
        return subgroup_closure([g for gens in sections.values() for g in gens], n=degree)
    raise LMRMError(f"unknown constituent spec {spec!r}; use cong:M:E or gens:PATH")


def _construct(args):
    if args.family == "congruence":
        code = construct_congruence(args.n, args.d)
    elif args.family == "product":
        code = construct_direct_product([_constituent(s) for s in args.specs], args.n, args.k)
    else:
        degree, sections = parse_generator_file(args.file)
        if "H" not in sections or "K" not in sections:
            raise LMRMError(f"{args.file}: needs [H] and [K] sections")
        H = subgroup_closure(sections["H"], n=degree)
        K = subgroup_closure(sections["K"], n=degree)
        code = construct_semidirect(H, K)
    return code.to_json(include_members=args.members)


def _encode(args):
    f = codec.encode(args.n, args.d, int(args.m))
    return {"n": args.n, "d": args.d, "message": str(args.m), "codeword": str(f)}


def _decode(args):
    f, m = codec.decode(args.n, args.d, parse_permutation(args.received, args.n))
    return {"n": args.n, "d": args.d, "codeword": str(f), "message": str(m)}


def _dist(args):
    f = parse_permutation(args.f)
    g = parse_permutation(args.g, len(f))
    return {"distance": str(dist_inf(f, g))}


def _ball(args):
    if args.n < 1 or args.r < 0:
        raise LMRMError(f"need n >= 1 and r >= 0, got n={args.n}, r={args.r}")
    return ballvolume.ball_volume(args.n, args.r).to_json()


def _bounds(args):
    return bounds.bound_report(args.n, args.d, subgroup=args.subgroup).to_json()


def _search(args):
    if args.kind == "code":
        result = oracle.max_code_search(args.n, args.d, budget=args.budget, prove=args.prove)
    else:
        result = oracle.max_anticode_search(args.n, args.d, budget=args.budget)
    return result.to_json()


def _asymptote(args):
    text = asymptotics.curves_csv(args.step)
    if args.out is None:
        return text
    with open(args.out, "w", newline="") as fh:
        fh.write(text)
    return {"out": args.out, "rows": str(text.count("\n") - 1), "crossover": f"{asymptotics.gv_crossover():.8f}"}


def _simulate(args):
    report = channel.simulate(args.n, args.d, args.gap, args.spike, args.trials, args.seed)
    return report.to_json()


def build_parser():
    p = argparse.ArgumentParser(prog="lmrm", description="Permutation codes under the l-infinity metric.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and print it as JSON")
    c.add_argument("--members", action="store_true", help="include the member list")
    fam = c.add_subparsers(dest="family", required=True)
    cc = fam.add_parser("congruence")
    cc.add_argument("n", type=int)
    cc.add_argument("d", type=int)
    cp = fam.add_parser("product", help="constituent specs: cong:M:E or gens:PATH, one per class")
    cp.add_argument("n", type=int)
    cp.add_argument("k", type=int)
    cp.add_argument("specs", nargs="+")
    cs = fam.add_parser("semidirect", help="generator file with [H] and [K] sections")
    cs.add_argument("file")
    c.set_defaults(func=_construct)

    e = sub.add_parser("encode")
    e.add_argument("n", type=int)
    e.add_argument("d", type=int)
    e.add_argument("m", type=int)
    e.set_defaults(func=_encode)

    d = sub.add_parser("decode")
    d.add_argument("n", type=int)
    d.add_argument("d", type=int)
    d.add_argument("received")
    d.set_defaults(func=_decode)

    t = sub.add_parser("dist")
    t.add_argument("f")
    t.add_argument("g")
    t.set_defaults(func=_dist)

    b = sub.add_parser("ball")
    b.add_argument("n", type=int)
    b.add_argument("r", type=int)
    b.set_defaults(func=_ball)

    bd = sub.add_parser("bounds")
    bd.add_argument("n", type=int)
    bd.add_argument("d", type=int)
    bd.add_argument("--subgroup", action="store_true")
    bd.set_defaults(func=_bounds)

    s = sub.add_parser("search")
    s.add_argument("kind", choices=["code", "anticode"])
    s.add_argument("n", type=int)
    s.add_argument("d", type=int, help="minimum distance (code) or maximum distance (anticode)")
    s.add_argument("--prove", action="store_true")
    s.add_argument("--budget", type=int, default=2_000_000)
    s.set_defaults(func=_search)

    a = sub.add_parser("asymptote")
    a.add_argument("--step", type=float, default=0.01)
    a.add_argument("--out")
    a.set_defaults(func=_asymptote)

    sm = sub.add_parser("simulate")
    sm.add_argument("n", type=int)
    sm.add_argument("d", type=int)
    sm.add_argument("--gap", type=float, default=1.0)
    sm.add_argument("--spike", type=float, default=0.0)
    sm.add_argument("--trials", type=int, default=1000)
    sm.add_argument("--seed", type=int, default=0)
    sm.set_defaults(func=_simulate)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (LMRMError, ValueError, OSError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err) + "\n")
        return 1
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
