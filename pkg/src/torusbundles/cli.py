"""Command-line front end.

Exit codes: 0 answered (a "no" verdict included), 1 usage error, 2 invalid
input, 3 indeterminate verdict.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bundles, freeprod
from .intlattice import QuotientModule
from .sl2z import (
    INFINITE,
    Mat,
    format_psl_word,
    format_sl_word,
    matrix_to_word,
    order,
    parse_psl_word,
    project,
    psl_conjugate,
    sl_conjugate,
)
from .surface_rep import (
    PslRep,
    SlRep,
    canonicalize_lift,
    is_normal_form,
    lift_orbit_tag,
    orbit_census,
    project_rep,
    validate,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_UNKNOWN = 0, 1, 2, 3


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- documents

def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_matrix(obj) -> Mat:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"not a matrix: {exc}") from None
    ok = (
        isinstance(obj, list) and len(obj) == 2
        and all(isinstance(r, list) and len(r) == 2 and all(_is_int(x) for x in r) for r in obj)
    )
    if not ok:
        raise InvalidInput("matrix must be [[a,b],[c,d]] with integer entries")
    try:
        return Mat.from_rows(obj)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def bundle_from_document(doc) -> bundles.TorusBundle:
    if not isinstance(doc, dict) or not {"genus", "monodromy", "euler"} <= doc.keys():
        raise InvalidInput("bundle document needs genus, monodromy and euler")
    pairs = doc["monodromy"]
    if not isinstance(pairs, list) or len(pairs) != doc["genus"]:
        raise InvalidInput("monodromy must list one [A,B] pair per handle")
    mats = []
    for pair in pairs:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InvalidInput("each monodromy entry must be a pair [A,B]")
        mats.append((parse_matrix(pair[0]), parse_matrix(pair[1])))
    euler = doc["euler"]
    if not isinstance(euler, list) or len(euler) != 2 or not all(_is_int(x) for x in euler):
        raise InvalidInput("euler must be [m,n] with integer entries")
    try:
        return bundles.TorusBundle(SlRep(tuple(mats)), tuple(euler))
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def bundle_to_document(b: bundles.TorusBundle) -> dict:
    return {
        "genus": b.genus,
        "monodromy": [[a.rows(), m.rows()] for a, m in b.rep.pairs],
        "euler": list(b.euler),
    }


def psl_rep_from_document(doc) -> PslRep:
    if not isinstance(doc, dict) or not {"genus", "monodromy"} <= doc.keys():
        raise InvalidInput("representation document needs genus and monodromy")
    pairs = doc["monodromy"]
    if not isinstance(pairs, list) or len(pairs) != doc["genus"]:
        raise InvalidInput("monodromy must list one pair per handle")
    try:
        rep = PslRep(tuple((parse_psl_word(x), parse_psl_word(y)) for x, y in pairs))
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidInput(f"bad word: {exc}") from None
    if not validate(rep):
        raise InvalidInput("surface relator fails")
    return rep


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _plain(x):
    """Certificate values as JSON-ready data."""
    if isinstance(x, Mat):
        return x.rows()
    if isinstance(x, bundles.TorusBundle):
        return bundle_to_document(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _fmt_order(n):
    return "inf" if n == INFINITE else n


# -- commands

def cmd_order(args):
    n = order(parse_matrix(args.matrix))
    return {"order": _fmt_order(n)}, str(_fmt_order(n))


def cmd_word(args):
    m = parse_matrix(args.matrix)
    sl, psl = format_sl_word(matrix_to_word(m)), format_psl_word(project(m))
    return {"sl_word": sl, "psl_word": psl}, f"SL:  {sl or 'e'}\nPSL: {psl}"


def cmd_conj(args):
    if args.psl:
        try:
            u, v = parse_psl_word(args.first), parse_psl_word(args.second)
        except (ValueError, KeyError) as exc:
            raise InvalidInput(f"bad word: {exc}") from None
        g = psl_conjugate(u, v)
        out = None if g is None else format_psl_word(g)
    else:
        q = sl_conjugate(parse_matrix(args.first), parse_matrix(args.second))
        out = None if q is None else q.rows()
    text = "not conjugate" if out is None else f"conjugator: {out}"
    return {"conjugate": out is not None, "conjugator": out}, text


def cmd_subgroup(args):
    try:
        sig = tuple(int(x) for x in args.sig.split(","))
        graph = freeprod.build(sig, [freeprod.parse_word(w, sig) for w in args.words])
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    inv = freeprod.kurosh_invariants(graph)
    counts = {str(k): v for k, v in sorted(inv.factor_counts.items())}
    data = {"free_rank": inv.free_rank, "factor_counts": counts}
    if sig == (2, 3):
        data["klm"] = list(inv.klm())
    idx = freeprod.index(graph)
    data["index"] = None if idx == INFINITE else idx
    text = f"free rank {inv.free_rank}; finite factors {counts or 'none'}"
    return data, text


def cmd_rep(args):
    b = bundle_from_document(_load(args.bundle))
    prep = project_rep(b.rep)
    if args.action == "check":
        return {"valid": True, "genus": b.genus}, "relator holds"
    cert = is_normal_form(prep)
    if args.action == "normal-form":
        if cert is None:
            return {"normal_form": False}, "not in normal form"
        data = {"normal_form": True, "k": cert.k, "l": cert.l, "m": cert.m}
        return data, f"normal form with k={cert.k} l={cert.l} m={cert.m}"
    if cert is None:
        raise InvalidInput("projection is not in normal form")
    tag = str(lift_orbit_tag(canonicalize_lift(b.rep)))
    return {"tag": tag}, tag


def cmd_lifts(args):
    rep = psl_rep_from_document(_load(args.rep))
    if is_normal_form(rep) is None:
        raise InvalidInput("representation is not in normal form")
    tags = sorted(str(t) for t in orbit_census(rep))
    return {"count": len(tags), "tags": tags}, "\n".join([f"{len(tags)} orbit(s)"] + tags)


def cmd_iso(args):
    b1 = bundle_from_document(_load(args.first))
    b2 = bundle_from_document(_load(args.second))
    try:
        v = bundles.iso(b1, b2)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    data = {"answer": v.answer}
    if v.is_yes:
        data["certificate"] = _plain(v.certificate)
        data["verified"] = bundles.verify_certificate(b1, b2, v)
    else:
        data["failed_condition"] = v.failed_condition
        data["reason"] = v.reason
    text = v.answer if v.is_yes else f"{v.answer}: {v.reason}"
    return data, text, (EXIT_UNKNOWN if v.answer == "indeterminate" else EXIT_OK)


def cmd_euler(args):
    b = bundle_from_document(_load(args.bundle))
    mod: QuotientModule = bundles.euler_module(b.rep)
    tors = bundles.euler_torsion(b)
    data = {"module": str(mod), "rank": mod.rank, "torsion": list(mod.torsion), "euler_torsion": tors}
    return data, f"{mod}; Euler class {'torsion' if tors else 'non-torsion'}"


def cmd_symplectic(args):
    b = bundle_from_document(_load(args.bundle))
    comp, tot = bundles.compatible_symplectic(b), bundles.total_space_symplectic(b)
    return {"compatible": comp, "total_space": tot}, f"compatible: {comp}\ntotal space: {tot}"


def cmd_betti(args):
    b = bundle_from_document(_load(args.bundle))
    n = bundles.betti1_flat(b.rep)
    return {"betti1": n}, str(n)


def cmd_decompose(args):
    b = bundle_from_document(_load(args.bundle))
    try:
        pieces = bundles.decompose(b)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    docs = [bundle_to_document(p) for p in pieces]
    return {"pieces": docs}, "\n".join(json.dumps(d) for d in docs)


def cmd_sum(args):
    b = bundles.fiber_sum(
        bundle_from_document(_load(args.first)), bundle_from_document(_load(args.second))
    )
    doc = bundle_to_document(b)
    return {"bundle": doc}, json.dumps(doc)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torusbundles", description="Torus bundles over surfaces")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("order", help="order of a matrix")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("word", help="matrix as a word in s, t")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_word)

    s = sub.add_parser("conj", help="find a conjugator taking the first argument to the second")
    s.add_argument("--psl", action="store_true", help="arguments are words in a, b, b2")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_conj)

    s = sub.add_parser("subgroup", help="Kurosh invariants of a finitely generated subgroup")
    s.add_argument("--sig", default="2,3")
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_subgroup)

    s = sub.add_parser("rep", help="representation checks")
    s.add_argument("action", choices=["check", "normal-form", "orbit-tag"])
    s.add_argument("bundle")
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("lifts", help="orbit census of the lifts of a PSL representation")
    s.add_argument("rep")
    s.set_defaults(func=cmd_lifts)

    s = sub.add_parser("iso", help="decide isomorphism of two bundles")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_iso)

    for name, func, hlp in (
        ("euler", cmd_euler, "Euler class module and torsion flag"),
        ("symplectic", cmd_symplectic, "symplectic flags"),
        ("betti", cmd_betti, "first Betti number of the flat local system"),
        ("decompose", cmd_decompose, "split into genus-1 fiber-sum pieces"),
    ):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("bundle")
        s.set_defaults(func=func)

    s = sub.add_parser("sum", help="fiber sum of two bundles")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_sum)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        result = args.func(args)
    except (InvalidInput, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    data, text = result[0], result[1]
    code = result[2] if len(result) > 2 else EXIT_OK
    print(json.dumps(data) if args.json else text)
    return code


def main() -> None:
    sys.exit(run())
