"""Command-line front end.

Every subcommand prints one JSON document (or CSV for tables) on stdout.
Exit codes: 0 success, 1 a check reported a violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import fiber, molien, params, preproj, roots, weyl, zalgebra
from .quiver import build_extended_dynkin, defect, double
from .rational import ParamVector, fmt_rational, parse_int_vector

__all__ = ["main", "run", "build_parser"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _json_default(x):
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _chi(args, ring):
    return parse_int_vector(args.chi) if args.chi else fiber.uniform_chi(ring.n)


# each handler returns (output text, exit code)

def _cmd_quiver(args):
    q = build_extended_dynkin(args.type)
    shown = double(q) if args.doubled else q
    return _dump({
        "quiver": shown.to_dict(),
        "delta": list(q.delta),
        "defect": list(defect(q)),
        "cartan": [list(r) for r in q.cartan_data.matrix],
    }), 0


def _cmd_roots(args):
    q = build_extended_dynkin(args.type)
    found = roots.enumerate_roots(q, args.bound)
    return _dump([r.to_dict() for r in found]), 0


def _cmd_classify_weight(args):
    q = build_extended_dynkin(args.type)
    xi = parse_int_vector(args.xi)
    return _dump({"xi": list(xi), "class": roots.classify_weight(q, xi).value}), 0


def _cmd_analyze(args):
    q = build_extended_dynkin(args.type)
    lam = ParamVector.parse(args.lam)
    return _dump(params.analyze(q, lam).to_dict()), 0


def _cmd_choose_xi(args):
    q = build_extended_dynkin(args.type)
    lam = ParamVector.parse(args.lam)
    xi = params.choose_xi(q, lam, args.d)
    out = {
        "lambda": lam.to_strings(),
        "d": args.d,
        "xi": list(xi),
        "class": roots.classify_weight(q, xi).value,
        "shifted": lam.shift(xi).to_strings(),
    }
    if args.search_smaller:
        out["smaller_xi"] = list(params.search_smaller_xi(q, lam, args.d))
    return _dump(out), 0


def _cmd_weyl_decompose(args):
    q = build_extended_dynkin(args.type)
    xi = parse_int_vector(args.xi)
    word = weyl.decompose_translation(q, xi, seed=args.seed)
    return _dump(word.to_dict()), 0 if word.verified else 1


def _cmd_apply_word(args):
    q = build_extended_dynkin(args.type)
    sigma = parse_int_vector(args.automorphism) if args.automorphism else tuple(q.vertices)
    if sorted(sigma) != list(q.vertices) or sigma not in weyl.graph_automorphisms(q):
        raise ValueError(f"{list(sigma)} is not a graph automorphism of {q.type_label}")
    refl = parse_int_vector(args.reflections) if args.reflections else ()
    lam = ParamVector.parse(args.lam)
    out = weyl.apply_word(q, weyl.WeylWord(sigma, refl), lam)
    return _dump({"lambda": lam.to_strings(), "image": out.to_strings()}), 0


def _cmd_semiinv(args):
    ring = fiber.build_fiber_ring(args.n)
    chi = _chi(args, ring)
    slices = [fiber.slice_(ring, chi, args.m, d) for d in range(args.dmax + 1)]
    if args.format == "csv":
        return _csv(["m", "d", "dim"], [[s.m, s.d, s.dimension] for s in slices]), 0
    return _dump({"n": args.n, "chi": list(chi), "slices": [s.to_dict(ring) for s in slices]}), 0


def _cmd_mult_check(args):
    ring = fiber.build_fiber_ring(args.n)
    chi = _chi(args, ring)
    if args.m is not None or args.k is not None:
        if args.m is None or args.k is None:
            raise ValueError("--m and --k must be given together")
        rep = fiber.check_mult_surjective(ring, chi, args.m, args.k, args.dmax)
        return _dump(rep), 0 if rep["surjective"] else 1
    rep = fiber.surjectivity_threshold(ring, chi, args.mmax, args.dmax)
    return _dump(rep), 0 if rep["minimal_N"] is not None else 1


def _cmd_power_check(args):
    ring = fiber.build_fiber_ring(args.n)
    rep = fiber.check_power_stabilization(ring, _chi(args, ring), args.N, args.jmax, args.dmax)
    return _dump(rep), 0 if rep["holds"] else 1


def _cmd_kleinian_check(args):
    ring = fiber.build_fiber_ring(args.n)
    rep = fiber.verify_kleinian_presentation(ring, args.dmax)
    hilbert = fiber.invariant_hilbert(ring, args.dmax)
    oracle = molien.molien_dims(molien.cyclic_group(args.n), args.dmax)
    rep["hilbert"] = hilbert
    rep["molien"] = oracle
    rep["hilbert_matches_molien"] = hilbert == oracle
    ok = rep["passed"] and hilbert == oracle
    return _dump(rep), 0 if ok else 1


def _cmd_molien(args):
    g = molien.parse_group(args.group)
    dims = molien.molien_dims(g, args.dmax)
    cumulative = molien.molien_cumulative(g, args.dmax)
    if args.format == "csv":
        return _csv(["d", "dim", "cumulative"], [[d, a, b] for d, (a, b) in enumerate(zip(dims, cumulative))]), 0
    return _dump({"group": g.label, "order": g.order, "dims": dims, "cumulative": cumulative}), 0


def _cmd_preproj_dims(args):
    q = build_extended_dynkin(args.type)
    lam = ParamVector.parse(args.lam)
    if args.compare_molien:
        rep = preproj.molien_agreement(q, lam, args.L, args.buffer)
        return _dump(rep), 0 if not rep["upper_bound_violations"] else 1
    table = preproj.truncated_dims(q, lam, args.L, args.buffer)
    if args.format == "csv":
        rows = []
        for i, block in enumerate(table.dims):
            for j, seq in enumerate(block):
                rows.extend([i, j, l, v] for l, v in enumerate(seq))
        return _csv(["i", "j", "l", "dim_upper"], rows), 0
    return _dump(table.to_dict()), 0


def _cmd_zalg_check(args):
    if args.model == "typeA":
        ring = fiber.build_fiber_ring(args.n)
        A = zalgebra.semi_invariant_truncation(ring, _chi(args, ring), args.M, args.cap)
    else:
        A = zalgebra.polynomial_truncation(args.M, args.cap)
    Z = zalgebra.hat(A)
    if args.negative_control:
        Z = _negative_control(Z, args.negative_control)
    assoc = zalgebra.check_associativity(Z)
    mor = zalgebra.morita_condition_ii(Z, args.N, args.cap)
    out = {
        "model": A.label,
        "M": args.M,
        "cap": args.cap,
        "N": args.N,
        "associative": assoc["associative"],
        "unital": assoc["unital"],
        "triples_checked": assoc["checked"],
        "associativity_witness": assoc["witness"],
        "morita_ii": mor["morita_ii"],
        "vacuous": mor["vacuous"],
        "witnesses": mor["witnesses"],
        "scope": "finite truncation; injectivity over B_j is not decided",
        "negative_control": args.negative_control,
    }
    ok = assoc["associative"] and mor["surjective"]
    return _dump(out), 0 if ok else 1


def _negative_control(Z, kind: str):
    """Corrupt the product tables on purpose; the checks must then fail."""
    if kind == "scale":
        candidates = zalgebra.lowest_products(Z)
        if not candidates:
            raise ValueError("no product of non-identity elements within the cap")
        ijk, pair, _ = candidates[0]
        return zalgebra.perturb_product(Z, ijk, pair, scale=2)
    if Z.M < 2:
        raise ValueError("the drop control needs M >= 2")
    table = Z.mult[(2, 1, 0)]
    pairs = sorted(p for p, v in table.items() if v)
    if not pairs:
        raise ValueError("no nonzero product at (2,1,0) within the cap")
    return zalgebra.drop_products_onto(Z, (2, 1, 0), min(table[pairs[0]]))


def _cmd_decompose_sum(args):
    return _dump({"m": args.m, "N": args.N, "parts": zalgebra.decompose_sum(args.m, args.N)}), 0


def _cmd_dominance_scan(args):
    q = build_extended_dynkin(args.type)
    return _dump(params.dominance_scan(q, args.denominator, args.span, args.d)), 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kleinquant", description="Exact computations around Kleinian singularities and their quantizations.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized verification (default 0)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, handler, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(handler=handler)
        return sp

    def add_type(sp):
        sp.add_argument("--type", required=True, help="extended Dynkin type, e.g. A2, D4, E6")

    def add_lambda(sp):
        sp.add_argument("--lambda", dest="lam", required=True, help='comma-separated, e.g. "1/2,1/2" or "1/2+i,1/2-i"')

    def add_fiber(sp, need_chi=True):
        sp.add_argument("--n", type=int, required=True, help="number of vertices of the cyclic quiver")
        if need_chi:
            sp.add_argument("--chi", help="weight in Lambda (default: (-(n-1),1,...,1))")
        sp.add_argument("--dmax", type=int, required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = cmd("quiver", _cmd_quiver, "extended Dynkin quiver with delta, defect and Cartan matrix")
    add_type(sp)
    sp.add_argument("--doubled", action="store_true")

    sp = cmd("roots", _cmd_roots, "all roots in the box |alpha_i| <= bound")
    add_type(sp)
    sp.add_argument("--bound", type=int, required=True)

    sp = cmd("classify-weight", _cmd_classify_weight, "membership of xi in Lambda, Lambda_+, Lambda_++")
    add_type(sp)
    sp.add_argument("--xi", required=True)

    sp = cmd("analyze", _cmd_analyze, "regularity, dominance and finite-dimensional module data for lambda")
    add_type(sp)
    add_lambda(sp)

    sp = cmd("choose-xi", _cmd_choose_xi, "shift xi in Lambda_+ removing simple modules of dim <= d")
    add_type(sp)
    add_lambda(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--search-smaller", action="store_true", help="also report the smallest valid xi found by search")

    sp = cmd("weyl-decompose", _cmd_weyl_decompose, "translation by xi as reflections and a graph automorphism")
    add_type(sp)
    sp.add_argument("--xi", required=True)

    sp = cmd("apply-word", _cmd_apply_word, "apply r_{i1}...r_{ik} o sigma to lambda")
    add_type(sp)
    add_lambda(sp)
    sp.add_argument("--automorphism", help="permutation as comma-separated images (default identity)")
    sp.add_argument("--reflections", help="comma-separated vertex indices")

    sp = cmd("semiinv", _cmd_semiinv, "graded semi-invariant slices S_m")
    add_fiber(sp)
    sp.add_argument("--m", type=int, required=True)
    add_format(sp)

    sp = cmd("mult-check", _cmd_mult_check, "surjectivity of S_m x S_k -> S_{m+k}")
    add_fiber(sp)
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--mmax", type=int, default=3, help="range for the threshold scan (default 3)")

    sp = cmd("power-check", _cmd_power_check, "S_{jN} spanned by (S_N)^j")
    add_fiber(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--jmax", type=int, default=4)

    sp = cmd("kleinian-check", _cmd_kleinian_check, "invariants generated by x, A, B with AB = x^n")
    add_fiber(sp, need_chi=False)

    sp = cmd("molien", _cmd_molien, "Molien series of Z<n> or BD<4m>")
    sp.add_argument("--group", required=True)
    sp.add_argument("--dmax", type=int, required=True)
    add_format(sp)

    sp = cmd("preproj-dims", _cmd_preproj_dims, "truncated filtration dimensions of the deformed preprojective algebra")
    add_type(sp)
    add_lambda(sp)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--buffer", type=int, default=0)
    sp.add_argument("--compare-molien", action="store_true", help="report the e0-corner against the Molien oracle")
    add_format(sp)

    sp = cmd("zalg-check", _cmd_zalg_check, "associativity and far-range surjectivity of a hat Z-algebra")
    sp.add_argument("--model", choices=("typeA", "poly"), default="typeA")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--chi")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--cap", type=int, required=True)
    sp.add_argument("--negative-control", choices=("scale", "drop"),
                    help="deliberately corrupt one product table; the check must then fail")

    sp = cmd("decompose-sum", _cmd_decompose_sum, "write m as a sum of parts in [N, 2N-1]")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)

    sp = cmd("dominance-scan", _cmd_dominance_scan, "dominant grid parameters that keep small candidate dimensions")
    add_type(sp)
    sp.add_argument("--denominator", type=int, required=True)
    sp.add_argument("--span", type=int, default=1)
    sp.add_argument("--d", type=int, required=True)
    return p


_NEGATIVE_VALUE = re.compile(r"-[\d./i]")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--xi -1,1`` into ``--xi=-1,1`` so argparse does not read a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt is not None and _NEGATIVE_VALUE.match(nxt):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None) -> tuple[int, str, str]:
    """Run the CLI and return (exit code, stdout text, stderr text)."""
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    err = io.StringIO()
    old = sys.stderr
    sys.stderr = err
    try:
        try:
            args = parser.parse_args(argv)
        except _UsageError as e:
            print(f"kleinquant: error: {e}", file=err)
            return 2, "", err.getvalue()
        try:
            text, code = args.handler(args)
        except (ValueError, ZeroDivisionError) as e:
            print(f"kleinquant: error: {e}", file=err)
            return 2, "", err.getvalue()
        except AssertionError as e:
            print(f"kleinquant: verification failed: {e}", file=err)
            return 1, "", err.getvalue()
        return code, text, err.getvalue()
    finally:
        sys.stderr = old


def main(argv=None) -> int:
    try:
        code, out, err = run(argv)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
