"""Command line front end.

Every subcommand parses its options, calls one library function and prints
the result.  Data goes to stdout, progress and diagnostics to stderr.

Exit status: 0 success, 1 a check failed, 2 invalid input, 3 search budget
exhausted (see ``APERIODICA_BUDGET``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .capset import (
    BudgetExhaustedError,
    CapParams,
    NormalizationError,
    WindowSpec,
    compute_gaps,
    enumerate_phys_interval,
    generate_segment,
    normalize,
    params_to_json,
    segment_to_json,
)
from .quadfield import IndeterminateComparisonError, NonExactParameterError, QuadReal, parse_real, to_json
from .substitution import (
    Morphism,
    fixed_point,
    incidence,
    is_substitution,
    is_sturm_number,
    mechanical_invariance,
    perron_densities,
)
from .words import (
    factor_complexity_empirical,
    factor_complexity_exact,
    profiles_to_csv,
    saturated_profiles,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj: object) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _info(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _real(text: str, args: argparse.Namespace):
    try:
        return parse_real(text, decimal=args.decimal)
    except (ValueError, SyntaxError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from None


def _params(args: argparse.Namespace) -> tuple[CapParams, int]:
    eps, eta = _real(args.epsilon, args), _real(args.eta, args)
    c, ell = _real(args.window_c, args), _real(args.window_len, args)
    if args.left_open:
        window, scale = WindowSpec.from_left_open(c, c + ell)
    else:
        window, scale = WindowSpec(c, ell), 1
    return CapParams(eps, eta, window), scale


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", required=True, help="star slope, e.g. \"tau'\"")
    p.add_argument("--eta", required=True, help="phys slope, e.g. tau")
    p.add_argument("--window-c", default="0", help="left end of the window")
    p.add_argument("--window-len", default="1", help="window length")
    p.add_argument("--left-open", action="store_true", help="use (c, c+len] instead of [c, c+len)")


def _split_count(args: argparse.Namespace) -> tuple[int, int]:
    if args.count < 1:
        raise InputError("--count must be positive")
    left = args.left if args.left is not None else args.count * 2 // 5
    if not 0 <= left <= args.count:
        raise InputError("--left must lie between 0 and --count")
    return left, args.count - left


def _morphism(text: str) -> Morphism:
    try:
        return Morphism.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _str(x: object) -> str:
    return str(x)


# -- subcommands ------------------------------------------------------------------


def cmd_generate(args: argparse.Namespace) -> int:
    params, scale = _params(args)
    left, right = _split_count(args)
    seg = generate_segment(params, left, right)
    if args.oracle:
        lo, hi = params.phys(seg.points[0]), params.phys(seg.points[-1])
        if enumerate_phys_interval(params, lo, hi) != seg.points:
            _info("oracle mismatch: direct enumeration differs from the generated segment")
            return EXIT_FAIL
        _info(f"oracle: {len(seg.points)} points match direct enumeration")
    if args.format == "json":
        out = segment_to_json(seg)
        out["scale"] = scale
        _dump(out)
    else:
        for p in seg.points:
            print(f"{p.a} {p.b} {float(params.phys(p)) * scale:.15g}")
    return EXIT_OK


def cmd_gaps(args: argparse.Namespace) -> int:
    params, _ = _params(args)
    g = compute_gaps(params)

    def iv(i) -> list[str]:
        return [_str(i.lo), _str(i.hi)]

    _dump(
        {
            "delta1": {"a": g.delta1.a, "b": g.delta1.b, "phys": _str(g.delta1_phys), "star": _str(g.delta1_star)},
            "delta2": {"a": g.delta2.a, "b": g.delta2.b, "phys": _str(g.delta2_phys), "star": _str(g.delta2_star)},
            "binary": g.binary,
            "omega": {"A": iv(g.omega_A), "B": iv(g.omega_B), "C": iv(g.omega_C)},
        }
    )
    return EXIT_OK


def cmd_word(args: argparse.Namespace) -> int:
    params, _ = _params(args)
    left, right = _split_count(args)
    print(generate_segment(params, left, right).word)
    return EXIT_OK


def cmd_complexity(args: argparse.Namespace) -> int:
    params, _ = _params(args)
    g = compute_gaps(params)
    if args.method == "exact":
        C = factor_complexity_exact(g, args.n_max)
    else:
        half = max(args.length, 4 * args.n_max) // 2
        C = factor_complexity_empirical(generate_segment(params, half, half, g).word, args.n_max)
        if C.saturated is False:
            _info("warning: empirical profile not saturated; increase --length")
    sys.stdout.write(profiles_to_csv(C))
    return EXIT_OK


def cmd_palindromes(args: argparse.Namespace) -> int:
    params, _ = _params(args)
    g = compute_gaps(params)
    C, P, w = saturated_profiles(
        lambda L: generate_segment(params, L // 2, L - L // 2, g).word, args.n_max, max_length=args.max_length
    )
    _info(f"profiles saturated at {len(w)} letters")
    sys.stdout.write(profiles_to_csv(C, P))
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    params, scale = _params(args)
    n = normalize(params)
    _dump(
        {
            "params": params_to_json(n.params),
            "scale": to_json(n.scale * scale),
            "scale_text": _str(n.scale * scale),
            "matrix": [list(r) for r in n.matrix],
            "word_params": params_to_json(n.word_params),
            "letter_permutation": n.letter_permutation,
        }
    )
    return EXIT_OK


def cmd_fixpoint(args: argparse.Namespace) -> int:
    m = _morphism(args.morphism)
    chk = is_substitution(m)
    a0 = args.a0 or chk.a0
    b0 = args.b0 or chk.b0
    if a0 is None or b0 is None:
        raise InputError(f"not a substitution: {chk.failed}")
    print(fixed_point(m, a0, b0, args.length))
    return EXIT_OK


def cmd_densities(args: argparse.Namespace) -> int:
    m = _morphism(args.morphism)
    M = incidence(m)
    try:
        d = perron_densities(M, m.alphabet)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _dump(
        {
            "incidence": M.tolist(),
            "densities": {a: _str(v) for a, v in zip(m.alphabet, d.values)},
            "decimal": {a: float(v) for a, v in zip(m.alphabet, d.values)},
            "radius": f"{float(d.radius):.3e}",
        }
    )
    return EXIT_OK


def _alpha(args: argparse.Namespace) -> QuadReal:
    alpha = _real(args.alpha, args)
    if not isinstance(alpha, QuadReal):
        raise InputError("the slope must be given exactly (use tau, sqrt(n), fractions)")
    return alpha


def cmd_sturm(args: argparse.Namespace) -> int:
    try:
        v = is_sturm_number(_alpha(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _dump(v.to_json())
    return EXIT_OK


def cmd_invariance(args: argparse.Namespace) -> int:
    try:
        v = mechanical_invariance(_alpha(args), _real(args.beta, args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _dump(v.to_json())
    return EXIT_OK


def cmd_planar(args: argparse.Namespace) -> int:
    from .planar import (
        PlanarConfig,
        UnsaturatedBoxError,
        area_audit,
        classify_tiles,
        generate_planar,
        render_svg,
        tenfold_check,
        tiles_to_json,
        voronoi,
    )

    radius = _real(args.radius, args)
    phys = _real(args.phys_radius, args)
    center = tuple(_real(t, args) for t in args.center.split(","))
    if len(center) != 2:
        raise InputError("--center takes two comma-separated values")
    try:
        cfg = PlanarConfig(radius, phys, center, args.box)
    except UnsaturatedBoxError as exc:
        raise InputError(str(exc)) from None
    ps = generate_planar(cfg)
    _info(f"{len(ps)} points")
    vr = voronoi(ps.phys, float(cfg.phys_radius))
    classes = classify_tiles(vr.tiles)
    audit = area_audit(vr.tiles, float(cfg.phys_radius) / 2)
    summary = {
        "points": len(ps),
        "tiles": len(vr.tiles),
        "classes": len(classes),
        "tenfold": tenfold_check(ps),
        "area_defect": audit["defect"],
        "degenerate_vertices": vr.degenerate_vertices,
    }
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(ps.phys, vr.tiles))
    if args.tiles:
        with open(args.tiles, "w", encoding="utf-8") as fh:
            fh.write(tiles_to_json(classes) + "\n")
    _dump(summary)
    return EXIT_OK


def cmd_verify_all(args: argparse.Namespace) -> int:
    from .verify import run_all

    results = run_all(progress=_info)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aperiodica", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--decimal",
        choices=("approx", "exact"),
        default="approx",
        help="read decimal literals as approximate (default) or exact rationals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="points of a 1-D cut-and-project set around the origin")
    _add_params(p)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--left", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--oracle", action="store_true", help="cross-check against direct enumeration")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("gaps", help="the gap vectors and exchange intervals")
    _add_params(p)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("word", help="coding word around the origin")
    _add_params(p)
    p.add_argument("--count", type=int, default=13, help="number of letters")
    p.add_argument("--left", type=int, default=None, help="letters left of the origin (default 2/5 of count)")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("complexity", help="factor complexity as CSV")
    _add_params(p)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--method", choices=("exact", "empirical"), default="exact")
    p.add_argument("--length", type=int, default=4000)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("palindromes", help="factor and palindromic complexity (saturated) as CSV")
    _add_params(p)
    p.add_argument("--n-max", type=int, default=25)
    p.add_argument("--max-length", type=int, default=256_000)
    p.set_defaults(func=cmd_palindromes)

    p = sub.add_parser("normalize", help="equivalent parameters satisfying condition (P)")
    _add_params(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("fixpoint", help="two-sided fixed point of a substitution")
    p.add_argument("--morphism", required=True, help='e.g. "A->AAB;B->AB"')
    p.add_argument("--length", type=int, default=13, help="minimum letters on each side")
    p.add_argument("--a0", default=None)
    p.add_argument("--b0", default=None)
    p.set_defaults(func=cmd_fixpoint)

    p = sub.add_parser("densities", help="letter densities from the Perron eigenvector")
    p.add_argument("--morphism", required=True)
    p.set_defaults(func=cmd_densities)

    p = sub.add_parser("invariance", help="substitution invariance of a mechanical word")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", default="0")
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("sturm", help="Sturm number test")
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("planar", help="planar set, Voronoi tiles, SVG and tile report")
    p.add_argument("--radius", default="43/50", help="window disc radius")
    p.add_argument("--phys-radius", default="24", help="radius of the generated phys region")
    p.add_argument("--center", default="0,0", help="window centre x,y")
    p.add_argument("--box", type=int, default=None, help="bound on the lattice coordinates")
    p.add_argument("--svg", default=None)
    p.add_argument("--tiles", default=None)
    p.set_defaults(func=cmd_planar)

    p = sub.add_parser("verify-all", help="run every reference check")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BudgetExhaustedError as exc:
        _info(f"error: {exc}")
        return EXIT_BUDGET
    except (InputError, NonExactParameterError, IndeterminateComparisonError, NormalizationError, ValueError) as exc:
        _info(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
