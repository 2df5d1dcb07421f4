"""Command-line interface.

Exit status: 0 success / consistent, 1 inconsistency or counterexample
signal, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .descent import DescentError, ThueInstance, descend, enumerate_solutions
from .elliptic.counting import trace_of_frobenius
from .elliptic.curve import WeierstrassModel, invariants, quadratic_twist
from .elliptic.frey import frey_model
from .elliptic.minimal import minimal_model
from .elliptic.search import search_points
from .elliptic.tate import conductor
from .modular import cm_heuristic, dim_s2_new, gamma0_genus, positive_rank_evidence, predicted_level
from .pipeline import Config, jsonable, load_config_file, theorem_solutions, verify_theorem
from .thue import solve_bounded

_CONFIG_FLAGS = {
    "max_n": "maxAbsN",
    "max_m": "maxM",
    "thue_bound": "thueBound",
    "aq_bound": "aqBound",
    "cm_bound": "cmBound",
    "height_bound": "heightBound",
    "conductor_search_bound": "conductorSearchBound",
    "workers": "workers",
    "format": "format",
}


class UsageError(Exception):
    pass


def _ainvs(text: str) -> WeierstrassModel:
    parts = [s for s in text.replace("[", "").replace("]", "").replace(",", " ").split() if s]
    try:
        return WeierstrassModel.from_list(parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad a-invariants {text!r}: {exc}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="decapower", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "json"), default=None)
        p.add_argument("--report", metavar="PATH", help="write output here instead of stdout")
        return p

    def curve_arg(p):
        p.add_argument("--ainvs", type=_ainvs, required=True, metavar="A1,A2,A3,A4,A6",
                       help="comma-separated; use --ainvs=-1,0,... when the first is negative")

    p = add("verify", "run the full verification pipeline")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-m", type=int)
    p.add_argument("--thue-bound", type=int)
    p.add_argument("--aq-bound", type=int)
    p.add_argument("--cm-bound", type=int)
    p.add_argument("--height-bound", type=int)
    p.add_argument("--conductor-search-bound", type=int)
    p.add_argument("--workers", type=int)

    p = add("search", "brute-force search for P10(n) = y^m")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-m", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--no-filter", action="store_true", help="disable the residue sieve")

    p = add("descend", "descent witness for a solution of n(4n-3) = y^p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = add("thue", "bounded solve of c1 x^d + c2 y^d = c3")
    for c in ("--c1", "--c2", "--c3", "--d"):
        p.add_argument(c, type=int, required=True)
    p.add_argument("--bound", type=int, default=10**4)

    p = add("curve", "invariants of a model, or of a Frey curve")
    p.add_argument("--ainvs", type=_ainvs, metavar="A1,A2,A3,A4,A6")
    p.add_argument("--frey", choices=("E1", "E2", "E3", "E4", "E5"))
    p.add_argument("--param", type=int, help="a (E1-E3), u (E4) or v (E5)")
    p.add_argument("--p", type=int, default=7)

    p = add("conductor", "conductor and local data via Tate's algorithm")
    curve_arg(p)

    p = add("aq", "trace of Frobenius")
    curve_arg(p)
    p.add_argument("--q", type=int, required=True)

    p = add("twist", "quadratic twist")
    curve_arg(p)
    p.add_argument("--d", type=int, required=True)

    p = add("points", "rational point search")
    curve_arg(p)
    p.add_argument("--height", type=int, default=100)

    p = add("newform-dims", "genus of X0(N) and dimension of the weight-2 new space")
    p.add_argument("--level", type=int, required=True)

    p = add("cm-check", "vanishing of a_q at inert primes")
    curve_arg(p)
    p.add_argument("--D", type=int, default=-3)
    p.add_argument("--bound", type=int, default=1000)

    p = add("level-lower", "level predicted by the level-lowering recipe")
    curve_arg(p)
    p.add_argument("--p", type=int, required=True)

    p = add("rank-evidence", "non-torsion points on a curve and its quadratic twist")
    curve_arg(p)
    p.add_argument("--d", type=int, default=-3)
    p.add_argument("--height", type=int, default=10**4)
    p.add_argument("--torsion-samples", type=int, default=20)
    return parser


def _config(args) -> Config:
    cfg = Config()
    if getattr(args, "config", None):
        cfg.update(load_config_file(args.config))
    for flag, name in _CONFIG_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg.validate()


def _emit(args, payload: dict, text: str) -> None:
    fmt = args.format or "text"
    out = json.dumps(jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False) if fmt == "json" else text
    if args.report:
        Path(args.report).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)


def _cmd_verify(args) -> int:
    cfg = _config(args)
    report = verify_theorem(cfg)
    fmt = args.format or cfg.format
    out = report.to_json() if fmt == "json" else report.to_text()
    if args.report:
        Path(args.report).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)
    return 0 if report.consistent else 1


def _cmd_search(args) -> int:
    cfg = _config(args)
    sols = enumerate_solutions(cfg.maxAbsN, cfg.maxM, workers=cfg.workers, use_filter=not args.no_filter)
    expected = set(theorem_solutions(cfg.maxAbsN, cfg.maxM))
    unexpected = [s for s in sols if s not in expected]
    text = "\n".join(f"n={s.n} y={s.y} m={s.m}" for s in sols)
    if unexpected:
        text += "\nUNEXPECTED: " + ", ".join(f"({s.n},{s.y},{s.m})" for s in unexpected)
    _emit(args, {"solutions": [s._asdict() for s in sols], "unexpected": [s._asdict() for s in unexpected]}, text)
    return 1 if unexpected else 0


def _cmd_descend(args) -> int:
    try:
        w = descend(args.n, args.y, args.p)
    except DescentError as exc:
        _emit(args, {"error": str(exc), "descent_violation": True}, f"DESCENT VIOLATION: {exc}")
        return 1
    x, z = w.case.names
    _emit(
        args,
        {"p": w.p, "case": w.case.name, x: w.first, z: w.second},
        f"{w.case.name}: {x}={w.first} {z}={w.second} (p={w.p})",
    )
    return 0


def _cmd_thue(args) -> int:
    inst = ThueInstance(args.c1, args.c2, args.c3, args.d)
    res = solve_bounded(inst, args.bound)
    text = "\n".join(f"({x}, {y})" for x, y in res.solutions) or "no solutions"
    _emit(args, {"equation": str(inst), "bound": res.bound, "solutions": res.solutions}, text)
    return 0


def _cmd_curve(args) -> int:
    if args.frey:
        if args.param is None:
            raise UsageError("--frey needs --param")
        model = frey_model(args.frey, args.param, args.p)
    elif args.ainvs is not None:
        model = args.ainvs
    else:
        raise UsageError("give --ainvs or --frey")
    inv = invariants(model)
    mm = minimal_model(model)
    payload = {"model": model, "minimal_model": mm, **{k: getattr(inv, k) for k in ("b2", "b4", "b6", "b8", "c4", "c6", "disc", "j")}}
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def _cmd_conductor(args) -> int:
    N, local, dmin = conductor(args.ainvs)
    lines = [f"N = {N}", f"minimal discriminant = {dmin}"]
    lines += [f"  q={ld.q}: f={ld.v_q_N} v(Dmin)={ld.v_q_Dmin} {ld.kodaira} {ld.reduction.value}" for ld in local]
    _emit(args, {"conductor": N, "minimal_discriminant": dmin, "local": local}, "\n".join(lines))
    return 0


def _cmd_aq(args) -> int:
    tr = trace_of_frobenius(args.ainvs, args.q)
    _emit(args, {"q": tr.q, "a_q": tr.a_q}, f"a_{tr.q} = {tr.a_q}")
    return 0


def _cmd_twist(args) -> int:
    tw = quadratic_twist(args.ainvs, args.d)
    _emit(args, {"twist": tw, "minimal_model": minimal_model(tw)}, f"{tw}\nminimal: {minimal_model(tw)}")
    return 0


def _cmd_points(args) -> int:
    pts = search_points(args.ainvs, args.height)
    text = "\n".join(f"({P.x}, {P.y})" + (" torsion" if P.torsion else "") for P in pts) or "no points"
    _emit(args, {"points": pts}, text)
    return 0


def _cmd_dims(args) -> int:
    g = gamma0_genus(args.level)
    d = dim_s2_new(args.level)
    _emit(args, {"gamma0": g, "dimTotal": d.dimTotal, "dimNew": d.dimNew}, str(d.dimNew))
    return 0


def _cmd_cm(args) -> int:
    rep = cm_heuristic(args.ainvs, args.D, args.bound)
    text = f"allTracesZero={rep.allTracesZero} inertPrimesChecked={rep.inertPrimesChecked}"
    if rep.firstFailure:
        text += f" firstFailure=a_{rep.firstFailure[0]}={rep.firstFailure[1]}"
    _emit(args, {"report": rep}, text)
    return 0


def _cmd_level(args) -> int:
    N, local, _ = conductor(args.ainvs)
    res = predicted_level(local, N, args.p)
    _emit(args, {"result": res}, f"N = {res.N}, Np = {res.Np}, removed {list(res.removedPrimes)}")
    return 0


def _cmd_rank(args) -> int:
    ev = positive_rank_evidence(args.ainvs, args.d, args.height, args.torsion_samples)
    pts = [(str(P.x), str(P.y)) for P in ev.curvePoints + ev.twistPoints]
    text = (
        f"curve {ev.curve} (torsion bound {ev.torsionBoundCurve}), twist {ev.twist} (torsion bound {ev.torsionBoundTwist})\n"
        + (f"non-torsion points: {pts}" if pts else f"no non-torsion point up to height {ev.heightBound}")
    )
    _emit(
        args,
        {"curve": ev.curve, "twist": ev.twist, "positive_rank_evidence": ev.positive, "non_torsion_points": pts},
        text,
    )
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "search": _cmd_search,
    "descend": _cmd_descend,
    "thue": _cmd_thue,
    "curve": _cmd_curve,
    "conductor": _cmd_conductor,
    "aq": _cmd_aq,
    "twist": _cmd_twist,
    "points": _cmd_points,
    "newform-dims": _cmd_dims,
    "cm-check": _cmd_cm,
    "level-lower": _cmd_level,
    "rank-evidence": _cmd_rank,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        # BadReductionError and SingularCurveError are ValueErrors too
        print(f"decapower {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
