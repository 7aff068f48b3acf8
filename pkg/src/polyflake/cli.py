"""Command-line interface: ``polyflake {gen,iter,dim,check,preset,sweep}``.

Exit status is 0 on success, 2 for invalid flags or parameters, 1 for
runtime failures (I/O and the like).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import chaos, dimension, exact, geometry, ifs, render
from .geometry import CenterFamily, CenterMapSpec, GeometryError, Rotation


class UsageError(Exception):
    pass


def _parse_center(text):
    if text is None or text.lower() == "none":
        return None
    try:
        family, l = text.split(":")
        return CenterFamily(family.upper()), int(l)
    except ValueError:
        raise argparse.ArgumentTypeError(f"center must be none, L:<l> or M:<l>, got {text!r}")


def _parse_rot(text):
    t = text.lower()
    if t in ("none", "0"):
        return Rotation.NONE
    if t == "half":
        return Rotation.HALF_STEP
    if t == "gamma":
        return Rotation.GAMMA
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rot must be none, half, gamma or radians, got {text!r}")


def _parse_m(text):
    try:
        return Fraction(text).limit_denominator(2)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad m value {text!r}")


def _parse_order(text):
    if text.startswith("ccw:"):
        return ("ccw", int(text[4:]))
    return ("list", [int(t) for t in text.split(",")])


def _system_flags(p):
    g = p.add_argument_group("system")
    g.add_argument("--preset", choices=sorted(ifs.PRESETS), help="named special case")
    g.add_argument("--n", type=int, help="number of vertices")
    g.add_argument("--m", type=_parse_m, help="star density used for the ratio (and drawing unless --m-draw)")
    g.add_argument("--m-draw", type=_parse_m, help="shape of the drawn figure, e.g. 3.5 for spokes")
    g.add_argument("--ratio", type=float, help="override the vertex contraction ratio")
    g.add_argument("--center", type=_parse_center, default=None, help="none | L:<l> | M:<l>")
    g.add_argument("--rot", type=_parse_rot, default=Rotation.NONE, help="none | half | gamma | <radians>")
    g.add_argument("--uniform", action="store_true", help="uniform map probabilities instead of |det|")


def _render_flags(p):
    g = p.add_argument_group("output")
    g.add_argument("--out", help="output file (stdout for text formats when omitted)")
    g.add_argument("--width", type=int, default=1000)
    g.add_argument("--height", type=int, default=1000)
    g.add_argument("--margin", type=float, default=0.05)
    g.add_argument("--point-size", type=int, default=1)
    g.add_argument("--line-width", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="polyflake", description="Sierpinski n-gons and n-flakes")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="chaos-game point cloud")
    _system_flags(gen)
    _render_flags(gen)
    gen.add_argument("--points", type=int, default=100_000)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--format", choices=["png", "svg", "csv", "bin", "matrix"])
    gen.add_argument("--order", type=_parse_order, help="matrix row order: ccw:<start> or i,j,k,...")

    it = sub.add_parser("iter", parents=[common], help="exact iteration of the initial figure")
    _system_flags(it)
    _render_flags(it)
    it.add_argument("--depth", type=int, default=3)
    it.add_argument("--format", choices=["png", "svg", "json"])

    dim = sub.add_parser("dim", parents=[common], help="Hausdorff dimension")
    _system_flags(dim)

    chk = sub.add_parser("check", parents=[common], help="self-intersection report for the depth-1 copies")
    _system_flags(chk)

    pre = sub.add_parser("preset", parents=[common], help="named fractal, then an action")
    pre.add_argument("name", nargs="?", help="preset name (omit to list)")
    pre.add_argument("action", nargs="?", default="info", choices=["info", "gen", "iter", "dim", "check"])
    _render_flags(pre)
    pre.add_argument("--points", type=int, default=100_000)
    pre.add_argument("--seed", type=int, default=0)
    pre.add_argument("--depth", type=int, default=3)
    pre.add_argument("--format", choices=["png", "svg", "csv", "bin", "json", "matrix"])
    pre.add_argument("--order", type=_parse_order)
    pre.add_argument("--uniform", action="store_true")

    sw = sub.add_parser("sweep", parents=[common], help="dimension table over a range of n")
    sw.add_argument("--kind", choices=["ngon", "flake"], default="ngon")
    sw.add_argument("--from", dest="n_from", type=int, default=17)
    sw.add_argument("--to", dest="n_to", type=int, default=50)
    sw.add_argument("--n-values", help="comma-separated increasing n (floats allowed, e.g. 1e308)")
    return parser


def spec_from_args(args) -> ifs.FlakeSpec:
    if getattr(args, "preset", None):
        return ifs.preset(args.preset)
    if args.n is None:
        raise UsageError("either --preset or --n is required")
    center = None
    if args.center is not None:
        family, l = args.center
        center = CenterMapSpec(family, l, args.rot)
    elif args.rot is not Rotation.NONE:
        raise UsageError("--rot needs --center")
    m_ratio = args.m
    if m_ratio is not None and m_ratio.denominator != 1:
        # a half-integer m only shapes the drawing
        m_draw = args.m_draw if args.m_draw is not None else m_ratio
        m_ratio = None
    else:
        m_draw = args.m_draw
    return ifs.FlakeSpec(args.n, m_draw, None if m_ratio is None else int(m_ratio), center, args.ratio)


def _config(args, fmt) -> render.RenderConfig:
    return render.RenderConfig(
        width=args.width, height=args.height, margin=args.margin,
        point_size=args.point_size, line_width=args.line_width, format=fmt,
    )


def _fmt_from(args, default):
    if args.format:
        return args.format
    if args.out:
        ext = os.path.splitext(args.out)[1].lstrip(".").lower()
        if ext in render.FORMATS:
            return ext
    return default


def _emit(args, data, binary=False):
    if args.out:
        with open(args.out, "wb" if binary else "w") as fh:
            fh.write(data)
    elif binary:
        raise UsageError("binary output needs --out")
    else:
        sys.stdout.write(data)


def _system_info(spec, system) -> dict:
    return {
        "system": spec.label(),
        "n": spec.n,
        "m_draw": str(spec.m_draw),
        "m_ratio": spec.m_ratio,
        "ratio": spec.vertex_ratio,
        "maps": len(system),
        "center_ratio": spec.center_ratio(),
        "center_rotation": spec.center_angle(),
        "canonical": spec.canonical,
    }


def _print(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_gen(args, spec):
    system = ifs.build_flake(spec, uniform=args.uniform)
    fmt = _fmt_from(args, "csv")
    info = _system_info(spec, system)
    if fmt == "matrix":
        order = None
        if args.order:
            kind, val = args.order
            order = ifs.ccw_order(len(system), val) if kind == "ccw" else val
        _emit(args, ifs.to_matrix(system, order=order))
        return 0
    if fmt in ("png", "bin") and not args.out:
        raise UsageError(f"{fmt} output needs --out")
    cloud = chaos.generate(system, args.points, args.seed)
    if fmt == "csv":
        _emit(args, cloud.to_csv())
    elif fmt == "bin":
        _emit(args, cloud.to_bytes(), binary=True)
    elif fmt == "svg":
        _emit(args, render.cloud_to_svg(cloud, _config(args, fmt)))
    else:
        _emit(args, render.png_bytes(render.rasterize(cloud, _config(args, fmt))), binary=True)
    if args.out:
        info.update(points=len(cloud), seed=args.seed, out=args.out, format=fmt, system_hash=cloud.system_hash)
        _print(args, info, f"wrote {len(cloud)} points of {spec.label()} to {args.out}")
    return 0


def cmd_iter(args, spec):
    fmt = _fmt_from(args, "json")
    system = ifs.build_flake(spec)
    if fmt == "png" and not args.out:
        raise UsageError("png output needs --out")
    try:
        polys = exact.iterate(spec, args.depth, system)
    except ValueError as e:
        raise UsageError(str(e))
    if fmt == "json":
        _emit(args, polys.to_json() + "\n")
    elif fmt == "svg":
        _emit(args, render.polygons_to_svg(polys, _config(args, fmt)))
    else:
        _emit(args, render.png_bytes(render.render_polygons(polys, _config(args, fmt))), binary=True)
    if args.out:
        info = _system_info(spec, system)
        info.update(depth=args.depth, polygons=len(polys), out=args.out, format=fmt)
        _print(args, info, f"wrote {len(polys)} copies of {spec.label()} at depth {args.depth} to {args.out}")
    return 0


def _dimension(spec) -> dimension.DimensionResult:
    if spec.center is None and spec.ratio is None:
        return dimension.ngon_dimension(spec.n, spec.m_ratio)
    return dimension.flake_dimension(spec)


def cmd_dim(args, spec):
    r = _dimension(spec)
    info = _system_info(spec, ifs.build_flake(spec))
    info.update(r.as_dict())
    _print(args, info, f"{r.value!r}\nmethod: {r.method.value}\nresidual: {r.residual:.3g}\nkind: {r.description}")
    return 0


def cmd_check(args, spec):
    rep = exact.osculation_check(spec)
    info = {"system": spec.label(), "n": spec.n, "m_draw": str(spec.m_draw), "m_ratio": spec.m_ratio}
    info.update(rep.as_dict())
    lines = [f"{spec.label()}"] + [
        f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in rep.as_dict().items()
    ]
    _print(args, info, "\n".join(lines))
    return 0


def cmd_preset(args):
    if not args.name:
        _print(args, {"presets": sorted(ifs.PRESETS)}, "\n".join(ifs.PRESETS))
        return 0
    try:
        spec = ifs.preset(args.name)
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    if args.action == "info":
        system = ifs.build_flake(spec)
        info = _system_info(spec, system)
        info["name"] = args.name
        _print(args, info, "\n".join(f"{k}: {v}" for k, v in info.items()))
        return 0
    return {"gen": cmd_gen, "iter": cmd_iter, "dim": cmd_dim, "check": cmd_check}[args.action](args, spec)


def cmd_sweep(args):
    if args.n_values:
        try:
            vals = [float(v) for v in args.n_values.split(",")]
        except ValueError:
            raise UsageError(f"bad --n-values {args.n_values!r}")
        vals = [int(v) if v.is_integer() and v <= 2 ** 53 else v for v in vals]
        try:
            rows = dimension.asymptote_check(args.kind, vals)
        except (ValueError, GeometryError) as e:
            raise UsageError(str(e))
        table = [{"n": n, "dimension": d} for n, d in rows]
    else:
        if args.n_from < 2 or args.n_to < args.n_from:
            raise UsageError("need 2 <= --from <= --to")
        table = []
        for n in range(args.n_from, args.n_to + 1):
            m = geometry._first_canonical(n)
            if args.kind == "ngon":
                d = dimension.ngon_dimension(n, m).value
            else:
                d = dimension.asymptote_check("flake", [n])[0][1]
            table.append({"n": n, "m": m, "dimension": d})
    if args.json:
        print(json.dumps({"kind": args.kind, "rows": table}))
    else:
        for row in table:
            print("\t".join(f"{row[k]!r}" if isinstance(row[k], float) else str(row[k]) for k in row))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "preset":
            return cmd_preset(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        try:
            spec = spec_from_args(args)
        except (GeometryError, ValueError, KeyError) as e:
            raise UsageError(str(e.args[0]) if e.args else str(e))
        return {"gen": cmd_gen, "iter": cmd_iter, "dim": cmd_dim, "check": cmd_check}[args.command](args, spec)
    except UsageError as e:
        parser.error(str(e))
    except (OSError, RuntimeError) as e:
        print(f"polyflake: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
