"""``stab`` command-line tool.

Exit status: 0 on success, 1 on a domain error, 2 on malformed input.
With ``--format json`` errors are printed as JSON on stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .charge import (
    CentralCharge,
    Chart,
    StabilityParameter,
    central_charge,
    enumerate_classes_with_charge,
    hilbert_polynomial,
    p_slope,
    p_slope_fn,
    parameter_from_ambient,
    parameter_from_json,
    slope_comparison_bounds,
    z_slope,
    z_slope_fn,
)
from .errors import MalformedInput, NotSemistable, StabError
from .lattice import AmbientData, NumClass, ambient_from_json, ambient_to_json, check_beta, format_rational, parse_rational, validate_ambient
from .objects import (
    ObjectModel,
    h0_bound_p,
    h0_bound_z,
    hn_filtration,
    is_semistable,
    is_stable,
    jh_filtration,
    stability_test_battery,
    validate_model,
)
from .walls import (
    ParameterBox,
    actual_walls,
    crossing_report,
    enumerate_walls_in_box,
    quintic_ambient,
    quintic_scenario,
    realized_walls,
    same_chamber,
    slice_grid,
)


class Workspace:
    """Validated ambient, parameter point and models loaded from the command line."""

    def __init__(self, args):
        self.args = args
        self.ambient = _load_ambient(args.ambient)
        self.chart = Chart.for_ambient(self.ambient)
        if getattr(args, "params", None):
            self.param = parameter_from_json(_read_json(args.params), self.ambient)
        elif getattr(args, "at", None):
            self.param = self.point(args.at)
        else:
            self.param = parameter_from_ambient(self.ambient).validate()

    def point(self, spec: str) -> StabilityParameter:
        coords = {}
        for part in filter(None, (s.strip() for s in spec.split(","))):
            try:
                name, value = part.split("=", 1)
            except ValueError as exc:
                raise MalformedInput(f"bad coordinate {part!r}, expected name=value") from exc
            coords[name.strip()] = parse_rational(value)
        return self.chart.point(coords).validate()

    def num_class(self) -> NumClass:
        if not self.args.cls:
            raise MalformedInput("--class is required")
        n = NumClass.from_json(_parse_json(self.args.cls, "--class"))
        check_beta(self.ambient, n.beta)
        return n

    def model(self) -> ObjectModel:
        if not self.args.model:
            raise MalformedInput("--model is required")
        m = ObjectModel.from_json(_read_json(self.args.model), name=Path(self.args.model).stem)
        return self._check_model(m)

    def _check_model(self, m: ObjectModel) -> ObjectModel:
        check_beta(self.ambient, m.top.beta)
        return validate_model(m)

    def catalog(self) -> dict[str, ObjectModel]:
        if not self.args.catalog:
            raise MalformedInput("--catalog is required")
        folder = Path(self.args.catalog)
        if not folder.is_dir():
            raise MalformedInput(f"catalog {folder} is not a directory")
        out = {}
        for path in sorted(folder.glob("*.json")):
            out[path.stem] = self._check_model(ObjectModel.from_json(_read_json(path), name=path.stem))
        return out

    def slope_fn(self):
        if getattr(self.args, "slope", "z") == "p":
            return p_slope_fn(self.ambient)
        return z_slope_fn(self.param)


def _parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{what} is not valid JSON: {exc}") from exc


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    return _parse_json(text, str(path))


def _load_ambient(spec: str) -> AmbientData:
    if spec == "quintic":
        return validate_ambient(quintic_ambient())
    return validate_ambient(ambient_from_json(_read_json(spec)))


def _slope_out(s):
    return "inf" if s == float("inf") else format_rational(s)


# -- subcommands -------------------------------------------------------------


def cmd_validate(ws: Workspace):
    out = {"ambient": "ok", "ngens": ws.ambient.ngens, "coordinates": list(ws.chart.names)}
    if ws.args.params:
        out["params"] = ws.param.to_json()
    if ws.args.model:
        m = ws.model()
        out["model"] = {"nodes": len(m), "top": m.top.to_json()}
    if ws.args.catalog:
        out["catalog"] = sorted(ws.catalog())
    return out, "ok"


def cmd_charge(ws: Workspace):
    z = central_charge(ws.param, ws.num_class().require_admissible())
    return z.to_json(), str(z)


def cmd_slope(ws: Workspace):
    n = ws.num_class().require_admissible()
    out = {"z_slope": _slope_out(z_slope(ws.param, n)), "p_slope": _slope_out(p_slope(ws.ambient, n))}
    return out, f"mu_Z = {out['z_slope']}, mu_P = {out['p_slope']}"


def cmd_enumerate_classes(ws: Workspace):
    if not ws.args.charge:
        raise MalformedInput("--charge is required")
    c = CentralCharge.from_json(_parse_json(ws.args.charge, "--charge"))
    classes = enumerate_classes_with_charge(ws.param, c)
    polys = sorted({hilbert_polynomial(ws.ambient, n) for n in classes})
    out = {
        "charge": c.to_json(),
        "classes": [n.to_json() for n in classes],
        "hilbert_polynomials": [{"leading": format_rational(p.leading), "constant": p.constant} for p in polys],
    }
    return out, "\n".join(str(n) for n in classes)


def cmd_hn(ws: Workspace):
    hn = hn_filtration(ws.model(), ws.slope_fn())
    return hn.to_json(), " < ".join(hn.chain)


def cmd_jh(ws: Workspace):
    g = jh_filtration(ws.model(), ws.slope_fn())
    return g.to_json(), " + ".join(str(f) for f in g.factors)


def _verdict(m: ObjectModel, f) -> dict:
    ss, st = is_semistable(m, f), is_stable(m, f)
    battery = stability_test_battery(m, f)
    return {
        "semistable": ss.holds,
        "stable": st.holds,
        "witness": ss.witness if not ss else st.witness,
        "battery": [battery.all_subobjects, battery.saturated_subobjects, battery.all_quotients, battery.pure_quotients],
    }


def cmd_stability(ws: Workspace):
    f = ws.slope_fn()
    if ws.args.catalog:
        out = {name: _verdict(m, f) for name, m in ws.catalog().items()}
    else:
        out = {ws.model().name: _verdict(ws.model(), f)}
    text = "\n".join(
        f"{name}: {'stable' if v['stable'] else 'semistable' if v['semistable'] else 'unstable'}" for name, v in out.items()
    )
    return out, text


def cmd_bounds(ws: Workspace):
    b = slope_comparison_bounds(ws.ambient, ws.param)
    out = {k: format_rational(v) for k, v in b._asdict().items()}
    if ws.args.model:
        m = ws.model()
        out["h0_bound_p"] = format_rational(h0_bound_p(m, ws.ambient))
        c = central_charge(ws.param, m.top)
        if c.im < 0:
            try:
                out["h0_bound_z"] = h0_bound_z(m, ws.ambient, ws.param, c).to_json()
            except NotSemistable:
                out["h0_bound_z"] = None
    text = ", ".join(f"{k}={v}" for k, v in out.items() if not isinstance(v, dict))
    return out, text


def _box(ws: Workspace) -> ParameterBox:
    if not ws.args.box:
        raise MalformedInput("--box is required")
    return ParameterBox.parse(ws.chart, ws.args.box)


def _walls(ws: Workspace):
    if ws.args.cls:
        walls = enumerate_walls_in_box(ws.num_class(), _box(ws))
        if ws.args.catalog and ws.args.actual:
            walls = actual_walls(walls, ws.catalog())
        return walls
    return realized_walls(ws.catalog())


def cmd_walls(ws: Workspace):
    walls = _walls(ws)
    return [w.to_json() for w in walls], f"{len(walls)} walls\n" + "\n".join(
        f"e={w.e} xi={list(w.xi)}" for w in walls
    )


def cmd_chamber(ws: Workspace):
    if not (ws.args.p1 and ws.args.p2):
        raise MalformedInput("--p1 and --p2 are required")
    walls = _walls(ws)
    same = same_chamber(ws.point(ws.args.p1), ws.point(ws.args.p2), walls)
    return {"same_chamber": same, "walls": len(walls)}, "same chamber" if same else "different chambers"


def cmd_cross(ws: Workspace):
    if not (ws.args.p_minus and ws.args.p_plus and ws.args.p_zero):
        raise MalformedInput("--p-minus, --p-plus and --p-zero are required")
    report = crossing_report(ws.point(ws.args.p_minus), ws.point(ws.args.p_plus), ws.point(ws.args.p_zero), ws.catalog())
    out = report.to_json()
    text = "\n".join(f"{name}: situation {s}" for name, s in out["situations"].items())
    return out, text


def cmd_scenario(ws: Workspace):
    amb, check = quintic_scenario()
    return ambient_to_json(amb), json.dumps(ambient_to_json(amb), sort_keys=True)


def cmd_slice(ws: Workspace):
    box = _box(ws)
    walls = _walls(ws)
    names = list(box.intervals)
    x_name = ws.args.x or names[0]
    y_name = ws.args.y or names[1]
    steps = ws.args.steps
    axes = {}
    for name in (x_name, y_name):
        if name not in box.intervals:
            raise MalformedInput(f"slice axis {name} is not a box coordinate")
        lo, hi = box.intervals[name]
        axes[name] = [lo + (hi - lo) * Fraction(i, steps) for i in range(steps + 1)]
    base = ws.chart.coordinates(ws.param)
    for name, (lo, hi) in box.intervals.items():
        if name not in (x_name, y_name):
            base[name] = (lo + hi) / 2
    rows = slice_grid(ws.chart, base, x_name, axes[x_name], y_name, axes[y_name], walls)
    return rows, None


COMMANDS = {
    "validate": (cmd_validate, "text"),
    "charge": (cmd_charge, "text"),
    "slope": (cmd_slope, "text"),
    "enumerate-classes": (cmd_enumerate_classes, "json"),
    "hn": (cmd_hn, "json"),
    "jh": (cmd_jh, "json"),
    "stability": (cmd_stability, "json"),
    "bounds": (cmd_bounds, "json"),
    "walls": (cmd_walls, "json"),
    "chamber": (cmd_chamber, "json"),
    "cross": (cmd_cross, "json"),
    "scenario": (cmd_scenario, "json"),
    "slice": (cmd_slice, "csv"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ambient", default="quintic", help="ambient JSON file, or 'quintic'")
    common.add_argument("--params", help="parameter JSON file {B, J, L} (values on generators)")
    common.add_argument("--at", help="parameter point as chart coordinates, e.g. xB=0,xJ=1,xL=1")
    common.add_argument("--model", help="model JSON file")
    common.add_argument("--catalog", help="directory of model JSON files")
    common.add_argument("--class", dest="cls", help='numerical class, e.g. \'{"chi":5,"beta":[2]}\'')
    common.add_argument("--charge", help='charge value, e.g. \'{"re":"2","im":"-3"}\'')
    common.add_argument("--box", help="box, e.g. xB=-1..1,xJ=1..2,xL=1..2")
    common.add_argument("--slope", choices=["z", "p"], default="z", help="slope function for model commands")
    common.add_argument("--actual", action="store_true", help="keep only walls realized by the catalog")
    common.add_argument("--p1", help="first point (chamber)")
    common.add_argument("--p2", help="second point (chamber)")
    common.add_argument("--p-minus", help="point before the wall (cross)")
    common.add_argument("--p-plus", help="point after the wall (cross)")
    common.add_argument("--p-zero", help="point on the wall (cross)")
    common.add_argument("--x", help="slice horizontal coordinate")
    common.add_argument("--y", help="slice vertical coordinate")
    common.add_argument("--steps", type=int, default=10, help="grid subdivisions per slice axis")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="write output to this file")
    parser = argparse.ArgumentParser(prog="stab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _render(payload, text, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        if not (isinstance(payload, list) and payload and isinstance(payload[0], list)):
            raise MalformedInput("csv output is only available for tabular commands (slice)")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(payload)
        return buf.getvalue().rstrip("\n")
    if text is None:
        return _render(payload, None, "json")
    return text


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    func, default_fmt = COMMANDS[args.command]
    fmt = args.format or default_fmt
    try:
        payload, text = func(Workspace(args))
        rendered = _render(payload, text, fmt)
    except StabError as err:
        code = 2 if isinstance(err, MalformedInput) else 1
        if fmt == "json":
            print(json.dumps(err.to_json(), sort_keys=True), file=stdout)
        else:
            print(f"error: {err.kind}: {err}", file=sys.stderr)
        return code
    if args.out:
        Path(args.out).write_text(rendered + "\n", encoding="utf-8")
    else:
        print(rendered, file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
