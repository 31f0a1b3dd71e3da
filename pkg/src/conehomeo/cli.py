"""Scenario-driven command line front end.

A scenario is a JSON document with an ambient space, named charts and a list
of commands.  Every rational is written as a string "p/q"; bare JSON floats
are rejected so no decimal ever enters the computation.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import random
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from .ambient import NORTH, SOUTH, AbstractCone, OpenSquare, Suspension
from .base import BaseGraph, BasePoint, PLBaseFunction, enumerate_sample_points
from .charts import PlanarConvexChart, identity_chart, is_k_interlaced, make_offset_chart, recenter_chart
from .errors import CommandFailed, ParseError, UnknownReference
from .exact import Q, fmt, level as as_level
from .moves import cone_chart_provider, move_in_cone, planar_chart_provider, reroute_path, strong_n_extend
from .paths import PLPath
from .promotion import alternate_lemma1, promote, vertex_swap_chart
from .report import VerificationReport, fmt_point
from .swindle import build_lemma1_homeo
from .verify import (ambient_candidates, lemma1_samples, verify_generic_homeo, verify_lemma1,
                     verify_limit_chart, verify_promotion, verify_reroute)

log = logging.getLogger("conehomeo")

COMMANDS = ("check-interlace", "build-h", "build-h-alt", "promote", "vertex-swap", "move",
            "reroute", "strong-n", "verify", "sample")
_BUNDLED = Path(__file__).with_name("scenarios")


# -- parsing --------------------------------------------------------------------

def _line_col(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


_STRING = re.compile(r'"(?:[^"\\]|\\.)*"')
_FLOAT = re.compile(r"-?\d+(?:\.\d+[eE][-+]?\d+|\.\d+|[eE][-+]?\d+)")


def _float_position(text: str) -> int:
    """Offset of the first float literal outside strings."""
    pos = 0
    while pos < len(text):
        s, f = _STRING.search(text, pos), _FLOAT.search(text, pos)
        if f is None:
            return 0
        if s is None or f.start() < s.start():
            return f.start()
        pos = s.end()
    return 0


class _FloatLiteral(Exception):
    pass


def _no_float(token):
    raise _FloatLiteral(token)


def parse_scenario(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=_no_float, parse_constant=_no_float)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    except _FloatLiteral as e:
        line, col = _line_col(text, _float_position(text))
        raise ParseError(f"decimal literal {e.args[0]} not allowed; write rationals as \"p/q\"",
                         line, col) from None
    if not isinstance(doc, dict):
        raise ParseError("a scenario is a JSON object", 1, 1)
    for key in ("ambient", "commands"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", 1, 1)
    doc.setdefault("charts", {})
    for i, cmd in enumerate(doc["commands"]):
        if not isinstance(cmd, dict) or cmd.get("op") not in COMMANDS:
            raise ParseError(f"command {i}: unknown op {cmd.get('op') if isinstance(cmd, dict) else cmd!r}")
    return doc


def load_scenario(path) -> dict:
    p = Path(path)
    if not p.exists() and (_BUNDLED / f"{path}.json").exists():
        p = _BUNDLED / f"{path}.json"
    return parse_scenario(p.read_text())


# -- building objects --------------------------------------------------------------

def _rat(v):
    if isinstance(v, bool):
        raise ParseError(f"expected a rational, got {v!r}")
    try:
        return Q(v)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational string \"p/q\", got {v!r}") from None


def _graph(spec) -> BaseGraph:
    if isinstance(spec, str):
        m = re.fullmatch(r"(cycle|discrete)\((\d+)\)", spec.replace(" ", ""))
        if not m:
            raise ParseError(f"unknown base {spec!r}")
        return getattr(BaseGraph, m.group(1))(int(m.group(2)))
    return BaseGraph(int(spec["n"]), spec.get("edges", ()))


def build_ambient(spec):
    kind = spec.get("kind")
    if kind == "cone":
        return AbstractCone(_graph(spec["base"]))
    if kind == "suspension":
        return Suspension(_graph(spec["base"]))
    if kind == "square":
        return OpenSquare(_rat(spec["halfwidth"]))
    if kind == "plane":
        return OpenSquare(None)
    raise ParseError(f"unknown ambient kind {kind!r}")


def base_point(tok: str) -> BasePoint:
    m = re.fullmatch(r"v(\d+)", tok) or re.fullmatch(r"e(\d+)-(\d+)@(.+)", tok)
    if m is None:
        raise ParseError(f"bad base point {tok!r}; use v<i> or e<u>-<v>@<p/q>")
    if len(m.groups()) == 1:
        return BasePoint.at(int(m.group(1)))
    return BasePoint.on((int(m.group(1)), int(m.group(2))), _rat(m.group(3)))


@dataclass
class MapEntry:
    h: object
    phi: object = None
    psi: object = None


@dataclass
class Session:
    ambient: object
    chart_specs: dict
    seed: int = 0
    out: Optional[Path] = None
    charts: Dict[str, object] = field(default_factory=dict)
    maps: Dict[str, MapEntry] = field(default_factory=dict)
    report: VerificationReport = None
    written: List[Path] = field(default_factory=list)

    def chart(self, name):
        if name not in self.charts:
            if name not in self.chart_specs:
                raise UnknownReference(name, "chart")
            self.charts[name] = None  # cycle guard
            self.charts[name] = self._build_chart(self.chart_specs[name])
        if self.charts[name] is None:
            raise ParseError(f"chart {name!r} is defined in terms of itself")
        return self.charts[name]

    def map(self, name) -> MapEntry:
        if name not in self.maps:
            raise UnknownReference(name, "map")
        return self.maps[name]

    def _build_chart(self, spec):
        kind = spec.get("kind")
        if kind == "identity":
            return identity_chart(self.ambient)
        if kind == "offset":
            phi = self.chart(spec["of"])
            return make_offset_chart(phi, PLBaseFunction(phi.base, [_rat(v) for v in spec["d"]]))
        if kind == "planar":
            return PlanarConvexChart(self.ambient, _graph(spec["base"]), self.plane_point(spec["center"]),
                                     A=_rat(spec.get("A", "2")), B=_rat(spec.get("B", "0")))
        if kind == "translate":
            return self.chart(spec["of"]).with_center(self.plane_point(spec["center"]),
                                                      _rat(spec.get("kappa", "1")))
        if kind == "recenter":
            return recenter_chart(self.chart(spec["of"]), self.point(spec["at"]))
        raise ParseError(f"unknown chart kind {kind!r}")

    def plane_point(self, spec):
        if not (isinstance(spec, list) and len(spec) == 2):
            raise ParseError(f"expected a planar point [\"x\", \"y\"], got {spec!r}")
        return (_rat(spec[0]), _rat(spec[1]))

    def point(self, spec):
        """"vertex", "N", "S", [base, height], [x, y] or {"chart", "y", "t"}."""
        amb = self.ambient
        if isinstance(spec, dict):
            chart = self.chart(spec["chart"])
            return chart.eval(base_point(spec["y"]), as_level(spec["t"]))
        if spec == "vertex" and isinstance(amb, AbstractCone):
            return amb.vertex
        if spec in ("N", "S") and isinstance(amb, Suspension):
            return NORTH if spec == "N" else SOUTH
        if isinstance(amb, OpenSquare):
            x = self.plane_point(spec)
        elif isinstance(spec, list) and len(spec) == 2 and isinstance(spec[0], str):
            x = amb.point(base_point(spec[0]), _rat(spec[1]))
        else:
            raise ParseError(f"bad point {spec!r}")
        if not amb.contains(x):
            raise ParseError(f"point {spec!r} is not in the ambient space")
        return x


# -- commands -------------------------------------------------------------------------

def _pair(s: Session, cmd):
    return s.chart(cmd.get("phi", "phi")), s.chart(cmd.get("psi", "psi"))


def _cmd_check_interlace(s: Session, cmd):
    phi, psi = _pair(s, cmd)
    k = int(cmd.get("k", 2))
    got, want = is_k_interlaced(phi, psi, k), cmd.get("expect", True)
    s.report.add(f"interlaced k={k}", 1, None if got == want else f"predicate is {got}")


def _cmd_build_h(s: Session, cmd):
    phi, psi = _pair(s, cmd)
    h = build_lemma1_homeo(phi, psi)
    log.info("built h with r = %s", fmt(h.r))
    s.maps[cmd.get("name", "h")] = MapEntry(h, phi, psi)


def _cmd_build_h_alt(s: Session, cmd):
    phi, psi = _pair(s, cmd)
    s.maps[cmd.get("name", "h_alt")] = MapEntry(alternate_lemma1(phi, psi), phi, psi)


def _cmd_promote(s: Session, cmd):
    phi, psi = _pair(s, cmd)
    k = int(cmd["k"])
    phi2 = promote(phi, psi, k)
    s.charts[cmd.get("name", f"phi_{k + 1}")] = phi2
    s.report.merge(verify_promotion(phi, psi, k, phi2, seed=s.seed, m=1), f"promote k={k}: ")


def _cmd_vertex_swap(s: Session, cmd):
    phi, psi = _pair(s, cmd)
    chi = vertex_swap_chart(phi, psi)
    s.charts[cmd.get("name", "chi")] = chi
    s.report.merge(verify_limit_chart(phi, psi, chi, seed=s.seed), "vertex-swap: ")


def _cmd_move(s: Session, cmd):
    phi = s.chart(cmd.get("chart", "phi"))
    x, y = s.point(cmd["x"]), s.point(cmd["y"])
    g = move_in_cone(phi, x, y)
    s.maps[cmd.get("name", "g")] = MapEntry(g)
    s.report.add("move endpoint", 1, None if g(x) == y else f"{fmt_point(x)} -> {fmt_point(g(x))}")


def _cmd_reroute(s: Session, cmd):
    path = PLPath.through([s.point(p) for p in cmd["path"]])
    F = [s.point(p) for p in cmd["F"]]
    amb = s.ambient
    provider = cone_chart_provider(amb) if isinstance(amb, AbstractCone) else planar_chart_provider(amb)
    new = reroute_path(path, F, provider, amb)
    log.info("rerouted path: %s", " -> ".join(fmt_point(p) for p in new.waypoints))
    s.report.merge(verify_reroute(path, F, new), "reroute: ")


def _cmd_strong_n(s: Session, cmd):
    src = [s.point(p) for p in cmd["sources"]]
    tgt = [s.point(p) for p in cmd["targets"]]
    H = strong_n_extend(s.ambient, src, tgt)
    s.maps[cmd.get("name", "H")] = MapEntry(H)
    bad = [(a, b) for a, b in zip(src, tgt) if H(a) != b]
    s.report.add("strong-n targets", len(src),
                 f"{fmt_point(bad[0][0])} -> {fmt_point(H(bad[0][0]))}" if bad else None)


def _cmd_verify(s: Session, cmd):
    name = cmd["map"]
    e = s.map(name)
    if e.phi is not None:
        pts = lemma1_samples(e.phi, e.psi, s.seed, m=int(cmd.get("m", 1)),
                             max_level=int(cmd.get("max_level", 13)), n_random=int(cmd.get("n_random", 10)))
        rep = verify_lemma1(e.phi, e.psi, e.h, pts, seed=s.seed, n_outside=int(cmd.get("n_outside", 50)))
    else:
        rnd = random.Random(s.seed)
        pts = list(ambient_candidates(s.ambient, rnd, int(cmd.get("n", 100))))
        rep = verify_generic_homeo(e.h, e.h.support, pts)
    s.report.merge(rep, f"verify {name}: ")


def _cmd_sample(s: Session, cmd):
    e = s.map(cmd["map"])
    if "levels" in cmd:
        lv = cmd["levels"]
        chart = s.chart(cmd.get("chart", "phi"))
        lo, hi, step = _rat(lv["from"]), _rat(lv["to"]), _rat(lv.get("step", "1/2"))
        ts, t = [], lo
        while t <= hi:
            ts.append(t)
            t += step
        pts = [chart.eval(y, t) for y in enumerate_sample_points(chart.base, int(cmd.get("m", 1)))
               for t in ts]
    elif "box" in cmd:
        x0, y0, x1, y1 = (_rat(v) for v in cmd["box"])
        n = int(cmd.get("n", 10))
        pts = [(x0 + (x1 - x0) * i / (n - 1), y0 + (y1 - y0) * j / (n - 1))
               for i in range(n) for j in range(n)]
    else:
        raise ParseError("sample needs a \"levels\" or a \"box\" grid")
    target = (s.out or Path(".")) / cmd.get("file", f"{cmd['map']}_samples.csv")
    emit_samples(e.h, pts, target)
    s.written.append(target)


HANDLERS = {
    "check-interlace": _cmd_check_interlace, "build-h": _cmd_build_h, "build-h-alt": _cmd_build_h_alt,
    "promote": _cmd_promote, "vertex-swap": _cmd_vertex_swap, "move": _cmd_move,
    "reroute": _cmd_reroute, "strong-n": _cmd_strong_n, "verify": _cmd_verify, "sample": _cmd_sample,
}


# -- output ----------------------------------------------------------------------------

def _coords(x) -> List[str]:
    if isinstance(x, tuple):
        return [fmt(x[0]), fmt(x[1])]
    if x.base is None:
        return [str(x), "inf"]
    return [str(x.base), fmt(x.height)]


def region_label(h, x) -> str:
    """phi-side labels of x joined by '|', or '-' for maps without regions."""
    if not hasattr(h, "classify"):
        return "-"
    return "|".join(sorted(h.classify(x).phi, key=_label_key))


def image_label(h, x) -> str:
    if not hasattr(h, "classify"):
        return "-"
    return "|".join(sorted(h.classify(x).psi, key=_label_key))


def _label_key(lab):
    if lab in ("Core", "P", "Q"):
        return (-1 if lab == "Core" else 10 ** 9, lab)
    return (int(lab[1:]), lab)


def emit_samples(h, points, out) -> int:
    """Write input, region label, output and image label per point; returns the row count."""
    out = Path(out)
    rows = []
    for x in points:
        y = h(x)
        rows.append(_coords(x) + [region_label(h, x)] + _coords(y) + [image_label(h, y)])
    planar = bool(points) and isinstance(points[0], tuple)
    head = ["x", "y"] if planar else ["base", "level"]
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"in_{c}" for c in head] + ["region"] + [f"out_{c}" for c in head] + ["image_region"])
        w.writerows(rows)
    return len(rows)


def run_scenario(doc: dict, seed: int = 0, out=None, title="scenario") -> Session:
    """Execute the commands in order; the session's report says whether all checks passed."""
    s = Session(build_ambient(doc["ambient"]), doc["charts"], seed, None if out is None else Path(out))
    s.report = VerificationReport(title, seed)
    for i, cmd in enumerate(doc["commands"]):
        log.info("command %d: %s", i, cmd["op"])
        try:
            HANDLERS[cmd["op"]](s, cmd)
        except (ParseError, UnknownReference):
            raise
        except (ValueError, KeyError, TypeError) as e:
            raise CommandFailed(f"command {i} ({cmd['op']}) failed: {e}") from e
    if s.out is not None:
        s.out.mkdir(parents=True, exist_ok=True)
        (s.out / "report.txt").write_text(s.report.to_text())
        (s.out / "report.json").write_text(s.report.to_json() + "\n")
    return s


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="conehomeo", description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", required=True, help="scenario file, or the name of a bundled scenario")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="directory for reports and CSV files")
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if not 0 <= args.seed < 2 ** 64:
        ap.error("--seed must fit in an unsigned 64-bit integer")
    try:
        doc = load_scenario(args.scenario)
        s = run_scenario(doc, args.seed, args.out, Path(args.scenario).stem)
    except (ParseError, UnknownReference, CommandFailed) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(s.report.to_text(timing=args.verbose))
    return 0 if s.report.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
