"""Command line front end.

    qcoord crystal gen|tensor|character
    qcoord filtration report|affine|mirror
    qcoord cells multiplicity|cell-dims|peter-weyl
    qcoord sl2 structconst|dualprod|verify

Exit codes: 0 success, 1 domain error, 2 budget exhausted or not stabilized
(partial results are still written), 3 configuration error.
"""

import argparse
import dataclasses
import itertools
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

from . import cells, crystal, filtration, sl2
from .cartan import CartanSpec, preset, validate
from .errors import BudgetExceeded, NotStabilized, QCoordError

FORMATS = ("json", "dot", "csv")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    type: str = None  # preset name
    cartan: list = None  # inline matrix, used when type is None
    corank: int = 0
    root_d: list = None
    lam: str = None
    mu: str = None
    xi: str = None
    eta: str = None
    eta1: str = None
    eta2: str = None
    depth: int = None
    max_length: int = None
    vertex_cap: int = 200000
    theta_steps: int = 3
    cutoff: int = 4
    b: str = None
    c: str = None
    max_power: int = 2
    max_weight: int = 3
    max_module: int = 1
    margin: int = 2
    output: str = None
    format: str = "json"
    index_order: list = None
    tensor_rule: str = "kashiwara"
    coproduct: str = "lower"

    def validate(self):
        for name in ("depth", "max_length", "vertex_cap", "theta_steps"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or v <= 0):
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        for name in ("cutoff", "max_power", "max_weight", "max_module", "margin", "corank"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ConfigError(f"{name} must be a nonnegative integer, got {v!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.tensor_rule not in ("kashiwara", "anti-kashiwara"):
            raise ConfigError(f"unknown tensor_rule {self.tensor_rule!r}")
        if self.coproduct not in ("lower", "upper"):
            raise ConfigError(f"unknown coproduct {self.coproduct!r}")
        if self.index_order is not None and not all(isinstance(i, int) for i in self.index_order):
            raise ConfigError("index_order must be a list of integers")
        return self

    def to_json(self):
        return dataclasses.asdict(self)


def load_config(path):
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text) if Path(path).suffix in (".yaml", ".yml") else json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}")
    return data


def build_config(args):
    data = load_config(args.config) if args.config else {}
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            data[f.name] = v
    return RunConfig(**data).validate()


def root_datum(cfg):
    try:
        if cfg.type:
            return preset(cfg.type)
        if cfg.cartan is None:
            raise ConfigError("give a preset type or an inline cartan matrix")
        spec = CartanSpec(tuple(tuple(r) for r in cfg.cartan), cfg.corank,
                          tuple(tuple(r) for r in cfg.root_d) if cfg.root_d else ())
        return validate(spec, name="inline")
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _weight(rd, text, name, default=None):
    if text is None:
        if default is not None:
            return default
        raise ConfigError(f"missing --{name}")
    try:
        return rd.parse_weight(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# -- output ------------------------------------------------------------------------

def emit(cfg, payload, csv_text=None, dot_text=None):
    header = "config: " + json.dumps(cfg.to_json(), sort_keys=True)
    if cfg.format == "csv" and csv_text is not None:
        text = csv_text(header)
    elif cfg.format == "dot" and dot_text is not None:
        text = dot_text(header)
    else:
        text = json.dumps({"config": cfg.to_json(), "result": payload}, indent=2) + "\n"
    if cfg.output:
        Path(cfg.output).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


# -- crystal -----------------------------------------------------------------------

def cmd_crystal(cmd, cfg):
    rd = root_datum(cfg)
    if cmd == "gen":
        if cfg.lam is None and cfg.mu is not None:
            g = crystal.dual_crystal_of(rd, _weight(rd, cfg.mu, "mu"), cfg.depth, vertex_cap=cfg.vertex_cap)
        else:
            g = crystal.crystal_of(rd, _weight(rd, cfg.lam, "lambda"), cfg.depth, vertex_cap=cfg.vertex_cap)
        extra = {"certificate": {"depth": cfg.depth, "exhausted": g.all_complete()}}
        emit(cfg, g.to_json(extra=extra), dot_text=lambda h: g.to_dot(header=h))
    elif cmd == "tensor":
        lam, mu = _weight(rd, cfg.lam, "lambda"), _weight(rd, cfg.mu, "mu")
        g, comps = crystal.decompose(rd, lam, mu, cfg.depth, cfg.vertex_cap, use_level=rd.kind == "affine")
        cls = [{"seed": s, "size": len(g.component_of(s)), **c.to_json()} for s, c in comps]
        extra = {"certificate": {"depth": cfg.depth, "exhausted": g.all_complete()}}
        emit(cfg, g.to_json(classification=cls, extra=extra), dot_text=lambda h: g.to_dot(header=h))
    elif cmd == "character":
        lam = _weight(rd, cfg.lam, "lambda")
        g = crystal.crystal_of(rd, lam, cfg.depth, vertex_cap=cfg.vertex_cap)
        done, partial = crystal.character(g)
        oracle = rd.character(lam) if rd.kind == "finite" else None
        rows = []
        for w in sorted(set(done) | set(partial)):
            rows.append({"weight": str(w), "count": done.get(w, 0), "incomplete": partial.get(w, 0),
                         "oracle": "" if oracle is None else oracle.get(w, 0)})

        def as_csv(h):
            lines = [f"# {h}", "weight,count,incomplete,oracle"]
            lines += [f"\"{r['weight']}\",{r['count']},{r['incomplete']},{r['oracle']}" for r in rows]
            return "\n".join(lines) + "\n"

        payload = {"rows": rows, "certificate": {"depth": cfg.depth, "exhausted": g.all_complete()}}
        if oracle is not None:
            payload["matches_oracle"] = g.all_complete() and all(r["count"] == r["oracle"] for r in rows) \
                and len(rows) == len(oracle)
        emit(cfg, payload, csv_text=as_csv)


# -- filtration --------------------------------------------------------------------

def cmd_filtration(cmd, cfg):
    rd = root_datum(cfg)
    lam, mu = _weight(rd, cfg.lam, "lambda"), _weight(rd, cfg.mu, "mu")
    if cmd == "affine":
        depth = cfg.depth or cfg.max_length or 6
        v = filtration.affine_classify(rd, lam, mu, depth)
        emit(cfg, v.to_json())
        return 0 if v.consistent else 1
    length = cfg.max_length or cfg.depth
    if rd.kind != "finite" and length is None:
        raise ConfigError("infinite crystals need --max-length")
    fn = filtration.filtration_report if cmd == "report" else filtration.mirror_report
    rep = fn(rd, lam, mu, length, cfg.index_order)
    emit(cfg, rep.to_json(), csv_text=rep.to_csv)
    return 0


# -- cells -------------------------------------------------------------------------

def cmd_cells(cmd, cfg):
    rd = root_datum(cfg)
    if cmd == "multiplicity":
        xi = _weight(rd, cfg.xi, "xi")
        if cfg.eta is not None:
            rows = [cells.multiplicity(rd, xi, _weight(rd, cfg.eta, "eta"), cfg.theta_steps, cfg.max_length)]
        else:
            rows = cells.multiplicity_table(rd, [xi], cfg.theta_steps)
        emit(cfg, {"cells": [r.to_json() for r in rows]}, csv_text=lambda h: cells.to_csv(rows, h))
    elif cmd == "cell-dims":
        xi = _weight(rd, cfg.xi, "xi")
        e1, e2 = _weight(rd, cfg.eta1, "eta1"), _weight(rd, cfg.eta2, "eta2")
        r = cells.cell_graded_dimension(rd, xi, e1, e2, cfg.theta_steps, cfg.max_length)
        emit(cfg, {"cells": [r.to_json()]}, csv_text=lambda h: cells.to_csv([r], h))
    elif cmd == "peter-weyl":
        e1, e2 = _weight(rd, cfg.eta1, "eta1"), _weight(rd, cfg.eta2, "eta2")
        r = cells.peter_weyl_count(rd, e1, e2, cfg.cutoff, cfg.theta_steps)
        emit(cfg, r.to_json(), csv_text=lambda h: cells.to_csv(r.cells, h))
    return 0


# -- sl2 ---------------------------------------------------------------------------

def _mono(text, name):
    if text is None:
        return None
    try:
        return sl2.parse_monomial(text)
    except ValueError as exc:
        raise ConfigError(f"--{name}: {exc}") from None


def cmd_sl2(cmd, cfg):
    b, c = _mono(cfg.b, "b"), _mono(cfg.c, "c")
    if cmd == "structconst":
        if b is not None and c is not None:
            pairs = [(b, c)]
        else:
            labels = sl2.canonical_labels(cfg.max_power, cfg.max_weight)
            pairs = list(itertools.product(labels, labels))
        table = [sl2.structure_constants(x, y, cfg.margin, cfg.coproduct) for x, y in pairs]
        emit(cfg, {"entries": [e.to_json() for e in table if e.entries or len(pairs) == 1]})
        return 0
    if cmd == "dualprod":
        if b is None or c is None:
            raise ConfigError("dualprod needs --b and --c")
        prod = sl2.dual_product(b, c)
        emit(cfg, {"b": str(b), "c": str(c),
                   "product": [{"a": str(a), "poly": str(p)} for a, p in sorted(prod.items())]})
        return 0
    # verify
    labels = sl2.canonical_labels(cfg.max_power, 2 * cfg.max_module)
    results = []
    ok = True
    rng = range(cfg.max_module + 1)
    for a in labels:
        for l1, m1, l2, m2 in itertools.product(rng, rng, rng, rng):
            if l1 - m1 + l2 - m2 != a.n:
                continue
            res = sl2.verify_coproduct_action(a, l1, m1, l2, m2)
            ok &= res.ok
            if not res.ok:
                results.append({"a": str(a), "modules": [l1, m1, l2, m2], "diff": res.diff})
    emit(cfg, {"all_pass": ok, "failures": results,
               "certificate": {"max_power": cfg.max_power, "max_module": cfg.max_module}})
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--config", help="JSON or YAML file with RunConfig keys")
    p.add_argument("--type", help="preset root datum: A1, A2, B2, G2, A1~")
    p.add_argument("--cartan", type=json.loads, help="inline Cartan matrix as JSON")
    p.add_argument("--corank", type=int)
    p.add_argument("--root-d", dest="root_d", type=json.loads)
    for name, dest in [("lambda", "lam"), ("mu", "mu"), ("xi", "xi"), ("eta", "eta"),
                       ("eta1", "eta1"), ("eta2", "eta2"), ("b", "b"), ("c", "c")]:
        p.add_argument(f"--{name}", dest=dest)
    for name in ["depth", "max-length", "vertex-cap", "theta-steps", "cutoff",
                 "max-power", "max-weight", "max-module", "margin"]:
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), type=int)
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--index-order", dest="index_order", type=lambda s: [int(x) for x in s.split(",")])
    p.add_argument("--tensor-rule", dest="tensor_rule", choices=["kashiwara", "anti-kashiwara"])
    p.add_argument("--coproduct", choices=["lower", "upper"])


GROUPS = {
    "crystal": (["gen", "tensor", "character"], cmd_crystal),
    "filtration": (["report", "affine", "mirror"], cmd_filtration),
    "cells": (["multiplicity", "cell-dims", "peter-weyl"], cmd_cells),
    "sl2": (["structconst", "dualprod", "verify"], cmd_sl2),
}


def make_parser():
    parser = _Parser(prog="qcoord", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for group, (cmds, _) in GROUPS.items():
        gp = sub.add_parser(group)
        gsub = gp.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
        for cmd in cmds:
            _common(gsub.add_parser(cmd))
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
    except (ConfigError, TypeError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    saved = crystal.TENSOR_CONVENTION, sl2.COPRODUCT_CONVENTION
    crystal.TENSOR_CONVENTION = cfg.tensor_rule
    sl2.COPRODUCT_CONVENTION = cfg.coproduct
    try:
        return _run(args, cfg)
    finally:
        crystal.TENSOR_CONVENTION, sl2.COPRODUCT_CONVENTION = saved


def _run(args, cfg):
    handler = GROUPS[args.group][1]
    try:
        code = handler(args.cmd, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except (BudgetExceeded, NotStabilized) as exc:
        partial = {"status": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, NotStabilized):
            partial["counts"] = exc.counts
        else:
            partial["partial"] = exc.partial
        cfg.format = "json"
        emit(cfg, partial)
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (QCoordError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return code or 0

if __name__ == "__main__":
    sys.exit(main())
