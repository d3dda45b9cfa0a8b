"""Command line front end over the exact connection machinery.

Every run resolves its job to a canonical form first and echoes that
form in the output, so results are reproducible from the printed job
alone.  JSON output is deterministic: keys sorted, rationals as "p/q"
strings, no timestamps.
"""

import argparse
import json
import os
import re
import sys

from .chevalley import (build_chevalley, heisenberg_pairing_check,
                        kac_decomposition)
from .connection import (adjoint_connection, g2_seven_dim, scalar_reduction,
                         sl2_sym, sl_standard, so_odd_standard, sp_standard)
from .errors import ConsistencyError, ValidationError
from .formal import check_rigidity
from .galois import cohomology_dims, subregular_table
from .rootsys import build_root_system
from .weights import load_weight_system, save_weight_system, weight_system

SCHEMA = "v1"
CACHE_ENV = "RIGIDCONN_CACHE_DIR"

_FIXED = {"g2": ("G", 2), "f4": ("F", 4), "e6": ("E", 6),
          "e7": ("E", 7), "e8": ("E", 8)}
_GROUP_HELP = ("sl/so/sp with --rank as matrix size, a..g with --rank as "
               "Lie rank, or one of g2 f4 e6 e7 e8")
_REP_HELP = ("standard, adjoint, sym:k, dim7, spin, fund:i, or "
             "comma-separated fundamental-weight coordinates")


class GroupSpec:
    """A group token resolved to a Lie type, with the matrix-family
    reading kept around for the connection constructors."""

    def __init__(self, family, type_label, rank, size):
        self.family = family
        self.type_label = type_label
        self.rank = rank
        self.size = size

    def label(self):
        return "%s%d" % (self.type_label, self.rank)


def parse_group(token, rank=None):
    text = (token or "").strip().lower()
    m = re.fullmatch(r"(sl|so|sp)(\d+)?", text)
    if m:
        family = m.group(1)
        size = int(m.group(2)) if m.group(2) else rank
        if size is None:
            raise ValidationError("group %r needs --rank (the matrix size)"
                                  % token)
        if m.group(2) and rank is not None and rank != size:
            raise ValidationError("group %r conflicts with --rank %d"
                                  % (token, rank))
        if family == "sl":
            if size < 2:
                raise ValidationError("sl needs matrix size >= 2")
            return GroupSpec(family, "A", size - 1, size)
        if family == "sp":
            if size < 2 or size % 2:
                raise ValidationError("sp needs even matrix size >= 2")
            half = size // 2
            return GroupSpec(family, "C" if half >= 2 else "A",
                             half if half >= 2 else 1, size)
        if size < 3 or size % 2 == 0:
            raise ValidationError("so needs odd matrix size >= 3")
        half = (size - 1) // 2
        return GroupSpec(family, "B" if half >= 2 else "A",
                         half if half >= 2 else 1, size)
    if text in _FIXED:
        type_label, fixed_rank = _FIXED[text]
        if rank is not None and rank != fixed_rank:
            raise ValidationError("group %r conflicts with --rank %d"
                                  % (token, rank))
        return GroupSpec(None, type_label, fixed_rank, None)
    m = re.fullmatch(r"([a-g])(\d+)?", text)
    if m:
        letter = m.group(1).upper()
        lie = int(m.group(2)) if m.group(2) else rank
        if lie is None:
            raise ValidationError("group %r needs --rank (the Lie rank)"
                                  % token)
        if m.group(2) and rank is not None and rank != lie:
            raise ValidationError("group %r conflicts with --rank %d"
                                  % (token, rank))
        if (letter, lie) in (("C", 1), ("B", 1)):
            letter, lie = "A", 1
        build_root_system(letter, lie)
        return GroupSpec(None, letter, lie, None)
    raise ValidationError("cannot parse group %r; expected %s"
                          % (token, _GROUP_HELP))


def _rep_int(rep, prefix):
    try:
        return int(rep[len(prefix):])
    except ValueError:
        raise ValidationError("malformed %r; expected %s<integer>"
                              % (rep, prefix))


def resolve_connection(group, rep):
    """MatrixConnection for the matrix-level commands."""
    rep = (rep or "standard").strip().lower()
    if rep == "adjoint":
        return adjoint_connection(group.type_label, group.rank)
    if rep == "standard":
        if group.family == "sl":
            return sl_standard(group.size)
        if group.family == "sp":
            return sp_standard(group.size)
        if group.family == "so":
            return so_odd_standard(group.size)
        if group.type_label == "A":
            return sl_standard(group.rank + 1)
        if group.type_label == "C":
            return sp_standard(2 * group.rank)
        if group.type_label == "B":
            return so_odd_standard(2 * group.rank + 1)
        raise ValidationError("no standard matrix model for %s; try "
                              "--rep adjoint%s" % (group.label(),
                                                   " or --rep dim7"
                                                   if group.type_label == "G"
                                                   else ""))
    if rep == "dim7":
        if (group.type_label, group.rank) != ("G", 2):
            raise ValidationError("--rep dim7 is the G2 case only")
        return g2_seven_dim()
    if rep.startswith("sym:"):
        if (group.type_label, group.rank) != ("A", 1):
            raise ValidationError("--rep sym:k needs an SL2 group token")
        return sl2_sym(_rep_int(rep, "sym:"))
    raise ValidationError("representation %r has no matrix model; expected "
                          "standard, adjoint, sym:k or dim7" % rep)


def resolve_weight(group, rep):
    """Highest weight in fundamental-weight coordinates."""
    rep = (rep or "adjoint").strip().lower()
    rs = build_root_system(group.type_label, group.rank)
    if rep == "adjoint":
        return rs.theta
    if rep == "standard":
        if group.family == "so" and group.size == 3:
            return (2,)
        if group.type_label in ("A", "B", "C", "D"):
            return rs.fundamental_weight(0)
        raise ValidationError("no standard representation for %s"
                              % group.label())
    if rep == "dim7":
        if (group.type_label, group.rank) != ("G", 2):
            raise ValidationError("--rep dim7 is the G2 case only")
        return (1, 0)
    if rep == "spin":
        if group.type_label != "B":
            raise ValidationError("--rep spin needs a type B group")
        return tuple(0 if i < group.rank - 1 else 1
                     for i in range(group.rank))
    if rep.startswith("sym:"):
        if (group.type_label, group.rank) != ("A", 1):
            raise ValidationError("--rep sym:k needs an SL2 group token")
        return (_rep_int(rep, "sym:"),)
    if rep.startswith("fund:"):
        i = _rep_int(rep, "fund:")
        if not 1 <= i <= group.rank:
            raise ValidationError("fundamental weight index %d out of range "
                                  "1..%d" % (i, group.rank))
        return rs.fundamental_weight(i - 1)
    if re.fullmatch(r"-?\d+(,-?\d+)*", rep):
        coords = tuple(int(x) for x in rep.split(","))
        if len(coords) != group.rank:
            raise ValidationError("expected %d coordinates for %s, got %d"
                                  % (group.rank, group.label(), len(coords)))
        return coords
    raise ValidationError("cannot parse representation %r; expected %s"
                          % (rep, _REP_HELP))


def _job_dict(args, group=None, **extra):
    job = {"command": args.command, "format": args.format}
    if group is not None:
        job["group"] = group.label()
        if group.family:
            job["matrix_family"] = "%s%d" % (group.family, group.size)
    job.update(extra)
    return job


def _emit(args, payload, lines):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2))
        sys.stdout.write("\n")
    else:
        sys.stdout.write("\n".join(lines))
        sys.stdout.write("\n")
    return 0


def _matrix_lines(conn):
    rendered = [[conn.render_entry(i, j) for j in range(conn.dim)]
                for i in range(conn.dim)]
    widths = [max(len(rendered[i][j]) for i in range(conn.dim))
              for j in range(conn.dim)]
    return ["[%s]" % "  ".join(rendered[i][j].rjust(widths[j])
                               for j in range(conn.dim))
            for i in range(conn.dim)]


def cmd_matrix(args):
    group = parse_group(args.group, args.rank)
    conn = resolve_connection(group, args.rep)
    job = _job_dict(args, group, rep=(args.rep or "standard"))
    payload = {"schema": SCHEMA, "job": job,
               "connection": conn.to_json_dict()}
    lines = ["job: %s" % json.dumps(job, sort_keys=True),
             "%s  (dimension %d, h = %s)" % (conn.label, conn.dim, conn.h)]
    lines.extend(_matrix_lines(conn))
    return _emit(args, payload, lines)


def cmd_scalar(args):
    group = parse_group(args.group, args.rank)
    conn = resolve_connection(group, args.rep)
    op = scalar_reduction(conn)
    job = _job_dict(args, group, rep=(args.rep or "standard"))
    payload = {"schema": SCHEMA, "job": job, "operator": op.to_json_dict(),
               "rendered": op.render()}
    lines = ["job: %s" % json.dumps(job, sort_keys=True),
             "%s reduces to:" % conn.label,
             "  " + op.render()]
    return _emit(args, payload, lines)


def _cache_dir(args):
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "rigidconn")


def _warm_weight_cache(rs, highest, cache_dir):
    name = "%s_%s.json" % (rs.label(), "_".join(str(x) for x in highest))
    path = os.path.join(cache_dir, name)
    if os.path.exists(path):
        return load_weight_system(path)
    ws = weight_system(rs, highest)
    os.makedirs(cache_dir, exist_ok=True)
    save_weight_system(ws, path)
    return ws


def cmd_cohomology(args):
    group = parse_group(args.group, args.rank)
    highest = resolve_weight(group, args.rep)
    rs = build_root_system(group.type_label, group.rank)
    _warm_weight_cache(rs, highest, _cache_dir(args))
    report = cohomology_dims(group.type_label, group.rank, highest)
    job = _job_dict(args, group, rep=(args.rep or "adjoint"),
                    highest=list(highest))
    payload = {"schema": SCHEMA, "job": job, "report": report.to_json_dict()}
    lines = ["job: %s" % json.dumps(job, sort_keys=True),
             "%s, lambda = %s, dim %d" % (group.label(), list(highest),
                                          report.dim),
             "epsilon %+d, galois group %s" % (report.epsilon,
                                               report.galois_label),
             "irr %d, I0 %d, n-fixed %d, Iinf %d, galois invariants %d"
             % (report.irr, report.inv_I0, report.inv_n, report.inv_Iinf,
                report.inv_galois),
             "h0 %d, h1 %d, h2 %d" % (report.h0, report.h1, report.h2)]
    lines.extend("  " + step for step in report.trace)
    return _emit(args, payload, lines)


def cmd_rigidity(args):
    group = parse_group(args.group, args.rank)
    conn = resolve_connection(group, args.rep)
    result = check_rigidity(conn, conn.dual(), args.trunc)
    dims = result["dimensions"]
    h1 = None
    if dims["laurent_V"] == 0:
        h1 = dims["two_sided"] - dims["taylor0"] - dims["taylor_inf"]
        if h1 < 0:
            raise ConsistencyError("negative h1 accounting: %d - %d - %d"
                                   % (dims["two_sided"], dims["taylor0"],
                                      dims["taylor_inf"]))
    job = _job_dict(args, group, rep=(args.rep or "standard"),
                    truncation=args.trunc)
    payload = {"schema": SCHEMA, "job": job, "passed": result["passed"],
               "stabilized": result["stabilized"], "dimensions": dims,
               "h1": h1}
    lines = ["job: %s" % json.dumps(job, sort_keys=True),
             "%s at truncation %d" % (conn.label, args.trunc),
             "kernel dimensions: laurent V %d, laurent V* %d, two-sided %d, "
             "taylor0 %d, taylor-inf %d"
             % (dims["laurent_V"], dims["laurent_V_dual"], dims["two_sided"],
                dims["taylor0"], dims["taylor_inf"]),
             "h1 of the middle extension: %s"
             % ("unavailable (global kernel nonzero)" if h1 is None else h1),
             "rigid: %s%s" % ("yes" if result["passed"] else "no",
                              "" if result["stabilized"]
                              else "  (dimensions not stabilized)")]
    return _emit(args, payload, lines)


def cmd_subregular(args):
    rows = subregular_table()
    payload = {"schema": SCHEMA, "job": {"command": "subregular",
                                         "format": args.format},
               "rows": [r.to_json_dict() for r in rows]}
    lines = ["group  m  d   orbits  F             galois"]
    for r in rows:
        lines.append("%-5s %2d %3d  %5d   %-13s %s"
                     % ("%s%d" % (r.type_label, r.rank), r.m, r.d, r.orbits,
                        r.f_label, r.galois))
    return _emit(args, payload, lines)


def cmd_kac(args):
    group = parse_group(args.group, args.rank)
    alg = build_chevalley(group.type_label, group.rank)
    depth = args.depth if args.depth else 2 * alg.rs.coxeter_number
    window = kac_decomposition(alg, depth)
    a_dims = [len(window.a_slice(n)) for n in range(1, depth + 1)]
    c_dims = [len(window.c_slice(n)) for n in range(1, depth + 1)]
    heisenberg = heisenberg_pairing_check(alg, depth)
    job = _job_dict(args, group, depth=depth)
    payload = {"schema": SCHEMA, "job": job, "a_dims": a_dims,
               "c_dims": c_dims, "heisenberg_nondegenerate": heisenberg}
    lines = ["job: %s" % json.dumps(job, sort_keys=True),
             "%s loop-algebra window, degrees 1..%d" % (group.label(), depth),
             "dim a_n: %s" % " ".join(str(d) for d in a_dims),
             "dim c_n: %s" % " ".join(str(d) for d in c_dims),
             "heisenberg pairing nondegenerate: %s"
             % ("yes" if heisenberg else "no")]
    return _emit(args, payload, lines)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rigidconn",
        description="Exact computations for the rigid irregular connection "
                    "with a principal-nilpotent pole at 0 and slope 1/h "
                    "at infinity.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, rep_default):
        sp.add_argument("--group", required=True, help=_GROUP_HELP)
        sp.add_argument("--rank", type=int, help="matrix size for sl/so/sp, "
                                                 "Lie rank for letter types")
        sp.add_argument("--rep", default=rep_default, help=_REP_HELP)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("matrix", help="print the connection matrix A(t)")
    common(sp, "standard")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("scalar", help="reduce to a scalar theta-operator")
    common(sp, "standard")
    sp.set_defaults(func=cmd_scalar)

    sp = sub.add_parser("cohomology", help="middle-extension cohomology "
                                           "dimensions by formula")
    common(sp, "adjoint")
    sp.add_argument("--cache-dir", help="weight-system cache directory "
                                        "(default $%s or ~/.cache/rigidconn)"
                                        % CACHE_ENV)
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("rigidity", help="formal-solution rigidity criteria")
    common(sp, "standard")
    sp.add_argument("--trunc", type=int, default=60,
                    help="truncation window half-width (default 60)")
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("subregular", help="the subregular invariant table")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_subregular)

    sp = sub.add_parser("kac", help="loop-algebra slice dimensions")
    sp.add_argument("--group", required=True, help=_GROUP_HELP)
    sp.add_argument("--rank", type=int)
    sp.add_argument("--depth", type=int,
                    help="window depth (default 2h)")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_kac)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print("consistency failure: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
