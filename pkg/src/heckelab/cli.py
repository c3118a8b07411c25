"""The hecke-lab command line: build, decompose, classify, crosscheck.

One command is one process; reports are JSON (or a table rendering of the
same payload), byte-stable across runs, and written atomically.  Failure
causes partition the exit codes: 2 malformed input, 3 resource cap,
4 oracle/crosscheck mismatch, 5 non-commutative commutant, 6 coefficient
field constraint.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .config import DEFAULT_CONFIG, SessionConfig
from .errors import HeckeLabError, MalformedInputError, OracleMismatchError
from .hecke import (
    LeftIdeal,
    brute_structure_constants,
    build_hecke,
    construct_V,
)
from .jsonio import (
    build_report,
    file_digest,
    format_algebraic_number,
    format_field,
    format_matrix,
    format_point,
    format_polynomial,
    format_rational,
    load_json,
    parse_field,
    parse_group,
    parse_module,
    parse_point,
    parse_points,
    parse_rational,
    parse_root_datum,
    parse_subgroup,
    render_json,
    render_table,
)
from .modules import base_change, commutant, modules_isomorphic, split_semisimple
from .numfield import distinguished_embedding, is_rational_field
from .poly import QQ
from .satake import base_change_table, classify, residue_field


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hecke-lab",
        description="Exact Hecke algebras, module base change, and "
        "Satake-side classification at desk scale.",
    )
    parser.add_argument("--config", help="session config JSON")
    parser.add_argument("--output", help="write the report here (atomic)")
    parser.add_argument(
        "--format", choices=("json", "table"), default=None, dest="fmt"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    finite = sub.add_parser("finite", help="finite-group Hecke algebras")
    fsub = finite.add_subparsers(dest="subcommand", required=True)
    fb = fsub.add_parser("build", help="structure constants of H(G, L, A)")
    fb.add_argument("--group", required=True)
    fb.add_argument("--subgroup", required=True)
    fb.add_argument("--field", default="Q")
    fb.add_argument(
        "--oracle",
        action="store_true",
        help="re-derive the constants by brute-force convolution",
    )
    fv = fsub.add_parser("construct-v", help="build V(I, L) from an ideal")
    fv.add_argument("--group", required=True)
    fv.add_argument("--subgroup", required=True)
    fv.add_argument("--field", default="Q")
    fv.add_argument("--ideal", required=True)

    dec = sub.add_parser("decompose", help="split a module after base change")
    dec.add_argument("--module", required=True)
    dec.add_argument("--extension", required=True)

    sat = sub.add_parser("satake", help="spherical-side classification")
    ssub = sat.add_subparsers(dest="subcommand", required=True)
    sc = ssub.add_parser("classify", help="classify points over a base field")
    sc.add_argument("--datum", required=True)
    sc.add_argument("--base", required=True)
    sc.add_argument("--points", required=True)
    sb = ssub.add_parser("base-change", help="decompose a class over B")
    sb.add_argument("--datum", required=True)
    sb.add_argument("--base", required=True)
    sb.add_argument("--point", required=True)
    sb.add_argument("--ext", required=True)

    cc = sub.add_parser(
        "crosscheck",
        help="compare Satake splitting against module base change",
    )
    cc.add_argument("--datum", required=True)
    cc.add_argument("--base", required=True)
    cc.add_argument("--point", required=True)
    cc.add_argument("--ext", required=True)
    return parser


def _load_config(args) -> SessionConfig:
    cfg = DEFAULT_CONFIG
    if args.config:
        cfg = SessionConfig.from_dict(load_json(args.config))
    cfg = cfg.with_env_overrides()
    return cfg


def _field_from_arg(arg):
    if arg in ("Q", "QQ"):
        return QQ
    return parse_field(load_json(arg))


def cmd_finite_build(args, cfg):
    gdata = load_json(args.group)
    group = parse_group(gdata)
    sub = parse_subgroup(load_json(args.subgroup), group)
    field = _field_from_arg(args.field)
    alg = build_hecke(group, sub, field=field)
    if args.oracle:
        oracle = brute_structure_constants(alg)
        if oracle != alg.structure:
            raise OracleMismatchError(
                "structure constants disagree with brute-force convolution"
            )
    payload = {
        "group": group.name,
        "group_order": group.order,
        "subgroup_order": sub.order,
        "dim": alg.dim,
        "eps_index": alg.basis.coset_of(0),
        "double_cosets": [
            {
                "representative": group.labels[rep],
                "size": len(alg.basis.members[k]),
            }
            for k, rep in enumerate(alg.basis.representatives)
        ],
        "structure_constants": [
            [[format_rational(c) for c in vec] for vec in plane]
            for plane in alg.structure
        ],
        "oracle_checked": bool(args.oracle),
    }
    inputs = {
        "group": file_digest(args.group),
        "subgroup": file_digest(args.subgroup),
    }
    return build_report("finite build", payload, inputs, cfg)


def cmd_finite_construct_v(args, cfg):
    group = parse_group(load_json(args.group))
    sub = parse_subgroup(load_json(args.subgroup), group)
    field = _field_from_arg(args.field)
    alg = build_hecke(group, sub, field=field)
    ideal_data = load_json(args.ideal)
    if "basis" not in ideal_data:
        raise MalformedInputError("ideal file needs a basis")
    rows = [
        [parse_rational(c) for c in row] for row in ideal_data["basis"]
    ]
    ideal = LeftIdeal(alg, rows)
    con = construct_V(ideal)
    checks = {
        "eps_j_equals_i": con.check_eps_j_equals_i(),
        "invariants_match_quotient": con.check_invariants_match_quotient(),
        "w_to_v_invariants_isomorphism": (
            con.check_w_to_v_invariants_isomorphism()
        ),
    }
    if not all(checks.values()):
        raise OracleMismatchError(f"construction certificates failed: {checks}")
    payload = {
        "ideal_dim": ideal.dim,
        "v_dim": con.V.dim,
        "w_dim": con.W.dim,
        "v_action": {
            group.labels[g]: format_matrix(con.V.mats[g])
            for g in range(group.order)
        },
        "v_invariants_dim": con.v_invariants.dim,
        "checks": checks,
    }
    inputs = {
        "group": file_digest(args.group),
        "subgroup": file_digest(args.subgroup),
        "ideal": file_digest(args.ideal),
    }
    return build_report("finite construct-v", payload, inputs, cfg)


def cmd_decompose(args, cfg):
    module = parse_module(load_json(args.module))
    ext = parse_field(load_json(args.extension))
    emb = None
    if not is_rational_field(module.field):
        emb = distinguished_embedding(module.field, ext)
        if emb is None:
            raise MalformedInputError(
                "module base field does not embed into the extension"
            )
    changed = base_change(module, ext, embedding=emb)
    dec = split_semisimple(changed)
    summary = []
    for summand, embmat in dec.summands:
        summary.append(
            {
                "dim": summand.dim,
                "commutant_degree": commutant(summand).dim,
                "embedding": format_matrix(embmat),
            }
        )
    iso = [
        [
            modules_isomorphic(a, b)
            for b, _ in dec.summands
        ]
        for a, _ in dec.summands
    ]
    payload = {
        "t": len(dec.summands),
        "summands": summary,
        "multiplicities": dec.multiplicities,
        "pairwise_isomorphism": iso,
    }
    inputs = {
        "module": file_digest(args.module),
        "extension": file_digest(args.extension),
    }
    return build_report("decompose", payload, inputs, cfg)


def cmd_satake_classify(args, cfg):
    datum = parse_root_datum(load_json(args.datum))
    base = _field_from_arg(args.base)
    points = parse_points(load_json(args.points), datum)
    classes = classify(points, base, datum)
    payload = {
        "datum": datum.label,
        "base": format_field(base),
        "classes": [
            {
                "point": format_point(cls.point),
                "residue_minpoly": (
                    format_polynomial(cls.residue_field.modulus)
                    if not is_rational_field(cls.residue_field)
                    else ["0", "1"]
                ),
                "t": cls.degree,
                "absolutely_irreducible": cls.absolutely_irreducible,
                "member_count": len(cls.members),
            }
            for cls in classes
        ],
    }
    inputs = {
        "datum": file_digest(args.datum),
        "points": file_digest(args.points),
    }
    if args.base not in ("Q", "QQ"):
        inputs["base"] = file_digest(args.base)
    return build_report("satake classify", payload, inputs, cfg)


def cmd_satake_base_change(args, cfg):
    datum = parse_root_datum(load_json(args.datum))
    base = _field_from_arg(args.base)
    point = parse_point(load_json(args.point), datum)
    ext = parse_field(load_json(args.ext))
    report = base_change_table(point, base, ext, datum)
    payload = {
        "datum": datum.label,
        "base": format_field(base),
        "extension": format_field(ext),
        "t": report.t,
        "points": [format_point(p) for p in report.points],
        "module_split_count": report.module_split_count,
    }
    inputs = {
        "datum": file_digest(args.datum),
        "point": file_digest(args.point),
        "ext": file_digest(args.ext),
    }
    if args.base not in ("Q", "QQ"):
        inputs["base"] = file_digest(args.base)
    return build_report("satake base-change", payload, inputs, cfg)


def cmd_crosscheck(args, cfg):
    datum = parse_root_datum(load_json(args.datum))
    base = _field_from_arg(args.base)
    point = parse_point(load_json(args.point), datum)
    ext = parse_field(load_json(args.ext))
    table = base_change_table(point, base, ext, datum, verify_modules=False)
    cls = residue_field(point, base, datum)
    F = cls.residue_field
    if is_rational_field(F):
        module_t = 1
    else:
        from .modules import FinDimAlgebra, regular_module

        alg = FinDimAlgebra.regular_of_field(F, base)
        mod = regular_module(alg)
        emb = None if is_rational_field(base) else distinguished_embedding(base, ext)
        changed = base_change(mod, ext, embedding=emb)
        module_t = len(split_semisimple(changed))
    if module_t != table.t:
        raise OracleMismatchError(
            f"satake count {table.t} != module base-change count {module_t}"
        )
    payload = {
        "datum": datum.label,
        "satake_t": table.t,
        "module_t": module_t,
        "match": True,
    }
    inputs = {
        "datum": file_digest(args.datum),
        "point": file_digest(args.point),
        "ext": file_digest(args.ext),
    }
    if args.base not in ("Q", "QQ"):
        inputs["base"] = file_digest(args.base)
    return build_report("crosscheck", payload, inputs, cfg)


def _emit(report, args, cfg):
    fmt = args.fmt or cfg.output_format
    text = render_json(report) if fmt == "json" else render_table(report)
    if args.output:
        directory = os.path.dirname(os.path.abspath(args.output))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hecke-lab-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, args.output)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "finite" and args.subcommand == "build":
            report = cmd_finite_build(args, cfg)
        elif args.command == "finite" and args.subcommand == "construct-v":
            report = cmd_finite_construct_v(args, cfg)
        elif args.command == "decompose":
            report = cmd_decompose(args, cfg)
        elif args.command == "satake" and args.subcommand == "classify":
            report = cmd_satake_classify(args, cfg)
        elif args.command == "satake" and args.subcommand == "base-change":
            report = cmd_satake_base_change(args, cfg)
        elif args.command == "crosscheck":
            report = cmd_crosscheck(args, cfg)
        else:  # pragma: no cover - argparse enforces the choices
            raise MalformedInputError(f"unknown command {args.command}")
        _emit(report, args, cfg)
        return 0
    except HeckeLabError as exc:
        print(f"hecke-lab: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
