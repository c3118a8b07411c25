"""JSON interchange: literals for all exact objects, loaders, and reports.

Rationals serialize as strings "p/q" so no float ever enters the pipeline.
An algebraic number literal is {"minpoly": [rationals...], "near": {"re",
"im"}, "radius"}: the square centered at ``near`` with half-width
``radius`` must isolate exactly one root of the minpoly.  A bare rational
string is accepted as a shorthand literal.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from . import __version__
from .algnum import AlgebraicNumber, IntervalQ, Rect
from .errors import MalformedInputError
from .groups import FiniteGroup, Subgroup
from .modules import FinDimAlgebra, HeckeModule
from .numfield import FieldElement, NumberField, is_rational_field
from .poly import Polynomial, QQ
from .satake import RootDatum, TorusPoint, preset_datum

SCHEMA = "hecke-lab/1"


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(
        x.numerator
    )


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"bad rational literal {s!r}") from exc
    raise MalformedInputError(f"bad rational literal {s!r}")


def format_polynomial(p: Polynomial):
    return [format_rational(c) for c in p.coeffs]


def parse_polynomial(data) -> Polynomial:
    if not isinstance(data, list):
        raise MalformedInputError("polynomial literal must be a list")
    return Polynomial([parse_rational(c) for c in data], QQ)


def format_field_element(e) -> list:
    if isinstance(e, Fraction):
        return [format_rational(e)]
    return [format_rational(c) for c in e.rep]


def parse_field(data):
    """"Q" or {"modulus": [...], "label": ..., "root_index": k}."""
    if data == "Q" or data == "QQ":
        return QQ
    if not isinstance(data, dict) or "modulus" not in data:
        raise MalformedInputError("field literal must be 'Q' or have a modulus")
    modulus = parse_polynomial(data["modulus"])
    label = data.get("label")
    root_index = int(data.get("root_index", 0))
    root = AlgebraicNumber(modulus.monic(), root_index)
    try:
        return NumberField(modulus, label=label, root=root)
    except Exception as exc:
        raise MalformedInputError(f"bad number field literal: {exc}") from exc


def format_field(F):
    if is_rational_field(F):
        return "Q"
    return {
        "modulus": format_polynomial(F.modulus),
        "label": F.label,
        "root_index": F.root.index,
    }


def parse_algebraic_number(data, cap=None) -> AlgebraicNumber:
    if isinstance(data, (str, int)):
        return AlgebraicNumber.from_rational(parse_rational(data))
    if not isinstance(data, dict) or "minpoly" not in data:
        raise MalformedInputError(
            "algebraic number literal needs a minpoly or a rational string"
        )
    p = parse_polynomial(data["minpoly"])
    near = data.get("near", {})
    re = parse_rational(near.get("re", "0"))
    im = parse_rational(near.get("im", "0"))
    radius = parse_rational(data.get("radius", "0"))
    if radius < 0:
        raise MalformedInputError("radius must be nonnegative")
    rect = Rect(
        IntervalQ(re - radius, re + radius), IntervalQ(im - radius, im + radius)
    )
    return AlgebraicNumber.from_isolating_rectangle(p, rect, cap=cap)


def format_algebraic_number(a: AlgebraicNumber) -> dict:
    # refine until the covering square certifiably isolates the root
    for level in range(4, 64, 4):
        box = a.enclosure(level)
        re, im = box.midpoint()
        radius = max(
            box.re.hi - re, re - box.re.lo, box.im.hi - im, im - box.im.lo
        )
        square = Rect(
            IntervalQ(re - radius, re + radius),
            IntervalQ(im - radius, im + radius),
        )
        others = [
            i
            for i in range(a.degree)
            if i != a.index and a.system.rect(i).intersects(square)
        ]
        if not others:
            return {
                "minpoly": format_polynomial(a.minpoly),
                "near": {"re": format_rational(re), "im": format_rational(im)},
                "radius": format_rational(radius),
            }
        for i in others:
            a.system.refine(i)
    raise MalformedInputError("could not emit an isolating literal")


def parse_group(data) -> FiniteGroup:
    if "permutations" in data:
        gens = [
            [tuple(int(x) for x in cycle) for cycle in gen]
            for gen in data["permutations"]
        ]
        return FiniteGroup.from_permutations(gens, name=data.get("name"))
    if "mul" not in data or "order" not in data:
        raise MalformedInputError(
            "group file needs either permutations or order+mul"
        )
    mul = data["mul"]
    if len(mul) != data["order"]:
        raise MalformedInputError("group order does not match the table")
    return FiniteGroup(mul, labels=data.get("labels"), name=data.get("name"))


def format_group(group: FiniteGroup) -> dict:
    return {
        "order": group.order,
        "mul": [[int(x) for x in row] for row in group.mul],
        "labels": group.labels,
        "name": group.name,
    }


def parse_subgroup(data, group: FiniteGroup) -> Subgroup:
    if "generators" not in data:
        raise MalformedInputError("subgroup file needs generators")
    return group.subgroup([int(g) for g in data["generators"]])


def parse_matrix(data, field):
    return [[field.coerce(parse_rational(c)) for c in row] for row in data]


def format_matrix(m):
    out = []
    for row in m:
        line = []
        for x in row:
            if isinstance(x, Fraction):
                line.append(format_rational(x))
            else:
                line.append([format_rational(c) for c in x.rep])
        out.append(line)
    return out


def parse_findim_algebra(data) -> FinDimAlgebra:
    field = parse_field(data.get("base", "Q"))
    structure = [
        [[field.coerce(parse_rational(c)) for c in vec] for vec in plane]
        for plane in data["structure_constants"]
    ]
    identity = [field.coerce(parse_rational(c)) for c in data["identity"]]
    return FinDimAlgebra(field, structure, identity)


def parse_module(data) -> HeckeModule:
    algebra = parse_findim_algebra(data["algebra"])
    mats = [parse_matrix(m, algebra.field) for m in data["action"]]
    if len(mats) != algebra.dim:
        raise MalformedInputError("one action matrix per basis element required")
    if mats and len(mats[0]) != data.get("dim", len(mats[0])):
        raise MalformedInputError("module dimension mismatch")
    return HeckeModule(algebra, mats, validate=True)


def parse_root_datum(data) -> RootDatum:
    if "preset" in data:
        return preset_datum(
            data["preset"],
            simply_connected=data.get("simply_connected", True),
            q=data.get("q", 1),
        )
    return RootDatum(
        int(data["rank"]),
        data["reflections"],
        simply_connected=data.get("simply_connected", True),
        q=data.get("q", 1),
        label=data.get("label"),
    )


def parse_point(data, datum: RootDatum) -> TorusPoint:
    if isinstance(data, dict) and "coordinates" in data:
        data = data["coordinates"]
    if not isinstance(data, list) or len(data) != datum.rank:
        raise MalformedInputError("point needs one coordinate per rank")
    return TorusPoint(datum, [parse_algebraic_number(c) for c in data])


def parse_points(data, datum: RootDatum):
    if isinstance(data, dict) and "points" in data:
        data = data["points"]
    return [parse_point(p, datum) for p in data]


def format_point(p: TorusPoint) -> dict:
    return {
        "coordinates": [format_algebraic_number(c) for c in p.coords]
    }


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON in {path}: {exc}") from exc


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def build_report(command: str, payload, inputs: dict, config) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "version": __version__,
        "config": {
            "degree_caps": {
                "q_factor": config.q_factor_cap,
                "field_factor": config.field_factor_cap,
                "primitive_element": config.primitive_element_cap,
            },
            "group_order_cap": config.group_order_cap,
            "weyl_order_cap": config.weyl_order_cap,
        },
        "inputs": inputs,
        "payload": payload,
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_table(report: dict) -> str:
    """Human-readable flat rendering of the same payload."""
    lines = [f"# {report['command']}  (schema {report['schema']})"]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        elif isinstance(value, list):
            flat = _flat_list(value)
            if flat is not None:
                lines.append(f"{prefix[:-1]}: {flat}")
            else:
                for i, item in enumerate(value):
                    walk(f"{prefix}{i}.", item)
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", report["payload"])
    return "\n".join(lines) + "\n"


def _flat_list(value):
    if all(isinstance(x, (str, int, bool)) or x is None for x in value):
        return "[" + ", ".join(str(x) for x in value) + "]"
    return None
