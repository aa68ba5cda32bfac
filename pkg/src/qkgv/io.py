"""JSON formats for geometries, invariant tables, J-functions and QK tables.

All rationals are written as "num/den" strings (integers as plain digit
strings); floats are rejected on input and never written.
"""

import json

from .exact import NotCyclotomicError, Poly, QRat, format_rational, parse_rational
from .geometry import CY3Data, GVTable, GWTable
from .jfunction.build import JFunction
from .jfunction.qk import QKTable
from .series import KVector, NovikovSeries, TPoly, component_name, parse_component


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def _reject_floats(value):
    raise InputError(f"floating-point number {value} in input; use 'num/den' strings")


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh, parse_float=_reject_floats)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc


def dumps(data):
    """Deterministic JSON text (sorted keys, trailing newline)."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path, data):
    text = dumps(data)
    if path is None or path == "-":
        import sys
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _field(d, key, where):
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected a JSON object")
    if key not in d:
        raise InputError(f"{where}: missing field {key!r}")
    return d[key]


def _rational(x, where):
    try:
        return parse_rational(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    return x


# ----- geometry -----------------------------------------------------------

def geometry_from_dict(d):
    rank = _int(_field(d, "h2_rank", "geometry"), "geometry.h2_rank")
    n1 = _int(_field(d, "n1", "geometry"), "geometry.n1")
    pairing = _field(d, "divisor_pairing", "geometry")
    if not isinstance(pairing, list) or not all(isinstance(r, list) for r in pairing):
        raise InputError("geometry.divisor_pairing: expected a matrix")
    rows = [[_int(x, "geometry.divisor_pairing") for x in r] for r in pairing]
    kappa = {}
    for i, item in enumerate(_field(d, "triple_intersections", "geometry")):
        ijk = _field(item, "ijk", f"triple_intersections[{i}]")
        if not isinstance(ijk, list) or len(ijk) != 3:
            raise InputError(f"triple_intersections[{i}].ijk: expected three indices")
        key = tuple(_int(x, f"triple_intersections[{i}].ijk") - 1 for x in ijk)
        kappa[key] = _rational(_field(item, "value", f"triple_intersections[{i}]"),
                               f"triple_intersections[{i}].value")
    try:
        return CY3Data(n1, rank, rows, kappa)
    except ValueError as exc:
        raise InputError(f"geometry: {exc}") from exc


def geometry_to_dict(geom):
    """Triple intersections are listed once per sorted index triple (1-based)."""
    return {
        "h2_rank": geom.h2rank,
        "n1": geom.n1,
        "divisor_pairing": [list(r) for r in geom.pairing],
        "triple_intersections": [{"ijk": [i + 1 for i in k], "value": format_rational(v)}
                                 for k, v in geom.kappa_sorted.items()],
    }


# ----- invariant tables ------------------------------------------------------

def table_from_dict(d, kind="GV", rank=None):
    genus = _field(d, "genus", "table")
    if genus != 0:
        raise InputError("table: only genus 0 is supported")
    entries = _field(d, "entries", "table")
    if not isinstance(entries, list):
        raise InputError("table.entries: expected a list")
    rank = d.get("h2_rank", rank)
    parsed = {}
    for i, item in enumerate(entries):
        beta = _field(item, "beta", f"entries[{i}]")
        if not isinstance(beta, list) or not beta:
            raise InputError(f"entries[{i}].beta: expected a non-empty list of integers")
        beta = tuple(_int(x, f"entries[{i}].beta") for x in beta)
        if rank is None:
            rank = len(beta)
        if beta in parsed:
            raise InputError(f"entries[{i}]: duplicate class {list(beta)}")
        parsed[beta] = _rational(_field(item, "value", f"entries[{i}]"), f"entries[{i}].value")
    cls = GVTable if kind == "GV" else GWTable
    try:
        return cls(1 if rank is None else rank, parsed)
    except ValueError as exc:
        raise InputError(f"table: {exc}") from exc


def table_to_dict(table):
    return {
        "genus": 0,
        "h2_rank": table.rank,
        "kind": table.kind,
        "entries": [{"beta": list(b), "value": format_rational(v)} for b, v in table.items()],
    }


# ----- J-functions -----------------------------------------------------------

def _coeff_list(poly):
    return [format_rational(c) for c in poly.c]


def jfunction_to_dict(J):
    entries = []
    for beta, comp, mono, f in J.entries():
        entries.append({
            "beta": list(beta),
            "component": component_name(comp),
            "t": list(mono),
            "numerator": _coeff_list(f.num),
            "denominator": _coeff_list(f.denominator_poly()),
            "factors": [[n, e] for n, e in f.den] + ([["q", f.qpow]] if f.qpow else []),
        })
    return {
        "format": "qkgv-jfunction",
        "geometry": geometry_to_dict(J.geom),
        "cutoff": J.cutoff,
        "t_degree": J.t_degree,
        "q_order": J.q_order,
        "entries": entries,
    }


def jfunction_from_dict(d):
    """(JFunction, problems); problems lists entries whose denominator is not
    a product of cyclotomic polynomials and a power of q."""
    if d.get("format") != "qkgv-jfunction":
        raise InputError("not a qkgv J-function file")
    geom = geometry_from_dict(_field(d, "geometry", "jfunction"))
    cutoff = _int(_field(d, "cutoff", "jfunction"), "cutoff")
    t_degree = _int(_field(d, "t_degree", "jfunction"), "t_degree")
    q_order = _int(d.get("q_order", 10), "q_order")
    terms = {}
    problems = []
    for i, item in enumerate(_field(d, "entries", "jfunction")):
        where = f"entries[{i}]"
        beta = tuple(_int(x, where + ".beta") for x in _field(item, "beta", where))
        try:
            comp = parse_component(_field(item, "component", where))
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
        mono = tuple(_int(x, where + ".t") for x in _field(item, "t", where))
        num = Poly([_rational(x, where + ".numerator") for x in _field(item, "numerator", where)])
        den = Poly([_rational(x, where + ".denominator") for x in _field(item, "denominator", where)])
        if len(beta) != geom.h2rank or len(mono) != geom.n1:
            raise InputError(f"{where}: class or t-exponent has the wrong length")
        try:
            f = QRat.from_polys(num, den, allow_pole_at_zero=True)
        except NotCyclotomicError as exc:
            problems.append((beta, comp, mono, str(exc)))
            continue
        except ZeroDivisionError as exc:
            raise InputError(f"{where}: zero denominator") from exc
        vec = terms.setdefault(beta, {})
        poly = vec.setdefault(comp, {})
        poly[mono] = poly[mono] + f if mono in poly else f
    series = NovikovSeries(geom.h2rank, cutoff, {
        beta: KVector({c: TPoly(geom.n1, t_degree, p) for c, p in comps.items()})
        for beta, comps in terms.items()})
    return JFunction(geom, cutoff, t_degree, series, q_order), problems


# ----- QK tables ------------------------------------------------------------

def qk_table_to_dict(table):
    return {
        "h2_rank": table.rank,
        "n1": table.n1,
        "entries": [{"alpha": component_name(a), "k": k, "beta": list(b), "t": list(m),
                     "value": format_rational(v)} for (a, k, b, m), v in table.items()],
    }


def qk_table_from_dict(d):
    rank = _int(_field(d, "h2_rank", "qk table"), "h2_rank")
    n1 = _int(_field(d, "n1", "qk table"), "n1")
    table = QKTable(rank, n1)
    for i, item in enumerate(_field(d, "entries", "qk table")):
        where = f"entries[{i}]"
        try:
            alpha = parse_component(_field(item, "alpha", where))
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
        table.set(alpha, _int(_field(item, "k", where), where + ".k"),
                  tuple(_int(x, where + ".beta") for x in _field(item, "beta", where)),
                  tuple(_int(x, where + ".t") for x in item.get("t", [0] * n1)),
                  _rational(_field(item, "value", where), where + ".value"))
    return table
