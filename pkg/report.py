"""
Report emission and the lattice / arrangement codecs.

Exact scalars are written as strings ("num/den", "a/b+c/d*s"); dict order is
insertion order everywhere, so identical inputs give byte-identical output.
"""
import dataclasses
import json
import sys
from enum import Enum
from fractions import Fraction

from config import SCHEMA_VERSION
from hermitian import RING_FIELD, HermitianLattice, TreeGraph, lattice_from_tree, RING_M
from numeric import FieldElem, Matrix, format_elem, format_rat, parse_elem
from singularities import INFINITY


def to_jsonable(obj):
    if isinstance(obj, FieldElem):
        return format_elem(obj)
    if isinstance(obj, Fraction):
        return format_rat(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Matrix):
        return [[format_elem(x) for x in r] for r in obj.rows]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return obj


def vector_to_list(v):
    return [format_elem(x) for x in v]


# -------------------------------------------------
# Hermitian lattices
# -------------------------------------------------
def lattice_to_dict(L: HermitianLattice) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "ring": L.ring,
        "name": L.name,
        "rank": L.rank,
        "gram": to_jsonable(L.gram),
    }
    if L.basis is not None:
        out["basis"] = [vector_to_list(b) for b in L.basis]
    return out


def lattice_from_dict(doc: dict) -> HermitianLattice:
    if not isinstance(doc, dict):
        raise ValueError("lattice file must be a JSON object")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ValueError(f"schema: unsupported version {schema!r}")
    ring = doc.get("ring")
    if ring not in RING_FIELD:
        raise ValueError(f"ring: expected gaussian or eisenstein, got {ring!r}")
    tag = RING_FIELD[ring]
    name = str(doc.get("name", ""))

    if "tree" in doc:
        tree = doc["tree"]
        if not isinstance(tree, dict):
            raise ValueError("tree: must be an object with n and edges")
        edges = tree.get("edges", [])
        if not isinstance(edges, list):
            raise ValueError("tree.edges: must be a list of pairs")
        return lattice_from_tree(TreeGraph(tree.get("n"), tuple(edges)), RING_M[ring], name=name)

    gram = doc.get("gram")
    if not isinstance(gram, list) or any(not isinstance(r, list) for r in gram):
        raise ValueError("gram: must be a list of rows")
    rank = doc.get("rank", len(gram))
    if rank != len(gram):
        raise ValueError(f"rank: {rank} does not match {len(gram)} Gram rows")
    rows = []
    for i, row in enumerate(gram):
        if len(row) != len(gram):
            raise ValueError(f"gram[{i}]: expected {len(gram)} entries")
        rows.append([parse_elem(str(x), tag) for x in row])
    basis = None
    if doc.get("basis") is not None:
        if not isinstance(doc["basis"], list) or any(not isinstance(b, list) for b in doc["basis"]):
            raise ValueError("basis: must be a list of coordinate rows")
        basis = tuple(tuple(parse_elem(str(x), tag) for x in b) for b in doc["basis"])
    return HermitianLattice(ring, Matrix(rows, tag, len(rows)), basis=basis, name=name)


def signature_to_dict(sig) -> dict:
    return {
        "positive": sig.positive,
        "negative": sig.negative,
        "null": sig.null,
        "profile": list(sig.profile),
        "convention": sig.convention,
        "ball_dimension": sig.ball_dimension,
        "method": sig.method,
    }


# -------------------------------------------------
# Arrangements
# -------------------------------------------------
def arrangement_to_dict(lattice, orders, cusps=(), relevant=None, analyses=None) -> dict:
    """Input-schema document for an arrangement; inputs.parse_input reads it back."""
    doc = {
        "schema": SCHEMA_VERSION,
        "field": lattice.tag,
        "ambient_dim": lattice.ambient_dim,
        "hyperplanes": [
            {"id": h.id, "normal": vector_to_list(h.normal), "m": orders[h.id]}
            for h in lattice.hyperplanes
        ],
        "cusps": [{"id": c, "m": INFINITY} for c in cusps],
    }
    if relevant is not None:
        doc["relevant"] = list(relevant)
    if analyses is not None:
        doc["analyses"] = list(analyses)
    return doc


def flat_to_dict(flat, n) -> dict:
    return {
        "name": flat.name,
        "codim": flat.codim,
        "dim": n - flat.codim,
        "members": list(flat.key),
    }


# -------------------------------------------------
# Output
# -------------------------------------------------
def render_json(report) -> str:
    return json.dumps(to_jsonable(report), indent=2, ensure_ascii=False) + "\n"


def _cell(v):
    if isinstance(v, (list, tuple)):
        return ",".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, ensure_ascii=False)
    if v is None:
        return "-"
    return str(v)


def _table(rows):
    columns = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return lines


def _render_section(name, value, depth, out):
    indent = "  " * depth
    if isinstance(value, list) and value and all(isinstance(x, dict) for x in value):
        out.append(f"{indent}{name}:")
        out.extend(indent + "  " + line for line in _table(value))
    elif isinstance(value, dict):
        out.append(f"{indent}{name}:")
        for k, v in value.items():
            _render_section(k, v, depth + 1, out)
    else:
        out.append(f"{indent}{name}: {_cell(value)}")


def render_table(report) -> str:
    data = to_jsonable(report)
    out = []
    for k, v in data.items():
        _render_section(k, v, 0, out)
    return "\n".join(out) + "\n"


def render(report, fmt="json") -> str:
    if fmt == "table":
        return render_table(report)
    if fmt != "json":
        raise ValueError(f"unknown report format: {fmt!r}")
    return render_json(report)


def write_report(report, fmt="json", output=None):
    text = render(report, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text
