"""
Arrangement input files: JSON with "schema": 1 and exact scalars as strings.

validate_input_spec never raises on bad content; it returns
(cleaned, errors, warnings) with field-path diagnostics. parse_input turns a
valid document into an InputSpec and raises ValueError otherwise.
"""
import json
from dataclasses import dataclass

from arrangement import build_intersection_lattice, make_hyperplane
from config import SCHEMA_VERSION
from events import log_event
from numeric import FIELD_D, Q, Matrix, parse_elem
from singularities import INFINITY, WeightedArrangement, is_infinite_order

KNOWN_ANALYSES = ("lattice", "schedule", "flags", "singularities", "flatness")


@dataclass(frozen=True)
class InputSpec:
    field: str
    ambient_dim: int
    hyperplanes: tuple                 # Hyperplane
    orders: dict                       # id -> int or INFINITY
    cusps: tuple = ()
    relevant: tuple = None
    residues: dict = None              # id -> Matrix
    form: Matrix = None
    analyses: tuple = KNOWN_ANALYSES
    n: int = None                      # stratification dimension, default ambient_dim

    def lattice(self):
        return build_intersection_lattice(self.hyperplanes, self.ambient_dim, self.field)

    def weighted(self, lattice=None):
        lattice = lattice or self.lattice()
        return WeightedArrangement.from_orders(lattice, self.orders, self.cusps, self.relevant)


def load_json_text(text, source="<input>"):
    """(document, errors): JSON decode with a line/column diagnostic."""
    try:
        return json.loads(text), []
    except json.JSONDecodeError as e:
        return None, [f"{source}:{e.lineno}:{e.colno}: invalid JSON ({e.msg})"]


def load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        return None, [f"{path}: cannot read ({e.strerror or e})"]
    return load_json_text(text, source=str(path))


def _check_scalar(value, tag, path, errors):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        errors.append(f"{path}: expected an exact scalar string like \"1/2\" or \"1/2+1/2*s\", got {value!r}")
        return None
    try:
        return parse_elem(value if isinstance(value, str) else str(value), tag)
    except (ValueError, ZeroDivisionError) as e:
        errors.append(f"{path}: {e}")
        return None


def _check_matrix(raw, tag, n, path, errors):
    if not isinstance(raw, list) or len(raw) != n:
        errors.append(f"{path}: expected a {n}x{n} matrix")
        return None
    rows = []
    ok = True
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            errors.append(f"{path}[{i}]: expected a row of {n} entries")
            ok = False
            continue
        parsed = [_check_scalar(x, tag, f"{path}[{i}][{j}]", errors) for j, x in enumerate(row)]
        if any(x is None for x in parsed):
            ok = False
        rows.append(parsed)
    if not ok:
        return None
    return [[str(x) for x in r] for r in rows]


def _check_order(value, path, errors):
    if is_infinite_order(value):
        return INFINITY
    if isinstance(value, bool) or not isinstance(value, int):
        errors.append(f"{path}: ramification order must be an integer >= 1 or \"inf\", got {value!r}")
        return None
    if value <= 0:
        errors.append(f"{path}: ramification order must be >= 1, got {value}")
        return None
    return value


def validate_input_spec(spec: dict):
    doc = spec if isinstance(spec, dict) else {}
    errors = []
    warnings = []
    if not isinstance(spec, dict):
        errors.append("input must be a JSON object")

    # -----------------------------
    # Schema / field / dimension
    # -----------------------------
    schema = doc.get("schema")
    if schema is None:
        warnings.append(f"schema missing; assumed {SCHEMA_VERSION}")
    elif schema != SCHEMA_VERSION:
        errors.append(f"schema: unsupported version {schema!r} (expected {SCHEMA_VERSION})")

    tag = doc.get("field", Q)
    if tag not in FIELD_D:
        errors.append(f"field: unknown field {tag!r} (expected Q, Q_i or Q_omega)")
        tag = Q

    ambient_dim = doc.get("ambient_dim")
    if isinstance(ambient_dim, bool) or not isinstance(ambient_dim, int) or ambient_dim < 1:
        errors.append(f"ambient_dim: must be an integer >= 1, got {ambient_dim!r}")
        ambient_dim = None

    n = doc.get("n")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int) or n < 0):
        errors.append(f"n: must be a nonnegative integer, got {n!r}")
        n = None

    # -----------------------------
    # Hyperplanes
    # -----------------------------
    raw_hyperplanes = doc.get("hyperplanes", [])
    if raw_hyperplanes is None:
        raw_hyperplanes = []
    if not isinstance(raw_hyperplanes, list):
        errors.append("hyperplanes: must be a list")
        raw_hyperplanes = []

    hyperplanes = []
    ids = set()
    for i, h in enumerate(raw_hyperplanes):
        path = f"hyperplanes[{i}]"
        if not isinstance(h, dict):
            errors.append(f"{path}: must be an object")
            continue
        hid = str(h.get("id", "")).strip()
        if not hid:
            errors.append(f"{path}.id: missing")
        elif hid in ids:
            errors.append(f"{path}.id: duplicate id {hid!r}")
        elif hid == "X" or "&" in hid:
            errors.append(f"{path}.id: {hid!r} is reserved for flat names")
        ids.add(hid)

        normal = h.get("normal")
        parsed = None
        if not isinstance(normal, list):
            errors.append(f"{path}.normal: must be a list of scalars")
        else:
            if ambient_dim is not None and len(normal) != ambient_dim:
                errors.append(f"{path}.normal: has {len(normal)} coefficients, ambient_dim is {ambient_dim}")
            parsed = [_check_scalar(x, tag, f"{path}.normal[{j}]", errors) for j, x in enumerate(normal)]
            if parsed and all(x is not None and x.is_zero() for x in parsed):
                errors.append(f"{path}.normal: all coefficients are zero")

        if "m" not in h:
            errors.append(f"{path}.m: weight missing (ramification order)")
            m = None
        else:
            m = _check_order(h.get("m"), f"{path}.m", errors)

        if parsed is not None and all(x is not None for x in parsed):
            hyperplanes.append({"id": hid, "normal": [str(x) for x in parsed], "m": m})

    # -----------------------------
    # Cusps
    # -----------------------------
    raw_cusps = doc.get("cusps", []) or []
    if not isinstance(raw_cusps, list):
        errors.append("cusps: must be a list")
        raw_cusps = []
    cusps = []
    for i, c in enumerate(raw_cusps):
        cid = str((c.get("id") if isinstance(c, dict) else c) or "").strip()
        if not cid:
            errors.append(f"cusps[{i}].id: missing")
            continue
        if cid in ids or cid in cusps:
            errors.append(f"cusps[{i}].id: duplicate id {cid!r}")
            continue
        if isinstance(c, dict) and "m" in c and not is_infinite_order(c["m"]):
            warnings.append(f"cusps[{i}].m: cusps always have m = inf; ignored {c['m']!r}")
        cusps.append(cid)

    # -----------------------------
    # Relevant sub-arrangement
    # -----------------------------
    relevant = doc.get("relevant")
    if relevant is not None:
        if not isinstance(relevant, list):
            errors.append("relevant: must be a list of hyperplane ids")
            relevant = None
        else:
            relevant = [str(x) for x in relevant]
            for j, rid in enumerate(relevant):
                if rid not in ids:
                    errors.append(f"relevant[{j}]: unknown hyperplane {rid!r}")

    # -----------------------------
    # Residues / form
    # -----------------------------
    residues = None
    raw_residues = doc.get("residues")
    if raw_residues is not None:
        if not isinstance(raw_residues, dict):
            errors.append("residues: must be an object keyed by hyperplane id")
        elif ambient_dim is not None:
            residues = {}
            for rid, mat in raw_residues.items():
                if rid not in ids:
                    errors.append(f"residues.{rid}: unknown hyperplane")
                    continue
                checked = _check_matrix(mat, tag, ambient_dim, f"residues.{rid}", errors)
                if checked is not None:
                    residues[rid] = checked
            missing = sorted(ids - set(raw_residues))
            if missing:
                errors.append(f"residues: missing matrices for {missing}")

    form = None
    if doc.get("form") is not None and ambient_dim is not None:
        form = _check_matrix(doc["form"], tag, ambient_dim, "form", errors)

    # -----------------------------
    # Analyses
    # -----------------------------
    analyses = doc.get("analyses")
    if analyses is None:
        analyses = list(KNOWN_ANALYSES)
        warnings.append("analyses missing; running all")
    elif not isinstance(analyses, list):
        errors.append("analyses: must be a list")
        analyses = []
    else:
        for j, a in enumerate(analyses):
            if a not in KNOWN_ANALYSES:
                errors.append(f"analyses[{j}]: unknown analysis {a!r} (expected one of {list(KNOWN_ANALYSES)})")
        analyses = [a for a in KNOWN_ANALYSES if a in analyses]

    cleaned = {
        "schema": SCHEMA_VERSION,
        "field": tag,
        "ambient_dim": ambient_dim,
        "n": n,
        "hyperplanes": hyperplanes,
        "cusps": [{"id": c} for c in cusps],
        "relevant": relevant,
        "residues": residues,
        "form": form,
        "analyses": analyses,
    }
    return cleaned, errors, warnings


def parse_input(spec: dict) -> InputSpec:
    cleaned, errors, warnings = validate_input_spec(spec)
    for w in warnings:
        log_event("INPUT_WARNING", warning=w)
    if errors:
        log_event("INPUT_REJECTED", errors=errors)
        raise ValueError("invalid input: " + "; ".join(errors))

    tag = cleaned["field"]
    hyperplanes = tuple(make_hyperplane(h["id"], h["normal"], tag) for h in cleaned["hyperplanes"])
    orders = {h["id"]: h["m"] for h in cleaned["hyperplanes"]}
    residues = None
    if cleaned["residues"] is not None:
        residues = {i: Matrix(rows, tag) for i, rows in cleaned["residues"].items()}
    form = Matrix(cleaned["form"], tag) if cleaned["form"] is not None else None
    return InputSpec(
        field=tag,
        ambient_dim=cleaned["ambient_dim"],
        hyperplanes=hyperplanes,
        orders=orders,
        cusps=tuple(c["id"] for c in cleaned["cusps"]),
        relevant=tuple(cleaned["relevant"]) if cleaned["relevant"] is not None else None,
        residues=residues,
        form=form,
        analyses=tuple(cleaned["analyses"]),
        n=cleaned["n"],
    )
