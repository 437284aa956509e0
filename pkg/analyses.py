"""
Analysis dispatch: one handler per requested analysis, in a fixed order.

analyze() drives arrangement -> stratification -> singularities ->
connection for an InputSpec; the other entry points back the lattice and
cone subcommands.
"""
from fractions import Fraction

from arrangement import normal_kernel, normal_space
from cone import ConeMetricModel, cone_metric_check, sample_grid
from config import SCHEMA_VERSION, get_max_flag_len, get_root_bound
from connection import ResidueSystem, check_flatness, natural_residues, scalar_on_normal
from events import log_event
from hermitian import determinant, iter_roots, signature
from inputs import KNOWN_ANALYSES, InputSpec
from report import flat_to_dict, lattice_to_dict, signature_to_dict, vector_to_list
from singularities import pair_report
from stratification import blowup_schedule, enumerate_flags, hat_strata, stratum_descriptor


class AnalysisContext:
    """Lazily built shared state for the handlers of one input."""

    def __init__(self, spec: InputSpec, max_flag_len=None):
        self.spec = spec
        self.max_flag_len = max_flag_len if max_flag_len is not None else get_max_flag_len()
        self._lattice = None
        self._weighted = None

    @property
    def n(self):
        return self.spec.n if self.spec.n is not None else self.spec.ambient_dim

    @property
    def lattice(self):
        if self._lattice is None:
            self._lattice = self.spec.lattice()
        return self._lattice

    @property
    def weighted(self):
        if self._weighted is None:
            self._weighted = self.spec.weighted(self.lattice)
        return self._weighted


# -------------------------------------------------
# Handlers
# -------------------------------------------------
def _lattice_section(ctx: AnalysisContext):
    lattice = ctx.lattice
    flats = []
    for f in lattice.flats:
        row = flat_to_dict(f, ctx.n)
        if not f.is_ambient:
            row["normal_space_dim"] = normal_space(lattice, f).dim
            row["relations"] = len(normal_kernel(lattice, f))
        flats.append(row)
    hat = hat_strata(lattice, ctx.n)
    return {
        "count": len(lattice),
        "height": lattice.height(),
        "flats": flats,
        "hat_strata": [{"flat": s.flat, "stratum": s.label, "dim": s.dim} for s in hat.strata],
    }


def _schedule_section(ctx: AnalysisContext):
    relevant = ctx.spec.relevant
    schedule = blowup_schedule(ctx.lattice, n=ctx.n, member_ids=relevant)
    return {
        "relevant": list(relevant) if relevant is not None else None,
        "groups": [
            {"dim": ctx.n - group[0].codim, "centers": [f.name for f in group]}
            for group in schedule
        ],
    }


def _flags_section(ctx: AnalysisContext):
    flags = enumerate_flags(ctx.lattice, max_len=ctx.max_flag_len, n=ctx.n)
    rows = []
    for flag in flags:
        d = stratum_descriptor(flag, ctx.n)
        rows.append({
            "flag": list(flag.names),
            "factors": [f"{f.label}:{f.dim}" for f in d.factors],
            "dim": d.dim,
        })
    return {
        "max_len": ctx.max_flag_len if ctx.max_flag_len is not None else ctx.lattice.height(),
        "count": len(rows),
        "flags": rows,
    }


def _singularities_section(ctx: AnalysisContext):
    report = pair_report(ctx.weighted)
    rows = []
    for r in report.rows:
        rows.append({
            "flat": r.flat,
            "codim": r.codim,
            "exponent": r.exponent,
            "angle": r.angle.fraction,
            "angle_violation": r.angle.violation,
            "discrepancy": r.discrepancy,
            "class": r.mmp_class,
            "exceptional": r.exceptional,
            "lambda": r.lam,
            "lambda_in_stated_range": r.lambda_in_stated_range,
            "lc_scale": r.lc_scale,
        })
    cusps = [
        {"id": c.id, "weight": c.weight, "angle": c.angle.fraction, "discrepancy": c.discrepancy, "class": c.mmp_class}
        for c in report.cusp_rows
    ]
    return {
        "rows": rows,
        "cusps": cusps,
        "git_side": report.git_side,
        "bailyborel_side": report.bailyborel_side,
        "transformation": report.transformation,
        "lambda_note": report.lambda_note,
    }


def _flatness_section(ctx: AnalysisContext):
    spec = ctx.spec
    W = ctx.weighted
    if spec.residues is not None:
        system = ResidueSystem(ctx.lattice, spec.residues, W.weights)
        source = "input"
    else:
        system = natural_residues(W, spec.form)
        source = "natural"
    result = check_flatness(system)
    scalars = []
    for f in ctx.lattice.proper_flats():
        s = scalar_on_normal(system, f, W)
        scalars.append({
            "flat": s.flat,
            "scalar": s.scalar,
            "value": s.value,
            "annihilates_flat": s.annihilates_flat,
            "preserves_flat": s.preserves_flat,
            "exponent": s.exponent,
            "matches_exponent": s.matches_exponent,
        })
    return {
        "residues": source,
        "flat": result.flat,
        "codim2_checked": result.checked,
        "violations": [{"flat": v.flat, "member": v.member, "commutator": v.commutator} for v in result.violations],
        "scalar_on_normal": scalars,
    }


ANALYSIS_HANDLERS = {
    "lattice": _lattice_section,
    "schedule": _schedule_section,
    "flags": _flags_section,
    "singularities": _singularities_section,
    "flatness": _flatness_section,
}


def analyze(spec: InputSpec, max_flag_len=None, only=None) -> dict:
    """Report for the analyses requested by `spec`, or exactly `only` when given."""
    ctx = AnalysisContext(spec, max_flag_len)
    wanted = spec.analyses if only is None else only
    requested = [a for a in KNOWN_ANALYSES if a in wanted]
    report = {
        "schema": SCHEMA_VERSION,
        "kind": "arrangement",
        "field": spec.field,
        "ambient_dim": spec.ambient_dim,
        "n": ctx.n,
        "hyperplanes": [h.id for h in spec.hyperplanes],
        "cusps": list(spec.cusps),
        "analyses": requested,
    }
    for name in requested:
        report[name] = ANALYSIS_HANDLERS[name](ctx)
    log_event("ANALYSIS_DONE", analyses=requested, flats=len(ctx.lattice))
    return report


def analyze_hermitian(L, root_bound=None, max_support=1) -> dict:
    bound = get_root_bound() if root_bound is None else root_bound
    sig = signature(L)
    roots = list(iter_roots(L, bound, max_support=max_support))
    report = {
        "schema": SCHEMA_VERSION,
        "kind": "lattice",
        "lattice": lattice_to_dict(L),
        "determinant": determinant(L),
        "signature": signature_to_dict(sig),
        "roots": {
            "bound": bound,
            "max_support": max_support,
            "norm": Fraction(L.m, 2),
            "count": len(roots),
            "first": vector_to_list(roots[0]) if roots else None,
        },
    }
    log_event("LATTICE_ANALYZED", lattice=L.name, rank=L.rank, profile=list(sig.profile))
    return report


def analyze_cone(beta, samples=None, tolerance=None) -> dict:
    beta = Fraction(beta)
    grid = sample_grid(samples) if samples is not None else None
    check = cone_metric_check(beta, grid, tolerance)
    out = {
        "schema": SCHEMA_VERSION,
        "kind": "cone",
        "beta": beta,
        "samples": check.samples,
        "max_deviation": check.max_deviation,
        "tolerance": check.tolerance,
        "passed": check.passed,
    }
    if beta < 1:
        out["cone_angle"] = ConeMetricModel(beta).cone_angle
    return out
