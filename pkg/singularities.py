"""
Weights, stratum exponents, cone angles, discrepancies and MMP classes.

A divisor with ramification order m gets weight a = 1 - 1/m (a cusp has
m = infinity, a = 1). For a flat L of codim k the exponent is
a_L = (1/k) * sum of a_i over the members through L; the blow-up of L has
discrepancy k(a_L - 1) - 1, which drops below -1 exactly when a_L < 1.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from arrangement import IntersectionLattice
from events import log_debug, log_event
from numeric import as_rat
from stratification import relevant_flats

INFINITY = "inf"

LAMBDA_RANGE_NOTE = (
    "the discrepancy proposition states lambda in Q∩(-1,0), while the non-lc "
    "theorem substitutes lambda = 1 - a_L in (0,1); -k*lambda-1 is evaluated "
    "for every rational lambda and each row records whether lambda lies in (-1,0)"
)

TRANSFORMATION_STATEMENT = (
    "the birational map from the GIT model X-hat° to the Baily-Borel "
    "compactification X* turns non-lc singularities into lc singularities"
)


class MMPClass(str, Enum):
    TERMINAL = "terminal"
    CANONICAL = "canonical"
    KLT = "klt"
    LC_BOUNDARY = "lc_boundary"
    NON_LC = "non_lc"


def is_infinite_order(m) -> bool:
    return isinstance(m, str) and m.strip().lower() in ("inf", "infinity", "∞")


def weight_from_order(m) -> Fraction:
    if is_infinite_order(m) or m == float("inf"):
        return Fraction(1)
    if isinstance(m, bool) or not isinstance(m, int):
        raise ValueError(f"ramification order must be a positive integer or infinity, got {m!r}")
    if m <= 0:
        raise ValueError(f"ramification order must be >= 1, got {m}")
    return 1 - Fraction(1, m)


@dataclass(frozen=True)
class RamifiedDivisor:
    id: str
    order: object          # int >= 1 or INFINITY
    weight: Fraction

    @classmethod
    def from_order(cls, id_, m):
        order = INFINITY if is_infinite_order(m) or m == float("inf") else m
        return cls(str(id_), order, weight_from_order(m))

    @property
    def is_cusp(self):
        return self.order == INFINITY


@dataclass(frozen=True)
class WeightedArrangement:
    lattice: IntersectionLattice
    divisors: tuple                # one RamifiedDivisor per hyperplane
    cusps: tuple = ()              # abstract cusp divisors, m = infinity
    relevant: tuple = None         # contracted sub-arrangement; None = all

    def __post_init__(self):
        ids = [d.id for d in self.divisors]
        known = [h.id for h in self.lattice.hyperplanes]
        missing = [i for i in known if i not in ids]
        if missing:
            raise ValueError(f"weight missing for hyperplanes: {missing}")
        extra = [i for i in ids if i not in known]
        if extra:
            raise ValueError(f"weights given for unknown hyperplanes: {extra}")
        if len(set(ids)) != len(ids):
            raise ValueError("a hyperplane has more than one weight")
        for c in self.cusps:
            if not c.is_cusp:
                raise ValueError(f"cusp {c.id} must have infinite ramification order")
            if c.id in known:
                raise ValueError(f"cusp id {c.id} collides with a hyperplane id")
        if self.relevant is not None:
            object.__setattr__(self, "relevant", tuple(self.relevant))

    @classmethod
    def from_orders(cls, lattice, orders, cusps=(), relevant=None):
        divisors = tuple(RamifiedDivisor.from_order(i, m) for i, m in orders.items())
        cusp_divs = tuple(RamifiedDivisor.from_order(c, INFINITY) for c in cusps)
        return cls(lattice, divisors, cusp_divs, relevant)

    @property
    def weights(self):
        return {d.id: d.weight for d in self.divisors}

    def cusp(self, id_):
        for c in self.cusps:
            if c.id == id_:
                return c
        return None


@dataclass(frozen=True)
class ConeAngle:
    fraction: Fraction     # of a full turn 2*pi
    violation: bool = False
    cusp: bool = False


@dataclass(frozen=True)
class SingularityRow:
    flat: str
    codim: int
    exponent: Fraction
    angle: ConeAngle
    discrepancy: Fraction = None
    mmp_class: MMPClass = None
    exceptional: bool = False
    lam: Fraction = None
    lambda_in_stated_range: bool = None
    lc_scale: Fraction = None


@dataclass(frozen=True)
class CuspRow:
    id: str
    weight: Fraction
    angle: ConeAngle
    discrepancy: Fraction
    mmp_class: MMPClass


@dataclass
class SingularityReport:
    rows: list
    cusp_rows: list
    git_side: dict
    bailyborel_side: dict
    transformation: str = None
    lambda_note: str = LAMBDA_RANGE_NOTE
    metadata: dict = field(default_factory=dict)


def _proper_flat(W, L):
    flat = W.lattice.flat(L)
    if flat.is_ambient:
        raise ValueError("the ambient space is not a proper flat")
    return flat


def stratum_exponent(W: WeightedArrangement, L) -> Fraction:
    flat = _proper_flat(W, L)
    weights = W.weights
    return sum((weights[i] for i in flat.key), Fraction(0)) / flat.codim


def cone_angle(W: WeightedArrangement, L) -> ConeAngle:
    """Scalar cone angle 2*pi*(1 - a_L), as a fraction of a full turn."""
    if isinstance(L, str) and W.cusp(L) is not None:
        return ConeAngle(Fraction(0), violation=False, cusp=True)
    fraction = 1 - stratum_exponent(W, L)
    return ConeAngle(fraction, violation=fraction <= 0)


def discrepancy_from_exponent(k: int, lam) -> Fraction:
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise ValueError(f"codimension must be an integer >= 2, got {k!r}")
    return -k * as_rat(lam) - 1


def exceptional_discrepancy(W: WeightedArrangement, L) -> Fraction:
    if isinstance(L, str) and W.cusp(L) is not None:
        # limit of -(m-1)/m as m -> infinity
        return Fraction(-1)
    flat = _proper_flat(W, L)
    if flat.codim < 2:
        raise ValueError(f"{flat.name} is a hypersurface, not an exceptional center")
    return flat.codim * (stratum_exponent(W, flat) - 1) - 1


def classify(d) -> MMPClass:
    d = as_rat(d)
    if d > 0:
        return MMPClass.TERMINAL
    if d == 0:
        return MMPClass.CANONICAL
    if d > -1:
        return MMPClass.KLT
    if d == -1:
        return MMPClass.LC_BOUNDARY
    return MMPClass.NON_LC


def lc_weight_scale(W: WeightedArrangement, L):
    """Smallest t with k(t*a_L - 1) - 1 >= -1, i.e. t = 1/a_L; None if a_L = 0."""
    a = stratum_exponent(W, L)
    if a == 0:
        return None
    return 1 / a


def _row(W, flat, exceptional):
    a = stratum_exponent(W, flat)
    angle = cone_angle(W, flat)
    if flat.codim < 2:
        return SingularityRow(flat.name, flat.codim, a, angle)
    d = exceptional_discrepancy(W, flat)
    lam = 1 - a
    return SingularityRow(
        flat.name, flat.codim, a, angle,
        discrepancy=d,
        mmp_class=classify(d),
        exceptional=exceptional,
        lam=lam,
        lambda_in_stated_range=-1 < lam < 0,
        lc_scale=lc_weight_scale(W, flat),
    )


def pair_report(W: WeightedArrangement) -> SingularityReport:
    contracted = {f.key for f in relevant_flats(W.lattice, W.relevant)}
    rows = []
    for flat in W.lattice.proper_flats():
        row = _row(W, flat, flat.codim >= 2 and flat.key in contracted)
        rows.append(row)
        log_debug("SINGULARITY_ROW", flat=row.flat, exponent=row.exponent, discrepancy=row.discrepancy)

    witnesses = [r for r in rows if r.exceptional and r.mmp_class == MMPClass.NON_LC]
    if witnesses:
        # most negative discrepancy; ties keep lattice order (min is stable)
        witness = min(witnesses, key=lambda r: r.discrepancy)
        git_side = {
            "verdict": MMPClass.NON_LC.value,
            "witness": witness.flat,
            "discrepancy": witness.discrepancy,
            "witness_count": len(witnesses),
        }
    else:
        git_side = {"verdict": "lc", "witness": None, "discrepancy": None, "witness_count": 0,
                    "note": "lc everywhere: no non-lc witness"}

    cusp_rows = []
    for c in W.cusps:
        d = exceptional_discrepancy(W, c.id)
        cusp_rows.append(CuspRow(c.id, c.weight, cone_angle(W, c.id), d, classify(d)))
    bailyborel_side = {"verdict": "lc", "cusps": len(cusp_rows)}

    report = SingularityReport(
        rows=rows,
        cusp_rows=cusp_rows,
        git_side=git_side,
        bailyborel_side=bailyborel_side,
        transformation=TRANSFORMATION_STATEMENT if witnesses else None,
    )
    log_event(
        "SINGULARITY_REPORT",
        flats=len(rows),
        git_side=git_side["verdict"],
        witness=git_side["witness"],
        cusps=len(cusp_rows),
    )
    return report
