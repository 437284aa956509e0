"""
Residue systems of logarithmic connections along an arrangement.

The natural residue along H_i is a_i * rho_i, rho_i the form-orthogonal
projection onto the normal line of H_i (kernel H_i). Flatness needs the
residue sum at every codim-2 flat to commute with each of its terms.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from arrangement import IntersectionLattice
from events import log_debug, log_event
from numeric import Matrix, conjugate, elem, zero


@dataclass(frozen=True)
class ResidueSystem:
    lattice: IntersectionLattice
    residues: dict                 # hyperplane id -> N x N Matrix
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.lattice.ambient_dim
        tag = self.lattice.tag
        known = {h.id for h in self.lattice.hyperplanes}
        if set(self.residues) != known:
            missing = sorted(known - set(self.residues))
            extra = sorted(set(self.residues) - known)
            raise ValueError(f"residue ids do not match the arrangement (missing={missing}, extra={extra})")
        for i, R in self.residues.items():
            if R.shape != (n, n):
                raise ValueError(f"residue {i}: expected {n}x{n}, got {R.shape[0]}x{R.shape[1]}")
            if R.tag != tag:
                raise ValueError(f"residue {i}: field {R.tag}, arrangement is over {tag}")

    @property
    def tag(self):
        return self.lattice.tag

    def residue(self, id_):
        return self.residues[id_]

    def change_basis(self, P: Matrix) -> "ResidueSystem":
        """Simultaneous conjugation R -> P^-1 R P."""
        Pinv = P.inverse()
        return ResidueSystem(self.lattice, {i: Pinv @ R @ P for i, R in self.residues.items()}, dict(self.weights))


@dataclass(frozen=True)
class FlatnessViolation:
    flat: str
    member: str
    commutator: Matrix


@dataclass(frozen=True)
class FlatnessResult:
    flat: bool
    violations: tuple
    checked: int


@dataclass(frozen=True)
class ScalarResult:
    flat: str
    scalar: bool
    value: object = None
    annihilates_flat: bool = False
    preserves_flat: bool = False
    exponent: Fraction = None
    matches_exponent: bool = None


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A


def _projection(normal, form, tag):
    """Projection with kernel {normal . x = 0} and image the form-normal line."""
    n = len(normal)
    covector = Matrix([list(normal)], tag, n)
    nu = form.inverse().apply([conjugate(x) for x in normal])
    pairing = covector.apply(nu)[0]
    if pairing.is_zero():
        raise ValueError("form is degenerate on the hyperplane's normal")
    return Matrix([[nu[i] * normal[j] / pairing for j in range(n)] for i in range(n)], tag, n)


def natural_residues(W, form=None) -> ResidueSystem:
    lattice = W.lattice
    tag = lattice.tag
    n = lattice.ambient_dim
    if form is None:
        form = Matrix.identity(n, tag)
    if form.shape != (n, n) or not form.is_hermitian():
        raise ValueError("form must be a Hermitian (or symmetric) N x N matrix")
    if form.rank() != n:
        raise ValueError("form is degenerate")
    weights = W.weights
    residues = {}
    for h in lattice.hyperplanes:
        residues[h.id] = _projection(h.normal, form, tag).scale(weights[h.id])
    return ResidueSystem(lattice, residues, dict(weights))


def residue_sum(S: ResidueSystem, L) -> Matrix:
    flat = S.lattice.flat(L)
    n = S.lattice.ambient_dim
    total = Matrix.zeros(n, n, S.tag)
    for i in flat.key:
        total = total + S.residue(i)
    return total


def check_flatness(S: ResidueSystem) -> FlatnessResult:
    violations = []
    checked = 0
    for flat in S.lattice.proper_flats():
        if flat.codim != 2:
            continue
        checked += 1
        total = residue_sum(S, flat)
        for j in flat.key:
            c = commutator(total, S.residue(j))
            if not c.is_zero():
                violations.append(FlatnessViolation(flat.name, j, c))
    result = FlatnessResult(not violations, tuple(violations), checked)
    log_event("FLATNESS_CHECKED", codim2_flats=checked, violations=len(violations))
    return result


def _complement_basis(flat_basis, n, tag):
    """Standard vectors completing the flat's basis to a basis of k^n."""
    chosen = [list(v) for v in flat_basis]
    extra = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        trial = Matrix(chosen + [e], tag, n)
        if trial.rank() == len(chosen) + 1:
            chosen.append(e)
            extra.append(tuple(elem(x, tag) for x in e))
    return extra


def scalar_on_normal(S: ResidueSystem, L, W=None) -> ScalarResult:
    lattice = S.lattice
    flat = lattice.flat(L)
    if flat.is_ambient:
        raise ValueError("the ambient space has no normal directions")
    tag = S.tag
    n = lattice.ambient_dim
    total = residue_sum(S, flat)

    annihilates = all(all(x.is_zero() for x in total.apply(v)) for v in flat.basis)
    flat_span = Matrix([list(v) for v in flat.basis], tag, n) if flat.basis else None
    preserves = annihilates or all(flat_span.row_space_contains(total.apply(v)) for v in flat.basis)

    complement = _complement_basis(flat.basis, n, tag)
    frame = Matrix.from_columns(list(flat.basis) + complement, tag, n)
    k = len(flat.basis)
    induced = []
    for c in complement:
        coords = frame.solve(total.apply(c))
        induced.append(coords[k:])
    # induced[j] holds the image of the j-th normal direction
    value = induced[0][0] if induced else zero(tag)
    scalar = preserves and all(
        induced[j][i] == (value if i == j else zero(tag))
        for j in range(len(induced)) for i in range(len(induced))
    )

    weights = W.weights if W is not None else S.weights
    exponent = None
    matches = None
    if weights and all(i in weights for i in flat.key):
        exponent = sum((weights[i] for i in flat.key), Fraction(0)) / flat.codim
        matches = scalar and value == exponent
    log_debug("SCALAR_ON_NORMAL", flat=flat.name, scalar=scalar, value=value if scalar else None)
    return ScalarResult(
        flat.name,
        scalar,
        value if scalar else None,
        annihilates,
        preserves,
        exponent,
        matches,
    )
