"""
Finite central hyperplane arrangements over an exact field.

A flat is identified by its maximal member set H^L: every hyperplane whose
normal lies in the span of the members' normals passes through the flat.
Flats are ordered by (codim, member positions) everywhere.
"""
import itertools
from dataclasses import dataclass

from events import log_debug, log_event
from numeric import Matrix, elem, kernel_basis


@dataclass(frozen=True)
class Hyperplane:
    id: str
    normal: tuple

    @property
    def tag(self):
        return self.normal[0].tag if self.normal else None


def make_hyperplane(id_, coefficients, tag) -> Hyperplane:
    normal = tuple(elem(c, tag) for c in coefficients)
    if not normal or all(x.is_zero() for x in normal):
        raise ValueError(f"hyperplane {id_}: normal is zero")
    return Hyperplane(str(id_), normal)


def arrangement_from_rows(rows, tag, prefix="H"):
    """[[1, 0], [0, 1]] -> hyperplanes H1, H2."""
    return [make_hyperplane(f"{prefix}{i + 1}", r, tag) for i, r in enumerate(rows)]


@dataclass(frozen=True)
class Flat:
    key: tuple            # member ids in hyperplane order; () for X
    codim: int
    basis: tuple          # exact basis of the subspace
    name: str

    @property
    def members(self):
        return frozenset(self.key)

    @property
    def is_ambient(self):
        return self.codim == 0

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class NormalSpace:
    flat: str
    coordinates: tuple    # member ids indexing the coordinate space C^{H^L}
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)


@dataclass(frozen=True)
class RestrictedMember:
    trace: str            # name of the flat H ∩ L
    sources: tuple        # hyperplanes of H - H^L with this trace
    normal: tuple         # defining covector in the coordinates of L's basis

    @property
    def multiplicity(self):
        return len(self.sources)


def _flat_name(key):
    return "&".join(key) if key else "X"


class IntersectionLattice:
    def __init__(self, hyperplanes, ambient_dim, tag, flats):
        self.hyperplanes = tuple(hyperplanes)
        self.ambient_dim = ambient_dim
        self.tag = tag
        self._position = {h.id: i for i, h in enumerate(self.hyperplanes)}
        self.flats = tuple(sorted(flats, key=self._sort_key))
        self._by_key = {f.key: f for f in self.flats}
        self._by_name = {f.name: f for f in self.flats}

    def _sort_key(self, f):
        return f.codim, tuple(self._position[i] for i in f.key)

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def hyperplane(self, id_):
        try:
            return self.hyperplanes[self._position[id_]]
        except KeyError:
            raise ValueError(f"unknown hyperplane: {id_!r}")

    def flat(self, ref) -> Flat:
        if isinstance(ref, Flat):
            ref = ref.key
        if isinstance(ref, (set, frozenset, list, tuple)):
            if any(i not in self._position for i in ref):
                raise ValueError(f"unknown flat: {sorted(ref)!r}")
            ref = self.order_ids(ref)
        found = self._by_key.get(ref) if isinstance(ref, tuple) else self._by_name.get(ref)
        if found is None:
            raise ValueError(f"unknown flat: {ref!r}")
        return found

    def __contains__(self, ref):
        try:
            self.flat(ref)
            return True
        except ValueError:
            return False

    @property
    def ambient(self) -> Flat:
        return self._by_key[()]

    def proper_flats(self):
        return [f for f in self.flats if f.codim > 0]

    def order_ids(self, ids):
        return tuple(sorted(ids, key=lambda i: self._position[i]))

    def closure(self, ids):
        """Maximal member set of the intersection of `ids`."""
        ids = self.order_ids(ids)
        if not ids:
            return ()
        stacked = Matrix([self.hyperplane(i).normal for i in ids], self.tag, self.ambient_dim)
        reduced, pivots = stacked.rref()
        rows = reduced.rows[:len(pivots)]
        return tuple(h.id for h in self.hyperplanes if h.id in ids or _in_row_span(h.normal, rows, pivots))

    def contains(self, a, b) -> bool:
        """a ⊂ b as subspaces (reverse inclusion of member sets)."""
        return self.flat(b).members <= self.flat(a).members

    def meet(self, a, b) -> Flat:
        return self.flat(self.closure(self.flat(a).members | self.flat(b).members))

    def height(self) -> int:
        """Length of the longest chain of proper flats."""
        best = {}
        for f in sorted(self.proper_flats(), key=lambda f: -f.codim):
            above = [best[g.key] for g in self.proper_flats() if g.codim > f.codim and f.members < g.members]
            best[f.key] = 1 + max(above, default=0)
        # chains run from small flats (large codim) up to hyperplanes
        return max(best.values(), default=0)


def _in_row_span(vec, rows, pivots):
    """Whether vec is a combination of the rows of a reduced echelon form."""
    w = list(vec)
    for row, p in zip(rows, pivots):
        c = w[p]
        if not c.is_zero():
            w = [a - c * b for a, b in zip(w, row)]
    return all(x.is_zero() for x in w)


def _normalized(covector):
    """Scale so the first nonzero entry is 1; None for the zero covector."""
    lead = next((x for x in covector if not x.is_zero()), None)
    if lead is None:
        return None
    return tuple(x / lead for x in covector)


def _children(flat, hyperplanes):
    """
    Member sets of the flats F ∩ H, H not through F: hyperplanes whose
    restrictions to F are proportional cut F in the same subspace.
    """
    groups = {}
    for h in hyperplanes:
        if h.id in flat.members:
            continue
        restricted = tuple(sum((a * b for a, b in zip(h.normal, v)), elem(0, h.tag)) for v in flat.basis)
        key = _normalized(restricted)
        if key is None:
            raise RuntimeError(f"{h.id} contains {flat.name} but is not one of its members")
        groups.setdefault(key, []).append(h.id)
    return [set(flat.key) | set(ids) for ids in groups.values()]


def _make_flat(key, hyperplanes_by_id, ambient_dim, tag):
    stacked = Matrix([hyperplanes_by_id[i].normal for i in key], tag, ambient_dim)
    codim = stacked.rank()
    return Flat(key, codim, tuple(kernel_basis(stacked)), _flat_name(key))


def _validate_hyperplanes(hyperplanes, ambient_dim):
    if not isinstance(ambient_dim, int) or ambient_dim < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {ambient_dim!r}")
    tags = {h.tag for h in hyperplanes}
    if len(tags) > 1:
        raise ValueError(f"hyperplanes over mixed fields: {sorted(tags)}")
    seen = set()
    for h in hyperplanes:
        if h.id in seen:
            raise ValueError(f"duplicate hyperplane id: {h.id}")
        seen.add(h.id)
        if len(h.normal) != ambient_dim:
            raise ValueError(f"hyperplane {h.id}: normal has {len(h.normal)} coefficients, expected {ambient_dim}")
        if all(x.is_zero() for x in h.normal):
            raise ValueError(f"hyperplane {h.id}: normal is zero")
    for a, b in itertools.combinations(hyperplanes, 2):
        if Matrix([a.normal, b.normal], a.tag).rank() == 1:
            raise ValueError(f"duplicate hyperplanes: {a.id} and {b.id} have proportional normals")
    return tags.pop() if tags else None


def build_intersection_lattice(hyperplanes, ambient_dim, tag=None) -> IntersectionLattice:
    hyperplanes = list(hyperplanes)
    found_tag = _validate_hyperplanes(hyperplanes, ambient_dim)
    tag = found_tag or tag or "Q"
    by_id = {h.id: h for h in hyperplanes}
    shell = IntersectionLattice(hyperplanes, ambient_dim, tag, [])

    flats = {(): _make_flat((), by_id, ambient_dim, tag)}
    frontier = [()]
    while frontier:
        nxt = []
        for key in frontier:
            for members in _children(flats[key], hyperplanes):
                new_key = shell.order_ids(members)
                if new_key not in flats:
                    flats[new_key] = _make_flat(new_key, by_id, ambient_dim, tag)
                    nxt.append(new_key)
        frontier = nxt

    lattice = IntersectionLattice(hyperplanes, ambient_dim, tag, flats.values())
    log_event(
        "LATTICE_BUILT",
        hyperplanes=len(hyperplanes),
        ambient_dim=ambient_dim,
        flats=len(lattice),
        field=tag,
    )
    return lattice


def brute_force_flats(hyperplanes, ambient_dim, tag=None):
    """Oracle: dedup of all subset intersections -> {member key: codim}."""
    hyperplanes = list(hyperplanes)
    found_tag = _validate_hyperplanes(hyperplanes, ambient_dim)
    tag = found_tag or tag or "Q"
    shell = IntersectionLattice(hyperplanes, ambient_dim, tag, [])
    out = {}
    ids = [h.id for h in hyperplanes]
    for size in range(len(ids) + 1):
        for subset in itertools.combinations(ids, size):
            stacked = Matrix([shell.hyperplane(i).normal for i in subset], tag, ambient_dim)
            key = shell.closure(subset)
            out[key] = stacked.rank()
    return out


def containing_members(lattice: IntersectionLattice, flat) -> frozenset:
    return lattice.flat(flat).members


def restrict_arrangement(lattice: IntersectionLattice, flat):
    """Traces H ∩ L for H not through L, each with its source hyperplanes."""
    L = lattice.flat(flat)
    groups = {}
    for h in lattice.hyperplanes:
        if h.id in L.members:
            continue
        trace = lattice.meet(L, (h.id,))
        groups.setdefault(trace.key, []).append(h)
    out = []
    for key, sources in sorted(groups.items(), key=lambda kv: lattice._sort_key(lattice.flat(kv[0]))):
        trace = lattice.flat(key)
        first = sources[0]
        restricted = tuple(sum((a * b for a, b in zip(first.normal, v)), elem(0, lattice.tag)) for v in L.basis)
        out.append(RestrictedMember(trace.name, tuple(s.id for s in sources), restricted))
    log_debug("ARRANGEMENT_RESTRICTED", flat=L.name, traces=len(out))
    return out


def normal_space(lattice: IntersectionLattice, flat) -> NormalSpace:
    L = lattice.flat(flat)
    if L.is_ambient:
        raise ValueError("the ambient space has no normal directions")
    evaluation = Matrix([lattice.hyperplane(i).normal for i in L.key], lattice.tag, lattice.ambient_dim)
    # image of v -> (l_H(v))_H is the column space of the evaluation matrix
    reduced, pivots = evaluation.transpose().rref()
    basis = tuple(reduced.rows[i] for i in range(len(pivots)))
    if len(basis) != L.codim:
        raise RuntimeError(f"normal space of {L.name} has dim {len(basis)}, codim is {L.codim}")
    return NormalSpace(L.name, L.key, basis)


def normal_kernel(lattice: IntersectionLattice, flat):
    """K(L, X): linear relations among the member forms, dim |H^L| - codim."""
    L = lattice.flat(flat)
    if L.is_ambient:
        return ()
    evaluation = Matrix([lattice.hyperplane(i).normal for i in L.key], lattice.tag, lattice.ambient_dim)
    return tuple(kernel_basis(evaluation.transpose()))
