"""
Combinatorial ledger of the arrangement blow-up: schedule, flags, product
strata E(L_.)° and the strata of the contracted space X-hat.

n is the dimension of the space the flats live in (default: the lattice's
ambient dimension), so dim L = n - codim L. Pass a projective arrangement
as its central cone together with the projective n.
"""
from dataclasses import dataclass

from arrangement import Flat, IntersectionLattice
from events import log_debug, log_event


@dataclass(frozen=True)
class Flag:
    chain: tuple   # L_0 ⊂ L_1 ⊂ ... ⊂ L_k, all proper

    def __len__(self):
        return len(self.chain)

    @property
    def names(self):
        return tuple(f.name for f in self.chain)

    def __str__(self):
        return " < ".join(self.names)


@dataclass(frozen=True)
class Factor:
    label: str
    dim: int


@dataclass(frozen=True)
class StratumDescriptor:
    flag: Flag
    factors: tuple

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)


@dataclass(frozen=True)
class HatStratum:
    flat: str
    label: str
    dim: int


@dataclass(frozen=True)
class HatStratification:
    strata: tuple
    _contains: dict

    def __len__(self):
        return len(self.strata)

    def stratum(self, flat_name):
        for s in self.strata:
            if s.flat == flat_name:
                return s
        raise ValueError(f"unknown flat: {flat_name!r}")

    def in_closure(self, a, b) -> bool:
        """Whether the stratum of flat b lies in the closure of the stratum of flat a."""
        self.stratum(a)
        self.stratum(b)
        if a == "X" or a == b:
            return True
        if b == "X":
            return False
        # order reversing: smaller flats carry bigger strata
        return self._contains[(a, b)]


def _dimension(lattice, n):
    return lattice.ambient_dim if n is None else n


def visible_flats(lattice: IntersectionLattice, n=None):
    """Proper flats that are non-empty in dimension n; drops the cone vertex when n = N - 1."""
    n = _dimension(lattice, n)
    return [f for f in lattice.proper_flats() if n - f.codim >= 0]


def check_flag(chain) -> Flag:
    chain = tuple(chain)
    if not chain:
        raise ValueError("a flag needs at least one flat")
    for f in chain:
        if not isinstance(f, Flat):
            raise ValueError(f"flag entries must be flats, got {f!r}")
        if f.is_ambient:
            raise ValueError("the ambient space X cannot appear in a flag")
    for lower, upper in zip(chain, chain[1:]):
        if not upper.members < lower.members:
            raise ValueError(f"flag is not strictly increasing at {lower.name} < {upper.name}")
    return Flag(chain)


def make_flag(lattice: IntersectionLattice, refs) -> Flag:
    return check_flag(lattice.flat(r) for r in refs)


def relevant_flats(lattice: IntersectionLattice, member_ids=None, n=None):
    """
    Flats of the sub-arrangement spanned by `member_ids` (all by default):
    those equal to the intersection of their members inside the subset.
    Flats empty in dimension n are left out.
    """
    flats = visible_flats(lattice, n)
    if member_ids is None:
        return flats
    chosen = set(member_ids)
    unknown = chosen - {h.id for h in lattice.hyperplanes}
    if unknown:
        raise ValueError(f"unknown hyperplanes in sub-arrangement: {sorted(unknown)}")
    out = []
    for f in flats:
        inside = f.members & chosen
        if inside and lattice.closure(inside) == f.key:
            out.append(f)
    return out


def blowup_schedule(lattice: IntersectionLattice, n=None, member_ids=None):
    """Groups of flats of codim >= 2 by increasing dimension: points first."""
    n = _dimension(lattice, n)
    groups = {}
    for f in relevant_flats(lattice, member_ids, n):
        if f.codim >= 2:
            groups.setdefault(n - f.codim, []).append(f)
    schedule = [groups[d] for d in sorted(groups)]
    log_event(
        "SCHEDULE_COMPUTED",
        groups=len(schedule),
        dims=sorted(groups),
        centers=sum(len(g) for g in schedule),
    )
    return schedule


def sub_arrangement_schedule(lattice: IntersectionLattice, member_ids, n=None):
    return blowup_schedule(lattice, n=n, member_ids=member_ids)


def enumerate_flags(lattice: IntersectionLattice, max_len=None, n=None):
    if max_len is None:
        max_len = lattice.height()
    proper = visible_flats(lattice, n)
    above = {f.key: [g for g in proper if g.members < f.members] for f in proper}
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        if len(chain) >= max_len:
            return
        for g in above[chain[-1].key]:
            extend(chain + [g])

    for f in proper:
        extend([f])

    order = {f.key: i for i, f in enumerate(lattice.flats)}
    chains.sort(key=lambda c: (len(c), tuple(order[f.key] for f in c)))
    log_debug("FLAGS_ENUMERATED", count=len(chains), max_len=max_len)
    return [Flag(c) for c in chains]


def stratum_descriptor(flag, n) -> StratumDescriptor:
    """E(L_.)° = L_0° x P(L_0,L_1)° x ... x P(L_k,X)° with dimensions."""
    flag = check_flag(flag.chain if isinstance(flag, Flag) else flag)
    chain = flag.chain
    if n - chain[0].codim < 0:
        raise ValueError(f"{chain[0].name} is empty in dimension {n}")
    factors = [Factor(f"{chain[0].name}°", n - chain[0].codim)]
    for lower, upper in zip(chain, chain[1:]):
        factors.append(Factor(f"P({lower.name},{upper.name})°", lower.codim - upper.codim - 1))
    factors.append(Factor(f"P({chain[-1].name},X)°", chain[-1].codim - 1))
    descriptor = StratumDescriptor(flag, tuple(factors))
    if descriptor.dim != n - len(chain):
        raise RuntimeError(f"stratum of {flag} has dim {descriptor.dim}, expected {n - len(chain)}")
    return descriptor


def exceptional_divisor(lattice: IntersectionLattice, flat, n=None) -> StratumDescriptor:
    """E(L)° = L° x P(L,X)°, the open part of one exceptional divisor."""
    return stratum_descriptor(Flag((lattice.flat(flat),)), _dimension(lattice, n))


def hat_strata(lattice: IntersectionLattice, n=None) -> HatStratification:
    n = _dimension(lattice, n)
    strata = [HatStratum("X", "X°", n)]
    proper = visible_flats(lattice, n)
    for f in proper:
        strata.append(HatStratum(f.name, f"P({f.name},X)°", f.codim - 1))
    contains = {}
    for a in proper:
        for b in proper:
            contains[(a.name, b.name)] = b.members < a.members
    return HatStratification(tuple(strata), contains)
