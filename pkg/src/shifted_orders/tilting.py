"""
Shifted modules and shifted algebras.

For 0 <= k <= domdim A the k-th cosyzygy K_k of A along its minimal injective
coresolution, plus the projective-injective generator Π, gives the tilting
module T = K_k ⊕ Π; its endomorphism algebra Γ is the shifted algebra.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .algebra_core import BasedAlgebra
from .complexes import ComplexOfModules, minimize
from .errors import (
    NotGeneratorCogeneratorError,
    NotQF3Error,
    ShiftPreconditionError,
    TiltingVerificationError,
)
from .exactlin import Mat
from .homology import (
    Bounded,
    Resolution,
    canonical_module,
    ext_dims,
    hom_complex_ranks,
    minimal_resolution,
    profile,
    projective_injective_labels,
)
from .modcat import (
    EndAlgebra,
    ModuleRep,
    MorphismRep,
    catalog,
    decompose,
    direct_sum,
    end_algebra,
    indecomposables_isomorphic,
    regular_module,
    zero_module,
)
from .settings import SearchConfig

logger = logging.getLogger(__name__)

Verdict = Literal["pass", "fail", "experimental-fail", "inconclusive", "not-applicable"]


@dataclass
class ProjInjGenerator:
    """Multiplicity-free sum Π of the indecomposable projective-injectives"""
    algebra: BasedAlgebra
    members: List[ModuleRep]
    projective_labels: List[int]
    injective_labels: List[int]

    @property
    def module(self) -> ModuleRep:
        pi, _ = direct_sum(self.members, self.algebra)
        pi.name = "Π"
        return pi

    @property
    def is_empty(self) -> bool:
        return not self.members


def proj_inj_generator(a: BasedAlgebra) -> ProjInjGenerator:
    cat = catalog(a)
    labels = projective_injective_labels(a)
    members = [cat.projectives[i] for i in labels["projective"]]
    return ProjInjGenerator(a, members, labels["projective"], labels["injective"])


@dataclass
class ShiftData:
    """
    T = K_k ⊕ Π with the witness sequence A -> I^0 -> ... -> I^(k-1) -> K_k.
    witness_terms has k + 2 entries; for k = 0 the witness is the identity of A.
    """
    algebra: BasedAlgebra
    level: int
    cosyzygy: ModuleRep
    witness_terms: List[ModuleRep]
    witness_maps: List[MorphismRep]
    witness_labels: List[List[int]]
    generator: ProjInjGenerator
    module: ModuleRep
    summands: List[ModuleRep]
    representatives: List[ModuleRep]
    multiplicities: List[int]
    origins: List[str]


def _zero_map(source: ModuleRep, target: ModuleRep) -> MorphismRep:
    return MorphismRep(source, target, Mat.zeros(source.field, source.dim, target.dim))


def _witness(a: BasedAlgebra, k: int, cap: int):
    regular = regular_module(a)
    if k == 0:
        identity = MorphismRep(regular, regular, Mat.identity(a.field, a.dim))
        return regular, [regular, regular], [identity], []
    cores = minimal_resolution(regular, "injective", cap=max(cap, k))
    zero = zero_module(a)
    terms: List[ModuleRep] = [regular]
    maps: List[MorphismRep] = []
    labels: List[List[int]] = []
    for j in range(k):
        if j < len(cores.terms):
            term = cores.terms[j]
            maps.append(cores.monos[0] if j == 0 else cores.differentials[j - 1])
            labels.append(list(cores.labels[j]))
        else:
            term = zero
            maps.append(_zero_map(terms[-1], term))
            labels.append([])
        terms.append(term)
    if k < len(cores.syzygies):
        cosyzygy = cores.syzygies[k]
        maps.append(cores.epis[k - 1])
    else:
        cosyzygy = zero
        maps.append(_zero_map(terms[-1], cosyzygy))
    terms.append(cosyzygy)
    return cosyzygy, terms, maps, labels


def shifted_module(
    a: BasedAlgebra, k: int, cap: int = 24, seed: int = 0, search: Optional[SearchConfig] = None
) -> ShiftData:
    if k < 0:
        raise ShiftPreconditionError(f"shift level must be non-negative, got {k}")
    domdim = profile(a, cap).domdim
    if k >= 1 and domdim.exact and domdim.value == 0:
        raise NotQF3Error(f"level {k} needs a QF-3 algebra but the dominant dimension is 0")
    if not domdim.known_ge(k):
        raise ShiftPreconditionError(f"level {k} exceeds the dominant dimension {domdim}")
    cosyzygy, terms, maps, labels = _witness(a, k, cap)
    cosyzygy.name = f"K{k}"
    generator = proj_inj_generator(a)
    module, _ = direct_sum([cosyzygy] + generator.members, a)
    module.name = f"T{k}"

    summands = list(decompose(cosyzygy, seed, search).summands) + list(generator.members)
    origins_all = ["K"] * (len(summands) - len(generator.members))
    origins_all += [f"P{i + 1}" for i in generator.projective_labels]
    reps: List[ModuleRep] = []
    counts: List[int] = []
    origins: List[str] = []
    for s, origin in zip(summands, origins_all):
        for i, r in enumerate(reps):
            if indecomposables_isomorphic(s, r):
                counts[i] += 1
                break
        else:
            reps.append(s)
            counts.append(1)
            origins.append(origin)
    logger.debug("level %d shift of %r: %d summands, %d classes", k, a, len(summands), len(reps))
    return ShiftData(a, k, cosyzygy, terms, maps, labels, generator, module, summands, reps, counts, origins)


class TiltingCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    level: int
    projective_dimension: Bounded
    self_extensions: List[int] = Field(description="dim Ext^i(T, T) for i = 1, 2, ...")
    coresolution_labels: List[List[int]]
    contravariant_dims: List[int] = Field(description="dim Hom(W_j, T) along the witness sequence")
    summand_classes: int


def _sequence_exact(terms: List[ModuleRep], maps: List[MorphismRep]) -> bool:
    """0 -> W_0 -> W_1 -> ... -> W_m -> 0 is exact"""
    ranks = [f.matrix.rank() for f in maps]
    for left, right in zip(maps, maps[1:]):
        if not (left.matrix @ right.matrix).is_zero():
            return False
    for j, term in enumerate(terms):
        incoming = ranks[j - 1] if j > 0 else 0
        outgoing = ranks[j] if j < len(ranks) else 0
        if term.dim != incoming + outgoing:
            return False
    return True


def verify_tilting(sd: ShiftData, cap: int = 24) -> TiltingCertificate:
    t = sd.module
    res = minimal_resolution(t, "projective", cap)
    pd = res.length
    if not pd.known_le(sd.level):
        raise TiltingVerificationError(f"pd T = {pd} exceeds the level {sd.level}", "projective dimension")

    extensions = ext_dims(t, t, max(pd.value, 1), resolution=res)[1:]
    if any(extensions):
        raise TiltingVerificationError(f"Ext^i(T, T) dimensions {extensions}", "self-extensions")

    allowed = set(sd.generator.injective_labels)
    if any(j not in allowed for labels in sd.witness_labels for j in labels):
        raise TiltingVerificationError("a witness term is not projective-injective", "coresolution")
    if not _sequence_exact(sd.witness_terms, sd.witness_maps):
        raise TiltingVerificationError("the witness sequence is not exact", "coresolution")

    dims, ranks = hom_complex_ranks(sd.witness_terms, [f.matrix for f in sd.witness_maps], t, covariant=False)
    for j, dim in enumerate(dims):
        incoming = ranks[j] if j < len(ranks) else 0
        outgoing = ranks[j - 1] if j > 0 else 0
        if dim != incoming + outgoing:
            raise TiltingVerificationError(f"Hom(-, T) of the witness is not exact at position {j}", "contravariant witness")

    simples = len(sd.algebra.idempotents)
    if len(sd.representatives) != simples:
        raise TiltingVerificationError(
            f"{len(sd.representatives)} summand classes for {simples} simples", "summand count"
        )
    return TiltingCertificate(
        level=sd.level,
        projective_dimension=pd,
        self_extensions=extensions,
        coresolution_labels=sd.witness_labels,
        contravariant_dims=dims,
        summand_classes=len(sd.representatives),
    )


def witness_hom_exactness(sd: ShiftData) -> List[bool]:
    """
    Exactness of 0 -> Hom(T, W_0) -> Hom(T, W_1) -> ... at every position.
    Left exactness of Hom(T, -) forces the first two.
    """
    dims, ranks = hom_complex_ranks(sd.witness_terms, [f.matrix for f in sd.witness_maps], sd.module, covariant=True)
    flags = []
    for j, dim in enumerate(dims):
        kernel = dim - (ranks[j] if j < len(ranks) else 0)
        image = ranks[j - 1] if j > 0 else 0
        flags.append(kernel == image)
    for j, ok in enumerate(flags[:2]):
        if not ok:
            raise TiltingVerificationError(f"Hom(T, -) of the witness is not exact at position {j}", "left exactness")
    return flags


@dataclass
class ShiftedAlgebra:
    shift: ShiftData
    end: EndAlgebra
    summand_map: List[str]

    @property
    def gamma(self) -> BasedAlgebra:
        return self.end.algebra


def endomorphism_algebra(sd: ShiftData, seed: int = 0) -> ShiftedAlgebra:
    """Γ = End(T) built on one summand per isomorphism class, ε_s the identity of T_s"""
    name = f"Γ{sd.level}({sd.algebra.name})" if sd.algebra.name else f"Γ{sd.level}"
    end = end_algebra(sd.representatives, name=name)
    summand_map = [
        f"{origin}:{rep.dim_vector}" for origin, rep in zip(sd.origins, sd.representatives)
    ]
    return ShiftedAlgebra(sd, end, summand_map)


def resolve_shifted(
    a: BasedAlgebra,
    k: int,
    cap: int = 24,
    seed: int = 0,
    search: Optional[SearchConfig] = None,
    shifted: Optional[ShiftedAlgebra] = None,
) -> ShiftedAlgebra:
    """The given level-k shifted algebra of A, or a freshly built one"""
    if shifted is None:
        return endomorphism_algebra(shifted_module(a, k, cap, seed, search), seed)
    if shifted.shift.algebra is not a or shifted.shift.level != k:
        raise ValueError(f"precomputed shift does not belong to level {k} of {a.name or 'this algebra'}")
    return shifted


class GldimReport(BaseModel):
    level: int
    gldim_lambda: Bounded
    gldim_gamma: Bounded
    simples_lambda: int
    simples_gamma: int
    dim_gamma: int
    holds: Verdict


def compare_bounded(lhs: Bounded, rhs: Bounded) -> Verdict:
    """Verdict for lhs <= rhs"""
    if not rhs.exact:
        return "not-applicable"
    if lhs.exact:
        return "pass" if lhs.value <= rhs.value else "fail"
    return "fail" if lhs.value > rhs.value else "inconclusive"


def shift_gldim_report(
    a: BasedAlgebra,
    k: int,
    cap: int = 24,
    seed: int = 0,
    search: Optional[SearchConfig] = None,
    shifted: Optional[ShiftedAlgebra] = None,
) -> GldimReport:
    gamma = resolve_shifted(a, k, cap, seed, search, shifted).gamma
    lam = profile(a, cap).gldim
    gam = profile(gamma, cap).gldim
    return GldimReport(
        level=k,
        gldim_lambda=lam,
        gldim_gamma=gam,
        simples_lambda=len(a.idempotents),
        simples_gamma=len(gamma.idempotents),
        dim_gamma=gamma.dim,
        holds=compare_bounded(gam, lam),
    )


class InjdimReport(BaseModel):
    level: int
    n: Bounded
    injdim_t: Optional[Bounded] = None
    expected: Optional[int] = None
    verdict: Verdict


def shifted_injdim_check(
    a: BasedAlgebra,
    k: int,
    cap: int = 24,
    seed: int = 0,
    search: Optional[SearchConfig] = None,
    sd: Optional[ShiftData] = None,
) -> InjdimReport:
    """injdim T_k = n - k for 1 <= k <= min(domdim, n) and n finite and nonzero"""
    if k < 1:
        raise ShiftPreconditionError("the injective-dimension check needs level k >= 1")
    n = profile(a, cap).n
    if not n.exact:
        return InjdimReport(level=k, n=n, verdict="inconclusive")
    if n.value == 0 or k > n.value:
        return InjdimReport(level=k, n=n, verdict="not-applicable")
    if sd is None:
        sd = shifted_module(a, k, cap, seed, search)
    elif sd.algebra is not a or sd.level != k:
        raise ValueError(f"precomputed shift does not belong to level {k} of {a.name or 'this algebra'}")
    injdim = minimal_resolution(sd.module, "injective", cap).length
    expected = n.value - k
    if not injdim.exact:
        verdict = "inconclusive"
    else:
        verdict = "pass" if injdim.value == expected else "fail"
    return InjdimReport(level=k, n=n, injdim_t=injdim, expected=expected, verdict=verdict)


def generator_cogenerator(a: BasedAlgebra) -> ModuleRep:
    """A ⊕ D(A)"""
    m, _ = direct_sum([regular_module(a), canonical_module(a)], a)
    m.name = "A + D(A)"
    return m


class EndCheckReport(BaseModel):
    module_dim: int
    summand_classes: int
    end_dim: int
    domdim_end: Bounded
    holds: Verdict
    ext_dims: List[int] = Field(description="dim Ext^i(M, M), i = 0, 1, 2")
    hom_cohomology: List[int] = Field(description="cohomology of Hom(M, I) for the coresolution I of M")
    ext_agreement: bool


def generator_cogenerator_check(
    m: ModuleRep, seed: int = 0, cap: int = 24, search: Optional[SearchConfig] = None
) -> EndCheckReport:
    """End(M) has dominant dimension at least 2 for a generator-cogenerator M"""
    a = m.algebra
    cat = catalog(a)
    summands = decompose(m, seed, search).summands
    for kind, modules in (("projective", cat.projectives), ("injective", cat.injectives)):
        for x in modules:
            if not any(indecomposables_isomorphic(x, s) for s in summands):
                raise NotGeneratorCogeneratorError(f"M has no summand isomorphic to the {kind} {x.name}")
    reps: List[ModuleRep] = []
    for s in summands:
        if not any(indecomposables_isomorphic(s, r) for r in reps):
            reps.append(s)
    end = end_algebra(reps, name=f"End({m.name})" if m.name else "End(M)")
    domdim = profile(end.algebra, cap).domdim
    holds: Verdict = "pass" if domdim.known_ge(2) else "fail"

    ext = ext_dims(m, m, 2)
    cores = minimal_resolution(m, "injective", cap=3)
    dims, ranks = hom_complex_ranks(cores.terms, [d.matrix for d in cores.differentials], m, covariant=True)
    cohomology = []
    for i in range(3):
        h = dims[i] if i < len(dims) else 0
        outgoing = ranks[i] if i < len(ranks) else 0
        incoming = ranks[i - 1] if 0 < i <= len(ranks) else 0
        cohomology.append(h - outgoing - incoming)
    return EndCheckReport(
        module_dim=m.dim,
        summand_classes=len(reps),
        end_dim=end.algebra.dim,
        domdim_end=domdim,
        holds=holds,
        ext_dims=ext,
        hom_cohomology=cohomology,
        ext_agreement=cohomology == ext,
    )


def transport_resolution(shifted: ShiftedAlgebra, res: Resolution) -> ComplexOfModules:
    """
    Replace each projective Γ-module ε_u Γ = Hom(T, T_u) in a projective
    resolution by T_u. P_j sits in degree -j and a block ε_u Γ -> ε_v Γ,
    left multiplication by x in ε_v Γ ε_u, becomes the component of x in
    Hom(T_u, T_v).
    """
    gamma = shifted.gamma
    cat = catalog(gamma)
    reps = shifted.shift.representatives
    m = len(res.terms)
    summands, labels, diffs = [], [], []
    for idx in range(m):
        j = m - 1 - idx
        summands.append([reps[u] for u in res.labels[j]])
        labels.append(list(res.labels[j]))
    for idx in range(m - 1):
        j = m - 1 - idx
        source_labels, target_labels = res.labels[j], res.labels[j - 1]
        matrix = res.differentials[j - 1].matrix
        source_offsets = _offsets([cat.projectives[u].dim for u in source_labels])
        target_offsets = _offsets([cat.projectives[v].dim for v in target_labels])
        blocks = []
        for t, u in enumerate(source_labels):
            top = cat.projective_tops[u].row(0)
            vector = [gamma.field.zero] * matrix.rows
            vector[source_offsets[t]:source_offsets[t] + len(top)] = top
            generator = Mat.from_rows(gamma.field, [vector], matrix.rows)
            image = generator @ matrix
            row = []
            for s, v in enumerate(target_labels):
                width = cat.projectives[v].dim
                part = image.block(0, 1, target_offsets[s], target_offsets[s] + width)
                x = (part @ cat.projective_bases[v]).row(0)
                row.append(shifted.end.morphism(x, u, v))
            blocks.append(row)
        diffs.append(blocks)
    return ComplexOfModules(gamma.field, -(m - 1), summands, labels, diffs)


def _offsets(sizes: List[int]) -> List[int]:
    return [sum(sizes[:i]) for i in range(len(sizes))]


class MechanismReport(BaseModel):
    level: int
    simple: int
    n: Bounded
    pd_simple: Bounded
    width: Optional[int] = None
    minimized_width: Optional[int] = None
    removed: int = 0
    cohomology: Dict[str, int] = Field(default_factory=dict)
    tor_vanishes: Optional[bool] = None
    width_bounded: Optional[bool] = None
    homotopy_preserved: Optional[bool] = None
    verdict: Verdict


def mechanism_check(
    a: BasedAlgebra,
    k: int,
    which_simple: int,
    cap: int = 24,
    seed: int = 0,
    search: Optional[SearchConfig] = None,
    shifted: Optional[ShiftedAlgebra] = None,
) -> MechanismReport:
    """
    Transport the minimal projective resolution of a simple Γ-module to a
    complex over add T and check that its cohomology vanishes below degree
    -k and that the minimized complex has width at most n + 1.
    """
    prof = profile(a, cap)
    shifted = resolve_shifted(a, k, cap, seed, search, shifted)
    simples = catalog(shifted.gamma).simples
    if not 0 <= which_simple < len(simples):
        raise ValueError(f"simple index {which_simple} outside 0..{len(simples) - 1}")
    res = minimal_resolution(simples[which_simple], "projective", cap)
    if res.capped or not prof.gldim.exact or not prof.n.exact:
        return MechanismReport(level=k, simple=which_simple, n=prof.n, pd_simple=res.length, verdict="inconclusive")

    complex_ = transport_resolution(shifted, res)
    cohomology = complex_.cohomology_dims()
    minimized, removed = minimize(complex_)
    preserved = minimized.cohomology_dims() == cohomology
    tor = all(dim == 0 for degree, dim in cohomology.items() if degree < -k)
    bounded = minimized.width <= prof.n.value + 1
    ok = complex_.is_complex() and preserved and tor and bounded
    logger.debug("mechanism check level %d simple %d: width %d, removed %d", k, which_simple, minimized.width, removed)
    return MechanismReport(
        level=k,
        simple=which_simple,
        n=prof.n,
        pd_simple=res.length,
        width=complex_.width,
        minimized_width=minimized.width,
        removed=removed,
        cohomology={str(d): v for d, v in sorted(cohomology.items())},
        tor_vanishes=tor,
        width_bounded=bounded,
        homotopy_preserved=preserved,
        verdict="pass" if ok else "fail",
    )
