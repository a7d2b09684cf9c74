"""
Orders Λ = A ⊗ R over a complete regular local base R of Krull dimension d.

No power series are formed: every Λ-level number comes from the profile of A
plus arithmetic in d. CM-dominant dimension of Λ equals domdim A, the
canonical degree n is that of A and gldim Λ = d + n when finite. The shifted
order is modelled as Γ_A ⊗ R, so gldim Γ_Λ = gldim Γ_A + d.
"""
import logging
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .algebra_core import BasedAlgebra
from .errors import TheoremNotApplicableError
from .homology import Bounded, profile
from .settings import SearchConfig
from .tilting import ShiftedAlgebra, Verdict, resolve_shifted

logger = logging.getLogger(__name__)

TRANSFER_ASSUMPTION = "shifted order of A ⊗ R modelled as (shifted algebra of A) ⊗ R"


class TensorOrderSpec(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    algebra: BasedAlgebra
    krull_dim: int = Field(ge=0, description="Krull dimension d of the base ring")
    base_ring: str = Field(default="", description="Display label of the base ring")

    @property
    def base_label(self) -> str:
        if self.base_ring:
            return self.base_ring
        if self.krull_dim == 0:
            return "k"
        return f"k[[x1..x{self.krull_dim}]]"


class OrderProfile(BaseModel):
    krull_dim: int
    cm_domdim: Bounded
    n: Bounded
    gldim_base: Bounded
    gldim_lambda: Bounded
    qf3: bool
    gorenstein_order: bool
    applicable: Optional[bool] = Field(description="n > d, None when n hit the cap")
    predicted_bound: Bounded = Field(description="gldim Λ - d")
    transfer_verdict: Optional[Verdict] = None
    slack: Optional[int] = Field(default=None, description="bound - gldim Γ_Λ once Γ is known")
    assumption: str = TRANSFER_ASSUMPTION


def order_profile(spec: TensorOrderSpec, cap: int = 24) -> OrderProfile:
    prof = profile(spec.algebra, cap)
    d = spec.krull_dim
    gldim_lambda = prof.gldim.shift(d)
    applicable = prof.n.value > d if prof.n.exact else None
    return OrderProfile(
        krull_dim=d,
        cm_domdim=prof.domdim,
        n=prof.n,
        gldim_base=prof.gldim,
        gldim_lambda=gldim_lambda,
        qf3=prof.qf3,
        gorenstein_order=prof.gorenstein_order,
        applicable=applicable,
        predicted_bound=gldim_lambda.shift(-d),
    )


class TheoremReport(BaseModel):
    level: int
    krull_dim: int
    gldim_gamma_base: Bounded
    lhs: Bounded = Field(description="gldim Γ_A + d")
    rhs: Bounded = Field(description="gldim Λ - d")
    verdict: Verdict
    hard: bool = Field(description="d = 0 rows are proved statements, d >= 1 rows rest on the transfer model")
    profile: OrderProfile


def theorem_report(
    spec: TensorOrderSpec,
    k: int,
    cap: int = 24,
    seed: int = 0,
    search: Optional[SearchConfig] = None,
    shifted: Optional[ShiftedAlgebra] = None,
) -> TheoremReport:
    """Compare gldim Γ_Λ with gldim Λ - d for the level-k shifted order"""
    op = order_profile(spec, cap)
    if not op.qf3:
        raise TheoremNotApplicableError("the order is not QF-3 (dominant dimension 0)")
    if op.applicable is False:
        raise TheoremNotApplicableError(f"needs n > d, got n = {op.n} and d = {spec.krull_dim}")
    d = spec.krull_dim
    gamma = resolve_shifted(spec.algebra, k, cap, seed, search, shifted).gamma
    gldim_gamma = profile(gamma, cap).gldim
    lhs = gldim_gamma.shift(d)
    rhs = op.predicted_bound
    if op.applicable is None or not rhs.exact or not lhs.exact:
        verdict: Verdict = "inconclusive"
    elif lhs.value <= rhs.value:
        verdict = "pass"
    else:
        verdict = "fail" if d == 0 else "experimental-fail"
    slack = rhs.value - lhs.value if lhs.exact and rhs.exact else None
    op = op.model_copy(update={"transfer_verdict": verdict, "slack": slack})
    logger.debug("theorem row d=%d k=%d: %s <= %s is %s", d, k, lhs, rhs, verdict)
    return TheoremReport(
        level=k,
        krull_dim=d,
        gldim_gamma_base=gldim_gamma,
        lhs=lhs,
        rhs=rhs,
        verdict=verdict,
        hard=d == 0,
        profile=op,
    )


def theorem_sweep(
    a: BasedAlgebra,
    k: int = 1,
    cap: int = 24,
    seed: int = 0,
    search: Optional[SearchConfig] = None,
    shifted: Optional[ShiftedAlgebra] = None,
) -> List[TheoremReport]:
    """One theorem row per Krull dimension d = 0, ..., n - 1, all sharing one shifted algebra"""
    prof = profile(a, cap)
    if not prof.n.exact:
        return []
    if shifted is None and prof.qf3 and prof.n.value > 0:
        shifted = resolve_shifted(a, k, cap, seed, search)
    return [
        theorem_report(TensorOrderSpec(algebra=a, krull_dim=d), k, cap, seed, search, shifted)
        for d in range(prof.n.value)
    ]
