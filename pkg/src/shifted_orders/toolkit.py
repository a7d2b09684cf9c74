import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .algebra_core import BasedAlgebra, cartan_matrix
from .algebra_files import ParsedAlgebra, parse_algebra_file, parse_algebra_text
from .errors import ShiftToolkitError
from .field_factory import get_field
from .homology import (
    HomologicalProfile,
    canonical_module,
    ext_dims,
    is_projective,
    minimal_resolution,
    profile,
)
from .modcat import (
    ModuleRep,
    catalog,
    cover_envelope,
    decompose,
    direct_sum,
    dualize,
    hom_dim,
    indecomposables_isomorphic,
    injective_envelope,
    is_isomorphic,
    morphism_factor,
    regular_module,
)
from .order_layer import OrderProfile, TensorOrderSpec, TheoremReport, order_profile, theorem_report, theorem_sweep
from .quiver_frontend import Quiver, RelationCombo, build_based_algebra
from .settings import FieldConfig, GlobalSettings, get_field_config, load_settings
from .tilting import (
    EndCheckReport,
    GldimReport,
    InjdimReport,
    MechanismReport,
    ShiftData,
    ShiftedAlgebra,
    TiltingCertificate,
    Verdict,
    endomorphism_algebra,
    generator_cogenerator,
    generator_cogenerator_check,
    mechanism_check,
    shift_gldim_report,
    shifted_injdim_check,
    shifted_module,
    verify_tilting,
    witness_hom_exactness,
)

logger = logging.getLogger(__name__)

_MODULE_TOKEN = re.compile(r"^(?:(\d+)\*)?(A|DA|D\(A\)|[PIS]\d+)$")


class ShiftToolkit:
    def __init__(self, algebra: BasedAlgebra, settings: Optional[GlobalSettings] = None, parsed: Optional[ParsedAlgebra] = None):
        """
        Initialize the toolkit around one algebra

        Args:
            algebra: The algebra every command works on
            settings: Global settings (cap, seed, search budgets); read from the environment if None
            parsed: The parsed file the algebra came from, if any
        """
        self.algebra = algebra
        self.settings = settings or load_settings()
        self.parsed = parsed
        self._shifts: Dict[int, ShiftData] = {}
        self._shifted: Dict[int, ShiftedAlgebra] = {}

    # -- construction --------------------------------------------------------

    @staticmethod
    def resolve_field(field: Optional[Union[str, FieldConfig]], parsed: Optional[ParsedAlgebra], settings: GlobalSettings) -> FieldConfig:
        """Explicit argument, then the file's field key, then the settings default"""
        if isinstance(field, FieldConfig):
            return field
        if field:
            return get_field_config(field)
        if parsed is not None and parsed.field is not None:
            return parsed.field
        return get_field_config(settings.default_field)

    @classmethod
    def from_parsed(cls, parsed: ParsedAlgebra, field: Optional[Union[str, FieldConfig]] = None, settings: Optional[GlobalSettings] = None) -> "ShiftToolkit":
        settings = settings or load_settings()
        config = cls.resolve_field(field, parsed, settings)
        algebra = build_based_algebra(
            parsed.quiver,
            parsed.relations,
            get_field(config),
            nilpotency_cap=settings.nilpotency_cap,
            max_paths=settings.max_paths,
            name=parsed.metadata.name or Path(parsed.source).stem,
        )
        return cls(algebra, settings, parsed)

    @classmethod
    def from_file(cls, path: Union[str, Path], field: Optional[Union[str, FieldConfig]] = None, settings: Optional[GlobalSettings] = None) -> "ShiftToolkit":
        return cls.from_parsed(parse_algebra_file(path), field, settings)

    @classmethod
    def from_text(cls, text: str, field: Optional[Union[str, FieldConfig]] = None, settings: Optional[GlobalSettings] = None) -> "ShiftToolkit":
        return cls.from_parsed(parse_algebra_text(text), field, settings)

    @classmethod
    def from_quiver(
        cls,
        quiver: Quiver,
        relations: Sequence[RelationCombo] = (),
        field: Optional[Union[str, FieldConfig]] = None,
        name: str = "",
        settings: Optional[GlobalSettings] = None,
    ) -> "ShiftToolkit":
        settings = settings or load_settings()
        config = cls.resolve_field(field, None, settings)
        algebra = build_based_algebra(
            quiver, list(relations), get_field(config),
            nilpotency_cap=settings.nilpotency_cap, max_paths=settings.max_paths, name=name,
        )
        return cls(algebra, settings)

    # -- settings shortcuts ----------------------------------------------------

    @property
    def cap(self) -> int:
        return self.settings.cap

    @property
    def seed(self) -> int:
        return self.settings.seed

    @property
    def name(self) -> str:
        return self.algebra.name or "algebra"

    # -- presentation and invariants -------------------------------------------

    def describe(self) -> Dict[str, Any]:
        """Dimension, Cartan matrix and radical data of the algebra"""
        a = self.algebra
        rad = a.radical
        return {
            "algebra": self.name,
            "field": a.field.label,
            "dim": a.dim,
            "simples": len(a.idempotents),
            "cartan": cartan_matrix(a),
            "radical_dim": rad.dim,
            "loewy_length": rad.loewy_length,
            "basis": list(a.labels),
        }

    def profile(self) -> HomologicalProfile:
        return profile(self.algebra, self.cap)

    def invariant_checks(self, max_ext: int = 4) -> Dict[str, Verdict]:
        """Structural cross-checks that hold for every finite-dimensional algebra"""
        a = self.algebra
        prof = self.profile()
        cat = catalog(a)
        checks: Dict[str, Verdict] = {}

        if prof.gldim.exact:
            agree = prof.injdim.exact and prof.n.exact and prof.gldim.value == prof.injdim.value == prof.n.value
            checks["gldim=injdim=n"] = "pass" if agree else "fail"
        else:
            checks["gldim=injdim=n"] = "not-applicable"

        if prof.iwanaga_gorenstein:
            checks["gorenstein-symmetry"] = "pass" if prof.injdim == prof.left_injdim else "fail"

        if prof.domdim.exact and prof.injdim.exact:
            checks["domdim<=injdim"] = "pass" if prof.domdim.value <= prof.injdim.value else "fail"

        envelope = injective_envelope(regular_module(a)).module
        checks["qf3-envelope"] = "pass" if is_projective(envelope) == prof.qf3 else "fail"

        modules = cat.simples + cat.projectives + cat.injectives
        hom_ok = all(hom_dim(m, n) == hom_dim(dualize(n), dualize(m)) for m in modules for n in modules)
        checks["duality-hom"] = "pass" if hom_ok else "fail"

        minimal = all(c.minimality_witness() for m in modules for c in cover_envelope(m))
        checks["cover-minimality"] = "pass" if minimal else "fail"

        ext_ok = True
        mult_ok = True
        rank_ok = True
        for s in cat.simples:
            res = minimal_resolution(s, "projective", cap=max_ext + 1)
            table = [ext_dims(s, t, max_ext, resolution=res) for t in cat.simples]
            for t, row in zip(cat.simples, table):
                if row != ext_dims(dualize(t), dualize(s), max_ext):
                    ext_ok = False
            for i in range(max_ext + 1):
                counts = res.multiplicities(i, len(cat.simples))
                against = [row[i] for row in table]
                if counts != against:
                    mult_ok = False
            for d in res.differentials + res.epis:
                fac = morphism_factor(d)
                if fac.kernel.dim + fac.image.dim != d.source.dim or fac.image.dim + fac.cokernel.dim != d.target.dim:
                    rank_ok = False
        checks["duality-ext"] = "pass" if ext_ok else "fail"
        checks["ext-multiplicities"] = "pass" if mult_ok else "fail"
        checks["rank-nullity"] = "pass" if rank_ok else "fail"

        regular = regular_module(a)
        first = decompose(regular, self.seed, self.settings.search)
        second = decompose(regular, self.seed + 1, self.settings.search)
        same = first.dim_vectors == second.dim_vectors and _matched(first.summands, second.summands)
        checks["decomposition-seeds"] = "pass" if same else "fail"

        double = all(is_isomorphic(dualize(dualize(s)), s, self.seed, self.settings.search) for s in cat.simples)
        checks["double-dual"] = "pass" if double else "fail"
        return checks

    # -- shifts ------------------------------------------------------------------

    def shift(self, k: int) -> ShiftData:
        if k not in self._shifts:
            self._shifts[k] = shifted_module(self.algebra, k, self.cap, self.seed, self.settings.search)
        return self._shifts[k]

    def certify(self, k: int) -> TiltingCertificate:
        return verify_tilting(self.shift(k), self.cap)

    def witness_exactness(self, k: int) -> List[bool]:
        return witness_hom_exactness(self.shift(k))

    def shifted_algebra(self, k: int) -> ShiftedAlgebra:
        if k not in self._shifted:
            self._shifted[k] = endomorphism_algebra(self.shift(k), self.seed)
        return self._shifted[k]

    def gldim_report(self, k: int) -> GldimReport:
        return shift_gldim_report(self.algebra, k, self.cap, self.seed, self.settings.search, self.shifted_algebra(k))

    def injdim_check(self, k: int) -> InjdimReport:
        n = self.profile().n
        sd = self.shift(k) if n.exact and 1 <= k <= n.value else None
        return shifted_injdim_check(self.algebra, k, self.cap, self.seed, self.settings.search, sd)

    def mechanism(self, k: int) -> List[MechanismReport]:
        """One mechanism check per simple Γ-module, all sharing the cached shift"""
        shifted = self.shifted_algebra(k)
        return [
            mechanism_check(self.algebra, k, i, self.cap, self.seed, self.settings.search, shifted)
            for i in range(len(shifted.gamma.idempotents))
        ]

    def shift_levels(self) -> List[int]:
        """Levels 0..min(domdim, max(n, 1)) exercised by the corpus runner"""
        prof = self.profile()
        top = max(prof.n.value, 1) if prof.n.exact else 1
        top = min(top, prof.domdim.value)
        return list(range(top + 1))

    # -- orders ------------------------------------------------------------------

    def order_profile(self, d: int) -> OrderProfile:
        return order_profile(TensorOrderSpec(algebra=self.algebra, krull_dim=d), self.cap)

    def order_report(self, d: int, k: int) -> TheoremReport:
        spec = TensorOrderSpec(algebra=self.algebra, krull_dim=d)
        op = order_profile(spec, self.cap)
        # the shift is only built once the order is known to qualify
        shifted = self.shifted_algebra(k) if op.qf3 and op.applicable is not False else None
        return theorem_report(spec, k, self.cap, self.seed, self.settings.search, shifted)

    def theorem_sweep(self, k: int = 1) -> List[TheoremReport]:
        prof = self.profile()
        shifted = self.shifted_algebra(k) if prof.qf3 and prof.n.exact and prof.n.value > 0 else None
        return theorem_sweep(self.algebra, k, self.cap, self.seed, self.settings.search, shifted)

    # -- generator-cogenerators ---------------------------------------------------

    def module_from_spec(self, spec: str) -> ModuleRep:
        """
        Build a module from "+"-separated tokens: A (regular), DA (its dual),
        P<i>, I<i>, S<i> numbered from 1, each optionally prefixed "<m>*".
        """
        a = self.algebra
        cat = catalog(a)
        parts: List[ModuleRep] = []
        for raw in spec.replace(" ", "").split("+"):
            match = _MODULE_TOKEN.match(raw)
            if not match:
                raise ShiftToolkitError(f"cannot read module token '{raw}'")
            count = int(match.group(1) or 1)
            token = match.group(2)
            if token == "A":
                module = regular_module(a)
            elif token in ("DA", "D(A)"):
                module = canonical_module(a)
            else:
                index = int(token[1:]) - 1
                table = {"P": cat.projectives, "I": cat.injectives, "S": cat.simples}[token[0]]
                if not 0 <= index < len(table):
                    raise ShiftToolkitError(f"'{token}' outside 1..{len(table)}")
                module = table[index]
            parts.extend([module] * count)
        module, _ = direct_sum(parts, a)
        module.name = spec
        return module

    def endcheck(self, spec: Optional[str] = None) -> EndCheckReport:
        module = self.module_from_spec(spec) if spec else generator_cogenerator(self.algebra)
        return generator_cogenerator_check(module, self.seed, self.cap, self.settings.search)


def _matched(left: Sequence[ModuleRep], right: Sequence[ModuleRep]) -> bool:
    """Pair off two lists of indecomposables up to isomorphism"""
    pool = list(right)
    for x in left:
        hit = next((i for i, y in enumerate(pool) if indecomposables_isomorphic(x, y)), None)
        if hit is None:
            return False
        pool.pop(hit)
    return not pool
