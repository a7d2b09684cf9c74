import pytest

from shifted_orders.errors import NotGeneratorCogeneratorError, NotQF3Error, ShiftPreconditionError
from shifted_orders.homology import Bounded, minimal_resolution, profile
from shifted_orders.modcat import catalog, regular_module
from shifted_orders.tilting import (
    compare_bounded,
    endomorphism_algebra,
    generator_cogenerator,
    generator_cogenerator_check,
    mechanism_check,
    proj_inj_generator,
    resolve_shifted,
    shift_gldim_report,
    shifted_injdim_check,
    shifted_module,
    transport_resolution,
    verify_tilting,
    witness_hom_exactness,
)


class TestProjInjGenerator:
    def test_a2(self, a2):
        gen = proj_inj_generator(a2)
        assert gen.projective_labels == [0]
        assert gen.injective_labels == [1]
        assert gen.module.dim == 2
        assert not gen.is_empty

    def test_not_qf3(self, a3_sink):
        assert proj_inj_generator(a3_sink).is_empty


class TestShiftedModule:
    def test_level_one_of_a2(self, a2):
        """Test K_1 = S1 and T = S1 ⊕ P1"""
        sd = shifted_module(a2, 1)
        assert sd.cosyzygy.dim_vector == (1, 0)
        assert sd.module.dim == 3
        assert len(sd.representatives) == 2
        assert sd.multiplicities == [1, 1]
        assert sd.witness_labels == [[1, 1]]
        assert len(sd.witness_terms) == 3

    def test_level_zero_is_regular(self, a2):
        sd = shifted_module(a2, 0)
        assert sd.cosyzygy.dim == a2.dim
        assert len(sd.witness_terms) == 2
        assert len(sd.representatives) == 2
        assert sorted(sd.multiplicities) == [1, 2]

    def test_nakayama_cosyzygies(self, nakayama):
        """Test K_1 = S3, K_2 = S2, K_3 = S1"""
        expected = {1: (0, 0, 1, 0), 2: (0, 1, 0, 0), 3: (1, 0, 0, 0)}
        for k, dim_vector in expected.items():
            assert shifted_module(nakayama, k).cosyzygy.dim_vector == dim_vector

    def test_not_qf3(self, a3_sink):
        with pytest.raises(NotQF3Error):
            shifted_module(a3_sink, 1)

    def test_level_above_domdim(self, a2):
        with pytest.raises(ShiftPreconditionError, match="exceeds the dominant dimension"):
            shifted_module(a2, 2)

    def test_negative_level(self, a2):
        with pytest.raises(ShiftPreconditionError):
            shifted_module(a2, -1)

    def test_self_injective_shift(self, loop_sq):
        """Test the coresolution of a self-injective algebra pads with zeros"""
        sd = shifted_module(loop_sq, 2)
        assert sd.cosyzygy.dim == 0
        assert sd.witness_labels[1] == []


class TestTiltingCertificate:
    @pytest.mark.parametrize("k", [0, 1])
    def test_a2(self, a2, k):
        cert = verify_tilting(shifted_module(a2, k))
        assert cert.projective_dimension == Bounded.exactly(k)
        assert not any(cert.self_extensions)
        assert cert.summand_classes == 2

    @pytest.mark.parametrize("k", [1, 2])
    def test_auslander(self, auslander_kx2, k):
        cert = verify_tilting(shifted_module(auslander_kx2, k))
        assert cert.projective_dimension.known_le(k)
        assert cert.summand_classes == 2

    def test_nakayama_levels(self, nakayama):
        for k in range(4):
            cert = verify_tilting(shifted_module(nakayama, k))
            assert cert.summand_classes == 4

    def test_witness_exactness(self, auslander_kx2):
        flags = witness_hom_exactness(shifted_module(auslander_kx2, 2))
        assert flags[:2] == [True, True]


class TestShiftedAlgebra:
    def test_a2_level_one(self, a2):
        """Test Γ = End(S1 ⊕ P1) is again the path algebra of A2"""
        shifted = endomorphism_algebra(shifted_module(a2, 1))
        assert shifted.gamma.dim == 3
        assert len(shifted.gamma.idempotents) == 2
        assert profile(shifted.gamma).gldim == Bounded.exactly(1)
        assert len(shifted.summand_map) == 2

    def test_auslander_level_one(self, auslander_kx2):
        report = shift_gldim_report(auslander_kx2, 1)
        assert report.dim_gamma == 5
        assert report.gldim_gamma == Bounded.exactly(2)
        assert report.holds == "pass"
        assert report.simples_gamma == report.simples_lambda == 2

    def test_precomputed_shift_is_used(self, auslander_kx2):
        shifted = endomorphism_algebra(shifted_module(auslander_kx2, 1))
        assert resolve_shifted(auslander_kx2, 1, shifted=shifted) is shifted
        report = shift_gldim_report(auslander_kx2, 1, shifted=shifted)
        assert report.dim_gamma == shifted.gamma.dim

    def test_precomputed_shift_must_match(self, a2, auslander_kx2):
        shifted = endomorphism_algebra(shifted_module(auslander_kx2, 1))
        with pytest.raises(ValueError, match="does not belong"):
            resolve_shifted(auslander_kx2, 0, shifted=shifted)
        with pytest.raises(ValueError):
            mechanism_check(a2, 1, 0, shifted=shifted)
        with pytest.raises(ValueError):
            shifted_injdim_check(a2, 1, sd=shifted.shift)


class TestCompareBounded:
    def test_verdicts(self):
        assert compare_bounded(Bounded.exactly(1), Bounded.exactly(2)) == "pass"
        assert compare_bounded(Bounded.exactly(3), Bounded.exactly(2)) == "fail"
        assert compare_bounded(Bounded.at_least(3), Bounded.exactly(2)) == "fail"
        assert compare_bounded(Bounded.at_least(1), Bounded.exactly(2)) == "inconclusive"
        assert compare_bounded(Bounded.exactly(1), Bounded.at_least(24)) == "not-applicable"


class TestInjdimCheck:
    def test_auslander(self, auslander_kx2):
        report = shifted_injdim_check(auslander_kx2, 1)
        assert report.expected == 1
        assert report.injdim_t == Bounded.exactly(1)
        assert report.verdict == "pass"

    def test_a2(self, a2):
        report = shifted_injdim_check(a2, 1)
        assert report.injdim_t == Bounded.exactly(0)
        assert report.verdict == "pass"

    def test_not_applicable(self, loop_sq):
        assert shifted_injdim_check(loop_sq, 1).verdict == "not-applicable"

    def test_level_zero_rejected(self, a2):
        with pytest.raises(ShiftPreconditionError):
            shifted_injdim_check(a2, 0)


class TestGeneratorCogenerator:
    def test_a2(self, a2):
        """Test End(A ⊕ DA) is the Auslander algebra of A2"""
        report = generator_cogenerator_check(generator_cogenerator(a2))
        assert report.summand_classes == 3
        assert report.end_dim == 5
        assert report.domdim_end.known_ge(2)
        assert report.holds == "pass"
        assert report.ext_agreement

    def test_regular_module_is_not_a_cogenerator(self, a2):
        with pytest.raises(NotGeneratorCogeneratorError):
            generator_cogenerator_check(regular_module(a2))


class TestMechanism:
    def test_transported_complex(self, a2):
        sd = shifted_module(a2, 1)
        shifted = endomorphism_algebra(sd)
        simple = catalog(shifted.gamma).simples[0]
        res = minimal_resolution(simple, "projective")
        complex_ = transport_resolution(shifted, res)
        assert complex_.is_complex()
        assert complex_.lo == -res.length.value

    def test_a2_level_one(self, a2):
        for i in range(2):
            report = mechanism_check(a2, 1, i)
            assert report.verdict == "pass"
            assert report.tor_vanishes
            assert report.homotopy_preserved

    def test_simple_index_checked(self, a2):
        with pytest.raises(ValueError):
            mechanism_check(a2, 1, 7)
