import pytest

from shifted_orders import ShiftToolkit, ShiftToolkitError, tilting, toolkit
from shifted_orders.errors import TheoremNotApplicableError
from shifted_orders.homology import Bounded
from shifted_orders.quiver_frontend import Arrow, Quiver


class TestConstruction:
    def test_describe(self, load_toolkit):
        """Test the presentation summary of the Auslander algebra of k[x]/(x^2)"""
        info = load_toolkit("auslander_kx2").describe()
        assert info["algebra"] == "auslander_kx2"
        assert info["field"] == "p101"
        assert info["dim"] == 5
        assert info["simples"] == 2
        assert info["cartan"] == [[2, 1], [1, 1]]
        assert info["radical_dim"] == 3
        assert info["loewy_length"] == 3
        assert len(info["basis"]) == 5

    def test_field_override(self, corpus_dir, settings):
        tk = ShiftToolkit.from_file(corpus_dir / "a2.alg", field="q", settings=settings)
        assert tk.describe()["field"] == "q"

    def test_field_from_settings(self, settings):
        quiver = Quiver(vertices=2, arrows=[Arrow(name="a", source=0, target=1)])
        tk = ShiftToolkit.from_quiver(quiver, name="a2", settings=settings)
        assert tk.algebra.field.label == "p101"
        assert tk.algebra.dim == 3

    def test_from_text(self, corpus_dir, settings):
        text = (corpus_dir / "a2.alg").read_text(encoding="utf-8")
        tk = ShiftToolkit.from_text(text, settings=settings)
        assert tk.name == "a2"
        assert tk.cap == 24


class TestInvariants:
    @pytest.mark.parametrize("name", ["a2", "auslander_kx2", "a3_sink"])
    def test_invariant_checks(self, load_toolkit, name):
        checks = load_toolkit(name).invariant_checks(max_ext=3)
        assert "fail" not in checks.values()
        assert checks["gldim=injdim=n"] == "pass"
        assert checks["cover-minimality"] == "pass"

    def test_profile(self, load_toolkit):
        prof = load_toolkit("nakayama_a4_rad2").profile()
        assert prof.gldim == Bounded.exactly(3)
        assert prof.domdim == Bounded.exactly(3)


class TestShifts:
    def test_shift_levels(self, load_toolkit):
        assert load_toolkit("auslander_kx2").shift_levels() == [0, 1, 2]
        assert load_toolkit("loop_sq").shift_levels() == [0, 1]
        assert load_toolkit("a3_sink").shift_levels() == [0]

    def test_shift_is_cached(self, load_toolkit):
        tk = load_toolkit("a2")
        assert tk.shift(1) is tk.shift(1)
        assert tk.shifted_algebra(1).gamma.dim == 3
        assert tk.certify(1).projective_dimension == Bounded.exactly(1)

    def test_reports(self, load_toolkit):
        tk = load_toolkit("auslander_kx2")
        assert tk.gldim_report(1).holds == "pass"
        assert tk.injdim_check(2).verdict == "pass"
        assert len(tk.mechanism(1)) == 2

    def test_orders(self, load_toolkit):
        tk = load_toolkit("auslander_kx2")
        assert tk.order_profile(1).predicted_bound == Bounded.exactly(2)
        assert tk.order_report(0, 1).verdict == "pass"
        assert len(tk.theorem_sweep()) == 2


class TestModuleSpec:
    def test_sums(self, load_toolkit):
        tk = load_toolkit("auslander_kx2")
        assert tk.module_from_spec("A+S1").dim == 6
        assert tk.module_from_spec("2*P1").dim == 6
        assert tk.module_from_spec("A + DA").dim == 10
        assert tk.module_from_spec("I2").name == "I2"

    @pytest.mark.parametrize("spec", ["X1", "S3", "P0", ""])
    def test_bad_tokens(self, load_toolkit, spec):
        with pytest.raises(ShiftToolkitError):
            load_toolkit("auslander_kx2").module_from_spec(spec)

    def test_endcheck(self, load_toolkit):
        tk = load_toolkit("a2")
        assert tk.endcheck().holds == "pass"
        assert tk.endcheck("P1+S1+P2").summand_classes == 3

    def test_endcheck_recovers_auslander_algebra(self, load_toolkit):
        """Test End(k[x]/(x^2) ⊕ k) has dimension 5 and dominant dimension 2"""
        report = load_toolkit("loop_sq").endcheck("A+S1")
        assert report.end_dim == 5
        assert report.domdim_end == Bounded.exactly(2)
        assert report.holds == "pass"


class TestShiftReuse:
    def test_reports_reuse_the_cached_shift(self, corpus_dir, settings, mocker):
        """Test one shifted module is built for every report at the same level"""
        tk = ShiftToolkit.from_file(corpus_dir / "auslander_kx2.alg", settings=settings)
        cached = mocker.spy(toolkit, "shifted_module")
        rebuilt = mocker.spy(tilting, "shifted_module")
        assert tk.gldim_report(1).holds == "pass"
        assert tk.injdim_check(1).verdict == "pass"
        assert len(tk.mechanism(1)) == 2
        assert tk.order_report(0, 1).verdict == "pass"
        assert len(tk.theorem_sweep(1)) == 2
        assert cached.call_count == 1
        assert rebuilt.call_count == 0

    def test_order_report_checks_hypotheses_first(self, load_toolkit):
        with pytest.raises(TheoremNotApplicableError):
            load_toolkit("a3_sink").order_report(0, 1)
