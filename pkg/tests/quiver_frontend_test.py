import pytest
from pydantic import ValidationError

from shifted_orders.errors import InadmissibleRelationsError, InconsistentRelationError
from shifted_orders.quiver_frontend import (
    Arrow,
    Quiver,
    RelationCombo,
    RelationTerm,
    build_based_algebra,
    opposite_algebra,
    opposite_quiver,
    path_count_oracle,
)


def linear(n):
    names = "abcdefgh"
    return Quiver(vertices=n, arrows=[Arrow(name=names[i], source=i, target=i + 1) for i in range(n - 1)])


def zero_relation(*path):
    return RelationCombo(terms=[RelationTerm(path=list(path))])


def loop():
    return Quiver(vertices=1, arrows=[Arrow(name="x", source=0, target=0)])


class TestQuiver:
    def test_vertex_out_of_range(self):
        with pytest.raises(ValidationError):
            Quiver(vertices=2, arrows=[Arrow(name="a", source=0, target=2)])

    def test_duplicate_arrow_names(self):
        with pytest.raises(ValidationError):
            Quiver(vertices=2, arrows=[Arrow(name="a", source=0, target=1), Arrow(name="a", source=1, target=0)])

    def test_arrow_name_may_not_contain_star(self):
        with pytest.raises(ValidationError):
            Arrow(name="a*b", source=0, target=0)

    def test_unknown_arrow(self):
        with pytest.raises(InconsistentRelationError):
            linear(2).arrow("z")


class TestRelations:
    def test_endpoints(self):
        assert zero_relation("a", "b").endpoints(linear(3)) == (0, 2)

    def test_not_composable(self):
        with pytest.raises(InconsistentRelationError, match="not composable"):
            zero_relation("b", "a").endpoints(linear(3))

    def test_not_parallel(self):
        q = Quiver(vertices=3, arrows=[
            Arrow(name="a", source=0, target=1),
            Arrow(name="b", source=1, target=2),
            Arrow(name="c", source=1, target=1),
        ])
        combo = RelationCombo(terms=[RelationTerm(path=["a", "b"]), RelationTerm(path=["a", "c"])])
        with pytest.raises(InconsistentRelationError, match="share source and target"):
            combo.endpoints(q)

    def test_too_short(self):
        with pytest.raises(InconsistentRelationError):
            zero_relation("a").endpoints(linear(2))


class TestBuildAlgebra:
    def test_a2(self, field):
        """Test the path algebra of 1 -> 2"""
        a = build_based_algebra(linear(2), [], field, name="a2")
        assert a.dim == 3
        assert a.labels == ["e1", "e2", "a"]
        assert a.name == "a2"
        assert a.provenance == "quiver"

    def test_path_composition(self, field):
        """Test that a*b is the path 1 -> 3 and b*a vanishes"""
        a = build_based_algebra(linear(3), [], field)
        index = {label: i for i, label in enumerate(a.labels)}
        x, y = a.basis_vector(index["a"]), a.basis_vector(index["b"])
        assert a.multiply(x, y) == a.basis_vector(index["a*b"])
        assert a.multiply(y, x) == a.zero_vector()

    def test_monomial_relations(self, field):
        a = build_based_algebra(linear(4), [zero_relation("a", "b"), zero_relation("b", "c")], field)
        assert a.dim == 7

    def test_commutativity_relation(self, field):
        """Test the commutative square keeps one path of length two"""
        q = Quiver(vertices=4, arrows=[
            Arrow(name="a", source=0, target=1),
            Arrow(name="b", source=0, target=2),
            Arrow(name="c", source=1, target=3),
            Arrow(name="d", source=2, target=3),
        ])
        combo = RelationCombo(terms=[RelationTerm(path=["a", "c"]), RelationTerm(coefficient=-1, path=["b", "d"])])
        a = build_based_algebra(q, [combo], field)
        assert a.dim == 9
        index = {label: i for i, label in enumerate(a.labels)}
        ac = a.multiply(a.basis_vector(index["a"]), a.basis_vector(index["c"]))
        bd = a.multiply(a.basis_vector(index["b"]), a.basis_vector(index["d"]))
        assert ac == bd

    def test_truncated_polynomial(self, field):
        a = build_based_algebra(loop(), [zero_relation("x", "x", "x")], field)
        assert a.dim == 3
        assert a.radical.loewy_length == 3

    def test_inadmissible_relations(self, field):
        """Test that a free loop never closes up"""
        with pytest.raises(InadmissibleRelationsError):
            build_based_algebra(loop(), [], field, nilpotency_cap=5)

    def test_path_guard(self, field):
        with pytest.raises(InadmissibleRelationsError):
            build_based_algebra(linear(4), [], field, max_paths=5)

    def test_rational_coefficients(self, rationals):
        q = Quiver(vertices=2, arrows=[
            Arrow(name="a", source=0, target=1),
            Arrow(name="b", source=1, target=0),
        ])
        combo = RelationCombo(terms=[RelationTerm(coefficient="1/2", path=["a", "b"])])
        a = build_based_algebra(q, [combo, zero_relation("b", "a")], rationals)
        assert a.dim == 4


class TestOracles:
    def test_path_count_oracle(self):
        """Test the automaton count against the built dimension"""
        assert path_count_oracle(linear(4), [["a", "b"], ["b", "c"]]) == 7
        assert path_count_oracle(loop(), [["x", "x"]]) == 2
        assert path_count_oracle(loop(), [], nilpotency_cap=6) is None

    def test_opposite_quiver(self, field):
        q, rels = opposite_quiver(linear(3), [zero_relation("a", "b")])
        assert q.arrow("a").source == 1
        assert rels[0].terms[0].path == ["b", "a"]
        assert build_based_algebra(q, rels, field).dim == 5

    def test_opposite_algebra(self, field):
        a = build_based_algebra(linear(3), [zero_relation("a", "b")], field)
        op = opposite_algebra(a)
        assert op.dim == a.dim
        assert opposite_algebra(op) is a
