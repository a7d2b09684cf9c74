import pytest

from shifted_orders.errors import DimensionMismatchError
from shifted_orders.exactlin import (
    CoordinateSolver,
    Mat,
    complement_basis,
    extend_to_basis,
    kernel_image,
    left_kernel,
    linear_solve,
    row_basis,
    rref,
    solve_rows,
)


def mat(field, rows, cols=None):
    return Mat.from_ints(field, rows, cols)


class TestMat:
    def test_shape_and_rows(self, field):
        m = mat(field, [[1, 2, 3], [4, 5, 6]])
        assert m.shape == (2, 3)
        assert m.row(1) == [field(4), field(5), field(6)]

    def test_ragged_rows_rejected(self, field):
        with pytest.raises(DimensionMismatchError):
            mat(field, [[1, 2], [3]])

    def test_product_convention(self, field):
        """Test that v -> v F then v -> v G is F @ G"""
        f = mat(field, [[0, 1], [0, 0]])
        g = mat(field, [[1, 0], [1, 1]])
        v = mat(field, [[1, 0]])
        assert (v @ f) @ g == v @ (f @ g)
        assert (v @ f @ g).row(0) == [field(1), field(1)]

    def test_product_shape_mismatch(self, field):
        with pytest.raises(DimensionMismatchError):
            mat(field, [[1, 2]]) @ mat(field, [[1, 2]])

    def test_empty_products(self, field):
        """Test that zero-width factors give zero matrices of the right shape"""
        a = Mat.zeros(field, 3, 0)
        b = Mat.zeros(field, 0, 2)
        assert (a @ b) == Mat.zeros(field, 3, 2)

    def test_inverse(self, field):
        m = mat(field, [[2, 1], [1, 1]])
        assert m @ m.inverse() == Mat.identity(field, 2)
        assert m.is_invertible()
        assert not mat(field, [[1, 2], [2, 4]]).is_invertible()

    def test_transpose(self, field):
        m = mat(field, [[1, 2, 3]])
        assert m.T.shape == (3, 1)
        assert m.T.T == m

    def test_stacking(self, field):
        top = mat(field, [[1, 0]])
        bottom = mat(field, [[0, 1]])
        assert Mat.vstack(field, [top, bottom], 2) == Mat.identity(field, 2)
        wide = Mat.hstack(field, [mat(field, [[1], [0]]), mat(field, [[0], [1]])], 2)
        assert wide == Mat.identity(field, 2)

    def test_block_diagonal(self, field):
        m = Mat.block_diagonal(field, [Mat.identity(field, 1), mat(field, [[2, 3]])])
        assert m.shape == (2, 3)
        assert m.row(0) == [field(1), field(0), field(0)]
        assert m.row(1) == [field(0), field(2), field(3)]

    def test_lincomb(self, field):
        i2 = Mat.identity(field, 2)
        n = mat(field, [[0, 1], [0, 0]])
        combo = Mat.lincomb(field, [field(3), field(2)], [i2, n], 2, 2)
        assert combo == mat(field, [[3, 2], [0, 3]])

    def test_charpoly_and_eval(self, field):
        """Test Cayley-Hamilton on a 2 x 2 matrix"""
        m = mat(field, [[1, 1], [0, 2]])
        poly = m.charpoly()
        assert poly == [field(1), field(-3), field(2)]
        assert m.eval_poly(poly).is_zero()

    def test_power(self, field):
        n = mat(field, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert not n.power(2).is_zero()
        assert n.power(3).is_zero()
        assert n.power(0) == Mat.identity(field, 3)

    def test_equality_and_hash(self, field):
        a = mat(field, [[1, 2]])
        b = mat(field, [[102, 2]])
        assert a == b
        assert hash(a) == hash(b)


class TestRowReduction:
    def test_rref_rank(self, field):
        reduced, pivots = rref(mat(field, [[1, 2], [2, 4]]))
        assert pivots == [0]
        assert reduced.row(0) == [field(1), field(2)]

    def test_row_basis_drops_zero_rows(self, field):
        basis = row_basis(mat(field, [[1, 1], [2, 2], [0, 1]]))
        assert basis.rows == 2

    def test_left_kernel(self, field):
        m = mat(field, [[1], [1]])
        kernel = left_kernel(m)
        assert kernel.rows == 1
        assert (kernel @ m).is_zero()

    def test_kernel_image_of_zero(self, field):
        kernel, image = kernel_image(Mat.zeros(field, 2, 3))
        assert kernel.rows == 3
        assert image.rows == 0

    def test_linear_solve(self, field):
        a = mat(field, [[1, 1], [0, 1]])
        b = mat(field, [[3], [1]])
        x = linear_solve(a, b)
        assert a @ x == b

    def test_inconsistent_system(self, field):
        assert linear_solve(mat(field, [[1], [1]]), mat(field, [[1], [2]])) is None

    def test_solve_rows(self, field):
        basis = mat(field, [[1, 0], [1, 1]])
        coords = solve_rows(basis, mat(field, [[3, 4]]))
        assert coords @ basis == mat(field, [[3, 4]])

    def test_extend_to_basis(self, field):
        chosen = extend_to_basis(mat(field, [[1, 0]]), mat(field, [[2, 0], [0, 1]]))
        assert chosen == [1]

    def test_complement_basis(self, field):
        comp = complement_basis(mat(field, [[1, 0, 0]]), 3)
        assert comp.rows == 2
        assert Mat.vstack(field, [mat(field, [[1, 0, 0]]), comp], 3).is_invertible()


class TestCoordinateSolver:
    def test_coordinates(self, field):
        basis = mat(field, [[1, 1, 0], [0, 1, 1]])
        solver = CoordinateSolver(basis)
        target = mat(field, [[2, 5, 3]])
        coords = solver.coordinates(target)
        assert coords @ basis == target

    def test_outside_span(self, field):
        solver = CoordinateSolver(mat(field, [[1, 0, 0]]))
        with pytest.raises(DimensionMismatchError):
            solver.coordinates(mat(field, [[0, 1, 0]]))

    def test_dependent_basis(self, field):
        with pytest.raises(DimensionMismatchError):
            CoordinateSolver(mat(field, [[1, 1], [2, 2]]))

    def test_empty_basis(self, field):
        solver = CoordinateSolver(Mat.zeros(field, 0, 2))
        assert solver.coordinates(Mat.zeros(field, 1, 2)).shape == (1, 0)
