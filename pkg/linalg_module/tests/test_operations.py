"""
Unit and property tests for the dense linear-algebra operations.

Every property is checked against an independent numpy oracle written
here: an index-loop partial trace, characteristic-polynomial roots and
explicit Kronecker-product operators.
"""

import itertools
import math
import unittest

import numpy as np
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from core.errors import UsageError, ValidationError
from linalg_module import (
    DensityMatrix,
    HilbertLayout,
    StateVector,
    UnnormalizedState,
    apply_local,
    basis_completion,
    basis_state,
    binary_entropy,
    eigenvalues_2x2,
    fidelity_to_pure,
    inner_product,
    outer_to_density,
    partial_trace,
    random_unitary,
    reduced_density,
    tensor,
    tensor_all,
    trace_distance,
    unitary_mapping,
)

ORACLE_TOL = 1e-12
METRIC_TOL = 1e-9


def random_state(rng, dims) -> StateVector:
    dim = math.prod(dims)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(z / np.linalg.norm(z), HilbertLayout(tuple(dims)))


def random_density(rng, dims) -> DensityMatrix:
    dim = math.prod(dims)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    rho = 0.5 * (rho + rho.conj().T) / np.trace(rho).real
    return DensityMatrix(rho, HilbertLayout(tuple(dims)))


def explicit_partial_trace(entries, dims, keep):
    """Sum rho[(k, t), (k', t)] over the traced indices t, one index at a time."""
    keep = sorted(keep)
    kept_dims = [dims[i] for i in keep]
    d_keep = math.prod(kept_dims)
    out = np.zeros((d_keep, d_keep), dtype=complex)
    indices = list(itertools.product(*[range(d) for d in dims]))
    for row in indices:
        for col in indices:
            if any(row[i] != col[i] for i in range(len(dims)) if i not in keep):
                continue
            r = np.ravel_multi_index([row[i] for i in keep], kept_dims)
            c = np.ravel_multi_index([col[i] for i in keep], kept_dims)
            out[r, c] += entries[np.ravel_multi_index(row, dims), np.ravel_multi_index(col, dims)]
    return out


@st.composite
def layouts_with_keep(draw):
    dims = draw(st.lists(st.integers(min_value=1, max_value=4), min_size=2, max_size=4)
                .filter(lambda ds: math.prod(ds) <= 64))
    keep = draw(st.sets(st.integers(min_value=0, max_value=len(dims) - 1),
                        min_size=1, max_size=len(dims) - 1))
    return dims, keep


class TestTensorAndInnerProduct(unittest.TestCase):
    """Row-major tensor layout and the <u|v> convention."""

    def test_first_factor_varies_slowest(self):
        """Test the first tensor factor varies slowest."""
        state = tensor(basis_state(0, 2), basis_state(1, 3))
        self.assertEqual(state.layout.factor_dims, (2, 3))
        self.assertEqual(int(np.argmax(np.abs(state.amplitudes))), 1)
        state = tensor(basis_state(1, 2), basis_state(0, 3))
        self.assertEqual(int(np.argmax(np.abs(state.amplitudes))), 3)

    def test_hadamard_pair_has_equal_amplitudes(self):
        """Test (H|0>)⊗(H|0>) against an explicit index loop."""
        plus = StateVector(np.array([1.0, 1.0]) / math.sqrt(2))
        state = tensor(plus, plus)
        expected = np.array([plus.amplitudes[i] * plus.amplitudes[j] for i in range(2) for j in range(2)])
        np.testing.assert_allclose(expected, np.full(4, 0.5), atol=ORACLE_TOL)
        np.testing.assert_allclose(state.amplitudes, expected, atol=ORACLE_TOL)

    @seed(5)
    @settings(max_examples=60, deadline=None)
    @given(dims_u=st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=2),
           dims_v=st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=2),
           rng_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_tensor_preserves_unit_norm(self, dims_u, dims_v, rng_seed):
        """Test the product of unit states is a unit state with the joined layout."""
        rng = np.random.default_rng(rng_seed)
        u, v = random_state(rng, dims_u), random_state(rng, dims_v)
        state = tensor(u, v)
        self.assertAlmostEqual(float(np.linalg.norm(state.amplitudes)), 1.0, delta=ORACLE_TOL)
        self.assertEqual(state.layout.factor_dims, tuple(dims_u) + tuple(dims_v))

    def test_tensor_all_needs_a_state(self):
        """Test tensoring nothing is rejected."""
        with self.assertRaises(UsageError):
            tensor_all()

    def test_inner_product_is_conjugate_linear_in_first_argument(self):
        """Test the inner product conjugates its first argument."""
        u = StateVector([1j, 0.0])
        v = StateVector([1.0, 0.0])
        self.assertEqual(inner_product(u, v), -1j)
        self.assertEqual(inner_product(v, u), 1j)

    def test_inner_product_dimension_mismatch(self):
        """Test inner products of mismatched dimensions fail."""
        with self.assertRaises(UsageError):
            inner_product(basis_state(0, 2), basis_state(0, 3))

    def test_basis_state_range(self):
        """Test basis states outside the dimension are rejected."""
        with self.assertRaises(UsageError):
            basis_state(2, 2)


class TestPartialTrace(unittest.TestCase):
    """Partial trace against the index-loop oracle."""

    @seed(7)
    @settings(max_examples=60, deadline=None)
    @given(case=layouts_with_keep(), rng_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_matches_explicit_oracle(self, case, rng_seed):
        """Test partial traces against an explicit index sum."""
        dims, keep = case
        rho = random_density(np.random.default_rng(rng_seed), dims)
        reduced = partial_trace(rho, keep)
        expected = explicit_partial_trace(rho.entries, dims, keep)
        self.assertLessEqual(float(np.max(np.abs(reduced.entries - expected))), ORACLE_TOL)
        self.assertEqual(reduced.layout.factor_dims, tuple(dims[i] for i in sorted(keep)))

    @seed(11)
    @settings(max_examples=60, deadline=None)
    @given(case=layouts_with_keep(), rng_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_pure_state_shortcut_agrees(self, case, rng_seed):
        """Test the pure-state shortcut matches the general partial trace."""
        dims, keep = case
        state = random_state(np.random.default_rng(rng_seed), dims)
        direct = reduced_density(state, keep)
        full = partial_trace(outer_to_density(state), keep)
        self.assertLessEqual(float(np.max(np.abs(direct.entries - full.entries))), ORACLE_TOL)

    @seed(13)
    @settings(max_examples=40, deadline=None)
    @given(dim_a=st.integers(min_value=1, max_value=6), dim_b=st.integers(min_value=1, max_value=6),
           rng_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_schmidt_spectra_coincide(self, dim_a, dim_b, rng_seed):
        """Test complementary reductions share their spectrum."""
        state = random_state(np.random.default_rng(rng_seed), (dim_a, dim_b))
        spec_a = np.sort(np.linalg.eigvalsh(reduced_density(state, {0}).entries))[::-1]
        spec_b = np.sort(np.linalg.eigvalsh(reduced_density(state, {1}).entries))[::-1]
        k = min(dim_a, dim_b)
        np.testing.assert_allclose(spec_a[:k], spec_b[:k], atol=METRIC_TOL)
        self.assertLessEqual(float(np.max(np.abs(spec_a[k:]), initial=0.0)), METRIC_TOL)
        self.assertLessEqual(float(np.max(np.abs(spec_b[k:]), initial=0.0)), METRIC_TOL)

    def test_invalid_keep_sets(self):
        """Test invalid kept factor sets are rejected."""
        rho = outer_to_density(tensor(basis_state(0, 2), basis_state(0, 2)))
        for keep in [set(), {0, 1}, {2}, {-1}]:
            with self.subTest(keep=keep):
                with self.assertRaises(UsageError):
                    partial_trace(rho, keep)

    def test_bell_state_reduces_to_maximally_mixed(self):
        """Test a Bell state reduces to I/2."""
        bell = (tensor(basis_state(0, 2), basis_state(0, 2))
                + tensor(basis_state(1, 2), basis_state(1, 2))).normalized()
        np.testing.assert_allclose(reduced_density(bell, {0}).entries, np.eye(2) / 2, atol=ORACLE_TOL)


class TestSpectralQuantities(unittest.TestCase):
    """Closed-form 2x2 eigenvalues, trace distance, fidelity and entropy."""

    def test_eigenvalues_match_characteristic_roots(self):
        """Test 2x2 eigenvalues against the characteristic polynomial roots."""
        rng = np.random.default_rng(0)
        for _ in range(1000):
            rho = random_density(rng, (2,))
            pair = eigenvalues_2x2(rho)
            trace = np.trace(rho.entries).real
            det = np.linalg.det(rho.entries).real
            roots = np.sort(np.roots([1.0, -trace, det]).real)[::-1]
            self.assertAlmostEqual(pair.lambda_plus, roots[0], delta=ORACLE_TOL)
            self.assertAlmostEqual(pair.lambda_minus, roots[1], delta=ORACLE_TOL)

    def test_equal_diagonal_gives_half_plus_minus_coherence(self):
        """Test an equal diagonal gives ½ ± |ρ01|."""
        z = 0.3 - 0.2j
        rho = DensityMatrix([[0.5, z], [z.conjugate(), 0.5]])
        pair = eigenvalues_2x2(rho)
        self.assertAlmostEqual(pair.lambda_plus, 0.5 + abs(z), places=14)
        self.assertAlmostEqual(pair.lambda_minus, 0.5 - abs(z), places=14)

    def test_eigenvalues_need_a_qubit(self):
        """Test the eigenvalue routine refuses larger matrices."""
        with self.assertRaises(UsageError):
            eigenvalues_2x2(DensityMatrix(np.eye(3) / 3))

    @seed(17)
    @settings(max_examples=50, deadline=None)
    @given(dim=st.integers(min_value=2, max_value=5),
           rng_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_trace_distance_is_a_metric(self, dim, rng_seed):
        """Test trace distance symmetry and the triangle inequality."""
        rng = np.random.default_rng(rng_seed)
        a, b, c = (random_density(rng, (dim,)) for _ in range(3))
        self.assertLessEqual(trace_distance(a, a), METRIC_TOL)
        self.assertEqual(trace_distance(a, b), trace_distance(b, a))
        self.assertGreaterEqual(trace_distance(a, b), 0.0)
        self.assertLessEqual(trace_distance(a, b), 1.0)
        self.assertLessEqual(trace_distance(a, c),
                             trace_distance(a, b) + trace_distance(b, c) + METRIC_TOL)

    def test_trace_distance_of_orthogonal_pure_states(self):
        """Test orthogonal pure states sit at trace distance one."""
        zero = outer_to_density(basis_state(0, 2))
        one = outer_to_density(basis_state(1, 2))
        self.assertAlmostEqual(trace_distance(zero, one), 1.0, places=12)

    def test_trace_distance_layout_mismatch(self):
        """Test trace distance refuses different layouts."""
        with self.assertRaises(UsageError):
            trace_distance(DensityMatrix(np.eye(2) / 2), DensityMatrix(np.eye(3) / 3))

    def test_fidelity_to_pure(self):
        """Test fidelity against a pure target."""
        plus = StateVector([1 / math.sqrt(2), 1 / math.sqrt(2)])
        self.assertAlmostEqual(fidelity_to_pure(outer_to_density(basis_state(0, 2)), plus), 0.5, places=12)
        self.assertAlmostEqual(fidelity_to_pure(outer_to_density(plus), plus), 1.0, places=12)

    def test_binary_entropy(self):
        """Test binary entropy values."""
        cases = [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.25, 0.8112781244591328)]
        for lam, expected in cases:
            with self.subTest(lam=lam):
                self.assertAlmostEqual(binary_entropy(lam), expected, places=12)
        for bad in [-0.1, 1.1, float("nan")]:
            with self.subTest(lam=bad):
                with self.assertRaises(UsageError):
                    binary_entropy(bad)

    def test_binary_entropy_decreases_above_half(self):
        """Test binary entropy decreases above one half."""
        values = [binary_entropy(lam) for lam in np.linspace(0.5, 1.0, 50)]
        self.assertTrue(all(x > y for x, y in zip(values, values[1:])))


class TestUnitaries(unittest.TestCase):
    """Local operators, basis completion and seeded random unitaries."""

    def test_apply_local_matches_kronecker_operator(self):
        """Test a local operator matches its Kronecker extension."""
        rng = np.random.default_rng(3)
        state = random_state(rng, (2, 3, 2))
        op = random_unitary(3, rng)
        result = apply_local(state, 1, op)
        full = np.kron(np.kron(np.eye(2), op), np.eye(2))
        np.testing.assert_allclose(result.amplitudes, full @ state.amplitudes, atol=ORACLE_TOL)
        self.assertIsInstance(result, StateVector)

    def test_apply_local_keeps_unnormalized_type(self):
        """Test a local operator keeps unnormalized vectors unnormalized."""
        state = UnnormalizedState([2.0, 0.0])
        result = apply_local(state, 0, [[0.0, 1.0], [1.0, 0.0]])
        self.assertIsInstance(result, UnnormalizedState)
        np.testing.assert_allclose(result.amplitudes, [0.0, 2.0])

    def test_apply_local_shape_checks(self):
        """Test local operators of the wrong shape are rejected."""
        state = basis_state(0, 2)
        with self.assertRaises(UsageError):
            apply_local(state, 1, np.eye(2))
        with self.assertRaises(UsageError):
            apply_local(state, 0, np.eye(3))

    def test_basis_completion(self):
        """Test basis completion keeps the first column and is unitary."""
        u = random_state(np.random.default_rng(5), (4,)).amplitudes
        q = basis_completion(u)
        np.testing.assert_array_equal(q[:, 0], u)
        np.testing.assert_allclose(q.conj().T @ q, np.eye(4), atol=1e-12)
        with self.assertRaises(ValidationError):
            basis_completion([1.0, 1.0])

    def test_unitary_mapping(self):
        """Test the mapping unitary sends source to target."""
        rng = np.random.default_rng(9)
        source = random_state(rng, (3,)).amplitudes
        target = random_state(rng, (3,)).amplitudes
        u = unitary_mapping(source, target)
        np.testing.assert_allclose(u @ source, target, atol=1e-12)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)

    def test_random_unitary_is_seeded_and_unitary(self):
        """Test random unitaries are seeded and unitary."""
        u = random_unitary(8, 42)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(8), atol=1e-12)
        np.testing.assert_array_equal(u, random_unitary(8, 42))
        self.assertFalse(np.allclose(u, random_unitary(8, 43)))


def run_tests():
    """Run all unit tests."""
    print("🧪 Running Linear Algebra Operation Tests")
    print("=" * 50)

    # Create test suite
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    # Add test classes
    suite.addTests(loader.loadTestsFromTestCase(TestTensorAndInnerProduct))
    suite.addTests(loader.loadTestsFromTestCase(TestPartialTrace))
    suite.addTests(loader.loadTestsFromTestCase(TestSpectralQuantities))
    suite.addTests(loader.loadTestsFromTestCase(TestUnitaries))

    # Run tests
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    run_tests()
