"""Unit tests for parametrized data qubits."""

import cmath
import math
import unittest

import numpy as np

from core.errors import ValidationError
from linalg_module import StateVector
from machine_module import (
    ParamQubit,
    QubitKind,
    as_state,
    make_param_qubit,
    orthogonal_complement,
    phased_qubit,
    real_qubit,
    state_overlap,
)


class TestMakeParamQubit(unittest.TestCase):
    """Constraint checks name the violated relation."""

    def test_valid_qubits(self):
        """Test REAL and PHASED qubits give their amplitudes."""
        real = make_param_qubit("REAL", (0.6, 0.8))
        phased = make_param_qubit(QubitKind.PHASED, (0.6, 0.8, math.pi / 2))
        np.testing.assert_allclose(real.amplitudes(), [0.6, 0.8])
        np.testing.assert_allclose(phased.amplitudes(), [0.6, 0.8j], atol=1e-15)

    def test_invalid_qubits(self):
        """Test out-of-domain parameters are rejected."""
        cases = [
            ("REAL", (0.6, 0.9), "a² + b² = 1"),
            ("REAL", (-0.6, 0.8), "a > 0"),
            ("REAL", (0.6,), "needs (a, b)"),
            ("PHASED", (0.6, 0.8, 4.0), "0 < θ < π"),
            ("PHASED", (0.6, 0.8, 0.0), "0 < θ < π"),
            ("PHASED", (0.6, 0.9, 1.0), "c² + d² = 1"),
            ("PHASED", (-0.6, 0.8, 1.0), "c > 0"),
            ("PHASED", (0.6, float("nan"), 1.0), "finite"),
            ("COMPLEX", (1.0, 0.0), "unknown qubit kind"),
        ]
        for kind, components, message in cases:
            with self.subTest(kind=kind, components=components):
                with self.assertRaises(ValidationError) as ctx:
                    make_param_qubit(kind, components)
                self.assertIn(message, str(ctx.exception))

    def test_shortcuts_fill_in_positive_partner(self):
        """Test the shortcuts fill in the positive partner amplitude."""
        self.assertEqual(real_qubit(0.6).components, (0.6, 0.8))
        c, d, theta = phased_qubit(0.6, 1.0).components
        self.assertAlmostEqual(d, 0.8, places=15)
        self.assertEqual(theta, 1.0)


class TestOverlaps(unittest.TestCase):
    """Overlap values and orthogonal complements."""

    def test_real_against_phased(self):
        """Test the REAL and PHASED overlap formula."""
        a, c, theta = 0.6, 0.6, math.pi / 3
        b, d = 0.8, 0.8
        expected = a * c + b * d * cmath.exp(1j * theta)
        self.assertAlmostEqual(state_overlap(real_qubit(a), phased_qubit(c, theta)), expected, places=14)

    def test_overlap_is_conjugate_symmetric(self):
        """Test swapping states conjugates the overlap."""
        u, v = real_qubit(0.3), phased_qubit(0.9, 2.0)
        self.assertAlmostEqual(state_overlap(u, v), state_overlap(v, u).conjugate(), places=15)

    def test_complement_is_orthogonal(self):
        """Test the complement is orthogonal to its state."""
        qubits = [real_qubit(0.3), real_qubit(1 / math.sqrt(2)), phased_qubit(0.6, 0.5),
                  make_param_qubit("REAL", (0.6, -0.8)),
                  make_param_qubit("PHASED", (0.6, -0.8, 2.0))]
        for psi in qubits:
            with self.subTest(psi=psi.describe()):
                perp = orthogonal_complement(psi)
                self.assertIsInstance(perp, ParamQubit)
                self.assertLess(abs(state_overlap(psi, perp)), 1e-15)

    def test_complement_of_basis_zero_is_basis_one(self):
        """Test the complement of |0> is |1>."""
        perp = orthogonal_complement(real_qubit(1.0))
        self.assertIsInstance(perp, StateVector)
        np.testing.assert_array_equal(perp.amplitudes, [0.0, 1.0])
        np.testing.assert_array_equal(as_state(perp).amplitudes, perp.amplitudes)


def run_tests():
    """Run all unit tests."""
    print("🧪 Running Parametrized Qubit Tests")
    print("=" * 50)

    # Create test suite
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    # Add test classes
    suite.addTests(loader.loadTestsFromTestCase(TestMakeParamQubit))
    suite.addTests(loader.loadTestsFromTestCase(TestOverlaps))

    # Run tests
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    run_tests()
