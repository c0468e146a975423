import random
from fractions import Fraction

import numpy as np
import pytest

from oracles import elementary, gf2, pauli_matrix, random_invertible, replay_cnots, rotation_matrix
from qasmkit.algebra.angle import Angle
from qasmkit.algebra.bitmatrix import BitMatrix, gauss, ops_to_cnots
from qasmkit.algebra.clifford import CliffordTableau, conjugate
from qasmkit.algebra.pauli import PauliString, commutes
from qasmkit.algebra.rotation import MergeResult, Rotation, merge
from qasmkit.frontend import parse
from qasmkit.simcheck import unitary

CLIFFORD_1Q = ["h", "s", "sdg", "x", "y", "z"]
CLIFFORD_2Q = ["cx", "cz", "cy", "swap"]


def random_pauli(rng, n, nonidentity=False) -> PauliString:
    while True:
        p = PauliString(n, rng.getrandbits(n), rng.getrandbits(n), rng.choice([1, -1]))
        if not nonidentity or not p.is_identity():
            return p


def random_clifford(rng, n, k):
    gates = []
    for _ in range(k):
        if n >= 2 and rng.random() < 0.4:
            gates.append((rng.choice(CLIFFORD_2Q), tuple(rng.sample(range(n), 2))))
        else:
            gates.append((rng.choice(CLIFFORD_1Q), (rng.randrange(n),)))
    return gates


def clifford_unitary(n, gates) -> np.ndarray:
    lines = [f"{g} " + ",".join(f"q[{q}]" for q in qs) + ";" for g, qs in gates]
    return unitary(parse('OPENQASM 2.0;\ninclude "qelib1.inc";\n'
                         f"qreg q[{n}];\n" + "\n".join(lines)))


def random_angle(rng) -> Angle:
    if rng.random() < 0.5:
        return Angle.pi(rng.randint(-15, 15), rng.choice([1, 2, 4, 8]))
    return Angle.of(rng.uniform(-7, 7))


class TestAngle:
    def test_exact_sum_to_two_pi(self):
        total = Angle.zero()
        for _ in range(8):
            total = total + Angle.pi(1, 4)
        assert total == Angle.zero()
        assert total.coeff == 0 and total.exact

    def test_normalization(self):
        assert Angle.pi(5, 2) == Angle.pi(1, 2)
        assert Angle.pi(-1, 4).coeff == Fraction(7, 4)
        assert Angle.pi(7, 4).signed() == pytest.approx(-np.pi / 4)

    def test_mixed_is_float(self):
        a = Angle.pi(1, 4) + Angle.of(0.1)
        assert not a.exact
        assert float(a) == pytest.approx(np.pi / 4 + 0.1)

    def test_float_merge(self):
        assert (Angle.of(0.3) + Angle.of(-0.2)).close(Angle.of(0.1))
        assert Angle.of(2 * np.pi + 1e-12).is_zero()
        assert Angle.of(np.pi / 2).pi_multiple() == Fraction(1, 2)
        assert Angle.of(0.1).pi_multiple() is None


class TestPauli:
    def test_label_round_trip(self):
        for label in ["+XIZ", "-YYI", "+III"]:
            assert PauliString.from_label(label).label() == label

    def test_negation(self):
        p = PauliString.from_label("+XZ")
        assert (-p).x == p.x and (-p).z == p.z and (-p).sign == -1
        assert PauliString.identity(3).sign == 1 and PauliString.identity(3).is_identity()

    def test_commutes_examples(self):
        assert not commutes(PauliString.from_label("Z"), PauliString.from_label("X"))
        assert commutes(PauliString.from_label("ZZ"), PauliString.from_label("XX"))
        with pytest.raises(ValueError):
            commutes(PauliString.from_label("Z"), PauliString.from_label("ZZ"))

    def test_commutes_matrix_oracle(self):
        rng = random.Random(11)
        for _ in range(500):
            n = rng.randint(1, 6)
            p, q = random_pauli(rng, n), random_pauli(rng, n)
            a, b = pauli_matrix(p), pauli_matrix(q)
            assert commutes(p, q) == (np.linalg.norm(a @ b - b @ a) < 1e-10)

    def test_product_matrix_oracle(self):
        rng = random.Random(12)
        for _ in range(300):
            n = rng.randint(1, 4)
            p, q = random_pauli(rng, n), random_pauli(rng, n)
            e, r = p.mul(q)
            np.testing.assert_allclose(pauli_matrix(p) @ pauli_matrix(q),
                                       1j ** e * pauli_matrix(r), atol=1e-12)


class TestClifford:
    def test_h_z(self):
        c = CliffordTableau.from_circuit(1, [("h", (0,))])
        assert conjugate(c, PauliString.from_label("Z")).label() == "+X"

    def test_cnot_z_target(self):
        c = CliffordTableau.from_circuit(2, [("cx", (0, 1))])
        assert conjugate(c, PauliString.from_label("IZ")).label() == "+ZZ"

    def test_identity(self):
        t = CliffordTableau.identity(3)
        assert t.is_valid()
        p = PauliString.from_label("-XYZ")
        assert conjugate(t, p) == p

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            conjugate(CliffordTableau.identity(2), PauliString.from_label("X"))

    def test_conjugate_matrix_oracle(self):
        rng = random.Random(13)
        for _ in range(500):
            n = rng.randint(1, 4)
            gates = random_clifford(rng, n, rng.randint(0, 12))
            t = CliffordTableau.from_circuit(n, gates)
            assert t.is_valid()
            u = clifford_unitary(n, gates)
            p = random_pauli(rng, n)
            want = u @ pauli_matrix(p) @ u.conj().T
            np.testing.assert_allclose(pauli_matrix(conjugate(t, p)), want, atol=1e-10)

    def test_preserves_commutation(self):
        rng = random.Random(14)
        for _ in range(200):
            n = rng.randint(1, 5)
            t = CliffordTableau.from_circuit(n, random_clifford(rng, n, 10))
            p, q = random_pauli(rng, n), random_pauli(rng, n)
            assert commutes(p, q) == commutes(conjugate(t, p), conjugate(t, q))

    def test_composition(self):
        rng = random.Random(15)
        for _ in range(200):
            n = rng.randint(1, 4)
            g1, g2 = random_clifford(rng, n, 6), random_clifford(rng, n, 6)
            c1 = CliffordTableau.from_circuit(n, g1)
            c2 = CliffordTableau.from_circuit(n, g2)
            both = CliffordTableau.from_circuit(n, g1 + g2)
            p = random_pauli(rng, n)
            assert conjugate(c2.compose(c1), p) == conjugate(c2, conjugate(c1, p))
            assert conjugate(both, p) == conjugate(c2, conjugate(c1, p))


class TestRotation:
    def test_t_gate(self):
        r = Rotation(Angle.pi(1, 4), PauliString.from_label("Z"))
        np.testing.assert_allclose(rotation_matrix(r), np.diag([1, np.exp(1j * np.pi / 4)]),
                                   rtol=0, atol=1e-15)

    def test_t_t_is_s(self):
        z = PauliString.from_label("Z")
        m = merge(Rotation(Angle.pi(1, 4), z), Rotation(Angle.pi(1, 4), z))
        assert m == MergeResult(Rotation(Angle.pi(1, 2), z), Angle.zero())

    def test_inverse_pair(self):
        p = PauliString.from_label("XY")
        m = merge(Rotation(Angle.of(0.7), p), Rotation(Angle.of(-0.7), p))
        assert m.rotation.is_identity() and m.global_phase.is_zero()

    def test_opposite_sign(self):
        z = PauliString.from_label("Z")
        r1, r2 = Rotation(Angle.pi(1, 4), z), Rotation(Angle.pi(1, 8), -z)
        m = merge(r1, r2)
        assert m.global_phase == Angle.pi(1, 8)
        assert m.rotation == Rotation(Angle.pi(1, 8), z)
        lhs = rotation_matrix(r1) @ rotation_matrix(r2)
        rhs = np.exp(1j * np.pi / 8) * rotation_matrix(m.rotation)
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_not_mergeable(self):
        assert merge(Rotation(Angle.pi(1, 4), PauliString.from_label("Z")),
                     Rotation(Angle.pi(1, 4), PauliString.from_label("X"))) is None

    def test_merge_matrix_oracle(self):
        rng = random.Random(16)
        for _ in range(500):
            n = rng.randint(1, 4)
            p = random_pauli(rng, n, nonidentity=True)
            k = rng.random()
            q = p if k < 0.4 else (-p if k < 0.8 else random_pauli(rng, n))
            r1, r2 = Rotation(random_angle(rng), p), Rotation(random_angle(rng), q)
            m = merge(r1, r2)
            if not p.same_up_to_sign(q):
                assert m is None
                continue
            if p.sign == q.sign:
                assert m.global_phase.is_zero()
            lhs = rotation_matrix(r1) @ rotation_matrix(r2)
            rhs = np.exp(1j * float(m.global_phase)) * rotation_matrix(m.rotation)
            assert np.max(np.abs(lhs - rhs)) < 1e-10


class TestGauss:
    def test_printed_matrix_is_singular(self):
        # The printed binary matrix has r0 + r1 + r2 + r3 = 0, so elimination
        # stops at rank 3 instead of the identity.
        m = BitMatrix.from_strings(["1000", "0101", "1110", "1011"])
        reduced, ops = gauss(m)
        assert reduced.rank() == 3 and not reduced.is_identity()
        assert m.copy().apply(ops) == reduced

    def test_linear_circuit_matrix(self):
        # the CNOT circuit drawn next to it: cx 0,2; cx 3,1; cx 2,3; cx 2,0; cx 1,2
        circuit = [(0, 2), (3, 1), (2, 3), (2, 0), (1, 2)]
        m = BitMatrix(4, 4, replay_cnots(circuit, 4))
        assert m.to_strings() == ["0010", "0101", "1111", "1011"]
        reduced, ops = gauss(m)
        assert reduced.is_identity()
        assert m.copy().apply(ops) == reduced
        assert BitMatrix(4, 4, replay_cnots(ops_to_cnots(ops), 4)) == m

    def test_identity_no_ops(self):
        reduced, ops = gauss(BitMatrix.identity(6))
        assert ops == [] and reduced.is_identity()

    def test_singular_echelon(self):
        reduced, ops = gauss(BitMatrix.from_strings(["110", "110", "001"]))
        assert not reduced.is_identity()
        assert reduced.rank() == 2

    def test_inverse_composition(self):
        rng = random.Random(17)
        for _ in range(500):
            rows = random_invertible(rng, 8)
            m = BitMatrix(8, 8, rows)
            reduced, ops = gauss(m)
            assert reduced.is_identity()
            acc = np.eye(8, dtype=np.uint8)
            for t, s in ops:
                acc = (elementary(t, s, 8) @ acc) % 2
            assert np.array_equal(acc, gf2(m.inverse().rows, 8))
            assert np.array_equal((acc.astype(int) @ gf2(rows, 8)) % 2, np.eye(8, dtype=int))
            # reversed replay onto the identity rebuilds m
            assert BitMatrix.identity(8).apply(reversed(ops)) == m

    def test_wide_matrix(self):
        rng = random.Random(18)
        rows = random_invertible(rng, 70)
        m = BitMatrix(70, 70, rows)
        assert (m @ m.inverse()).is_identity()
