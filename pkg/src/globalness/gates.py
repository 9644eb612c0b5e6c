"""Standard gates, states, and samplers used throughout the package."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import ATOL_OPERATOR, PureState, UnitaryOperator

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
PAULIS = (X, Y, Z)


def identity_gate(d: int = 2) -> UnitaryOperator:
    return UnitaryOperator(np.eye(d * d, dtype=np.complex128), (d, d))


def cnot() -> UnitaryOperator:
    m = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128)
    return UnitaryOperator(m, (2, 2))


def cz() -> UnitaryOperator:
    return UnitaryOperator(np.diag([1, 1, 1, -1]).astype(np.complex128), (2, 2))


def swap_gate(d: int = 2) -> UnitaryOperator:
    """Exchange of two d-dimensional systems."""
    m = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            m[j * d + i, i * d + j] = 1.0
    return UnitaryOperator(m, (d, d))


def exchange_gate() -> UnitaryOperator:
    """Two-qubit SWAP composed with a controlled-Z: swaps the qubits and
    flips the sign of |11>.  A Clifford gate that is not locally equivalent
    to any controlled-unitary."""
    m = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], dtype=np.complex128)
    return UnitaryOperator(m, (2, 2))


def phase_gate(theta: float) -> np.ndarray:
    """Single-qubit phase: diag(1, exp(i theta))."""
    return np.diag([1.0, np.exp(1j * theta)]).astype(np.complex128)


def controlled_phase(theta: float) -> UnitaryOperator:
    return UnitaryOperator(np.diag([1, 1, 1, np.exp(1j * theta)]).astype(np.complex128), (2, 2))


def shift_matrix(d: int) -> np.ndarray:
    """Cyclic shift |j> -> |j+1 mod d> (generalized X)."""
    m = np.zeros((d, d), dtype=np.complex128)
    for j in range(d):
        m[(j + 1) % d, j] = 1.0
    return m


def clock_matrix(d: int) -> np.ndarray:
    """Diagonal of d-th roots of unity (generalized Z)."""
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


@dataclass(frozen=True, eq=False)
class ControlledUnitary:
    """Gate of the form  sum_k |b_k><b_k| (x) u_k.

    ``basis`` holds the control vectors |b_k> as columns; ``unitaries`` is one
    target unitary per control outcome.
    """

    basis: np.ndarray
    unitaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        basis = np.ascontiguousarray(self.basis, dtype=np.complex128)
        d = basis.shape[0]
        if basis.shape != (d, d):
            raise DimensionError("control basis must be a square matrix of column vectors")
        if np.linalg.norm(basis.conj().T @ basis - np.eye(d), 2) > ATOL_OPERATOR:
            raise ValidationError("control basis columns are not orthonormal")
        ops = tuple(np.ascontiguousarray(u, dtype=np.complex128) for u in self.unitaries)
        if len(ops) != d:
            raise DimensionError(f"need {d} target unitaries, got {len(ops)}")
        m = ops[0].shape[0]
        for u in ops:
            if u.shape != (m, m) or np.linalg.norm(u.conj().T @ u - np.eye(m), 2) > ATOL_OPERATOR:
                raise ValidationError("every target operator must be unitary and same-shaped")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "unitaries", ops)

    @property
    def control_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def target_dim(self) -> int:
        return self.unitaries[0].shape[0]

    def operator(self) -> UnitaryOperator:
        d, m = self.control_dim, self.target_dim
        total = np.zeros((d * m, d * m), dtype=np.complex128)
        for k in range(d):
            b = self.basis[:, k]
            total += np.kron(np.outer(b, b.conj()), self.unitaries[k])
        return UnitaryOperator(total, (d, m))


def controlled_unitary(*unitaries) -> ControlledUnitary:
    """Controlled gate in the computational basis: |k><k| controls u_k."""
    d = len(unitaries)
    return ControlledUnitary(np.eye(d, dtype=np.complex128), tuple(unitaries))


def controlled_on_computational_basis(matrix: np.ndarray, dims, tol: float = 1e-10):
    """Return the ControlledUnitary structure of ``matrix`` if it is block
    diagonal over the first subsystem's computational basis, else None."""
    d_c, d_t = dims
    blocks = []
    for k in range(d_c):
        for kk in range(d_c):
            blk = matrix[k * d_t:(k + 1) * d_t, kk * d_t:(kk + 1) * d_t]
            if k == kk:
                blocks.append(blk)
            elif np.max(np.abs(blk)) > tol:
                return None
    return ControlledUnitary(np.eye(d_c, dtype=np.complex128), tuple(blocks))


# --- states -----------------------------------------------------------------


def basis_state(d: int, k: int) -> np.ndarray:
    v = np.zeros(d, dtype=np.complex128)
    v[k] = 1.0
    return v


def plus_state() -> np.ndarray:
    return np.array([1, 1], dtype=np.complex128) / np.sqrt(2)


def minus_state() -> np.ndarray:
    return np.array([1, -1], dtype=np.complex128) / np.sqrt(2)


def bell_state(d: int = 2) -> PureState:
    """Maximally entangled pair  sum_i |ii> / sqrt(d)."""
    v = np.zeros(d * d, dtype=np.complex128)
    for i in range(d):
        v[i * d + i] = 1.0
    return PureState(v / np.sqrt(d), (d, d))


def tomographic_states(d: int) -> list[np.ndarray]:
    """d^2 pure states spanning operator space: all |i>, (|i>+|j>)/sqrt2 and
    (|i>+i|j>)/sqrt2 for i < j.  Verifying a linear map on this family pins
    down its action on every input."""
    states = [basis_state(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            states.append((basis_state(d, i) + basis_state(d, j)) / np.sqrt(2))
            states.append((basis_state(d, i) + 1j * basis_state(d, j)) / np.sqrt(2))
    return states


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_two_qubit_unitary(rng: np.random.Generator) -> UnitaryOperator:
    return UnitaryOperator(haar_unitary(4, rng), (2, 2))


def random_controlled_unitary(d_control: int, d_target: int, rng: np.random.Generator,
                              computational_basis: bool = False) -> ControlledUnitary:
    basis = np.eye(d_control, dtype=np.complex128) if computational_basis \
        else haar_unitary(d_control, rng)
    ops = tuple(haar_unitary(d_target, rng) for _ in range(d_control))
    return ControlledUnitary(basis, ops)
