"""Canonical (KAK) decomposition and globalness classification of two-qubit gates.

Any two-qubit unitary U factors as

    U = exp(i phi) (u_A (x) u_B) exp[i (g_X XX + g_Y YY + g_Z ZZ)] (v_A (x) v_B)

with single-qubit unitaries on both sides of a purely nonlocal core.  The
interaction triple ``gamma = (g_X, g_Y, g_Z)`` is a local-unitary invariant
once it is reduced to a canonical chamber, and the number of nonzero entries
(the Cartan number) separates local gates (0), the controlled-unitary class
(1), and everything else (2-3, with the swap class at (pi/4, pi/4, pi/4)).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError, ValidationError
from .gates import H, PAULIS, X, Y, Z
from .linalg import UnitaryOperator, distance_up_to_global_phase

# Magic basis: conjugation maps SU(2) x SU(2) onto SO(4).  Columns are Bell
# vectors with fixed phases.
MAGIC = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]],
    dtype=np.complex128,
) / np.sqrt(2)
_MAGIC_H = MAGIC.conj().T

_XX = np.kron(X, X)
_YY = np.kron(Y, Y)
_ZZ = np.kron(Z, Z)

# Hermitian single-qubit Cliffords that exchange two Pauli axes under
# conjugation; key (k1, k2) with k1 < k2 over axes (0, 1, 2) = (X, Y, Z).
_AXIS_SWAPPERS = {
    (0, 1): (X + Y) / np.sqrt(2),
    (0, 2): H,
    (1, 2): (Y + Z) / np.sqrt(2),
}

DEFAULT_ZERO_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KakDecomposition:
    """Canonical two-qubit decomposition.

    Reconstruction:
        exp(i global_phase) (u_a (x) u_b) G(gamma) (v_a (x) v_b)
    where G is the exponential of the diagonal two-axis interaction.

    ``gamma`` lives in the chamber pi/4 >= g_X >= g_Y >= |g_Z| with
    g_Z >= 0 whenever g_X = pi/4.  g_Z can be negative: gates that are not
    locally equivalent to their mirror image occupy the lower half-chamber,
    and forcing a positive sign there would break reconstruction.
    """

    u_a: np.ndarray
    u_b: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray
    gamma: tuple[float, float, float]
    global_phase: float

    def reconstruct(self) -> np.ndarray:
        core = canonical_gate(*self.gamma)
        return (
            np.exp(1j * self.global_phase)
            * np.kron(self.u_a, self.u_b) @ core @ np.kron(self.v_a, self.v_b)
        )


def canonical_gate(gx: float, gy: float, gz: float) -> np.ndarray:
    """exp[i (gx XX + gy YY + gz ZZ)] via the commuting closed form."""
    out = np.eye(4, dtype=np.complex128)
    for c, m in ((gx, _XX), (gy, _YY), (gz, _ZZ)):
        out = (math.cos(c) * np.eye(4) + 1j * math.sin(c) * m) @ out
    return out


def _simultaneous_diagonalize(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real orthogonal P with P.T V P diagonal, for V complex symmetric unitary.

    Re(V) and Im(V) are commuting real symmetric matrices, so a generic real
    linear combination has the common eigenbasis as its own; a short list of
    deterministic mixing angles covers the degenerate corner cases (identity,
    swap-like cores).
    """
    a, b = v.real, v.imag
    for t in (0.0, 0.7391, 1.1863, 2.0944, 0.3312, 2.7183, 1.7725, 0.9273):
        p = np.linalg.eigh(math.cos(t) * a + math.sin(t) * b)[1]
        d = p.T @ v @ p
        if np.max(np.abs(d - np.diag(np.diag(d)))) < 1e-11:
            return p, np.diag(d)
    raise ValidationError("failed to diagonalize the magic-basis product")


def _kron_factor(m: np.ndarray) -> tuple[complex, np.ndarray, np.ndarray]:
    """Split m = g * kron(f1, f2) with det(f1) = det(f2) = 1.

    Only valid when m really is a tensor product; the reconstruction check in
    kak_decompose guards against silent garbage.
    """
    a, b = np.unravel_index(np.argmax(np.abs(m)), (4, 4))
    f1 = np.zeros((2, 2), dtype=np.complex128)
    f2 = np.zeros((2, 2), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            f1[(a >> 1) ^ i, (b >> 1) ^ j] = m[a ^ (i << 1), b ^ (j << 1)]
            f2[(a & 1) ^ i, (b & 1) ^ j] = m[a ^ i, b ^ j]
    for f in (f1, f2):
        det = np.sqrt(np.linalg.det(f))
        f /= det if abs(det) > 0 else 1.0
    g = m[a, b] / (f1[a >> 1, b >> 1] * f2[a & 1, b & 1])
    return g, f1, f2


def _canonicalize(gx: float, gy: float, gz: float, atol: float = DEFAULT_ZERO_TOL):
    """Move an interaction triple into the canonical chamber.

    Returns (phase, (la, lb), gamma, (ra, rb)) such that
    G(input) = phase * (la (x) lb) G(gamma) (ra (x) rb).
    """
    v = [gx, gy, gz]
    la, lb = np.eye(2, dtype=np.complex128), np.eye(2, dtype=np.complex128)
    ra, rb = np.eye(2, dtype=np.complex128), np.eye(2, dtype=np.complex128)
    phase = 1.0 + 0j

    def shift(k: int, n: int):
        # exp(i (v + n pi/2) ss) = (i s(x)s)^n exp(i v ss)
        nonlocal phase, la, lb
        v[k] += n * math.pi / 2
        phase *= (-1j) ** n
        if n % 2:
            la = la @ PAULIS[k]
            lb = lb @ PAULIS[k]

    def negate(k1: int, k2: int):
        # conjugating by the third Pauli on side A flips two coefficients
        nonlocal la, ra
        k3 = 3 - k1 - k2
        v[k1] *= -1
        v[k2] *= -1
        la = la @ PAULIS[k3]
        ra = PAULIS[k3] @ ra

    def swap(k1: int, k2: int):
        nonlocal la, lb, ra, rb
        s = _AXIS_SWAPPERS[(min(k1, k2), max(k1, k2))]
        v[k1], v[k2] = v[k2], v[k1]
        la, lb = la @ s, lb @ s
        ra, rb = s @ ra, s @ rb

    for k in range(3):
        while v[k] <= -math.pi / 4:
            shift(k, 1)
        while v[k] > math.pi / 4:
            shift(k, -1)
    if abs(v[0]) < abs(v[1]):
        swap(0, 1)
    if abs(v[1]) < abs(v[2]):
        swap(1, 2)
    if abs(v[0]) < abs(v[1]):
        swap(0, 1)
    if v[0] < 0:
        negate(0, 2)
    if v[1] < 0:
        negate(1, 2)
    if v[2] <= -math.pi / 4:
        shift(2, 1)
    if v[0] > math.pi / 4 - atol and v[2] < -atol:
        shift(0, -1)
        negate(0, 2)
    return phase, (la, lb), (v[0], v[1], v[2]), (ra, rb)


def kak_decompose(u) -> KakDecomposition:
    """Decompose a two-qubit unitary into its canonical form.

    Algorithm: normalize to SU(4), conjugate into the magic basis where local
    gates become real orthogonal, diagonalize the complex symmetric product
    M^T M to split off the orthogonal factors, read the interaction triple
    from the eigenphases, and reduce it to the canonical chamber.

    Args:
        u: UnitaryOperator on dims (2, 2), or a raw 4x4 matrix.

    Raises:
        ValidationError: input not unitary, or the decomposition failed to
            reproduce the input within 1e-8.
        UsageError: input is not a two-qubit operator.
    """
    if not isinstance(u, UnitaryOperator):
        u = UnitaryOperator(np.asarray(u, dtype=np.complex128), (2, 2))
    if u.dims != (2, 2):
        raise UsageError(f"canonical decomposition needs dims (2, 2), got {u.dims}")
    mat = u.matrix

    phase0 = np.angle(np.linalg.det(mat)) / 4
    m = _MAGIC_H @ (mat * np.exp(-1j * phase0)) @ MAGIC
    p, d = _simultaneous_diagonalize(m.T @ m)
    if np.linalg.det(p) < 0:
        p = p.copy()
        p[:, 0] *= -1
        d = np.diag(p.T @ (m.T @ m) @ p)
    theta = np.angle(d) / 2
    k1 = m @ p @ np.diag(np.exp(-1j * theta))
    if np.linalg.det(k1).real < 0:
        theta = theta.copy()
        theta[0] += math.pi
        k1 = m @ p @ np.diag(np.exp(-1j * theta))

    # Eigenphases on the Bell columns are w + (x-y+z, x+y-z, -x-y-z, -x+y+z).
    w = theta.sum() / 4
    gx = (theta[0] + theta[1] - theta[2] - theta[3]) / 4
    gy = (-theta[0] + theta[1] - theta[2] + theta[3]) / 4
    gz = (theta[0] - theta[1] - theta[2] + theta[3]) / 4

    g1, a1, b1 = _kron_factor(MAGIC @ k1 @ _MAGIC_H)
    g2, a2, b2 = _kron_factor(MAGIC @ p.T @ _MAGIC_H)
    pc, (la, lb), gamma, (ra, rb) = _canonicalize(gx, gy, gz)

    total_phase = np.exp(1j * (phase0 + w)) * g1 * g2 * pc
    dec = KakDecomposition(
        u_a=a1 @ la,
        u_b=b1 @ lb,
        v_a=ra @ a2,
        v_b=rb @ b2,
        gamma=gamma,
        global_phase=float(np.angle(total_phase) % (2 * math.pi)),
    )
    if distance_up_to_global_phase(dec.reconstruct(), mat) > 1e-8:
        raise ValidationError("canonical decomposition failed to reproduce the input")
    return dec


def cartan_number(dec, tol: float = DEFAULT_ZERO_TOL) -> int:
    """Number of interaction coefficients larger than ``tol`` in magnitude."""
    gamma = dec.gamma if isinstance(dec, KakDecomposition) else tuple(dec)
    return int(sum(1 for g in gamma if abs(g) > tol))


class GlobalnessKind(enum.Enum):
    LOCAL = "Local"
    CONTROLLED_UNITARY = "ControlledUnitaryClass"
    GENERAL_GLOBAL = "GeneralGlobal"
    SWAP = "SwapClass"


@dataclass(frozen=True)
class GlobalnessClass:
    kind: GlobalnessKind
    cartan_number: int

    @staticmethod
    def from_gamma(gamma, tol: float = DEFAULT_ZERO_TOL) -> "GlobalnessClass":
        n = cartan_number(gamma, tol)
        if n == 0:
            kind = GlobalnessKind.LOCAL
        elif n == 1:
            kind = GlobalnessKind.CONTROLLED_UNITARY
        elif all(abs(g - math.pi / 4) <= tol for g in gamma):
            kind = GlobalnessKind.SWAP
        else:
            kind = GlobalnessKind.GENERAL_GLOBAL
        return GlobalnessClass(kind, n)


def classify(u, tol: float = DEFAULT_ZERO_TOL) -> GlobalnessClass:
    return GlobalnessClass.from_gamma(kak_decompose(u).gamma, tol)


def is_lu_equiv_controlled_unitary(u, tol: float = DEFAULT_ZERO_TOL):
    """Whether a two-qubit gate is a local-unitary equivalent of some
    controlled-unitary (equivalently: at most one nonzero interaction
    coefficient).  Returns (flag, GlobalnessClass)."""
    cls = classify(u, tol)
    return cls.cartan_number <= 1, cls


def makhlin_invariants(u) -> tuple[complex, float]:
    """Local invariants (g1, g2) of a two-qubit gate.

    Computed from the magic-basis product: with M = Q^H U Q normalized to
    determinant one and P = M^T M,  g1 = tr(P)^2 / 16 and
    g2 = (tr(P)^2 - tr(P^2)) / 4.  Two gates are locally equivalent iff their
    pairs agree; used as an independent cross-check on the classifier.
    """
    if not isinstance(u, UnitaryOperator):
        u = UnitaryOperator(np.asarray(u, dtype=np.complex128), (2, 2))
    mat = u.matrix * np.exp(-1j * np.angle(np.linalg.det(u.matrix)) / 4)
    m = _MAGIC_H @ mat @ MAGIC
    p = m.T @ m
    tr = np.trace(p)
    g1 = tr**2 / 16
    g2 = (tr**2 - np.trace(p @ p)) / 4
    return complex(g1), float(g2.real)


def controlled_class_crosscheck(u, tol: float = 1e-8) -> bool:
    """Independent test for the controlled-unitary class via invariants.

    The class traced out by controlled gates has g1 real in [0, 1] with
    g2 = 2 g1 + 1; checking this needs no chamber reduction at all.
    """
    g1, g2 = makhlin_invariants(u)
    return (
        abs(g1.imag) <= tol
        and -tol <= g1.real <= 1 + tol
        and abs(g2 - (2 * g1.real + 1)) <= 10 * tol
    )
