"""Schmidt decomposition, entanglement entropy, and majorization convertibility."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, UsageError, ValidationError
from .linalg import PureState, UnitaryOperator, tensor

SCHMIDT_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SchmidtData:
    """Schmidt form of a pure state across a declared bipartition.

    ``coefficients`` are nonnegative, sorted descending, with squares summing
    to one.  Columns of ``basis_a``/``basis_b`` are the orthonormal local
    vectors, so the state is  sum_i c_i |a_i> (x) |b_i>.  ``cut`` records the
    subsystem indices of each side.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray
    cut: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def schmidt_number(self) -> int:
        return int(np.sum(self.coefficients > SCHMIDT_RANK_TOL))


def _split_cut(dims: tuple[int, ...], cut) -> tuple[tuple[int, ...], tuple[int, ...]]:
    side_a = tuple(int(k) for k in cut)
    n = len(dims)
    if len(set(side_a)) != len(side_a) or any(k < 0 or k >= n for k in side_a):
        raise UsageError(f"bad cut {side_a} for {n} subsystems")
    side_b = tuple(k for k in range(n) if k not in side_a)
    if not side_a or not side_b:
        raise UsageError("both sides of the cut must be nonempty")
    return side_a, side_b


def schmidt_decompose(psi: PureState, cut) -> SchmidtData:
    """Schmidt decomposition of ``psi`` across ``cut`` (indices of side A)."""
    side_a, side_b = _split_cut(psi.dims, cut)
    da = math.prod(psi.dims[k] for k in side_a)
    db = math.prod(psi.dims[k] for k in side_b)
    t = psi.amplitudes.reshape(psi.dims).transpose(side_a + side_b).reshape(da, db)
    u, s, vh = np.linalg.svd(t, full_matrices=False)
    return SchmidtData(
        coefficients=s,
        basis_a=u,
        basis_b=vh.T,  # column i holds the amplitudes of |b_i>
        cut=(side_a, side_b),
    )


def schmidt_number(psi: PureState, cut, tol: float = SCHMIDT_RANK_TOL) -> int:
    s = schmidt_decompose(psi, cut).coefficients
    return int(np.sum(s > tol))


def _entropy_bits(probabilities: np.ndarray) -> float:
    p = np.clip(probabilities, 0.0, None)
    p = p[p > 1e-12]  # 0 log 0 := 0, and clamp numerical dust
    if p.size == 0:
        return 0.0
    return float(-np.sum(p * np.log2(p)))


def entanglement_entropy(psi: PureState, cut) -> float:
    """Entropy of entanglement in ebits across the given cut."""
    s = schmidt_decompose(psi, cut).coefficients
    return _entropy_bits(s * s)


def majorization_convertible(lam, mu, slack: float = 1e-10) -> bool:
    """Whether LOCC can convert the lam-state into the mu-state.

    Both arguments are Schmidt coefficient lists (not squared).  True iff the
    squared lam spectrum is majorized by the squared mu spectrum: every k-th
    partial sum of the descending lam probabilities stays at or below mu's.
    The shorter list is zero-padded; each inequality gets ``slack`` of room
    for roundoff.
    """
    a = np.sort(np.abs(np.asarray(lam, dtype=float)))[::-1] ** 2
    b = np.sort(np.abs(np.asarray(mu, dtype=float)))[::-1] ** 2
    for name, p in (("lam", a), ("mu", b)):
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValidationError(f"{name} squared coefficients sum to {p.sum()!r}, not 1")
    size = max(a.size, b.size)
    a = np.pad(a, (0, size - a.size))
    b = np.pad(b, (0, size - b.size))
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + slack))


def entanglement_cost_known_state(u: UnitaryOperator, psi_a: PureState, psi_b: PureState) -> float:
    """Ebits needed to prepare U(psi_a (x) psi_b) across the A:B cut, which is
    exactly the entanglement of the output when both inputs are known."""
    da, db = psi_a.dim, psi_b.dim
    if u.dim != da * db:
        raise DimensionError(
            f"unitary of dimension {u.dim} does not act on inputs of dims {da}x{db}"
        )
    out = PureState(u.matrix @ tensor(psi_a, psi_b).amplitudes, (da, db))
    return entanglement_entropy(out, (0,))
