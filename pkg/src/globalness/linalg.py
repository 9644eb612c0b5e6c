"""Dense complex linear algebra for small multi-qudit systems.

Subsystem convention: index 0 is the leftmost tensor factor and the most
significant digit of a computational-basis label, i.e. ``tensor(a, b)``
places ``a`` on subsystem 0 exactly like ``numpy.kron``.  Everything is dense
``complex128``; total dimensions are expected to stay at or below 256.

All container types are immutable after construction (arrays are flagged
read-only), so values can be shared freely across threads.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParseError, UsageError, ValidationError

ATOL_STATE = 1e-12
ATOL_OPERATOR = 1e-10


def _coerce(data, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(data, dtype=np.complex128)
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def _coerce_dims(dims) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out or any(d < 2 for d in out):
        raise UsageError(f"subsystem dimensions must all be >= 2, got {out}")
    return out


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state vector over an ordered list of subsystems."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = _coerce(self.amplitudes, "state vector")
        dims = _coerce_dims(self.dims)
        if amps.ndim != 1 or amps.size != math.prod(dims):
            raise DimensionError(
                f"state vector of length {amps.size} does not match dims {dims}"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > ATOL_STATE:
            raise ValidationError(f"state vector has squared norm {norm_sq!r}, not 1")
        object.__setattr__(self, "amplitudes", _freeze(amps))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityOperator":
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = _coerce(self.matrix, "density matrix")
        dims = _coerce_dims(self.dims)
        n = math.prod(dims)
        if mat.shape != (n, n):
            raise DimensionError(f"density matrix shape {mat.shape} does not match dims {dims}")
        if np.max(np.abs(mat - mat.conj().T)) > ATOL_STATE:
            raise ValidationError("density matrix is not Hermitian")
        tr = float(mat.trace().real)
        if abs(tr - 1.0) > ATOL_STATE:
            raise ValidationError(f"density matrix has trace {tr!r}, not 1")
        if float(np.linalg.eigvalsh(mat).min()) < -1e-10:
            raise ValidationError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", _freeze(mat))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    """Unitary matrix over an ordered list of subsystems."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = _coerce(self.matrix, "unitary matrix")
        dims = _coerce_dims(self.dims)
        n = math.prod(dims)
        if mat.shape != (n, n):
            raise DimensionError(f"unitary shape {mat.shape} does not match dims {dims}")
        defect = mat.conj().T @ mat - np.eye(n)
        if np.linalg.norm(defect, 2) > ATOL_OPERATOR:
            raise ValidationError("matrix is not unitary within 1e-10")
        object.__setattr__(self, "matrix", _freeze(mat))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, state: PureState) -> PureState:
        if state.dim != self.dim:
            raise DimensionError("unitary and state dimensions differ")
        return PureState(self.matrix @ state.amplitudes, state.dims)


def _raw(x) -> np.ndarray:
    if isinstance(x, PureState):
        return x.amplitudes
    if isinstance(x, (DensityOperator, UnitaryOperator)):
        return x.matrix
    return np.asarray(x, dtype=np.complex128)


def tensor(a, b):
    """Kronecker product of two states or two operators of the same kind.

    Dims are concatenated and subsystem order is preserved, so ``a`` ends up
    on the more significant digits.  Raw ndarrays are combined as-is.
    """
    pairs = (
        (PureState, lambda x, y: PureState(np.kron(x.amplitudes, y.amplitudes), x.dims + y.dims)),
        (DensityOperator, lambda x, y: DensityOperator(np.kron(x.matrix, y.matrix), x.dims + y.dims)),
        (UnitaryOperator, lambda x, y: UnitaryOperator(np.kron(x.matrix, y.matrix), x.dims + y.dims)),
    )
    for cls, combine in pairs:
        if isinstance(a, cls) and isinstance(b, cls):
            return combine(a, b)
    if isinstance(a, np.ndarray) and isinstance(b, np.ndarray):
        return np.kron(a, b)
    raise UsageError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def partial_trace(rho, keep) -> DensityOperator:
    """Reduced state on the ``keep`` subsystems (original order preserved).

    Args:
        rho: density operator (or pure state, converted on the fly).
        keep: iterable of subsystem indices to retain; must be nonempty.
    """
    if isinstance(rho, PureState):
        rho = rho.density()
    keep = tuple(sorted(set(int(k) for k in keep)))
    n = len(rho.dims)
    if not keep:
        raise UsageError("keep set must be nonempty")
    if any(k < 0 or k >= n for k in keep):
        raise UsageError(f"keep indices {keep} out of range for {n} subsystems")
    traced = [k for k in range(n) if k not in keep]
    tensor_form = rho.matrix.reshape(rho.dims + rho.dims)
    m = n
    for ax in sorted(traced, reverse=True):
        tensor_form = np.trace(tensor_form, axis1=ax, axis2=ax + m)
        m -= 1
    new_dims = tuple(rho.dims[k] for k in keep)
    size = math.prod(new_dims)
    return DensityOperator(tensor_form.reshape(size, size), new_dims)


def embed_operator(op: np.ndarray, subsystems, dims) -> np.ndarray:
    """Lift an operator acting on ``subsystems`` (in the given order) to the
    full space described by ``dims``, acting as identity elsewhere."""
    dims = tuple(int(d) for d in dims)
    subs = tuple(int(s) for s in subsystems)
    n = len(dims)
    if len(set(subs)) != len(subs) or any(s < 0 or s >= n for s in subs):
        raise UsageError(f"bad subsystem indices {subs} for {n} subsystems")
    op = np.asarray(op, dtype=np.complex128)
    local = math.prod(dims[s] for s in subs)
    if op.shape != (local, local):
        raise DimensionError(
            f"operator shape {op.shape} does not match subsystems {subs} of dims {dims}"
        )
    rest = [k for k in range(n) if k not in subs]
    perm = list(subs) + rest
    rest_dim = math.prod(dims[k] for k in rest) if rest else 1
    full = np.kron(op, np.eye(rest_dim, dtype=np.complex128))
    perm_dims = [dims[p] for p in perm]
    inv = [perm.index(k) for k in range(n)]
    t = full.reshape(perm_dims + perm_dims)
    t = t.transpose(inv + [n + j for j in inv])
    size = math.prod(dims)
    return np.ascontiguousarray(t.reshape(size, size))


def distance_up_to_global_phase(u, v) -> float:
    """min over phases of the spectral norm ``||U - exp(i phi) V||``.

    Computed in closed form from the eigenphases of ``V^dagger U``: the
    optimal phase is the midpoint of the smallest arc covering them, giving
    ``2 sin(L/4)`` for a covering arc of length ``L``.  Zero iff the two
    matrices agree up to a global phase.
    """
    mu, mv = _raw(u), _raw(v)
    if mu.shape != mv.shape:
        raise UsageError(f"shape mismatch {mu.shape} vs {mv.shape}")
    w = mv.conj().T @ mu
    phases = np.sort(np.angle(np.linalg.eigvals(w)))
    gaps = np.diff(phases, append=phases[0] + 2 * np.pi)
    arc = 2 * np.pi - gaps.max()
    return float(2 * np.sin(arc / 4))


def state_fidelity(state, target) -> float:
    """Squared overlap of a (pure or mixed) state with a pure target."""
    t = _raw(target)
    if t.ndim != 1:
        raise UsageError("target must be a pure state vector")
    s = _raw(state)
    if s.ndim == 1:
        return float(abs(np.vdot(t, s)) ** 2)
    return float(np.real(t.conj() @ s @ t))


# --- JSON wire format -------------------------------------------------------
#
# A state or matrix is {"dims": [d1, ...], "data": [[re, im], ...]} with the
# matrix flattened row-major.  Readers reject non-finite entries.


def array_to_json(arr, dims) -> dict:
    arr = _raw(arr)
    data = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    return {"dims": [int(d) for d in dims], "data": data}


def array_from_json(obj) -> tuple[np.ndarray, tuple[int, ...]]:
    """Decode the wire format; returns (vector or square matrix, dims)."""
    if not isinstance(obj, dict) or "dims" not in obj or "data" not in obj:
        raise ParseError("expected an object with 'dims' and 'data'")
    try:
        dims = tuple(int(d) for d in obj["dims"])
        flat = [complex(float(re), float(im)) for re, im in obj["data"]]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed array object: {exc}") from None
    arr = np.array(flat, dtype=np.complex128)
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ParseError("array contains non-finite entries")
    n = math.prod(dims) if dims else 0
    if n and arr.size == n:
        return arr, dims
    if n and arr.size == n * n:
        return arr.reshape(n, n), dims
    raise ParseError(f"data length {arr.size} matches neither a vector nor a matrix on dims {dims}")
