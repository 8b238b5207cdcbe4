"""Dense geometric algebra engine for arbitrary nondegenerate signatures.

Basis blades are indexed by bitmask: bit ``i`` set means basis vector ``i``
is a factor, with factors written in ascending index order.  The first ``p``
basis vectors square to +1 and the remaining ``q`` square to -1.

Products are evaluated from a per-signature Cayley table (result blade and
sign for every blade pair).  The table is built once, on first use, and is
read-only afterwards.
"""

from __future__ import annotations

import math
import numbers
import threading
from dataclasses import dataclass

import numpy as np

from .errors import GradeError, NonSimpleBivector, SignatureMismatch

MAX_DIMENSION = 8


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature counts must be non-negative, got ({self.p},{self.q})")
        if self.p + self.q > MAX_DIMENSION:
            raise ValueError(f"p + q must be <= {MAX_DIMENSION}, got {self.p + self.q}")

    @property
    def n(self) -> int:
        return self.p + self.q

    def metric(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"basis index {i} out of range for {self}")
        return 1 if i < self.p else -1

    def __str__(self):
        return f"G({self.p},{self.q})"


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Geometric product of two basis blades given as bitmasks.

    Returns ``(sign, blade)`` with ``blade = a ^ b``.  The sign counts the
    transpositions needed to merge the two ascending index lists and picks up
    the metric of every basis vector shared by ``a`` and ``b``.
    """
    full = (1 << sig.n) - 1
    if not (0 <= a <= full and 0 <= b <= full):
        raise ValueError(f"blade bitmask out of range for {sig}")
    swaps = 0
    x = a >> 1
    while x:
        swaps += _popcount(x & b)
        x >>= 1
    sign = -1 if swaps & 1 else 1
    common = a & b
    i = 0
    while common:
        if common & 1 and i >= sig.p:
            sign = -sign
        common >>= 1
        i += 1
    return sign, a ^ b


# Pseudoscalar orientation for the conformal algebras, relative to the
# ascending blade e1..ed e ebar:  2D uses e1 e2 ebar e, 3D uses e1 e2 e3 e ebar.
_PSEUDOSCALAR_SIGN = {(3, 1): -1, (4, 1): 1}


class Algebra:
    """Cayley tables and basis bookkeeping for one signature.

    Use :func:`algebra` to obtain the shared instance for a signature.
    """

    def __init__(self, sig: Signature):
        self.sig = sig
        self.n = sig.n
        self.dim = 1 << sig.n
        dim = self.dim
        masks = np.arange(dim)
        self.grades = np.array([_popcount(i) for i in range(dim)], dtype=np.int64)

        # idx[i, k] = i ^ k, so that C[k] = sum_i A[i] B[idx[i, k]] sgn[i, k]
        self.idx = masks[:, None] ^ masks[None, :]
        gp = np.empty((dim, dim), dtype=np.float64)
        for i in range(dim):
            for k in range(dim):
                gp[i, k] = blade_product(i, i ^ k, sig)[0]
        gi = self.grades[:, None]
        gj = self.grades[self.idx]
        gk = self.grades[None, :]
        self.gp_sign = gp
        self.op_sign = np.where(gk == gi + gj, gp, 0.0)
        self.ip_sign = np.where((gk == np.abs(gi - gj)) & (gi > 0) & (gj > 0), gp, 0.0)
        for table in (self.idx, self.gp_sign, self.op_sign, self.ip_sign):
            table.flags.writeable = False

        r = self.grades
        self.reverse_sign = np.where((r * (r - 1) // 2) % 2 == 0, 1.0, -1.0)
        self.reverse_sign.flags.writeable = False
        self.grade_masks = [self.grades == g for g in range(self.n + 1)]
        self.basis_names = [f"e{i + 1}" for i in range(self.n)]
        self._scatter_cache: dict[str, np.ndarray] = {}

    def __repr__(self):
        return f"Algebra({self.sig})"

    def blade_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "".join(self.basis_names[i] for i in range(self.n) if mask >> i & 1)

    # -- constructors -------------------------------------------------------

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.dim))

    def scalar(self, value: float) -> "Multivector":
        c = np.zeros(self.dim)
        c[0] = value
        return Multivector(self, c)

    def blade(self, mask: int, value: float = 1.0) -> "Multivector":
        c = np.zeros(self.dim)
        c[mask] = value
        return Multivector(self, c)

    def basis_vector(self, i: int) -> "Multivector":
        return self.blade(1 << i)

    def vector(self, coords) -> "Multivector":
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.n,):
            raise ValueError(f"expected {self.n} vector components, got shape {coords.shape}")
        c = np.zeros(self.dim)
        c[1 << np.arange(self.n)] = coords
        return Multivector(self, c)

    def pseudoscalar(self) -> "Multivector":
        sign = _PSEUDOSCALAR_SIGN.get((self.sig.p, self.sig.q), 1)
        return self.blade(self.dim - 1, float(sign))

    # -- dense kernels on raw coefficient arrays ------------------------------

    def _product(self, a: np.ndarray, b: np.ndarray, sign: np.ndarray) -> np.ndarray:
        return a @ (b[self.idx] * sign)

    def _scatter(self, kind: str) -> np.ndarray:
        """Signed map from flattened blade pairs (i, j) to result blade i ^ j."""
        with _ALGEBRA_LOCK:
            cached = self._scatter_cache.get(kind)
            if cached is None:
                sign = self._signs(kind)
                dim = self.dim
                cached = np.zeros((dim * dim, dim))
                i, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
                cached[i * dim + (i ^ k), k] = sign
                cached.flags.writeable = False
                self._scatter_cache[kind] = cached
        return cached

    def _signs(self, kind: str) -> np.ndarray:
        return {"gp": self.gp_sign, "op": self.op_sign, "ip": self.ip_sign}[kind]

    def product_batch(self, a: np.ndarray, b: np.ndarray, kind: str = "gp",
                      chunk: int = 8192) -> np.ndarray:
        """Row-wise products of two ``(N, 2**n)`` coefficient arrays.

        Up to 6 dimensions the pairwise coefficient products are contracted
        with a signed scatter matrix in one BLAS call per chunk; larger
        algebras loop over the left-hand blades instead.
        """
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != b.shape or a.ndim != 2 or a.shape[1] != self.dim:
            raise ValueError(f"expected two arrays of shape (N, {self.dim})")
        dim = self.dim
        out = np.empty_like(a)
        if dim <= 64:
            scatter = self._scatter(kind)
            for start in range(0, a.shape[0], chunk):
                sa = a[start:start + chunk]
                sb = b[start:start + chunk]
                pairs = (sa[:, :, None] * sb[:, None, :]).reshape(len(sa), dim * dim)
                np.matmul(pairs, scatter, out=out[start:start + chunk])
            return out
        sign = self._signs(kind)
        out[:] = 0.0
        for start in range(0, a.shape[0], chunk):
            sa = a[start:start + chunk]
            sb = b[start:start + chunk]
            acc = out[start:start + chunk]
            for i in range(dim):
                acc += sa[:, i, None] * (sb[:, self.idx[i]] * sign[i])
        return out


_ALGEBRAS: dict[Signature, Algebra] = {}
_ALGEBRA_LOCK = threading.Lock()


def algebra(p: int, q: int = 0) -> Algebra:
    """Return the shared :class:`Algebra` for signature ``(p, q)``."""
    sig = Signature(p, q)
    alg = _ALGEBRAS.get(sig)
    if alg is None:
        with _ALGEBRA_LOCK:
            alg = _ALGEBRAS.get(sig)
            if alg is None:
                alg = Algebra(sig)
                _ALGEBRAS[sig] = alg
    return alg


class Multivector:
    """Immutable dense multivector.

    Operators: ``*`` geometric product, ``^`` outer product, ``|`` inner
    product, ``~`` reversion.  Real scalars mix in freely.
    """

    __slots__ = ("algebra", "coeffs")
    __array_ufunc__ = None  # make numpy scalars defer to our operators

    def __init__(self, alg: Algebra, coeffs):
        arr = np.array(coeffs, dtype=np.float64)
        if arr.shape != (alg.dim,):
            raise ValueError(f"expected {alg.dim} coefficients, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("multivector coefficients must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "algebra", alg)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @property
    def sig(self) -> Signature:
        return self.algebra.sig

    def _check(self, other: "Multivector") -> None:
        if other.algebra is not self.algebra and other.algebra.sig != self.algebra.sig:
            raise SignatureMismatch(f"cannot combine {self.sig} with {other.sig}")

    def _new(self, coeffs) -> "Multivector":
        return Multivector(self.algebra, coeffs)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return self._new(self.coeffs + other.coeffs)
        if isinstance(other, numbers.Real):
            c = self.coeffs.copy()
            c[0] += other
            return self._new(c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (Multivector, numbers.Real)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Real):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, numbers.Real):
            return self._new(self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return self._new(self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return self._new(self.coeffs / float(other))
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            return outer_product(self, other)
        if isinstance(other, numbers.Real):
            return self * other
        return NotImplemented

    def __rxor__(self, other):
        if isinstance(other, numbers.Real):
            return self * other
        return NotImplemented

    def __or__(self, other):
        if isinstance(other, Multivector):
            return inner_product(self, other)
        if isinstance(other, numbers.Real):
            return self.algebra.zero()
        return NotImplemented

    def __ror__(self, other):
        if isinstance(other, numbers.Real):
            return self.algebra.zero()
        return NotImplemented

    def __invert__(self):
        return reverse(self)

    # -- inspection -------------------------------------------------------

    def __getitem__(self, mask: int) -> float:
        return float(self.coeffs[mask])

    @property
    def scalar(self) -> float:
        return float(self.coeffs[0])

    def grade(self, r: int) -> "Multivector":
        return grade_project(self, r)

    def grades(self, tol: float = 0.0) -> set[int]:
        """Grades carrying a coefficient larger than ``tol`` in magnitude."""
        live = np.abs(self.coeffs) > tol
        return {int(g) for g in np.unique(self.algebra.grades[live])}

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (a scale, not a metric)."""
        return float(np.linalg.norm(self.coeffs))

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= tol))

    def isclose(self, other: "Multivector", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        self._check(other)
        diff = np.max(np.abs(self.coeffs - other.coeffs), initial=0.0)
        scale = max(self.norm(), other.norm())
        return bool(diff <= atol + rtol * scale)

    def __repr__(self):
        terms = [f"{c:.6g}*{self.algebra.blade_name(m)}" if m else f"{c:.6g}"
                 for m, c in enumerate(self.coeffs) if c != 0.0]
        return " + ".join(terms) if terms else "0"


def _same_algebra(a: Multivector, b: Multivector) -> Algebra:
    if not isinstance(a, Multivector) or not isinstance(b, Multivector):
        raise TypeError("expected Multivector operands")
    a._check(b)
    return a.algebra


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    alg = _same_algebra(a, b)
    return Multivector(alg, alg._product(a.coeffs, b.coeffs, alg.gp_sign))


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    alg = _same_algebra(a, b)
    return Multivector(alg, alg._product(a.coeffs, b.coeffs, alg.op_sign))


def inner_product(a: Multivector, b: Multivector) -> Multivector:
    """Grade-|r-s| part of the geometric product of each grade-r, grade-s pair.

    Scalar operands contribute nothing.  For two vectors this is ``(ab+ba)/2``.
    """
    alg = _same_algebra(a, b)
    return Multivector(alg, alg._product(a.coeffs, b.coeffs, alg.ip_sign))


def grade_project(a: Multivector, r: int) -> Multivector:
    alg = a.algebra
    if not 0 <= r <= alg.n:
        raise GradeError(f"grade {r} out of range 0..{alg.n}")
    return Multivector(alg, np.where(alg.grade_masks[r], a.coeffs, 0.0))


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.algebra, a.coeffs * a.algebra.reverse_sign)


def pseudoscalar(alg: Algebra | Signature) -> Multivector:
    if isinstance(alg, Signature):
        alg = algebra(alg.p, alg.q)
    return alg.pseudoscalar()


def dual(a: Multivector) -> Multivector:
    return geometric_product(a.algebra.pseudoscalar(), a)


def magnitude(a: Multivector) -> float:
    return math.sqrt(abs(geometric_product(a, reverse(a)).scalar))


def exp_bivector(b: Multivector, rtol: float = 1e-12) -> Multivector:
    """Exponential of a bivector whose square is a scalar."""
    scale = b.norm()
    if scale == 0.0:
        return b.algebra.scalar(1.0)
    if not grade_project(b, 2).isclose(b, rtol=rtol):
        raise GradeError("exp_bivector expects a pure bivector")
    sq = geometric_product(b, b)
    s = sq.scalar
    if not (sq - s).is_zero(rtol * 10 * scale * scale):
        raise NonSimpleBivector("non-simple bivector: B*B is not a scalar")
    if abs(s) <= rtol * scale * scale:
        return b + 1.0
    theta = math.sqrt(abs(s))
    if s < 0:
        return b * (math.sin(theta) / theta) + math.cos(theta)
    return b * (math.sinh(theta) / theta) + math.cosh(theta)
