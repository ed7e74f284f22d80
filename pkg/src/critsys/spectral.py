"""Pseudospectral fractional Laplacian on periodic boxes and PDE residuals.

Fields live on the uniform grid of [-L, L)^n with N points per axis.  The
fractional Laplacian is the Fourier multiplier |xi|^(2s) with torus
frequencies xi = (pi/L) m, m integer in [-N/2, N/2); the zero mode maps to
zero and the Nyquist mode is kept (the multiplier is even, so real fields
stay real).  Residuals are reported on the core window |x| <= L/8 where
periodic images pollute least.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError
from .params import SystemParams

_MAGIC = b"CRITSYS1"
HEADER_BYTES = 32


def singular_integral_constant(n: int, s: float) -> float:
    """Normalizing constant of the principal-value integral form,

        C(n, s) = 2^(2s) pi^(-n/2) Gamma((n+2s)/2) / Gamma(2-s) * s (1-s),

    the reciprocal of int (1 - cos z_1)/|z|^(n+2s) dz.  Documented for
    completeness only: the multiplier implementation used throughout is
    exact on band-limited torus functions and never needs it.
    """
    if not (0.0 < s < 1.0 and n >= 1):
        raise DomainError("need an integer n >= 1 and 0 < s < 1",
                          constraint="n, s", value=(n, s))
    return (2.0 ** (2.0 * s) * math.pi ** (-0.5 * n)
            * math.gamma(0.5 * (n + 2.0 * s)) / math.gamma(2.0 - s)
            * s * (1.0 - s))


@dataclass
class GridField:
    """Sampled real field on a uniform periodic box.

    n: dimension (1..3); N: points per axis (power of two); L: half-width;
    values: real array of shape (N,)*n, row-major.
    """

    n: int
    N: int
    L: float
    values: np.ndarray

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise DomainError("grid dimension must be 1, 2 or 3",
                              constraint="n", value=self.n)
        if self.N < 2 or (self.N & (self.N - 1)) != 0:
            raise DomainError("N must be a power of two",
                              constraint="N", value=self.N)
        if not self.L > 0.0:
            raise DomainError("L must be positive", constraint="L",
                              value=self.L)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.size != self.N ** self.n:
            raise DomainError("value count does not match N^n",
                              constraint="values", value=self.values.size)
        self.values = self.values.reshape((self.N,) * self.n)
        if not np.all(np.isfinite(self.values)):
            raise DomainError("field values must be finite",
                              constraint="finite", value=None)

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    def axis(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.N)

    def radius_sq(self) -> np.ndarray:
        x = self.axis()
        r2 = np.zeros((self.N,) * self.n)
        for d in range(self.n):
            shape = [1] * self.n
            shape[d] = self.N
            r2 = r2 + (x ** 2).reshape(shape)
        return r2

    def like(self, values: np.ndarray) -> "GridField":
        return GridField(self.n, self.N, self.L, values)


def integrate(field: GridField) -> float:
    """Torus quadrature h^n * sum(values)."""
    return field.h ** field.n * float(np.sum(field.values))


def _multiplier(field: GridField, s: float) -> np.ndarray:
    w = 2.0 * np.pi * np.fft.fftfreq(field.N, d=field.h)  # = (pi/L) * m
    k2 = np.zeros((field.N,) * field.n)
    for d in range(field.n):
        shape = [1] * field.n
        shape[d] = field.N
        k2 = k2 + (w ** 2).reshape(shape)
    with np.errstate(divide="ignore"):
        mult = k2 ** s
    mult[(0,) * field.n] = 0.0
    return mult


def frac_laplacian(field: GridField, s: float) -> GridField:
    """Fourier-multiplier fractional Laplacian; s in (0, 1].

    s = 1 is allowed as a test-only extension (the multiplier is then the
    plain Laplacian symbol).
    """
    if not 0.0 < s <= 1.0:
        raise DomainError("fractional order must satisfy 0 < s <= 1",
                          constraint="s", value=s)
    hat = np.fft.fftn(field.values)
    out = np.fft.ifftn(_multiplier(field, s) * hat).real
    return field.like(out)


def seminorm(field: GridField, s: float) -> float:
    """Discrete Gagliardo-type seminorm sum |xi|^(2s) |u_hat|^2 (h^n/N^n)."""
    if not 0.0 < s <= 1.0:
        raise DomainError("fractional order must satisfy 0 < s <= 1",
                          constraint="s", value=s)
    hat = np.fft.fftn(field.values)
    scale = field.h ** field.n / field.N ** field.n
    return scale * float(np.sum(_multiplier(field, s) * np.abs(hat) ** 2))


def core_window(field: GridField, fraction: float = 0.125) -> np.ndarray:
    """Boolean mask of the ball |x| <= fraction * L."""
    return field.radius_sq() <= (fraction * field.L) ** 2


@dataclass(frozen=True)
class ResidualReport:
    rel_l2_core: float
    rel_sup_core: float
    truncation_flag: bool = False


def _windowed_relative(res: np.ndarray, ref: np.ndarray,
                       win: np.ndarray) -> tuple[float, float]:
    rw, fw = res[win], ref[win]
    rel_l2 = float(np.sqrt(np.sum(rw ** 2) / np.sum(fw ** 2)))
    rel_sup = float(np.max(np.abs(rw)) / np.max(np.abs(fw)))
    return rel_l2, rel_sup


def pde_residual_single(params: SystemParams, U: GridField) -> ResidualReport:
    """Residual of the single critical equation (-Delta)^s U = U^(2*-1).

    Relative L2 and sup norms over |x| <= L/8 against the nonlinear term.
    Raises `ResolutionError` when the grid is unusable (rel L2 > 0.5).
    """
    ts = params.two_star
    rhs = U.values ** (ts - 1.0)
    res = frac_laplacian(U, params.s).values - rhs
    rel_l2, rel_sup = _windowed_relative(res, rhs, core_window(U))
    if rel_l2 > 0.5:
        raise ResolutionError("core residual exceeds 0.5; grid unusable",
                              constraint="rel_l2_core", value=rel_l2)
    return ResidualReport(rel_l2_core=rel_l2, rel_sup_core=rel_sup)


def pde_residual_system(params: SystemParams, k: float, l: float,
                        U: GridField) -> tuple[ResidualReport, ResidualReport]:
    """Residuals of both coupled equations for (u, v) = (sqrt(k) U, sqrt(l) U).

    Computed directly (fresh transforms of the scaled fields), so agreement
    with the single-equation residual at a solved (k0, l0) is a genuine
    verification rather than an algebraic restatement.
    """
    if not (k > 0.0 and l > 0.0):
        raise DomainError("k and l must be positive", constraint="k, l > 0",
                          value=(k, l))
    a, b, ts = params.alpha, params.beta, params.two_star
    u = U.like(np.sqrt(k) * U.values)
    v = U.like(np.sqrt(l) * U.values)
    win = core_window(U)

    rhs1 = (params.mu1 * u.values ** (ts - 1.0)
            + (a * params.gamma / ts) * u.values ** (a - 1.0) * v.values ** b)
    res1 = frac_laplacian(u, params.s).values - rhs1
    rel1 = _windowed_relative(res1, rhs1, win)

    rhs2 = (params.mu2 * v.values ** (ts - 1.0)
            + (b * params.gamma / ts) * u.values ** a * v.values ** (b - 1.0))
    res2 = frac_laplacian(v, params.s).values - rhs2
    rel2 = _windowed_relative(res2, rhs2, win)

    for rel in (rel1[0], rel2[0]):
        if rel > 0.5:
            raise ResolutionError("core residual exceeds 0.5; grid unusable",
                                  constraint="rel_l2_core", value=rel)
    return (ResidualReport(rel_l2_core=rel1[0], rel_sup_core=rel1[1]),
            ResidualReport(rel_l2_core=rel2[0], rel_sup_core=rel2[1]))


def dump_field(field: GridField, s: float, path: str) -> None:
    """Write the field as raw little-endian float64 after a 32-byte header.

    Header layout: magic "CRITSYS1" (8 bytes), int32 n, int32 N,
    float64 L, float64 s.
    """
    header = struct.pack("<8sii", _MAGIC, field.n, field.N) \
        + struct.pack("<dd", field.L, s)
    assert len(header) == HEADER_BYTES
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(field.values.astype("<f8").tobytes())


def load_field(path: str) -> tuple[GridField, float]:
    with open(path, "rb") as fh:
        header = fh.read(HEADER_BYTES)
        magic, n, N = struct.unpack("<8sii", header[:16])
        L, s = struct.unpack("<dd", header[16:])
        if magic != _MAGIC:
            raise DomainError("not a field dump (bad magic)",
                              constraint="magic", value=magic.decode("ascii",
                                                                     "replace"))
        values = np.frombuffer(fh.read(), dtype="<f8")
    return GridField(n=n, N=N, L=L, values=values.copy()), s
