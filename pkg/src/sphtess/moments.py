"""Exact expectations for typical and weighted typical spherical k-faces.

All operations return :class:`~sphtess.exactnum.SqrtPiPoly` values.  The
typical-face formulas hold for every non-degenerate directional distribution
and are purely combinatorial; the weighted-face formulas hold in the
isotropic case only and are expressed through the A/B coefficient families
of :mod:`sphtess.combinat`.

Conventions used throughout:
  * N = n - d + k is the reduced intensity after sectioning to S^k;
  * U_{l} = 0 for l > k, so v_k = U_k and v_{k-1} = U_{k-1};
  * U_0 = 1/2 holds almost surely and is returned directly (the weighted
    series formula is only valid for l >= 1);
  * the summand 0^2 * A[-1,-1] in the weighted formulas stands for 2/pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Literal, Optional, Sequence, Tuple, Union

from .combinat import cells_count, coeff_A, coeff_B, faces_count
from .exactnum import ONE, ZERO, SqrtPiPoly, gamma_half, sp_eval, sphere_surface

__all__ = [
    "ExpectationQuery",
    "EuclidQuery",
    "GAMMA_STAR",
    "ef_typical",
    "ef_weighted",
    "hk_typical_mean",
    "u_typical",
    "u_weighted",
    "v_typical",
    "v_weighted",
    "v_minus1_weighted",
    "statdim",
    "statdim_closed",
    "euclid_v",
    "euclid_f_weighted",
    "euclid_limit_gap",
    "isect_prob_weighted",
    "isect_prob_typical",
    "isect_prob_typical_printed",
    "isect_prob_fixed",
    "identity_suite",
    "IdentityCheck",
    "evaluate_query",
]

Flavor = Literal["typical", "weighted"]

QUANTITIES = ("f", "U", "v", "vminus1", "statdim", "hk", "isect")


@dataclass(frozen=True)
class ExpectationQuery:
    """Shared request type for exact evaluation, simulation and comparison."""

    quantity: str
    flavor: Flavor
    n: int
    d: int
    k: int
    l: Optional[int] = None
    m: Optional[int] = None

    def validate(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")
        if self.flavor not in ("typical", "weighted"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if not 0 <= self.k <= self.d:
            raise ValueError(f"need 0 <= k <= d, got k={self.k}, d={self.d}")
        if self.flavor == "typical":
            if self.n < self.d - self.k:
                raise ValueError(f"typical formulas need n >= d-k, got n={self.n}")
        else:
            if self.n < self.d + 1:
                raise ValueError(f"weighted formulas need n >= d+1, got n={self.n}")


GAMMA_STAR = "gamma_star"


@dataclass(frozen=True)
class EuclidQuery:
    d: int
    k: int
    l: int
    gamma: Union[Fraction, str] = GAMMA_STAR

    def validate(self) -> None:
        if not 0 <= self.l <= self.k <= self.d:
            raise ValueError(f"need 0 <= l <= k <= d, got {self}")
        if self.gamma != GAMMA_STAR:
            if not isinstance(self.gamma, (int, Fraction)) or self.gamma <= 0:
                raise ValueError("gamma must be a positive rational or gamma_star")


def _check_face_indices(n: int, d: int, k: int, weighted: bool) -> int:
    if not 0 <= k <= d:
        raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
    if weighted and n < d + 1:
        raise ValueError(f"weighted formulas need n >= d+1, got n={n}")
    if not weighted and n < d - k:
        raise ValueError(f"typical formulas need n >= d-k, got n={n}")
    return n - d + k


# ---------------------------------------------------------------------------
# Expected f-vectors.
# ---------------------------------------------------------------------------


def ef_typical(n: int, d: int, k: int, l: int) -> SqrtPiPoly:
    """Expected number of l-faces of the typical spherical k-face (any kappa)."""
    N = _check_face_indices(n, d, k, weighted=False)
    if not 0 <= l < k:
        raise ValueError(f"need 0 <= l < k, got l={l}, k={k}")
    val = (
        Fraction(2 ** (k - l))
        * math.comb(N, k - l)
        * cells_count(n - d + l, l)
        / cells_count(N, k)
    )
    return SqrtPiPoly.rational(val)


def ef_weighted(n: int, d: int, k: int, l: int) -> SqrtPiPoly:
    """Expected number of l-faces of the weighted typical k-face (isotropic)."""
    N = _check_face_indices(n, d, k, weighted=True)
    if not 0 <= l < k:
        raise ValueError(f"need 0 <= l < k, got l={l}, k={k}")
    pref = SqrtPiPoly.pi_power(
        d - l - n, Fraction(math.factorial(N), math.factorial(k - l))
    )
    total = ZERO
    for s in range(l // 2 + 1):
        c = k - 2 * s - 1
        if c == 0:
            # 0^2 * A[-1,-1] stands for 2/pi; here l = k-1 necessarily
            total = total + coeff_B(N, 1) * SqrtPiPoly.pi_power(-1, 2)
        else:
            total = total + coeff_B(N, k - 2 * s).scale(c * c) * coeff_A(c - 1, k - l - 2)
    return pref * total


def hk_typical_mean(n: int, d: int, k: int) -> SqrtPiPoly:
    """Expected k-content of the typical k-face: omega_{k+1} binom(n,d-k) / C(n,d,k)."""
    _check_face_indices(n, d, k, weighted=False)
    scale = Fraction(math.comb(n, d - k)) / faces_count(n, d, k)
    return sphere_surface(k).scale(scale)


# ---------------------------------------------------------------------------
# Spherical Quermass integrals.
# ---------------------------------------------------------------------------


def u_typical(n: int, d: int, k: int, l: int) -> SqrtPiPoly:
    N = _check_face_indices(n, d, k, weighted=False)
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    return SqrtPiPoly.rational(cells_count(N, k - l) / (2 * cells_count(N, k)))


def u_weighted(n: int, d: int, k: int, l: int) -> SqrtPiPoly:
    N = _check_face_indices(n, d, k, weighted=True)
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    if l == 0:
        # U_0 = 1/2 almost surely; the series below only covers l >= 1.
        return SqrtPiPoly.rational(Fraction(1, 2))
    pref = SqrtPiPoly.pi_power(-N, Fraction(math.factorial(N), 2))
    total = ZERO
    for s in range((k - l) // 2 + 1):
        c = k - 2 * s - 1
        if c == 0:
            total = total + coeff_B(N + l, 1) * SqrtPiPoly.pi_power(-1, 2)
        else:
            total = total + coeff_B(N + l, k - 2 * s).scale(c * c) * coeff_A(c - 1, l - 2)
    return pref * total


# ---------------------------------------------------------------------------
# Spherical intrinsic volumes.
# ---------------------------------------------------------------------------


def v_typical(n: int, d: int, k: int, l: int) -> SqrtPiPoly:
    N = _check_face_indices(n, d, k, weighted=False)
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    return SqrtPiPoly.rational(Fraction(math.comb(N, k - l)) / cells_count(N, k))


def v_weighted(n: int, d: int, k: int, l: int) -> SqrtPiPoly:
    N = _check_face_indices(n, d, k, weighted=True)
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    pref = SqrtPiPoly.pi_power(-N, Fraction(math.factorial(N), 2))
    return pref * coeff_B(N + l, k) * coeff_A(k, l)


def v_minus1_weighted(n: int, d: int, k: int) -> SqrtPiPoly:
    """E v_{-1}(W): content of the polar of the weighted face (isotropic)."""
    N = _check_face_indices(n, d, k, weighted=True)
    ms = [m for m in range(k + 2, N + 2) if (m - k) % 2 == 0]
    if not ms:
        raise ValueError(f"v_minus1 needs n >= d+1 with a nonempty sum, got n={n}")
    pref = SqrtPiPoly.pi_power(-N, Fraction(math.factorial(N), 2))
    total = ZERO
    for m in ms:
        total = total + coeff_B(N + 1, m).scale((m - 1) ** 2) * coeff_A(m - 2, -1)
    return pref * total


# ---------------------------------------------------------------------------
# Statistical dimension.
# ---------------------------------------------------------------------------


def statdim(flavor: Flavor, n: int, d: int, k: int) -> SqrtPiPoly:
    """Expected statistical dimension of the cone spanned by the k-face."""
    vf = v_typical if flavor == "typical" else v_weighted
    total = ZERO
    for j in range(k + 1):
        total = total + vf(n, d, k, j).scale(j + 1)
    return total


def statdim_closed(flavor: Flavor, d: int, n: int) -> SqrtPiPoly:
    """Printed closed forms for the statistical dimension at k = d."""
    if flavor == "typical":
        polys = {
            2: ((1, 3, 6), (2, -2, 4)),
            3: ((1, 3, 14, 24), (2, -6, 16, 0)),
            4: ((1, 2, 23, 70, 120), (2, -12, 46, -36, 48)),
            5: ((1, 0, 35, 120, 444, 720), (2, -20, 110, -220, 368, 0)),
        }
        if d not in polys:
            raise ValueError(f"typical closed form only for d in 2..5, got {d}")
        if n < d + 1:
            raise ValueError(f"need n >= d+1, got n={n}")
        num_c, den_c = polys[d]
        num = sum(c * n ** (d - i) for i, c in enumerate(num_c))
        den = sum(c * n ** (d - i) for i, c in enumerate(den_c))
        return SqrtPiPoly.rational(Fraction(num, den))
    if flavor == "weighted":
        if n < d + 1:
            raise ValueError(f"need n >= d+1, got n={n}")
        if d == 2:
            return _statdim_weighted_d2(n)
        if d == 3:
            return _statdim_weighted_d3(n)
        raise ValueError(f"weighted closed form only for d in {{2, 3}}, got {d}")
    raise ValueError(f"unknown flavor {flavor!r}")


def _statdim_weighted_d2(n: int) -> SqrtPiPoly:
    bracket = ZERO
    for k in range(0, n + 1):
        if (n - k) % 2 != 0:
            continue
        sgn = (-1) ** ((n - k) // 2)
        bracket = bracket + SqrtPiPoly.pi_power(k, Fraction(sgn * (k + 2), math.factorial(k)))
    if n % 2 == 0:
        bracket = bracket + SqrtPiPoly.rational(2 * (-1) ** (n // 2))
    else:
        bracket = bracket + SqrtPiPoly.pi_power(1, (-1) ** ((n - 1) // 2))
    pref = SqrtPiPoly.pi_power(-n, Fraction(math.factorial(n), 2))
    return SqrtPiPoly.rational(Fraction(1, 2)) + pref * bracket


def _statdim_weighted_d3(n: int) -> SqrtPiPoly:
    from .combinat import b_closed_form

    a31_twice = SqrtPiPoly.pi_power(-1, 4) + SqrtPiPoly.pi_power(1, Fraction(4, 3))
    combo = (
        b_closed_form(n, "k3")
        + a31_twice * b_closed_form(n + 1, "k3")
        + b_closed_form(n + 2, "k3").scale(12)
        + SqrtPiPoly.pi_power(-1, 32) * b_closed_form(n + 3, "k3")
    )
    pref = SqrtPiPoly.pi_power(-n, Fraction(math.factorial(n), 2))
    return pref * combo


# ---------------------------------------------------------------------------
# Euclidean counterparts and the n -> infinity limit.
# ---------------------------------------------------------------------------


def _gamma_ratio(d: int) -> SqrtPiPoly:
    """Gamma((d+1)/2) / Gamma(d/2); always a monomial in sqrt(pi)."""
    return gamma_half(d + 1) / gamma_half(d)


def _gamma_value(q: EuclidQuery) -> SqrtPiPoly:
    if q.gamma == GAMMA_STAR:
        return _gamma_ratio(q.d) / SqrtPiPoly.sqrtpi_power(1)
    return SqrtPiPoly.rational(Fraction(q.gamma))


def euclid_v(flavor: Flavor, q: EuclidQuery) -> SqrtPiPoly:
    """Expected l-th Euclidean intrinsic volume of the typical / weighted
    typical k-face of a stationary isotropic Poisson hyperplane tessellation."""
    q.validate()
    d, k, l = q.d, q.k, q.l
    gamma = _gamma_value(q)
    ratio_l = _gamma_ratio(d) ** l
    ghalf = gamma_half(l + 2)  # Gamma(l/2 + 1)
    if flavor == "typical":
        two_over_gamma = SqrtPiPoly.rational(2) / gamma
        return (two_over_gamma**l) * ratio_l * ghalf.scale(math.comb(k, l))
    if flavor == "weighted":
        twopi_over_gamma = SqrtPiPoly.pi_power(1, 2) / gamma
        pref = (twopi_over_gamma**l) * ratio_l * ghalf.scale(Fraction(1, math.factorial(l)))
        return pref * coeff_A(k, l)
    raise ValueError(f"unknown flavor {flavor!r}")


def euclid_f_weighted(k: int, l: int) -> SqrtPiPoly:
    """E f_{k-l} of the weighted typical Euclidean k-face: pi^l / l! A[k,l]."""
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    return SqrtPiPoly.pi_power(l, Fraction(1, math.factorial(l))) * coeff_A(k, l)


def euclid_limit_gap(d: int, k: int, l: int, flavor: Flavor, n: int) -> SqrtPiPoly:
    """Exact prelimit gap n^l omega_{l+1} E v_l(face at n) minus the Euclidean value."""
    vf = v_typical if flavor == "typical" else v_weighted
    spherical = vf(n, d, k, l).scale(Fraction(n**l)) * sphere_surface(l)
    limit = euclid_v(flavor, EuclidQuery(d=d, k=k, l=l, gamma=GAMMA_STAR))
    return spherical - limit


# ---------------------------------------------------------------------------
# Intersection probabilities.
# ---------------------------------------------------------------------------


def _kinematic_pairs(d: int) -> Iterable[Tuple[int, int]]:
    for k in range(d // 2 + 1):
        for i in range(2 * k, d + 1):
            yield k, i


def isect_prob_weighted(n: int, m: int, d: int) -> SqrtPiPoly:
    """P(weighted cells of two independent isotropic tessellations intersect)."""
    if d < 1 or n <= d or m <= d:
        raise ValueError(f"need n, m > d >= 1, got n={n}, m={m}, d={d}")
    pref = SqrtPiPoly.pi_power(
        -(n + m), Fraction(math.factorial(n) * math.factorial(m), 2)
    )
    total = ZERO
    for k, i in _kinematic_pairs(d):
        total = total + (
            coeff_B(n + d - i + 2 * k, d)
            * coeff_B(m + i, d)
            * coeff_A(d, d - i + 2 * k)
            * coeff_A(d, i)
        )
    return pref * total


def isect_prob_typical(n: int, m: int, d: int) -> SqrtPiPoly:
    """Same intersection probability for typical cells, via the kinematic sum."""
    if d < 1 or n <= d or m <= d:
        raise ValueError(f"need n, m > d >= 1, got n={n}, m={m}, d={d}")
    total = ZERO
    for k, i in _kinematic_pairs(d):
        total = total + v_typical(n, d, d, d - i + 2 * k) * v_typical(m, d, d, i)
    return total.scale(2)


def isect_prob_typical_printed(n: int, m: int, d: int) -> SqrtPiPoly:
    """The printed d = 2, 3 rational functions; used as an independent oracle."""
    if d == 2:
        num = m * m + 2 * m * n - m + n * n - n + 2
        den = (m * m - m + 2) * (n * n - n + 2)
        return SqrtPiPoly.rational(Fraction(num, den))
    if d == 3:
        num = 3 * (m + n) * (m * m + 2 * m * n - 3 * m + n * n - 3 * n + 8)
        den = m * (m * m - 3 * m + 8) * n * (n * n - 3 * n + 8)
        return SqrtPiPoly.rational(Fraction(num, den))
    raise ValueError(f"printed forms exist for d in {{2, 3}}, got {d}")


def isect_prob_fixed(v: Sequence[SqrtPiPoly], n: int, d: int) -> SqrtPiPoly:
    """P(fixed polytope with intrinsic volumes v_0..v_d meets a weighted cell)."""
    if len(v) != d + 1:
        raise ValueError(f"need d+1 = {d + 1} intrinsic volumes, got {len(v)}")
    if n < d + 1:
        raise ValueError(f"need n >= d+1, got n={n}")
    pref = SqrtPiPoly.pi_power(-n, math.factorial(n))
    total = ZERO
    for k, i in _kinematic_pairs(d):
        total = total + coeff_B(n + d - i + 2 * k, d) * coeff_A(d, d - i + 2 * k) * v[i]
    return pref * total


# ---------------------------------------------------------------------------
# Exact identity suite.
# ---------------------------------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    params: Tuple
    ok: bool
    skipped: bool = False
    detail: str = ""


def identity_suite(
    grid: Iterable[Tuple[int, int, int, int]],
    mono_n_max_offset: int = 10,
) -> List[IdentityCheck]:
    """Exact verification of the Efron, U-v, monotonicity and closure identities.

    ``grid`` yields (n, d, k, l) tuples; entries outside a particular
    identity's precondition are reported as skipped rather than failed.
    """
    out: List[IdentityCheck] = []
    seen_ndk = set()
    for n, d, k, l in grid:
        if not (0 <= l <= k <= d) or n < d + 1:
            out.append(IdentityCheck("grid", (n, d, k, l), ok=True, skipped=True))
            continue

        # (i) Efron-type: E f_{k-l}(W_{n,d}^{(k)}) = 2 binom(n-d+k, l) E U_l(W_{n-l,d}^{(k)})
        if l >= 1 and n - l >= d + 1:
            lhs = ef_weighted(n, d, k, k - l) if l >= 1 else ONE
            rhs = u_weighted(n - l, d, k, l).scale(2 * math.comb(n - d + k, l))
            out.append(IdentityCheck("efron", (n, d, k, l), ok=lhs == rhs))
        else:
            out.append(IdentityCheck("efron", (n, d, k, l), ok=True, skipped=True))

        # (ii) v = U - U_shift with U_{k+1} = U_{k+2} = 0
        for flavor, uf, vf in (
            ("typical", u_typical, v_typical),
            ("weighted", u_weighted, v_weighted),
        ):
            u_hi = uf(n, d, k, l + 2) if l + 2 <= k else ZERO
            ok = vf(n, d, k, l) == uf(n, d, k, l) - u_hi
            out.append(IdentityCheck(f"u_minus_v_{flavor}", (n, d, k, l), ok=ok))

        if (n, d, k) in seen_ndk:
            continue
        seen_ndk.add((n, d, k))

        # (iii) equality at n = d+1 plus strict numeric inequality beyond
        if k >= 1:
            eq = ef_weighted(d + 1, d, k, 0) == ef_typical(d + 1, d, k, 0)
            out.append(IdentityCheck("monotone_f0_equality", (d, k), ok=eq))
            mono_ok = True
            for nn in range(d + 2, d + 2 + mono_n_max_offset):
                pref = cells_count(nn - d + k, k) / (
                    Fraction(2**k) * cells_count(nn - d, k)
                )
                lhs_v = sp_eval(ef_weighted(nn, d, k, 0), 30)
                rhs_v = sp_eval(ef_typical(nn, d, k, 0).scale(pref), 30)
                if not lhs_v > rhs_v:
                    mono_ok = False
            out.append(IdentityCheck("monotone_f0_strict", (d, k), ok=mono_ok))

        # (iv) sum_{i=-1}^{k} E v_i(W) = 1
        total = v_minus1_weighted(n, d, k)
        for j in range(k + 1):
            total = total + v_weighted(n, d, k, j)
        out.append(IdentityCheck("v_closure_weighted", (n, d, k), ok=total == ONE))

        # (v) sum_l E v_l(Z) = 1 - binom(N-1, k)/C(N, k)
        N = n - d + k
        tz = ZERO
        for j in range(k + 1):
            tz = tz + v_typical(n, d, k, j)
        expected = ONE - SqrtPiPoly.rational(
            Fraction(math.comb(N - 1, k)) / cells_count(N, k)
        )
        out.append(IdentityCheck("v_closure_typical", (n, d, k), ok=tz == expected))
    return out


# ---------------------------------------------------------------------------
# Query dispatcher (CLI surface).
# ---------------------------------------------------------------------------


def evaluate_query(q: ExpectationQuery) -> SqrtPiPoly:
    q.validate()
    typ = q.flavor == "typical"
    if q.quantity == "f":
        if q.l is None:
            raise ValueError("quantity 'f' needs l")
        return (ef_typical if typ else ef_weighted)(q.n, q.d, q.k, q.l)
    if q.quantity == "U":
        if q.l is None:
            raise ValueError("quantity 'U' needs l")
        return (u_typical if typ else u_weighted)(q.n, q.d, q.k, q.l)
    if q.quantity == "v":
        if q.l is None:
            raise ValueError("quantity 'v' needs l")
        return (v_typical if typ else v_weighted)(q.n, q.d, q.k, q.l)
    if q.quantity == "vminus1":
        if typ:
            raise ValueError("vminus1 is only provided for weighted faces")
        return v_minus1_weighted(q.n, q.d, q.k)
    if q.quantity == "statdim":
        return statdim(q.flavor, q.n, q.d, q.k)
    if q.quantity == "hk":
        if not typ:
            raise ValueError("hk mean is only provided for typical faces")
        return hk_typical_mean(q.n, q.d, q.k)
    if q.quantity == "isect":
        if q.m is None:
            raise ValueError("quantity 'isect' needs m")
        fn = isect_prob_typical if typ else isect_prob_weighted
        return fn(q.n, q.m, q.d)
    raise ValueError(f"unknown quantity {q.quantity!r}")
