"""Floating-point Weierstrass functions and the doubly periodic xi field.

Periods are 2*omega1, 2*omega2 with Im(omega2/omega1) > 0.  Lattice
invariants g2, g3 come from rapidly convergent Eisenstein q-expansions;
sigma, zeta and the p-function are evaluated from their Laurent/Taylor
coefficients after reducing the argument into the fundamental cell, with
argument halving plus the exact duplication formulas covering skew cells
where the plain series would converge too slowly.  The Legendre identity
eta1*omega2 - eta2*omega1 = pi*i/2 is recomputed from scratch and doubles
as a built-in accuracy meter.

The non-holomorphic combination xi(z) = zeta(z) + a z + b conj(z), with
(a, b) solving the period-closure system, is doubly periodic, odd, and
vanishes at the three half-periods; a multi-start Newton solver counts
its zeros numerically.
"""

from __future__ import annotations

import cmath
import math
import random


class LatticeError(ValueError):
    """Degenerate period pair (Im(omega2/omega1) <= 0)."""


class ConvergenceError(RuntimeError):
    """A series failed to reach the requested tolerance."""


class PoleError(ZeroDivisionError):
    """Evaluation requested too close to a lattice point."""


class SectionTableError(ValueError):
    """Malformed coefficient table for a section evaluation."""


# -- Eisenstein data ---------------------------------------------------------------


def _divisor_power_sum(n: int, k: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def _eisenstein(tau: complex, weight: int, tol: float) -> complex:
    """Normalised E4 or E6 by the divisor-sum q-expansion."""
    q = cmath.exp(2j * math.pi * tau)
    if abs(q) >= 1.0 - 1e-9:
        raise ConvergenceError("period ratio too close to the real axis")
    coeff = 240 if weight == 4 else -504
    k = weight - 1
    acc = 1.0 + 0j
    qn = 1.0 + 0j
    for n in range(1, 40000):
        qn *= q
        term = coeff * _divisor_power_sum(n, k) * qn
        acc += term
        if abs(term) < tol * 1e-6 and abs(qn) < 1e-3:
            return acc
    raise ConvergenceError("Eisenstein series did not converge")


# -- lattice object ------------------------------------------------------------------


class ComplexLattice:
    """Periods, invariants, quasi-periods and xi coefficients of a lattice.

    Built by lattice_init(); treat instances as immutable.
    """

    def __init__(self, omega1: complex, omega2: complex, tol: float = 1e-10):
        omega1 = complex(omega1)
        omega2 = complex(omega2)
        if omega1 == 0 or (omega2 / omega1).imag <= 0:
            raise LatticeError("need Im(omega2/omega1) > 0")
        self.omega1 = omega1
        self.omega2 = omega2
        self.tol = tol

        tau = omega2 / omega1
        scale = 2.0 * omega1
        self.g2 = (4.0 * math.pi ** 4 / 3.0) * _eisenstein(tau, 4, tol) / scale ** 4
        self.g3 = (8.0 * math.pi ** 6 / 27.0) * _eisenstein(tau, 6, tol) / scale ** 6

        self._laurent = self._laurent_coeffs(64)
        self._v1, self._v2, self._unimod = _gauss_reduce(2.0 * omega1, 2.0 * omega2)
        self._vmin = abs(self._v1)

        self.eta1 = self._eval_chain(omega1)[2]
        self.eta2 = self._eval_chain(omega2)[2]

        legendre = self.eta1 * omega2 - self.eta2 * omega1 - 1j * math.pi / 2.0
        if abs(legendre) > tol:
            raise ConvergenceError(
                f"Legendre residual {abs(legendre):.3e} exceeds tolerance {tol:.3e}"
            )
        self.legendre_residual = abs(legendre)

        # xi closure system: a w + b conj(w) + zeta-quasi-period = 0 for both periods
        det = omega1 * omega2.conjugate() - omega2 * omega1.conjugate()
        self.a = -(self.eta1 * omega2.conjugate() - self.eta2 * omega1.conjugate()) / det
        self.b = (self.eta1 * omega2 - self.eta2 * omega1) / det
        r1 = self.a * omega1 + self.b * omega1.conjugate() + self.eta1
        r2 = self.a * omega2 + self.b * omega2.conjugate() + self.eta2
        self.closure_residual = max(abs(r1), abs(r2))

    # -- series kernels -------------------------------------------------------

    def _laurent_coeffs(self, count: int):
        """Coefficients c_k of p(z) = z^-2 + sum_{k>=2} c_k z^{2k-2}."""
        c = [0j, 0j, self.g2 / 20.0, self.g3 / 28.0]
        for k in range(4, count + 1):
            s = sum(c[m] * c[k - m] for m in range(2, k - 1))
            c.append(3.0 * s / ((2 * k + 1) * (k - 3)))
        return c

    def _small(self, z: complex):
        """(p, p', zeta, sigma) by series; valid for |z| below ~0.4 vmin.

        The break test needs two consecutive negligible terms: for square
        lattices g3 = 0 makes every odd coefficient vanish, so a single
        small term proves nothing.
        """
        z2 = z * z
        c = self._laurent
        P = 1.0 / z2
        Pp = -2.0 / (z2 * z)
        Z = 1.0 / z
        G = 0j  # log(sigma/z)
        zpow = z2  # z^{2k} running power, here k = 1
        prev = float("inf")
        for k in range(2, len(c)):
            zpow *= z2
            ck = c[k]
            P += ck * zpow / z2
            Pp += (2 * k - 2) * ck * zpow / (z2 * z)
            Z -= ck * zpow / ((2 * k - 1) * z)
            G -= ck * zpow / (2 * k * (2 * k - 1))
            size = abs(ck * zpow)
            if max(size, prev) < 1e-19:
                break
            prev = size
        S = z * cmath.exp(G)
        return P, Pp, Z, S

    def _eval_chain(self, z: complex):
        """(p, p', zeta, sigma) at arbitrary z by halving + duplication.

        No argument reduction: used for quasi-period bootstrap and for
        already reduced arguments.
        """
        h = 0
        w = z
        limit = 0.4 * self._vmin
        while abs(w) > limit:
            w /= 2.0
            h += 1
        P, Pp, Z, S = self._small(w)
        for _ in range(h):
            if Pp == 0:
                raise PoleError("duplication hit a critical point")
            Ppp = 6.0 * P * P - self.g2 / 2.0
            Pppp = 12.0 * P * Pp
            Z = 2.0 * Z + Ppp / (2.0 * Pp)
            S = -(S ** 4) * Pp
            P_new = -2.0 * P + (Ppp / (2.0 * Pp)) ** 2
            Pp_new = -Pp + Ppp * (Pppp * Pp - Ppp * Ppp) / (4.0 * Pp ** 3)
            P, Pp = P_new, Pp_new
        return P, Pp, Z, S

    # -- argument reduction ------------------------------------------------------

    def _reduce(self, z: complex):
        """(z0, m, n) with z = z0 + 2m omega1 + 2n omega2 and |z0| minimal."""
        v1, v2 = self._v1, self._v2
        den = (v1 * v2.conjugate()).imag
        s = (z * v2.conjugate()).imag / den
        t = -(z * v1.conjugate()).imag / den
        best = None
        for ds in (-1, 0, 1):
            for dt in (-1, 0, 1):
                mm = round(s) + ds
                nn = round(t) + dt
                cand = z - mm * v1 - nn * v2
                if best is None or abs(cand) < abs(best[0]):
                    best = (cand, mm, nn)
        z0, mm, nn = best
        (u11, u12), (u21, u22) = self._unimod
        m = mm * u11 + nn * u21
        n = mm * u12 + nn * u22
        return z0, m, n

    def _pole_guard(self, z0: complex):
        if abs(z0) < 1e-12 * self._vmin:
            raise PoleError("argument too close to a lattice point")


def _gauss_reduce(w1: complex, w2: complex):
    """Lagrange-reduced basis (v1, v2) with v_i = U @ (w1, w2), U unimodular."""
    a, b = w1, w2
    u = [[1, 0], [0, 1]]
    for _ in range(256):
        if abs(a) > abs(b):
            a, b = b, a
            u[0], u[1] = u[1], u[0]
        mu = round((b * a.conjugate()).real / abs(a) ** 2)
        if mu == 0:
            break
        b -= mu * a
        u[1] = [x - mu * y for x, y in zip(u[1], u[0])]
    return a, b, (tuple(u[0]), tuple(u[1]))


def lattice_init(omega1, omega2, tol: float = 1e-10) -> ComplexLattice:
    """Build a lattice, checking the Legendre identity to the tolerance."""
    return ComplexLattice(omega1, omega2, tol)


def lemniscatic_lattice(omega: float = 1.0, tol: float = 1e-10) -> ComplexLattice:
    """Square lattice with omega1 = omega, omega2 = i*omega."""
    return ComplexLattice(complex(omega), complex(0, omega), tol)


# -- public evaluators ------------------------------------------------------------------


def wp(z, L: ComplexLattice) -> complex:
    z0, _, _ = L._reduce(complex(z))
    L._pole_guard(z0)
    return L._eval_chain(z0)[0]


def wp_prime(z, L: ComplexLattice) -> complex:
    z0, _, _ = L._reduce(complex(z))
    L._pole_guard(z0)
    return L._eval_chain(z0)[1]


def zeta_w(z, L: ComplexLattice) -> complex:
    z0, m, n = L._reduce(complex(z))
    L._pole_guard(z0)
    return L._eval_chain(z0)[2] + 2.0 * m * L.eta1 + 2.0 * n * L.eta2


def sigma_w(z, L: ComplexLattice) -> complex:
    z = complex(z)
    z0, m, n = L._reduce(z)
    s0 = L._eval_chain(z0)[3] if abs(z0) > 1e-14 * L._vmin else 0.0 + 0j
    if m == 0 and n == 0:
        return s0
    shift = z - z0
    eta_shift = 2.0 * m * L.eta1 + 2.0 * n * L.eta2
    sign = -1.0 if (m + n + m * n) % 2 else 1.0
    return sign * s0 * cmath.exp(eta_shift * (z0 + shift / 2.0))


def xi(z, L: ComplexLattice) -> complex:
    """zeta(z) + a z + b conj(z): odd, doubly periodic, zero at half-periods."""
    z = complex(z)
    return zeta_w(z, L) + L.a * z + L.b * z.conjugate()


def half_periods(L: ComplexLattice):
    return (L.omega1, L.omega2, L.omega1 + L.omega2)


def xi_jacobian_signs(L: ComplexLattice):
    """Signs of the real Jacobian of xi at the three half-periods.

    The Jacobian of g(z) + b conj(z) with g holomorphic is |g'|^2 - |b|^2;
    here g' = a - p(z).  On the square lattice this is |p|^2 - (pi/4w^2)^2,
    positive at the two primitive half-periods and negative at their sum.
    """
    signs = []
    for w in half_periods(L):
        jac = abs(L.a - wp(w, L)) ** 2 - abs(L.b) ** 2
        signs.append(1 if jac > 0 else (-1 if jac < 0 else 0))
    return tuple(signs)


def xi_newton_roots(L: ComplexLattice, grid: int = 12, tol: float = 1e-12,
                    dedupe: float = 1e-5, max_iter: int = 60):
    """Zeros of xi in the fundamental cell by multi-start Newton.

    Starts on a grid x grid lattice of interior points; converged roots
    are reduced into cell coordinates and de-duplicated with the given
    torus radius.  Returns cell points sorted by their (s, t) coordinates.
    """
    b1, b2 = 2.0 * L.omega1, 2.0 * L.omega2
    den = (b1 * b2.conjugate()).imag
    found = []
    for i in range(grid):
        for j in range(grid):
            z = ((i + 0.5) / grid) * b1 + ((j + 0.5) / grid) * b2
            ok = False
            for _ in range(max_iter):
                try:
                    val = xi(z, L)
                    A = L.a - wp(z, L)
                except PoleError:
                    break
                jac = abs(A) ** 2 - abs(L.b) ** 2
                if abs(jac) < 1e-18:
                    break
                r = -val
                dz = (A.conjugate() * r - L.b * r.conjugate()) / jac
                z += dz
                if abs(dz) < tol:
                    ok = True
                    break
            if not ok:
                continue
            try:
                if abs(xi(z, L)) > 1e-9:
                    continue
            except PoleError:
                continue
            s = ((z * b2.conjugate()).imag / den) % 1.0
            t = (-(z * b1.conjugate()).imag / den) % 1.0
            if s > 1.0 - 1e-9:
                s = 0.0
            if t > 1.0 - 1e-9:
                t = 0.0
            if min(s, 1 - s) < 1e-7 and min(t, 1 - t) < 1e-7:
                continue  # lattice point, not a zero of xi
            is_new = True
            for (s0, t0, _) in found:
                ds = min(abs(s - s0), 1 - abs(s - s0))
                dt = min(abs(t - t0), 1 - abs(t - t0))
                if math.hypot(ds, dt) * L._vmin < dedupe * max(1.0, L._vmin):
                    is_new = False
                    break
            if is_new:
                found.append((s, t, s * b1 + t * b2))
    found.sort(key=lambda x: (round(x[0], 9), round(x[1], 9)))
    return [z for _, _, z in found]


# -- sections ---------------------------------------------------------------------------


def phi_eps(z, eps: int, omega, L: ComplexLattice) -> complex:
    """Degree-two section factors: sigma(z)^2 for eps = 0, and
    sigma(z + omega)^2 exp(-2 zeta(omega) z) for eps = 1 (omega any
    half-period).  Both transform by exp(4 eta_k (z + omega_k)) under
    z -> z + 2 omega_k.
    """
    z = complex(z)
    if eps == 0:
        return sigma_w(z, L) ** 2
    if eps == 1:
        eta = zeta_w(omega, L)
        return sigma_w(z + omega, L) ** 2 * cmath.exp(-2.0 * eta * z)
    raise ValueError("eps must be 0 or 1")


def _canonical_pair(I, J, npoints):
    I = tuple(sorted(set(int(i) for i in I)))
    J = tuple(sorted(set(int(j) for j in J)))
    for idx in I + J:
        if not 1 <= idx <= npoints:
            raise SectionTableError(f"index {idx} outside 1..{npoints}")
    if set(I) & set(J):
        raise SectionTableError(f"subsets {I} and {J} are not disjoint")
    if not I and not J:
        raise SectionTableError("I and J cannot both be empty")
    return (I, J) if I <= J else (J, I)


def section_eval(u, table, L: ComplexLattice) -> complex:
    """Evaluate S(u) = S0(u) (1 + sum a_IJ (xi_I(u) + xi_J(u))) with
    S0 the product of sigma(u_i) and xi_I the product of xi over I
    (empty product read as 0).  The table maps disjoint index pairs
    (I, J) to coefficients, symmetric in I and J.
    """
    u = [complex(x) for x in u]
    npoints = len(u)
    coeffs = {}
    for (I, J), a in dict(table).items():
        key = _canonical_pair(I, J, npoints)
        if key in coeffs:
            raise SectionTableError(f"duplicate coefficient for pair {key}")
        coeffs[key] = complex(a)

    s0 = 1.0 + 0j
    for x in u:
        s0 *= sigma_w(x, L)
    total = 1.0 + 0j
    for (I, J), a in coeffs.items():
        xi_i = math.prod([xi(u[i - 1], L) for i in I], start=1.0 + 0j) if I else 0.0
        xi_j = math.prod([xi(u[j - 1], L) for j in J], start=1.0 + 0j) if J else 0.0
        total += a * (xi_i + xi_j)
    return s0 * total


# -- verification report ------------------------------------------------------------------


def _rel(delta: complex, reference: complex) -> float:
    return abs(delta) / max(1.0, abs(reference))


def verify_lattice(L: ComplexLattice, npoints: int = 50, seed: int = 20200831,
                   tols: dict | None = None) -> dict:
    """Residual report for the transformation laws; keys map to
    {"residual", "tol", "pass"}.  Lemniscatic closed-form checks are
    included when the lattice is square.
    """
    rng = random.Random(seed)
    b1, b2 = 2.0 * L.omega1, 2.0 * L.omega2

    def sample():
        s = rng.uniform(0.08, 0.92)
        t = rng.uniform(0.08, 0.92)
        return s * b1 + t * b2

    defaults = {
        "legendre": 1e-10,
        "xi_linear_system": 1e-10,
        "xi_half_period_zeros": 1e-8,
        "xi_double_periodicity": 1e-8,
        "xi_odd": 1e-8,
        "zeta_quasi_periodicity": 1e-8,
        "sigma_quasi_periodicity": 1e-8,
        "wp_prime_critical": 1e-8,
        "phi0_quasi_periodicity": 1e-8,
        "phi1_quasi_periodicity": 1e-8,
    }
    lemniscatic = abs(L.omega2 - 1j * L.omega1) < 1e-12 * abs(L.omega1) and \
        abs(L.omega1.imag) < 1e-12 * abs(L.omega1)
    if lemniscatic:
        defaults.update({
            "eta1_lemniscatic": 1e-9,
            "a_lemniscatic": 1e-9,
            "b_lemniscatic": 1e-9,
            "g3_lemniscatic": 1e-9,
            "wp_half_period_gamma": 1e-7,
            "jacobian_signs": 0.5,
            "xi_root_count": 0.5,
            "xi_root_distance": 1e-6,
            "caustic_margin": 0.5,
        })
    if tols:
        defaults.update(tols)

    res: dict[str, float] = {}
    res["legendre"] = L.legendre_residual
    res["xi_linear_system"] = L.closure_residual
    res["xi_half_period_zeros"] = max(abs(xi(w, L)) for w in half_periods(L))

    pts = [sample() for _ in range(npoints)]
    res["xi_double_periodicity"] = max(
        max(abs(xi(z + b1, L) - xi(z, L)), abs(xi(z + b2, L) - xi(z, L))) for z in pts
    )
    res["xi_odd"] = max(abs(xi(-z, L) + xi(z, L)) for z in pts)
    res["zeta_quasi_periodicity"] = max(
        max(abs(zeta_w(z + b1, L) - zeta_w(z, L) - 2 * L.eta1),
            abs(zeta_w(z + b2, L) - zeta_w(z, L) - 2 * L.eta2)) for z in pts
    )

    def sigma_law(z, omega_k, eta_k):
        lhs = sigma_w(z + 2 * omega_k, L)
        rhs = -sigma_w(z, L) * cmath.exp(2 * eta_k * (z + omega_k))
        return _rel(lhs - rhs, rhs)

    res["sigma_quasi_periodicity"] = max(
        max(sigma_law(z, L.omega1, L.eta1), sigma_law(z, L.omega2, L.eta2)) for z in pts
    )
    res["wp_prime_critical"] = abs(wp_prime(L.omega1, L))

    def phi_law(z, eps, omega_ref):
        out = 0.0
        for omega_k, eta_k in ((L.omega1, L.eta1), (L.omega2, L.eta2)):
            lhs = phi_eps(z + 2 * omega_k, eps, omega_ref, L)
            rhs = phi_eps(z, eps, omega_ref, L) * cmath.exp(4 * eta_k * (z + omega_k))
            out = max(out, _rel(lhs - rhs, rhs))
        return out

    res["phi0_quasi_periodicity"] = max(phi_law(z, 0, L.omega1) for z in pts)
    res["phi1_quasi_periodicity"] = max(phi_law(z, 1, L.omega1) for z in pts)

    if lemniscatic:
        w = L.omega1.real
        res["eta1_lemniscatic"] = abs(L.eta1 - math.pi / (4 * w))
        res["a_lemniscatic"] = abs(L.a)
        res["b_lemniscatic"] = abs(L.b + math.pi / (4 * w * w))
        res["g3_lemniscatic"] = abs(L.g3)
        gamma_quarter = math.gamma(0.25)
        e_val = gamma_quarter ** 4 / (32 * math.pi * w * w)
        res["wp_half_period_gamma"] = abs(wp(L.omega1, L) - e_val)
        res["jacobian_signs"] = 0.0 if xi_jacobian_signs(L) == (1, 1, -1) else 1.0
        roots = xi_newton_roots(L)
        res["xi_root_count"] = float(abs(len(roots) - 3))
        hp = half_periods(L)
        dist = 0.0
        for r in roots:
            dist = max(dist, min(abs(r - target) for target in
                                 [h + 2 * m * L.omega1 + 2 * n * L.omega2
                                  for h in hp for m in (-1, 0, 1) for n in (-1, 0, 1)]))
        res["xi_root_distance"] = dist if roots else float("inf")
        res["caustic_margin"] = 0.0 if e_val > math.pi / (4 * w * w) else 1.0

    report = {}
    for name, tol in defaults.items():
        residual = res[name]
        report[name] = {"residual": residual, "tol": tol, "pass": residual <= tol}
    return report
