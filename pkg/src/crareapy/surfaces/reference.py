# src/crareapy/surfaces/reference.py

"""
Closed-form values of the adapted invariants on the surface families.

Used as oracles by the lemma checks and the tests.
"""

import numpy as np

DISK_WEBSTER = -0.5


def vertical_surface_H(x, y, fx, fy, fxx, fxy, fyy):
    """
    p-mean curvature of a vertical surface ``f(x, y) = c`` in the disk bundle.

    ``H = -((1-r^2)/2) (fy^2 fxx - 2 fx fy fxy + fx^2 fyy)/|grad f|^3 - (x fx + y fy)/|grad f|``.
    """
    norm = np.hypot(fx, fy)
    r2 = np.asarray(x) ** 2 + np.asarray(y) ** 2
    bending = (fy ** 2 * fxx - 2.0 * fx * fy * fxy + fx ** 2 * fyy) / norm ** 3
    return -0.5 * (1.0 - r2) * bending - (x * fx + y * fy) / norm


def disk_hcr_vertical(H):
    """H_cr of a vertical disk-bundle surface (alpha = 0): ``-1/8 + H^2/6``."""
    return 0.25 * DISK_WEBSTER + np.asarray(H) ** 2 / 6.0


def plane_H(a: float, b: float, c: float) -> float:
    return -c / float(np.hypot(a, b))


def cylinder_H(rho):
    """p-mean curvature of the cylinder r = rho: ``-(1 + rho^2)/(2 rho)``."""
    rho = np.asarray(rho, dtype=float)
    return -(1.0 + rho ** 2) / (2.0 * rho)


def vertical_el1_factor(H):
    """
    Residual of E1 on a disk-bundle vertical surface with constant H, up to the
    positive factor ``sqrt(|H_cr|)``: ``H (2/3 H^2 - 3/4)``.
    """
    H = np.asarray(H, dtype=float)
    return H * (2.0 * H ** 2 / 3.0 - 0.75)


def plane_el2(H):
    """``E2`` residual of a vertical plane: ``(4/9) (1/3) (H^2 - 3/4)^2``."""
    return (4.0 / 27.0) * (np.asarray(H, dtype=float) ** 2 - 0.75) ** 2


def log_graph_alpha(k: float, t, r):
    """Derivation function of ``t^2 = c + k ln(1 - r^2)``: ``2t / (r sqrt(k^2 + 16 t^2))``."""
    t = np.asarray(t, dtype=float)
    return 2.0 * t / (np.asarray(r, dtype=float) * np.sqrt(k ** 2 + 16.0 * t ** 2))


# Rossi sphere ----------------------------------------------------------------

def rossi_webster(t: float) -> float:
    return 2.0 * (1.0 + t ** 2) / (1.0 - t ** 2)


def rossi_im_torsion(t: float) -> float:
    return 4.0 * t / (1.0 - t ** 2)


def rossi_abs_a_sq(t: float, phase):
    """``|a|^2 = (1 + t^2 + 2t cos 2(phi1 + phi2)) / (1 - t^2)``."""
    return (1.0 + t ** 2 + 2.0 * t * np.cos(2.0 * np.asarray(phase))) / (1.0 - t ** 2)


def rossi_sigma_H(c: float, t: float, phase):
    """p-mean curvature of ``rho1 = c``: ``(rho1^2 - rho2^2) / (rho1 rho2 |a|^3)``."""
    rho2 = np.sqrt(1.0 - c ** 2)
    return (c ** 2 - rho2 ** 2) / (c * rho2 * rossi_abs_a_sq(t, phase) ** 1.5)


def rossi_sigma_hcr(c: float, t: float, phase):
    return clifford_hcr(t) + rossi_sigma_H(c, t, phase) ** 2 / 6.0


def rossi_sigma_dA2(c: float, t: float, phase):
    """The dA2 bracket on ``rho1 = c``: ``(1 - 8t + t^2)/(3(1 - t^2)) H + (2/27) H^3``."""
    H = rossi_sigma_H(c, t, phase)
    return (1.0 - 8.0 * t + t ** 2) / (3.0 * (1.0 - t ** 2)) * H + 2.0 / 27.0 * H ** 3


def rossi_sigma_area(c: float, t: float, phase):
    """``(theta ^ e^1)(d/dphi1, d/dphi2) = |a| rho1 rho2``."""
    return np.sqrt(rossi_abs_a_sq(t, phase)) * c * np.sqrt(1.0 - c ** 2)


def rossi_sigma_energy(c: float, t: float, which: str = "E2", nodes: int = 512) -> float:
    """
    E1 or E2 of ``rho1 = c`` from the closed forms.

    The integrand depends on ``phi1 + phi2`` only, so the double integral is
    ``2 pi`` times a periodic integral, evaluated with the midpoint rule.
    """
    phase = (np.arange(nodes) + 0.5) * 2.0 * np.pi / nodes
    if which == "E1":
        density = np.abs(rossi_sigma_hcr(c, t, phase)) ** 1.5
    elif which == "E2":
        density = rossi_sigma_dA2(c, t, phase)
    else:
        raise ValueError(f"Functional '{which}' is not supported.")
    integrand = density * rossi_sigma_area(c, t, phase)
    return float(2.0 * np.pi * integrand.sum() * 2.0 * np.pi / nodes)


def clifford_hcr(t: float) -> float:
    """H_cr of the Clifford torus: ``(1 - 8t + t^2) / (2 (1 - t^2))``."""
    return (1.0 - 8.0 * t + t ** 2) / (2.0 * (1.0 - t ** 2))


def clifford_el2_scaled(t: float) -> float:
    """``(9/4) E2`` on the Clifford torus: ``3 (t^2 - 8t + 1) / (1 + t)^2``."""
    W, im_a = rossi_webster(t), rossi_im_torsion(t)
    return 0.75 * W ** 2 + 3.0 * im_a ** 2 - 3.75 * W * im_a


def rossi_unbounded_condition_i(t: float) -> bool:
    """``(1+t)^3 (1-t) > 2t (t^2 + 5t + 1)`` with ``t <= 0``."""
    return t <= 0.0 and (1.0 + t) ** 3 * (1.0 - t) > 2.0 * t * (t ** 2 + 5.0 * t + 1.0)


def rossi_unbounded_condition_ii(t: float) -> bool:
    """``1 - 4t - t^2 > 0`` with ``t >= 0``."""
    return t >= 0.0 and 1.0 - 4.0 * t - t ** 2 > 0.0


# curve tori --------------------------------------------------------------------

def torus_slice_H(k0, k1):
    """``H = kappa' / (sqrt(2) kappa^{3/2})``."""
    return np.asarray(k1) / (np.sqrt(2.0) * np.asarray(k0) ** 1.5)


def torus_slice_hcr(k0, k1, k2):
    """``H_cr = kappa/2 + (kappa^4 - kappa kappa'' + kappa'^2)/(8 kappa^3) + kappa'^2/(12 kappa^3)``."""
    k0, k1, k2 = (np.asarray(v, dtype=float) for v in (k0, k1, k2))
    return 0.5 * k0 + (k0 ** 4 - k0 * k2 + k1 ** 2) / (8.0 * k0 ** 3) + k1 ** 2 / (12.0 * k0 ** 3)


def circle_torus_el2_scaled(r: float) -> float:
    """``(9/4) E2`` on slices of the circle torus: ``15 / (8 r^2)``."""
    return 15.0 / (8.0 * r ** 2)


def ellipse_hcr_endpoints(a: float, b: float):
    """H_cr of the slices at ellipse parameters 0 and pi/2."""
    return (8.0 * a ** 2 - 3.0 * b ** 2) / (8.0 * a * b ** 2), (8.0 * b ** 2 - 3.0 * a ** 2) / (8.0 * a ** 2 * b)
