"""Closed-form overlaps between Gaussian pure states.

These are exact infinite-dimensional results, so they double as oracles for
the truncated series machinery. Convention: <state1|state2>, conjugate-linear
in the first argument. Square roots take the numpy principal branch.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import SingularOverlapError

SINGULAR_TOLERANCE = 1e-12


def coherent_overlap(alpha: complex, beta: complex) -> complex:
    """<alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + alpha* beta)."""
    return cmath.exp(-0.5 * abs(alpha) ** 2 - 0.5 * abs(beta) ** 2 + np.conj(alpha) * beta)


def _polar(z: complex) -> tuple[float, float]:
    z = complex(z)
    r = abs(z)
    return r, (math.atan2(z.imag, z.real) if r > 0 else 0.0)


def squeezed_overlap(z1: complex, z2: complex) -> complex:
    """<z1|z2> = (cosh r1 cosh r2 - e^{i(phi2-phi1)} sinh r1 sinh r2)^{-1/2}."""
    r1, p1 = _polar(z1)
    r2, p2 = _polar(z2)
    b = math.cosh(r1) * math.cosh(r2) - cmath.exp(1j * (p2 - p1)) * math.sinh(r1) * math.sinh(r2)
    if abs(b) < SINGULAR_TOLERANCE:
        raise SingularOverlapError(f"singular squeezed overlap, |beta| = {abs(b):.3e}")
    return complex(b) ** -0.5


def displaced_squeezed_overlap(
    alpha1: complex, z1: complex, alpha2: complex, z2: complex
) -> complex:
    """<alpha1, z1 | alpha2, z2> for states D(alpha) S(z) |0>.

    beta21^{-1/2} exp(gamma21 gamma12* / (2 beta21)
                      + (alpha2 alpha1* - alpha2* alpha1)/2)
    with beta21 = cosh r2 cosh r1 - e^{i(phi2-phi1)} sinh r2 sinh r1 and
    gamma_jk = (alpha_j - alpha_k) cosh r_j
               + e^{i phi_j} (alpha_j* - alpha_k*) sinh r_j.
    """
    a1, a2 = complex(alpha1), complex(alpha2)
    r1, p1 = _polar(z1)
    r2, p2 = _polar(z2)
    b21 = math.cosh(r2) * math.cosh(r1) - cmath.exp(1j * (p2 - p1)) * math.sinh(r2) * math.sinh(r1)
    if abs(b21) < SINGULAR_TOLERANCE:
        raise SingularOverlapError(f"singular displaced-squeezed overlap, |beta21| = {abs(b21):.3e}")
    g21 = (a2 - a1) * math.cosh(r2) + cmath.exp(1j * p2) * (np.conj(a2) - np.conj(a1)) * math.sinh(r2)
    g12 = (a1 - a2) * math.cosh(r1) + cmath.exp(1j * p1) * (np.conj(a1) - np.conj(a2)) * math.sinh(r1)
    return complex(b21) ** -0.5 * cmath.exp(
        g21 * np.conj(g12) / (2.0 * b21) + 0.5 * (a2 * np.conj(a1) - np.conj(a2) * a1)
    )


def closed_form_overlap(kind: str, params1: dict, params2: dict) -> complex:
    """Dispatch by state kind; params use the prepare_state keyword names."""
    if kind == "coherent":
        return coherent_overlap(params1.get("alpha", 0j), params2.get("alpha", 0j))
    if kind == "squeezed":
        return squeezed_overlap(params1.get("z", 0j), params2.get("z", 0j))
    if kind == "displaced_squeezed":
        return displaced_squeezed_overlap(
            params1.get("alpha", 0j), params1.get("z", 0j),
            params2.get("alpha", 0j), params2.get("z", 0j),
        )
    raise ValueError(f"no closed-form overlap for state kind {kind!r}")
