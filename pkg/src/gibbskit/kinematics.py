"""Differential kinematics of a vector field at a point.

Everything derives from the gradient tensor G with entry (i, j) = dv_j/dx_i:
the symmetric/antisymmetric decomposition G = d + omega, the differential
dv = dr . G in postfactor form (or transpose(G) . dr in prefactor form),
the bivector form omega = (1/2) nabla ^ v with the vorticity as its axial
dual, the split of dv into compression-sensitive and -insensitive parts,
and the bidirectional-gradient vectors <nabla dx v>_1 and <dx v nabla>_1.

The rotation tensor returned everywhere is the postfactor one: dr . omega
rotates in the physical sense, while omega's transpose must be used as a
prefactor to keep the same sense of rotation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ga
from .dyadics import Tensor3, antisym, postfactor, prefactor, sym, transpose
from .fields import Field, divergence, grad_gibbs, grad_alt, partial_vectors
from .ga import Multivector, Vec3

__all__ = [
    "KinematicsReport",
    "decompose",
    "dv_postfactor",
    "dv_prefactor",
    "nabla_wedge",
    "omega_bivector",
    "vorticity",
    "strain_split",
    "bidi_forward",
    "bidi_reverse",
    "report",
]


def decompose(f: Field, x: Vec3) -> tuple[Tensor3, Tensor3]:
    """Rate-of-strain d and rate-of-rotation omega, with d + omega = G.

    d is symmetric, omega antisymmetric; omega carries the 1/2 factor, so
    its (1, 2) entry is (dv2/dx - dv1/dy) / 2.
    """
    g = grad_gibbs(f, x)
    return sym(g), antisym(g)


def dv_postfactor(f: Field, x: Vec3, dr: Vec3) -> Vec3:
    """First-order velocity differential dr . G."""
    return postfactor(dr, grad_gibbs(f, x))


def dv_prefactor(f: Field, x: Vec3, dr: Vec3) -> Vec3:
    """The same differential written as transpose(G) . dr."""
    return prefactor(grad_alt(f, x), dr)


def nabla_wedge(f: Field, x: Vec3) -> Multivector:
    """The bivector nabla ^ v = sum_{i<j} (d_i v_j - d_j v_i) e_ij."""
    g = grad_gibbs(f, x).rows
    return Multivector(
        (
            0.0,
            0.0,
            0.0,
            0.0,
            g[0][1] - g[1][0],
            g[0][2] - g[2][0],
            g[1][2] - g[2][1],
            0.0,
        )
    )


def omega_bivector(f: Field, x: Vec3) -> Multivector:
    """Rotation bivector (1/2) nabla ^ v; dx . omega equals dot(dx, this)."""
    return 0.5 * nabla_wedge(f, x)


def vorticity(f: Field, x: Vec3) -> Vec3:
    """Curl of the field: the axial dual of nabla ^ v."""
    return ga.vector_dual(nabla_wedge(f, x))


def strain_split(f: Field, x: Vec3, dx: Vec3) -> tuple[Vec3, Vec3]:
    """Split dv into dx (div v) plus the compression-insensitive remainder.

    The remainder is the divergence of the bivector field dx ^ v, computed
    with geometric-algebra products as sum_i e_i . (dx ^ d_i v); the two
    parts always add back to dv_postfactor.
    """
    compressive = divergence(f, x) * dx
    dxm = Multivector.from_vec3(dx)
    acc = Multivector.zero()
    for i, dv_i in enumerate(partial_vectors(f, x), start=1):
        e_i = Multivector.basis_vector(i)
        acc = acc + ga.dot(e_i, ga.wedge(dxm, Multivector.from_vec3(dv_i)))
    return compressive, ga.vector_part(acc)


def bidi_forward(f: Field, x: Vec3, dx: Vec3) -> Vec3:
    """Grade-1 part of sum_i e_i dx (d_i v) as geometric products.

    This is the gradient acting from the left through the constant dx; for
    a divergence-free field it equals 2 dx . d.
    """
    dxm = Multivector.from_vec3(dx)
    acc = Multivector.zero()
    for i, dv_i in enumerate(partial_vectors(f, x), start=1):
        acc = acc + Multivector.basis_vector(i) * dxm * Multivector.from_vec3(dv_i)
    return ga.vector_part(ga.grade(acc, 1))


def bidi_reverse(f: Field, x: Vec3, dx: Vec3) -> Vec3:
    """Grade-1 part of sum_i dx (d_i v) e_i (gradient acting from the right).

    For a divergence-free field it equals -2 dx . omega.
    """
    dxm = Multivector.from_vec3(dx)
    acc = Multivector.zero()
    for i, dv_i in enumerate(partial_vectors(f, x), start=1):
        acc = acc + dxm * Multivector.from_vec3(dv_i) * Multivector.basis_vector(i)
    return ga.vector_part(ga.grade(acc, 1))


@dataclass(frozen=True)
class KinematicsReport:
    """Every derived quantity at one point, mutually consistent."""

    point: Vec3
    grad_gibbs: Tensor3
    grad_alt: Tensor3
    d: Tensor3
    omega: Tensor3
    omega_bivector: Multivector
    vorticity: Vec3
    divergence: float

    def to_dict(self) -> dict:
        """JSON-ready mapping; matrices render row-major array-of-arrays."""
        bv = self.omega_bivector.coeffs
        return {
            "point": list(self.point.as_tuple()),
            "grad_gibbs": self.grad_gibbs.to_lists(),
            "grad_alt": self.grad_alt.to_lists(),
            "d": self.d.to_lists(),
            "omega": self.omega.to_lists(),
            "omega_bivector": {"e12": bv[4], "e13": bv[5], "e23": bv[6]},
            "vorticity": list(self.vorticity.as_tuple()),
            "divergence": self.divergence,
        }


def report(f: Field, x: Vec3) -> KinematicsReport:
    """Assemble the full report for a field at a point."""
    g = grad_gibbs(f, x)
    d = sym(g)
    omega = antisym(g)
    nw = nabla_wedge(f, x)
    return KinematicsReport(
        point=x,
        grad_gibbs=g,
        grad_alt=transpose(g),
        d=d,
        omega=omega,
        omega_bivector=0.5 * nw,
        vorticity=ga.vector_dual(nw),
        divergence=divergence(f, x),
    )
