"""Isotropy modules and Hom_K dimensions for the three homogeneous
spaces S3 x S3 = SU2^3 / diag(SU2), CP3 = SO5 / U2 and the full flag
F(1,2) = SU3 / T^2.

The multiplicity of an isotypic component V_gamma in the section space of
a homogeneous bundle with fiber E is dim Hom_K(V_gamma, E).  This module
knows the fibers we care about (trivial line for functions, the
8-dimensional primitive (1,1) two-form module) and how to restrict
representations of the big group to the isotropy group in each case.

The primitive (1,1) fibers are hard-coded and, on every call, re-derived
from scratch as the (1,0) x (0,1) tangent product minus one trivial
summand; a mismatch raises AssertionError rather than returning silently
wrong multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from .rootrep import (
    Group,
    IrrepLabel,
    canonical_weight,
    dimension,
    tensor_decompose_su2,
    tensor_decompose_su2_multi,
    weight_multiplicities,
)


class Space(Enum):
    S3XS3 = "s3xs3"
    CP3 = "cp3"
    FLAG = "flag"


class Bundle(Enum):
    FUNCTIONS = "functions"
    LAMBDA11 = "lambda11"


@dataclass(frozen=True)
class HomogeneousSpace:
    space: Space
    group: Group
    isotropy: str
    isometry_dim: int


_SPACES = {
    Space.S3XS3: HomogeneousSpace(Space.S3XS3, Group.SU2_CUBED, "diagonal SU2", 9),
    Space.CP3: HomogeneousSpace(Space.CP3, Group.SO5, "U2", 10),
    Space.FLAG: HomogeneousSpace(Space.FLAG, Group.SU3, "maximal torus T^2", 8),
}


def space_data(space: Space) -> HomogeneousSpace:
    return _SPACES[space]


@dataclass(frozen=True)
class U2Label:
    """Irreducible U2 representation Sym^a(C^2) tensor the b-th power of
    the determinant character square root; a and b must have equal
    parity for the label to exist on U2."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("SU2 part must be nonnegative")
        if (self.a - self.b) % 2 != 0:
            raise ValueError("U2 label needs a = b mod 2")

    @property
    def dim(self) -> int:
        return self.a + 1

    def __str__(self):
        return f"E({self.a},{self.b})"


@dataclass(frozen=True)
class IsotropyModule:
    """Fiber module of one of the two bundles, as a K-representation.

    content holds su2 string labels for S3 x S3, U2Labels for CP3 and
    canonical sum-zero torus weights (with repetition) for the flag.
    """

    space: Space
    bundle: Bundle
    content: Tuple

    def total_dimension(self) -> int:
        if self.space is Space.S3XS3:
            return sum(k + 1 for k in self.content)
        if self.space is Space.CP3:
            return sum(lab.dim for lab in self.content)
        return len(self.content)


# (1,0) tangent modules.  S3 x S3: one adjoint copy.  CP3: the two
# summands with charges +-1 mod the center, in the convention where the
# vertical circle sits in E_{0,-2} (the nearly Kahler J reverses the
# twistor fiber).  FLAG: one root from each pair, chosen so the three sum
# to zero.
_P10_S3XS3 = (2,)
_P10_CP3 = (U2Label(1, 1), U2Label(0, -2))
_FLAG_P10_ROOTS = ((1, -1, 0), (0, 1, -1), (-1, 0, 1))


def _u2_tensor(x: U2Label, y: U2Label) -> List[U2Label]:
    return [U2Label(k, x.b + y.b) for k, _ in tensor_decompose_su2(x.a, y.a)]


def _derive_lambda11(space: Space) -> Tuple:
    """Tangent (1,0) x (0,1) product in the K-representation ring, minus
    one trivial summand."""
    if space is Space.S3XS3:
        prod = [k for k, _ in tensor_decompose_su2(_P10_S3XS3[0], _P10_S3XS3[0])]
        prod.remove(0)
        return tuple(sorted(prod, reverse=True))
    if space is Space.CP3:
        prod: List[U2Label] = []
        for x in _P10_CP3:
            for y in _P10_CP3:
                conj_y = U2Label(y.a, -y.b)
                prod.extend(_u2_tensor(x, conj_y))
        prod.remove(U2Label(0, 0))
        return tuple(sorted(prod, key=lambda l: (l.a, l.b)))
    weights = []
    for alpha in _FLAG_P10_ROOTS:
        for beta in _FLAG_P10_ROOTS:
            w = canonical_weight(Group.SU3, tuple(p - q for p, q in zip(alpha, beta)))
            weights.append(w)
    zero = canonical_weight(Group.SU3, (0, 0, 0))
    weights.remove(zero)
    return tuple(sorted(weights))


# hard-coded primitive (1,1) fibers
_LAMBDA11_CONTENT = {
    Space.S3XS3: (4, 2),
    Space.CP3: (
        U2Label(0, 0),
        U2Label(1, -3),
        U2Label(1, 3),
        U2Label(2, 0),
    ),
    Space.FLAG: tuple(
        sorted(
            [canonical_weight(Group.SU3, w) for w in (
                (2, -1, -1), (-2, 1, 1),
                (-1, 2, -1), (1, -2, 1),
                (-1, -1, 2), (1, 1, -2),
                (0, 0, 0), (0, 0, 0),
            )]
        )
    ),
}

_FUNCTIONS_CONTENT = {
    Space.S3XS3: (0,),
    Space.CP3: (U2Label(0, 0),),
    Space.FLAG: (canonical_weight(Group.SU3, (0, 0, 0)),),
}


def isotropy_module(space: Space, bundle: Bundle) -> IsotropyModule:
    """Fiber K-module of the requested bundle.

    For the primitive (1,1) bundle the hard-coded content is re-derived
    from the tangent decomposition on every call and the two must agree.
    """
    if bundle is Bundle.FUNCTIONS:
        mod = IsotropyModule(space, bundle, _FUNCTIONS_CONTENT[space])
        assert mod.total_dimension() == 1
        return mod
    content = _LAMBDA11_CONTENT[space]
    derived = _derive_lambda11(space)
    if space is Space.CP3:
        assert sorted(derived, key=lambda l: (l.a, l.b)) == sorted(
            content, key=lambda l: (l.a, l.b)
        )
    else:
        assert tuple(sorted(derived)) == tuple(sorted(content))
    mod = IsotropyModule(space, bundle, content)
    assert mod.total_dimension() == 8
    return mod


def restrict_so5_to_u2(irrep: IrrepLabel) -> List[Tuple[U2Label, int]]:
    """Branch an so5 irrep to U2 by weight bookkeeping.

    Each so5 torus weight (l1, l2) restricts to the U2 weight with SU2
    part m = l1 - l2 and central charge q = l1 + l2; within a fixed
    charge the m-profile is decomposed into strings by highest-weight
    peeling.  Output sorted by (a, b), total dimension checked.
    """
    if irrep.group is not Group.SO5:
        raise ValueError("restriction defined for so5 labels only")
    by_charge: Dict[int, Dict[int, int]] = {}
    for (l1, l2), mult in weight_multiplicities(irrep).entries:
        m, q = int(l1 - l2), int(l1 + l2)
        by_charge.setdefault(q, {})
        by_charge[q][m] = by_charge[q].get(m, 0) + mult

    out: Dict[U2Label, int] = {}
    for q in sorted(by_charge):
        profile = dict(by_charge[q])
        while any(profile.values()):
            top = max(m for m, c in profile.items() if c > 0)
            assert top >= 0, "asymmetric string profile"
            count = profile[top]
            for m in range(-top, top + 1, 2):
                profile[m] = profile.get(m, 0) - count
                assert profile[m] >= 0
            lab = U2Label(top, q)
            out[lab] = out.get(lab, 0) + count

    result = sorted(out.items(), key=lambda t: (t[0].a, t[0].b))
    assert sum(lab.dim * mult for lab, mult in result) == dimension(irrep)
    return result


def _diag_su2_content(irrep: IrrepLabel) -> Dict[int, int]:
    assert irrep.group is Group.SU2_CUBED
    return tensor_decompose_su2_multi(irrep.labels)


def hom_dimension(space: Space, irrep: IrrepLabel, bundle: Bundle) -> int:
    """dim Hom_K(V_irrep restricted to K, fiber of the bundle)."""
    data = space_data(space)
    if irrep.group is not data.group:
        raise ValueError(f"{space.value} needs labels of {data.group.value}")
    fiber = isotropy_module(space, bundle)

    if space is Space.S3XS3:
        content = _diag_su2_content(irrep)
        return sum(content.get(k, 0) for k in fiber.content)

    if space is Space.CP3:
        restricted = dict(restrict_so5_to_u2(irrep))
        return sum(restricted.get(lab, 0) for lab in fiber.content)

    table = weight_multiplicities(irrep)
    return sum(table.multiplicity(w) for w in fiber.content)
