"""Spectrum enumeration on homogeneous bundles and the deformation-space
upper bounds derived from it.

The Hermitian Laplace operator acts on the isotypic component of an
irrep gamma as the scalar laplace_eigenvalue(gamma), so enumerating the
spectrum up to a cutoff reduces to walking a finite label box and
counting Hom_K dimensions.  Everything downstream (eigenvalue-12
multiplicities, the nearly Kahler moduli bound, the Einstein eigenvalue
checks) is bookkeeping over these entries.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .branching import Bundle, Space, U2Label, hom_dimension, space_data
from .rootrep import (
    Group,
    IrrepLabel,
    casimir_eigenvalue,
    dimension,
    iter_labels,
    laplace_eigenvalue,
    root_system,
    weight_inner,
)


@dataclass(frozen=True)
class SpectrumEntry:
    irrep: IrrepLabel
    eigenvalue: Fraction
    hom_dim: int
    irrep_dim: int
    contribution: int

    def __post_init__(self):
        assert self.contribution == self.hom_dim * self.irrep_dim
        assert self.eigenvalue == laplace_eigenvalue(self.irrep)


def _entry(space: Space, bundle: Bundle, irrep: IrrepLabel) -> SpectrumEntry:
    hom = hom_dimension(space, irrep, bundle)
    dim = dimension(irrep)
    return SpectrumEntry(
        irrep=irrep,
        eigenvalue=laplace_eigenvalue(irrep),
        hom_dim=hom,
        irrep_dim=dim,
        contribution=hom * dim,
    )


def _thread_count() -> int:
    raw = os.environ.get("NK_SPECTRA_THREADS", "").strip()
    if not raw:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("NK_SPECTRA_THREADS must be a positive integer")
    return n


def enumerate_spectrum(
    space: Space, bundle: Bundle, cutoff
) -> List[SpectrumEntry]:
    """All isotypic components with eigenvalue <= cutoff and nonzero
    multiplicity, sorted by (eigenvalue, label).

    The label walk may be partitioned across NK_SPECTRA_THREADS worker
    threads; the final sort makes the output independent of the
    partitioning.
    """
    cutoff = Fraction(cutoff)
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    group = space_data(space).group
    labels = list(iter_labels(group, cutoff))

    threads = _thread_count()
    if threads == 1 or len(labels) < 2:
        entries = [_entry(space, bundle, lab) for lab in labels]
    else:
        chunks: List[Sequence[IrrepLabel]] = [
            labels[i::threads] for i in range(threads)
        ]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(
                lambda part: [_entry(space, bundle, lab) for lab in part], chunks
            )
            entries = [e for part in parts for e in part]

    entries = [e for e in entries if e.hom_dim > 0]
    entries.sort(key=lambda e: (e.eigenvalue, e.irrep.labels))
    return entries


def eigenspace_multiplicity(space: Space, bundle: Bundle, eigenvalue) -> int:
    """Total multiplicity (sum of contributions) at one exact eigenvalue."""
    eigenvalue = Fraction(eigenvalue)
    if eigenvalue < 0:
        raise ValueError("eigenvalue must be nonnegative")
    return sum(
        e.contribution
        for e in enumerate_spectrum(space, bundle, eigenvalue)
        if e.eigenvalue == eigenvalue
    )


@dataclass(frozen=True)
class ModuliReport:
    """Inputs and output of the deformation-space dimension estimate
    dim <= dim Omega^(1,1)_0(12) - dim isometry - dim Omega^0(12).

    nk_upper_bound keeps the raw difference (negative values are
    meaningful: they witness slack in the inequality); reported_bound
    clamps at zero since a dimension cannot be negative.
    """

    space: Space
    dim_omega11_12: int
    dim_isometry: int
    dim_omega0_12: int
    nk_upper_bound: int
    einstein_extra: Tuple[int, int]

    def __post_init__(self):
        assert self.nk_upper_bound == (
            self.dim_omega11_12 - self.dim_isometry - self.dim_omega0_12
        )

    def reported_bound(self) -> int:
        return max(0, self.nk_upper_bound)


def einstein_deformation_check(space: Space) -> Tuple[int, int]:
    """Multiplicities at the two low eigenvalues whose coexact (1,1)
    eigenspaces would carry infinitesimal Einstein deformations.  Both
    vanish on all three spaces."""
    return (
        eigenspace_multiplicity(space, Bundle.LAMBDA11, Fraction(2)),
        eigenspace_multiplicity(space, Bundle.LAMBDA11, Fraction(6)),
    )


def moduli_upper_bound(space: Space) -> ModuliReport:
    twelve = Fraction(12)
    dim_11 = eigenspace_multiplicity(space, Bundle.LAMBDA11, twelve)
    dim_0 = eigenspace_multiplicity(space, Bundle.FUNCTIONS, twelve)
    iso = space_data(space).isometry_dim
    return ModuliReport(
        space=space,
        dim_omega11_12=dim_11,
        dim_isometry=iso,
        dim_omega0_12=dim_0,
        nk_upper_bound=dim_11 - iso - dim_0,
        einstein_extra=einstein_deformation_check(space),
    )


def _isotropy_casimirs(space: Space) -> List[Fraction]:
    """Casimir scalar of each irreducible summand of the (complexified)
    isotropy representation, with respect to minus the Killing form of
    the big group restricted to the isotropy algebra."""
    if space is Space.S3XS3:
        # two adjoint copies of the diagonal su2; the product Killing
        # form restricts to 3x the factor's on the diagonal
        ad = casimir_eigenvalue(IrrepLabel(Group.SU2, (2,)))
        return [ad / 3, ad / 3]
    if space is Space.CP3:
        # tangent content E_{1,1} + E_{1,-1} + E_{0,2} + E_{0,-2}; u2
        # weights sit inside the so5 torus, rho of u2 is half its single
        # positive root e1 - e2
        rho_k = (Fraction(1, 2), Fraction(-1, 2))
        out = []
        for lab in (U2Label(1, 1), U2Label(1, -1), U2Label(0, 2), U2Label(0, -2)):
            mu = (Fraction(lab.a + lab.b, 2), Fraction(lab.b - lab.a, 2))
            shifted = tuple(m + 2 * r for m, r in zip(mu, rho_k))
            out.append(-weight_inner(Group.SO5, mu, shifted))
        return out
    # flag: six root spaces; a torus character lambda has Casimir
    # -|lambda|^2 (no rho shift on an abelian isotropy group)
    out = []
    for alpha in root_system(Group.SU3).positive_roots:
        val = -weight_inner(Group.SU3, alpha, alpha)
        out.extend([val, val])
    return out


def scal_normalization_check(space: Space) -> Tuple[Fraction, Fraction]:
    """Consistency check tying the metric normalization to the curvature
    constants: the isotropy representation must have Casimir -1/3 on
    every summand, which pins the homogeneous scalar curvature at
    3/2 - 3 Cas = 5/2 and the curvature endomorphism on the tangent
    bundle at -12 Cas = 4.  Returns (Cas, scal)."""
    values = _isotropy_casimirs(space)
    cas = values[0]
    assert all(v == cas for v in values), values
    scal = Fraction(3, 2) - 3 * cas
    assert scal == Fraction(5, 2)
    assert -12 * cas == 4
    return (cas, scal)
