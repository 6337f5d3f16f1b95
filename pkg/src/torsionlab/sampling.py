"""Seeded random generation of exact rational objects for sweeps and tests.

Every consumer passes an explicit seed, so sweeps are reproducible; the
samplers only ever produce rational data (automorphism parameters, canonical
family parameters, matrices).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact_linalg import Matrix
from .lie_algebra import nxn, sl2_H, sl2xsl2
from .torsion import LinearMapOnAlgebra
from .automorphism import (
    AutomorphismElement,
    Kind,
    ad_matrix,
    ad_matrix_y,
    aut_n_generic,
    conjugate,
    product_automorphism,
    psi0,
    y_matrix_to_h,
)
from .classification import Family, build_canonical

__all__ = ["Sampler"]


class Sampler:
    """Deterministic source of rational test data."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def fraction(self, lo: int = -4, hi: int = 4, denominators=(1, 1, 2, 3), nonzero=False) -> Fraction:
        while True:
            f = Fraction(self.rng.randint(lo, hi), self.rng.choice(denominators))
            if f or not nonzero:
                return f

    def vector(self, dim: int, **kw):
        return tuple(self.fraction(**kw) for _ in range(dim))

    def matrix(self, n: int, **kw) -> Matrix:
        return Matrix([[self.fraction(**kw) for _ in range(n)] for _ in range(n)])

    def invertible_2x2(self) -> Matrix:
        while True:
            m = self.matrix(2)
            if m.det():
                return m

    # -- automorphisms ---------------------------------------------------------
    def aut_heisenberg(self) -> AutomorphismElement:
        return aut_n_generic(self.invertible_2x2(), self.vector(2))

    def sl2_parameters(self):
        """(a, b, c, d) with ad - bc = 1 and a != 0."""
        a = self.fraction(nonzero=True)
        b, c = self.fraction(), self.fraction()
        return a, b, c, (1 + b * c) / a

    def ad_sl2(self, basis: str = "H") -> AutomorphismElement:
        a, b, c, d = self.sl2_parameters()
        return ad_matrix(a, b, c, d) if basis == "H" else ad_matrix_y(a, b, c, d)

    def aut_sl2(self, basis: str = "H") -> AutomorphismElement:
        phi = self.ad_sl2(basis)
        if self.rng.random() < 0.5:
            return psi0(phi.algebra).compose(phi)
        return phi

    def first_kind_nxn(self, with_shear: bool = True) -> AutomorphismElement:
        shear = None
        if with_shear:
            shear = Matrix([[self.fraction() for _ in range(4)] for _ in range(2)])
        return product_automorphism(
            nxn(), Kind.FIRST_KIND, self.invertible_2x2(), self.invertible_2x2(), shear,
        )

    def aut_nxn(self) -> AutomorphismElement:
        kind = Kind.SECOND_KIND if self.rng.random() < 0.5 else Kind.FIRST_KIND
        shear = Matrix([[self.fraction() for _ in range(4)] for _ in range(2)])
        return product_automorphism(
            nxn(), kind, self.invertible_2x2(), self.invertible_2x2(), shear,
        )

    def aut_sl2sl2(self) -> AutomorphismElement:
        kind = Kind.SECOND_KIND if self.rng.random() < 0.5 else Kind.FIRST_KIND
        return product_automorphism(
            sl2xsl2(), kind, self.aut_sl2("Y").matrix, self.aut_sl2("Y").matrix,
        )

    # -- canonical family members ----------------------------------------------
    def canonical_heisenberg(self) -> LinearMapOnAlgebra:
        which = self.rng.choice((Family.S, Family.D, Family.T))
        if which is Family.S:
            params = (self.fraction(),)
        elif which is Family.D:
            params = (self.fraction(nonzero=True),)
        else:
            params = (self.fraction(), self.fraction(nonzero=True))
        return build_canonical(which, params)

    def zero_torsion_heisenberg(self) -> LinearMapOnAlgebra:
        """Random zero-torsion map: canonical member under a random automorphism."""
        return conjugate(self.canonical_heisenberg(), self.aut_heisenberg())

    def zero_torsion_sl2(self, basis: str = "Y") -> LinearMapOnAlgebra:
        j = conjugate(
            build_canonical(Family.JSTAR_SL2, (self.fraction(),)),
            self.aut_sl2("Y"),
        )
        if basis == "Y":
            return j
        return LinearMapOnAlgebra(sl2_H(), y_matrix_to_h(j.matrix))
