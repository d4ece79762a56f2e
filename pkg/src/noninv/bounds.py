"""Exact checks of the composition bounds.

Every comparison that would involve a square root is done on squares in
exact rationals instead: max_fiber(f) <= sqrt(n) sqrt(deg(f)) becomes
max_fiber(f)^2 <= n * deg(f).  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SizeMismatchError
from .functions import FiniteFunction, compose

__all__ = [
    "BoundReport",
    "check_composition_bound",
    "check_max_fiber_degree_bound",
    "compare_bounds",
]


@dataclass(frozen=True)
class BoundReport:
    """Both sides of the composition bounds for one pair (f, g).

    ``new_bound`` is max_fiber(f) * deg(g).  The squared pair compares
    new_bound^2 against n * deg(f) * deg(g)^2 with n the domain size of
    f, which is how the older sqrt(n) sqrt(deg(f)) deg(g) bound is
    reached without evaluating a square root.  ``chain_holds`` records
    both links: composition <= new bound and new bound (squared) <= old
    bound (squared).
    """

    deg_composition: Fraction
    new_bound: Fraction
    old_bound_squared_scaled: tuple[Fraction, Fraction]
    new_holds: bool
    chain_holds: bool


def _build_report(f: FiniteFunction, g: FiniteFunction) -> BoundReport:
    deg_comp = compose(f, g).degree()
    new_bound = f.max_fiber() * g.degree()
    new_sq = new_bound * new_bound
    old_sq = f.domain_size * f.degree() * g.degree() ** 2
    new_holds = deg_comp <= new_bound
    return BoundReport(
        deg_composition=deg_comp,
        new_bound=new_bound,
        old_bound_squared_scaled=(new_sq, old_sq),
        new_holds=new_holds,
        chain_holds=new_holds and new_sq <= old_sq,
    )


def check_composition_bound(
    f: FiniteFunction, g: FiniteFunction
) -> BoundReport:
    """Compare deg(f o g) against max_fiber(f) * deg(g), exactly.

    Valid for any f: Y -> Z, g: X -> Y; ``new_holds`` is true for every
    such pair (the test suite sweeps sizes exhaustively).
    """
    if g.codomain_size != f.domain_size:
        raise SizeMismatchError(
            f"inner codomain {g.codomain_size} != outer domain "
            f"{f.domain_size}"
        )
    return _build_report(f, g)


def check_max_fiber_degree_bound(f: FiniteFunction) -> bool:
    """Whether max_fiber(f)^2 <= |X| * deg(f); true for every f."""
    mf = f.max_fiber()
    return Fraction(mf * mf) <= f.domain_size * f.degree()


def compare_bounds(f: FiniteFunction, g: FiniteFunction) -> BoundReport:
    """Endofunction comparison of the max-fiber bound with the older
    sqrt(n)-scaled bound.

    Requires f and g on the same n-set; establishes (squared, exact)
    deg(f o g) <= max_fiber(f) deg(g) and
    (max_fiber(f) deg(g))^2 <= n deg(f) deg(g)^2.
    """
    n = f.domain_size
    if not (
        f.codomain_size == n
        and g.domain_size == n
        and g.codomain_size == n
    ):
        raise SizeMismatchError(
            "bound comparison needs two endofunctions on the same set, "
            f"got ({g.domain_size}->{g.codomain_size}) and "
            f"({f.domain_size}->{f.codomain_size})"
        )
    return _build_report(f, g)
