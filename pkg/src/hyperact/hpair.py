"""H-pairs: a local algebra with a generating subspace of its maximal ideal."""

import warnings
from dataclasses import dataclass, field

from .algebra import (
    ideal_power_basis,
    quotient_algebra,
    socle,
    subalgebra_generated,
)
from .errors import (
    DoesNotGenerate,
    SubspaceNotInMaximalIdeal,
    WrongCodimension,
    WrongMode,
)
from .exactlin import Subspace, subspace_intersect, subspace_sum, vec

HYPERSURFACE = "hypersurface"
PROJECTIVE_SPACE = "projective_space"
MODES = (HYPERSURFACE, PROJECTIVE_SPACE)


class HyperplaneWarning(UserWarning):
    """Degree-1 pair: the orbit closure is a hyperplane."""


@dataclass(frozen=True)
class HPair:
    algebra: object
    U: Subspace
    basis: tuple
    mode: str = HYPERSURFACE

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def projective_space(self):
        return self.mode == PROJECTIVE_SPACE


def validate_hpair(A, U, mode=HYPERSURFACE, basis=None):
    """Check the H-pair axioms.

    ``U`` may be a :class:`Subspace` or a list of vectors; ``basis`` fixes the
    ordered basis used for action parameters (defaults to the RREF rows).
    """
    if mode not in MODES:
        raise WrongMode(f"unknown mode {mode!r}")
    if not isinstance(U, Subspace):
        vectors = [vec(v) for v in U]
        if basis is None:
            basis = vectors
        U = Subspace.span(vectors, A.dim)
    if basis is None:
        basis = U.basis
    basis = tuple(vec(v) for v in basis)
    if Subspace.span(basis, A.dim) != U or len(basis) != U.dim:
        raise ValueError("basis does not form a basis of U")
    m = A.max_ideal
    if not U.issubset(m):
        raise SubspaceNotInMaximalIdeal("U is not contained in the maximal ideal")
    if mode == PROJECTIVE_SPACE:
        if U != m:
            raise WrongCodimension("projective-space mode requires U equal to the maximal ideal")
    elif U.dim != m.dim - 1:
        raise WrongCodimension(f"U has dimension {U.dim}, expected {m.dim - 1}")
    if subalgebra_generated(A, U).dim != A.dim:
        raise DoesNotGenerate("U does not generate the algebra with the unit")
    return HPair(A, U, basis, mode)


def _require_hypersurface(p):
    if p.mode != HYPERSURFACE:
        raise WrongMode("operation requires a hypersurface-mode pair")


def degree(p):
    """Largest ``d`` with ``m^d`` not contained in ``U``."""
    _require_hypersurface(p)
    d = 0
    k = 1
    while True:
        power = ideal_power_basis(p.algebra, k)
        if not power.basis:
            break
        if not power.issubset(p.U):
            d = k
        k += 1
    if d == 1:
        warnings.warn("degree-1 pair defines a hyperplane", HyperplaneWarning, stacklevel=2)
    return max(d, 1)


def is_hyperplane(p):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HyperplaneWarning)
        return degree(p) == 1


def quiet_degree(p):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HyperplaneWarning)
        return degree(p)


def is_nondegenerate(p):
    _require_hypersurface(p)
    soc = socle(p.algebra)
    if soc.dim != 1:
        return False
    return (
        subspace_sum(p.U, soc) == p.algebra.max_ideal
        and subspace_intersect(p.U, soc).dim == 0
    )


@dataclass(frozen=True)
class ReductionStep:
    ideal: Subspace
    projection: object
    pair: HPair


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple = field(default_factory=tuple)
    core: HPair = None


def quotient_pair(p, W):
    """The pair ``(A/W, U/W)`` together with the projection."""
    Q, proj = quotient_algebra(p.algebra, W)
    images = [proj(v) for v in p.basis]
    Uq = Subspace.span(images, Q.dim)
    # keep the images of the stored basis that remain independent
    kept = []
    for v in images:
        if Subspace.span(kept + [v], Q.dim).dim > len(kept):
            kept.append(v)
    return validate_hpair(Q, Uq, p.mode, basis=kept), proj


def reduce(p):
    """Quotient by ``U ∩ Soc(A)`` until it vanishes; the result is non-degenerate."""
    _require_hypersurface(p)
    steps = []
    cur = p
    while True:
        W = subspace_intersect(cur.U, socle(cur.algebra))
        if W.dim == 0:
            break
        nxt, proj = quotient_pair(cur, W)
        steps.append(ReductionStep(W, proj, cur))
        cur = nxt
    assert is_nondegenerate(cur), "terminal pair of the reduction must be non-degenerate"
    return ReductionTrace(tuple(steps), cur)
