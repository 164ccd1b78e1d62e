"""Deciding the OP-condition for induced additive actions, with certificates.

Every ``yes``/``no`` verdict carries a :class:`Certificate` whose payload is
enough for :func:`replay` to re-derive the verdict from the pair alone.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    ideal_power_basis,
    mul_vectors,
    restrict_to_subalgebra,
    socle,
    subalgebra_generated,
)
from .errors import DegreeOneHyperplane, WrongMode
from .exactlin import (
    ONE,
    ZERO,
    Scalar,
    Subspace,
    contains,
    format_scalar,
    rank,
    solve,
    subspace_intersect,
    subspace_sum,
    unit_vec,
)
from .geometry import complement_test, same_orbit
from .hpair import (
    HYPERSURFACE,
    PROJECTIVE_SPACE,
    is_nondegenerate,
    quiet_degree,
    reduce,
    validate_hpair,
)
from .limits import generic_limit, one_param_limit, power_coords, zero_locus

YES, NO, UNKNOWN = "yes", "no", "unknown"

DEFAULT_SAMPLES = 500
DEFAULT_HEIGHT = 5
DEFAULT_SEED = 0


@dataclass
class Certificate:
    kind: str
    data: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, **self.data}


@dataclass
class Verdict:
    outcome: str
    certificate: Certificate = None
    diagnostics: list = field(default_factory=list)

    def to_json(self):
        return {
            "outcome": self.outcome,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "diagnostics": list(self.diagnostics),
        }


def _vec_str(v):
    return [format_scalar(c) for c in v]


# --- core classification ----------------------------------------------------


@dataclass(frozen=True)
class BilinearForm:
    """``(x, y) -> xy`` on U, valued in ``m^2 = span(q)`` and read as a scalar."""

    gram: tuple
    q: tuple

    @property
    def rank(self):
        return rank(self.gram)

    def is_nondegenerate(self):
        return self.rank == len(self.gram)


def bilinear_form(p):
    A = p.algebra
    sq = ideal_power_basis(A, 2)
    if sq.dim != 1:
        raise ValueError("bilinear form needs a one-dimensional m^2")
    q = sq.basis[0]
    gram = tuple(
        tuple(solve([q], mul_vectors(A, u, w))[0] for w in p.basis)
        for u in p.basis
    )
    return BilinearForm(gram, q)


def diagonalize_symmetric(gram):
    """Exact congruence diagonalization ``P G P^T = D`` over Q(i); returns (P, D diagonal)."""
    n = len(gram)
    G = [list(r) for r in gram]
    P = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    def row_op(i, j, c):  # row_i += c row_j, col_i += c col_j
        G[i] = [a + c * b for a, b in zip(G[i], G[j])]
        for r in range(n):
            G[r][i] = G[r][i] + c * G[r][j]
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]

    for k in range(n):
        if not G[k][k]:
            j = next((j for j in range(k + 1, n) if G[j][j]), None)
            if j is not None:
                G[k], G[j] = G[j], G[k]
                for r in range(n):
                    G[r][k], G[r][j] = G[r][j], G[r][k]
                P[k], P[j] = P[j], P[k]
            else:
                j = next((j for j in range(k + 1, n) if G[k][j]), None)
                if j is None:
                    continue
                row_op(k, j, ONE)
        pivot = G[k][k]
        if not pivot:
            continue
        for j in range(k + 1, n):
            if G[j][k]:
                row_op(j, k, -G[j][k] / pivot)
    return P, [G[i][i] for i in range(n)]


def classify_core(p):
    """Verdict for a non-degenerate pair of degree 2 or 3."""
    if p.mode != HYPERSURFACE or not is_nondegenerate(p):
        raise ValueError("classify_core requires a non-degenerate hypersurface pair")
    d = quiet_degree(p)
    A = p.algebra
    soc = socle(A)
    if d == 2:
        sq = ideal_power_basis(A, 2)
        inv = {"degree": 2, "dim_m2": sq.dim, "m2_equals_socle": sq == soc}
        if sq.dim != 1:
            return _core_no("quadric", inv, "dim_m2")
        if not inv["m2_equals_socle"]:
            return _core_no("quadric", inv, "m2_equals_socle")
        form = bilinear_form(p)
        inv["gram_rank"] = form.rank
        inv["dim_U"] = p.U.dim
        if not form.is_nondegenerate():
            return _core_no("quadric", inv, "gram_rank")
        _, diag = diagonalize_symmetric(form.gram)
        inv["gram_diagonal"] = _vec_str(diag)
        return Verdict(YES, Certificate("CoreClassification", {"model": "quadric", "invariants": inv}))
    if d == 3:
        sq = ideal_power_basis(A, 2)
        inv = {"degree": 3, "dim_A": A.dim, "dim_m_mod_m2": A.dim - 1 - sq.dim}
        if A.dim != 4:
            return _core_no("cubic", inv, "dim_A")
        if inv["dim_m_mod_m2"] != 1:
            return _core_no("cubic", inv, "dim_m_mod_m2")
        return Verdict(YES, Certificate("CoreClassification", {"model": "cubic", "invariants": inv}))
    raise ValueError(f"classify_core requires degree 2 or 3, got {d}")


def _core_no(model, inv, failed):
    cert = Certificate("CoreClassification", {"model": model, "invariants": inv, "failed": failed})
    return Verdict(NO, cert, [f"core fails the {model} invariant {failed}"])


# --- socle extensions -------------------------------------------------------


@dataclass
class SocleExtensionMatch:
    core: object
    rank: int
    complement: list
    subalgebra: Subspace
    ideal: Subspace
    embedding: list


def recognize_socle_extension(p):
    """Try ``A = B + W`` with ``B`` generated by a canonical complement of ``W`` in U.

    Returns None when this particular complement does not split the algebra;
    that is not a proof that no splitting exists.
    """
    if p.mode != HYPERSURFACE or is_nondegenerate(p):
        raise ValueError("recognize_socle_extension requires a degenerate hypersurface pair")
    A = p.algebra
    W = subspace_intersect(p.U, socle(A))
    U0 = []
    for u in p.U.basis:
        if Subspace.span(list(W.basis) + U0 + [u], A.dim).dim > W.dim + len(U0):
            U0.append(u)
    B = subalgebra_generated(A, Subspace.span(U0, A.dim))
    if subspace_intersect(B, W).dim != 0 or subspace_sum(B, W).dim != A.dim:
        return None
    for w in W.basis:
        for i in range(1, A.dim):
            if any(mul_vectors(A, w, unit_vec(A.dim, i))):
                return None
    Bm = subspace_intersect(B, A.max_ideal)
    basis = [unit_vec(A.dim, 0)] + list(U0)
    for b in Bm.basis:
        if Subspace.span(basis + [b], A.dim).dim > len(basis):
            basis.append(b)
    core_alg, embedding = restrict_to_subalgebra(A, basis)
    core_U = [unit_vec(core_alg.dim, i) for i in range(1, 1 + len(U0))]
    core = validate_hpair(core_alg, core_U)
    return SocleExtensionMatch(core, W.dim, U0, B, W, embedding)


def _extension_witness(match):
    """``s + w``: s spans the core socle, w the first basis vector of W."""
    soc = socle(match.core.algebra)
    s_core = soc.basis[0]
    n = len(match.embedding[0])
    s = [ZERO] * n
    for c, b in zip(s_core, match.embedding):
        if c:
            s = [x + c * y for x, y in zip(s, b)]
    w = match.ideal.basis[0]
    return tuple(x + y for x, y in zip(s, w))


def check_extension_fixed_point(p, B, W, m):
    """Replay the fixed-point refutation for a split extension ``A = B + W``.

    For ``v = b + w`` in U with ``b`` in B: ``v^j = b^j`` lies in B for
    ``j >= 2`` (as ``W m = 0``), and ``v^1`` lies in U.  A fixed point outside
    both B and U is therefore no limit.
    """
    A = p.algebra
    msgs = []
    soc = socle(A)
    if not W.dim or not W.issubset(soc) or not W.issubset(p.U):
        msgs.append("W is not a nonzero subspace of U ∩ Soc(A)")
    if subspace_intersect(B, W).dim or subspace_sum(B, W).dim != A.dim:
        msgs.append("A is not B ⊕ W")
    for a in B.basis:
        for b in B.basis:
            if not contains(B, mul_vectors(A, a, b)):
                msgs.append("B is not closed under multiplication")
                break
    if subspace_sum(subspace_intersect(p.U, B), W) != p.U:
        msgs.append("U is not (U ∩ B) ⊕ W")
    if m[0] or not any(m) or not complement_test(p, m):
        msgs.append("witness is not a boundary point")
    if any(any(mul_vectors(A, u, m)) for u in p.U.basis):
        msgs.append("witness is not a fixed point")
    if contains(p.U, m) or contains(B, m):
        msgs.append("witness lies in U or in B")
    return msgs


# --- stratified refutation --------------------------------------------------


def _candidates(A, samples, height, seed):
    n = A.dim
    basis = [unit_vec(n, i) for i in range(1, n)]
    yield from basis
    units = (ONE, -ONE, Scalar(0, 1), Scalar(0, -1))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            for c in units:
                yield tuple(a + c * b for a, b in zip(basis[i], basis[j]))
    rng = random.Random(seed)

    def coeff():
        re = Fraction(rng.randint(-height, height), rng.randint(1, height))
        im = Fraction(rng.randint(-height, height), rng.randint(1, height)) if rng.random() < 0.5 else 0
        return Scalar(re, im)

    for _ in range(samples):
        # sparse support keeps boundary points reachable by chance
        support = rng.sample(range(1, n), rng.randint(1, n - 1))
        v = [ZERO] * n
        for j in support:
            v[j] = coeff()
        if any(v):
            yield tuple(v)


def _orbit_hull(A, m):
    """``span(m) + m*m_ideal``, the functionals cutting it out, and the m-coefficient functional."""
    mm = Subspace.span([mul_vectors(A, m, unit_vec(A.dim, i)) for i in range(1, A.dim)], A.dim)
    assert not contains(mm, m), "m lies in m*m_ideal, impossible in a local algebra"
    hull = subspace_sum(Subspace.span([m], A.dim), mm)
    rows = [m] + list(mm.basis)
    columns = [tuple(r[j] for r in rows) for j in range(A.dim)]
    psi = solve(columns, (ONE,) + (ZERO,) * mm.dim)
    return hull, hull.annihilator(), psi


def _apply(form, coords, zero):
    acc = zero
    for c, x in zip(form, coords):
        if c and x:
            acc = acc + x * c
    return acc


def excludes(p, m, nodes, quadratic_factoring=False):
    """Certify that no limit family in ``nodes`` meets the orbit of ``[m]``.

    The orbit of ``[m]`` lies in the cone over ``m + m*m_ideal``; a limit
    ``L`` is in that cone only if every annihilating functional kills it and
    its m-coefficient is nonzero.  Returns False whenever this cannot be
    decided exactly.
    """
    A = p.algebra
    _, phis, psi = _orbit_hull(A, m)
    for node in nodes:
        k = node.k

        def phi_polys(b, k=k):
            L = power_coords(b, k, A)
            zero = L[0] * 0
            return [_apply(phi, L, zero) for phi in phis]

        pieces, unresolved = zero_locus(node.basis, phi_polys, quadratic_factoring)
        if unresolved:
            return False
        for piece in pieces:
            L = power_coords(piece, k, A)
            if _apply(psi, L, L[0] * 0):
                return False
    return True


def _node_json(node):
    return {
        "conditions": list(node.conditions),
        "k": node.k,
        "leading": [str(c) for c in node.leading],
        "point": str(node.point) if node.point else None,
    }


def stratified_refute(p, quadratic_factoring=False, samples=DEFAULT_SAMPLES,
                      height=DEFAULT_HEIGHT, seed=DEFAULT_SEED):
    """Search for a boundary orbit that no one-parameter limit reaches."""
    tree = generic_limit(p, quadratic_factoring)
    if not tree.fully_resolved():
        return None
    nodes = list(tree.walk())
    A = p.algebra
    seen = set()
    for m in _candidates(A, samples, height, seed):
        if m in seen:
            continue
        seen.add(m)
        if not complement_test(p, m):
            continue
        if excludes(p, m, nodes, quadratic_factoring):
            hull, _, _ = _orbit_hull(A, m)
            return Certificate("UnreachableOrbit", {
                "witness": _vec_str(m),
                "orbit_hull": [_vec_str(r) for r in hull.basis],
                "limits": [_node_json(n) for n in nodes],
            })
    return None


# --- projective space -------------------------------------------------------


def pn_op_check(p):
    """OP on projective space holds exactly when the maximal ideal squares to zero."""
    if p.mode != PROJECTIVE_SPACE:
        raise WrongMode("pn_op_check requires a projective-space pair")
    A = p.algebra
    if ideal_power_basis(A, 2).dim == 0:
        return Verdict(YES, Certificate("PnSquareZero", {"dim": A.dim}))
    basis = [unit_vec(A.dim, i) for i in range(1, A.dim)]
    cands = list(basis) + [
        tuple(a + b for a, b in zip(basis[i], basis[j]))
        for i in range(len(basis)) for j in range(i + 1, len(basis))
    ]
    for m in cands:
        if any(mul_vectors(A, m, m)):
            return Verdict(NO, Certificate("PnNonSquareZero", {"witness": _vec_str(m)}))
    raise AssertionError("m^2 != 0 but no element with nonzero square found")


# --- the pipeline -----------------------------------------------------------


def decide(p, quadratic_factoring=False, samples=DEFAULT_SAMPLES,
           height=DEFAULT_HEIGHT, seed=DEFAULT_SEED):
    if p.mode == PROJECTIVE_SPACE:
        return pn_op_check(p)
    d = quiet_degree(p)
    if d == 1:
        raise DegreeOneHyperplane("degree-1 pair: OP is not defined for hyperplanes here")
    if d not in (2, 3):
        return Verdict(NO, Certificate("DegreeGate", {"degree": d}),
                       [f"degree {d} is neither 2 nor 3"])
    trace = reduce(p)
    core = classify_core(trace.core)
    if not trace.steps:
        return core
    steps = [{"ideal": [_vec_str(r) for r in s.ideal.basis]} for s in trace.steps]
    if core.outcome == NO:
        core.certificate.data["reduction"] = steps
        core.diagnostics.append("the quotient pair fails OP, so the pair does too")
        return core
    cert = stratified_refute(p, quadratic_factoring, samples, height, seed)
    if cert is not None:
        return Verdict(NO, cert, ["boundary orbit reached by no one-parameter limit"])
    match = recognize_socle_extension(p)
    if match is not None:
        m = _extension_witness(match)
        model = core.certificate.data["model"]
        cert = Certificate("SocleExtension", {
            "core_model": model,
            "rank": match.rank,
            "subalgebra": [_vec_str(r) for r in match.subalgebra.basis],
            "ideal": [_vec_str(r) for r in match.ideal.basis],
            "witness": _vec_str(m),
        })
        return Verdict(NO, cert, [
            f"split extension of the {model} pair by {match.rank} socle direction(s); "
            "the fixed point at the witness is no one-parameter limit"
        ])
    diags = [f"quotient pair satisfies OP ({core.certificate.data['model']}); reduction has {len(steps)} step(s)"]
    tree = generic_limit(p, quadratic_factoring)
    if not tree.fully_resolved():
        diags.append("limit stratification has unresolved branches")
    diags.append("no unreachable orbit found and no split socle extension recognized")
    return Verdict(UNKNOWN, None, diags)


# --- replay -----------------------------------------------------------------


def _parse_vec(strings):
    return tuple(Scalar.coerce(s) for s in strings)


def sample_boundary_points(p, samples=DEFAULT_SAMPLES, height=DEFAULT_HEIGHT, seed=DEFAULT_SEED):
    A = p.algebra
    out, seen = [], set()
    for m in _candidates(A, samples, height, seed):
        if m in seen:
            continue
        seen.add(m)
        if p.mode == PROJECTIVE_SPACE or complement_test(p, m):
            out.append(m)
    return out


def reaching_limit(p, m, tree=None):
    """A limit point from ``[1]`` lying in the orbit of ``[m]``, or None.

    Only for non-degenerate pairs, where orbit equality is the associate test.
    """
    A = p.algebra
    candidates = []
    if p.mode == HYPERSURFACE:
        soc = socle(A)
        coords = solve(list(p.U.basis) + list(soc.basis), m)
        u = tuple(ZERO for _ in m)
        if coords is not None:
            for c, b in zip(coords, p.U.basis):
                u = tuple(x + c * y for x, y in zip(u, b))
    else:
        u = m
    if any(u):
        candidates.append(one_param_limit(p, u).coords)
    tree = tree or generic_limit(p)
    candidates += [n.point.coords for n in tree.walk() if n.point is not None]
    for L in candidates:
        if same_orbit(p, L, m):
            return L
    return None


def replay(p, verdict, samples=DEFAULT_SAMPLES, height=DEFAULT_HEIGHT, seed=DEFAULT_SEED,
           quadratic_factoring=False):
    """Independently re-check a verdict; returns a list of failure messages (empty = ok)."""
    cert = verdict.certificate
    if verdict.outcome == UNKNOWN:
        return [] if cert is None else ["unknown verdict must not carry a certificate"]
    if cert is None:
        return ["decided verdict without certificate"]
    A = p.algebra
    kind = cert.kind
    if kind == "DegreeGate":
        d = quiet_degree(p)
        if d != cert.data["degree"] or d in (2, 3) or verdict.outcome != NO:
            return [f"degree gate does not replay (degree {d})"]
        return []
    if kind == "PnSquareZero":
        ok = p.mode == PROJECTIVE_SPACE and ideal_power_basis(A, 2).dim == 0 and verdict.outcome == YES
        return [] if ok else ["m^2 is not zero"]
    if kind == "PnNonSquareZero":
        m = _parse_vec(cert.data["witness"])
        ok = p.mode == PROJECTIVE_SPACE and not m[0] and any(mul_vectors(A, m, m)) and verdict.outcome == NO
        return [] if ok else ["witness does not square to a nonzero element"]
    if kind == "UnreachableOrbit":
        m = _parse_vec(cert.data["witness"])
        if m[0] or not any(m) or not complement_test(p, m):
            return ["witness is not a boundary point"]
        tree = generic_limit(p, quadratic_factoring)
        if not tree.fully_resolved():
            return ["limit stratification is not fully resolved"]
        if not excludes(p, m, list(tree.walk()), quadratic_factoring):
            return ["witness orbit is not certifiably excluded from the limits"]
        return []
    if kind == "SocleExtension":
        B = Subspace.span([_parse_vec(r) for r in cert.data["subalgebra"]], A.dim)
        W = Subspace.span([_parse_vec(r) for r in cert.data["ideal"]], A.dim)
        return check_extension_fixed_point(p, B, W, _parse_vec(cert.data["witness"]))
    if kind == "CoreClassification":
        trace = reduce(p)
        again = classify_core(trace.core)
        if again.outcome != verdict.outcome or again.certificate.data["model"] != cert.data["model"]:
            return ["core classification does not replay"]
        if verdict.outcome == YES:
            if trace.steps:
                return ["core classification alone cannot certify a degenerate pair"]
            return _replay_yes(p, samples, height, seed)
        return []
    return [f"unknown certificate kind {kind}"]


def _replay_yes(p, samples, height, seed):
    tree = generic_limit(p)
    failures = []
    for m in sample_boundary_points(p, samples, height, seed):
        if reaching_limit(p, m, tree) is None:
            failures.append(f"no limit reaches the orbit of {_vec_str(m)}")
    return failures


__all__ = [
    "BilinearForm",
    "Certificate",
    "Verdict",
    "bilinear_form",
    "classify_core",
    "decide",
    "diagonalize_symmetric",
    "excludes",
    "pn_op_check",
    "reaching_limit",
    "recognize_socle_extension",
    "replay",
    "sample_boundary_points",
    "stratified_refute",
]

