"""Degeneration certificates: parameterized local maps whose expansion has a
prescribed leading term, verified by exact polynomial expansion.

A certificate witnesses that applying the eps-dependent maps to the source
yields eps^d * target plus error terms of strictly higher degree. Verification
expands the whole polynomial tensor and inspects each degree slice, so the
declared degrees are checked, never trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from ._combinat import multiset_permutations
from .scalars import CyclotomicElement, EpsPolynomial, as_eps
from .states import Partition, make_dicke, make_dicke_lambda, make_ghz, make_w
from .tensors import (
    LocalMapSet,
    SparseTensor,
    TensorShape,
    apply_local_maps,
    flattening_rank,
)
from .slocc import _canonical_cuts

# Matrices of EpsPolynomial entries, one per site.
EpsLocalMaps = LocalMapSet


@dataclass
class DegenerationCertificate:
    source: SparseTensor
    target: SparseTensor
    maps: EpsLocalMaps
    d: int
    e: int
    substitution_weights: tuple[int, ...] | None = None


@dataclass
class DegenerationReport:
    valid: bool
    measured_d: int | None
    measured_e: int | None
    detail: str = ""


def expand_certificate(cert: DegenerationCertificate) -> dict[int, SparseTensor]:
    """Exact expansion of (maps applied to source), sliced by eps-degree.

    Verification and interpolation-compilation share this single expansion;
    the slices above the leading degree are exactly the error tensors.
    """
    image = apply_local_maps(cert.maps, cert.source)
    max_deg = max((v.degree for v in image.entries.values()), default=-1)
    slices: dict[int, SparseTensor] = {}
    for deg in range(max_deg + 1):
        entries = {}
        for idx, poly in image.entries.items():
            c = poly.coeff_at(deg)
            entries[idx] = c
        t = SparseTensor(image.shape, entries)
        if not t.is_zero:
            slices[deg] = t
    return slices


def verify_degeneration(cert: DegenerationCertificate) -> DegenerationReport:
    """Check vanishing below degree d and exact equality with the target at d."""
    if len(cert.maps) != cert.source.parties:
        raise ValueError("one map per source party required")
    slices = expand_certificate(cert)
    if not slices:
        return DegenerationReport(False, None, None, "expansion is identically zero")
    measured_d = min(slices)
    measured_e = max(slices) - measured_d
    if measured_d != cert.d:
        return DegenerationReport(
            False, measured_d, measured_e,
            f"leading degree is {measured_d}, certificate declares {cert.d}",
        )
    lead = slices[measured_d]
    if lead.shape != cert.target.shape or lead.entries != cert.target.entries:
        return DegenerationReport(
            False, measured_d, measured_e, "leading coefficient differs from target"
        )
    return DegenerationReport(True, measured_d, measured_e)


def specialize_maps(cert: DegenerationCertificate, eps0) -> list[list[list]]:
    """Evaluate every polynomial map entry at a concrete parameter value."""
    return [
        [[as_eps(entry).evaluate(eps0) for entry in row] for row in matrix]
        for matrix in cert.maps
    ]


def identity_certificate(state: SparseTensor) -> DegenerationCertificate:
    maps = [
        [
            [as_eps(Fraction(1) if i == j else Fraction(0)) for j in range(dim)]
            for i in range(dim)
        ]
        for dim in state.shape.dims
    ]
    return DegenerationCertificate(state, state, maps, 0, 0)


def w_from_ghz(k: int) -> DegenerationCertificate:
    """Degenerate the level-2 GHZ state onto the k-party W state.

    Per site the map sends |0> to |0> + eps|1> and collapses |1> onto |0>,
    with a sign at the first site folding in the invertible diagonal map that
    turns the GHZ state into the difference of the two product terms. The
    expansion is then prod(|0> + eps|1>) - |0...0>, whose degree-w slice is
    the weight-w symmetric sum: leading degree 1 (the W state), error
    degree k - 1.
    """
    if k < 2:
        raise ValueError("need at least 2 parties")
    one, eps, zero = as_eps(1), EpsPolynomial.eps(), as_eps(0)
    first = [[one, as_eps(-1)], [eps, zero]]
    rest = [[one, one], [eps, zero]]
    maps = [first] + [rest] * (k - 1)
    return DegenerationCertificate(make_ghz(2, k), make_w(k), maps, 1, k - 1)


def dicke_from_ghz(m: int, n: int) -> DegenerationCertificate:
    """Degenerate GHZ_(min(m,n)+1) onto the two-letter Dicke state on m+n
    sites with min(m,n) ones.

    The construction averages the product vectors (|0> + eps*zeta^i |1>) over
    the (min+1)-st roots of unity with phases zeta^(-min*i): a weight-w term
    picks up eps^w and survives the averaging iff w = min mod (min+1), so the
    surviving degrees are min, 2*min+1, ... The leading and error degrees are
    measured from the exact expansion rather than assumed.
    """
    if m < 0 or n < 0 or m + n < 2:
        raise ValueError("need m + n >= 2")
    low, high = min(m, n), max(m, n)
    k = m + n
    order = low + 1
    zeta = CyclotomicElement.zeta(order)
    norm = Fraction(1, order)
    plain_cols = []
    scaled_cols = []
    for i in range(order):
        phase = zeta**i
        plain_cols.append((as_eps(1), EpsPolynomial.eps() * phase))
        pref = (zeta ** (-low * i)) * norm
        scaled_cols.append((as_eps(pref), EpsPolynomial.eps() * (phase * pref)))
    def matrix_from(cols):
        return [
            [cols[i][0] for i in range(order)],
            [cols[i][1] for i in range(order)],
        ]
    maps = [matrix_from(scaled_cols)] + [matrix_from(plain_cols)] * (k - 1)
    target = make_dicke(high, low)
    cert = DegenerationCertificate(make_ghz(order, k), target, maps, low, 0)
    slices = expand_certificate(cert)
    measured_d = min(slices)
    cert.d = measured_d
    cert.e = max(slices) - measured_d
    lead = slices[measured_d]
    assert lead.entries == target.entries, "leading slice must be the Dicke state"
    return cert


def dicke_lambda_from_ghz(lam: Partition, k: int) -> DegenerationCertificate:
    """Degenerate GHZ_((lam_1+1)...(lam_d+1)) onto the multi-letter Dicke
    state via finite differences.

    Each letter t gets its own difference scheme with nodes (lam_t - i) * h_t
    and coefficients (-1)^i * C(lam_t, i); the t-th order difference kills
    letter counts below lam_t and leaves lam_t! at exactly lam_t. The steps
    h_t are powered into a single parameter, h_t = eps^(w_t) with
    w_t = (1 + lam_1)^(t-1), so distinct letter contents land on distinct
    weighted degrees where possible; the leading degree is measured exactly.
    """
    if k < lam.weight:
        raise ValueError("k must be at least the partition weight")
    d = len(lam)
    base = 1 + lam.parts[0]
    weights = tuple(base**t for t in range(d))
    node_tuples = list(_node_grid(lam.parts))
    level = 1
    for p in lam.parts:
        level *= p + 1
    norm = Fraction(1)
    for p in lam.parts:
        norm /= factorial(p)
    plain_cols = []
    scaled_cols = []
    for nodes in node_tuples:
        col = [as_eps(1)]
        for t in range(d):
            coeff = Fraction(lam.parts[t] - nodes[t])
            mono = [Fraction(0)] * weights[t] + [coeff]
            col.append(EpsPolynomial(tuple(mono)))
        plain_cols.append(col)
        c = norm
        for t in range(d):
            c *= Fraction((-1) ** nodes[t] * comb(lam.parts[t], nodes[t]))
        scaled_cols.append([entry * c for entry in col])
    def matrix_from(cols):
        return [[col[row] for col in cols] for row in range(d + 1)]
    maps = [matrix_from(scaled_cols)] + [matrix_from(plain_cols)] * (k - 1)
    target = make_dicke_lambda(lam, k)
    cert = DegenerationCertificate(
        make_ghz(level, k), target, maps, 0, 0, substitution_weights=weights
    )
    slices = expand_certificate(cert)
    measured_d = min(slices)
    cert.d = measured_d
    cert.e = max(slices) - measured_d
    assert slices[measured_d].entries == target.entries
    return cert


def multiset_permutations_range(parts):
    """Cartesian node grid 0..lam_t per coordinate, lexicographic."""
    from itertools import product as iproduct

    return iproduct(*[range(p + 1) for p in parts])


def _ghz_level(state: SparseTensor) -> int | None:
    dims = state.shape.dims
    a = dims[0]
    if any(d != a for d in dims):
        return None
    expected = {(i,) * state.parties: Fraction(1) for i in range(a)}
    return a if state.entries == expected else None


@dataclass
class BorderRankBounds:
    lower: int
    upper: int | None


def border_rank_bounds(
    psi: SparseTensor, cert: DegenerationCertificate | None = None
) -> BorderRankBounds:
    """Flattening lower bound and, given a verifying GHZ-source certificate
    for psi, the source level as an upper bound."""
    lower = max(flattening_rank(psi, S) for S in _canonical_cuts(psi.parties))
    upper = None
    if cert is not None:
        level = _ghz_level(cert.source)
        if level is None:
            raise ValueError("certificate source is not a GHZ state")
        if cert.target.entries != psi.entries or cert.target.shape != psi.shape:
            raise ValueError("certificate target differs from the given state")
        report = verify_degeneration(cert)
        if not report.valid:
            raise ValueError(f"certificate does not verify: {report.detail}")
        upper = level
    return BorderRankBounds(lower, upper)
