"""Invariant aggregation, identity audits, and the dimension cross-checks.

Audited identities are data, not assertions: a failed entry carries a
witness (a generator with nonzero normal form, or the numeric mismatch)
and never aborts the report.  One inclusion in the classical chain is
genuinely questionable for germs like the cusp; the audit is the place
where that surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import free_vertex_count, resolve, satellite_count
from .errors import EquisingError, NotApplicable
from .esideals import (
    DeformationIdeals,
    deformation_ideals,
    degree_formula,
    es_basis_newton,
    es_ideal_newton,
)
from .linsys import KernelSolver
from .newton import is_nnd, is_sqh
from .parse import poly_text
from .poly import GLOBAL_DP, LOCAL_DS, LocalPoly, jacobian
from .stdbasis import IdealPresentation, ideal_equal, milnor_number


@dataclass
class AuditEntry:
    claim: str
    status: str  # "holds" | "fails" | "not-applicable"
    detail: str = ""

    def to_dict(self):
        return {"claim": self.claim, "status": self.status, "detail": self.detail}


@dataclass
class InvariantReport:
    germ: str
    smooth: bool
    mu: int
    tau: int
    tau_fix: int
    tau_s: int
    tau_es: int
    tau_es_fix: int
    deg_zs: int
    multiplicities: list
    total_multiplicities: list
    free_vertices: int
    satellites: int
    hilbert: tuple | None
    hilbert_consensus: bool | None
    straight: bool | None
    straight_witness: str | None
    base_dimensions: dict = field(default_factory=dict)
    audit: list = field(default_factory=list)

    def to_dict(self):
        return {
            "schema": "equising.invariants/1",
            "germ": self.germ,
            "smooth": self.smooth,
            "milnor": self.mu,
            "tjurina": self.tau,
            "tjurina_fix": self.tau_fix,
            "tau_s": self.tau_s,
            "tau_es": self.tau_es,
            "tau_es_fix": self.tau_es_fix,
            "deg_zs": self.deg_zs,
            "multiplicities": self.multiplicities,
            "total_multiplicities": self.total_multiplicities,
            "free_vertices": self.free_vertices,
            "satellites": self.satellites,
            "hilbert_dimension": list(self.hilbert) if self.hilbert else None,
            "hilbert_consensus": self.hilbert_consensus,
            "straight": self.straight,
            "straight_witness": self.straight_witness,
            "base_dimensions": self.base_dimensions,
            "audit": [e.to_dict() for e in self.audit],
        }

    def to_text(self):
        lines = [f"germ: {self.germ}"]
        if self.smooth:
            lines.append("smooth germ: empty essential tree, all gaps zero")
            return "\n".join(lines) + "\n"
        lines.append(
            f"mu = {self.mu}   tau = {self.tau}   tau_fix = {self.tau_fix}"
        )
        lines.append(
            f"tau_s = {self.tau_s} (= deg Z^s)   tau_es = {self.tau_es}   "
            f"tau_es_fix = {self.tau_es_fix}"
        )
        lines.append(
            f"m = {self.multiplicities}   mhat = {self.total_multiplicities}"
        )
        lines.append(
            f"free vertices = {self.free_vertices}   satellites = {self.satellites}"
        )
        if self.hilbert is not None:
            consensus = "consensus" if self.hilbert_consensus else "MISMATCH"
            lines.append(
                f"rooted Hilbert dimension = {self.hilbert} ({consensus})"
            )
        if self.straight is not None:
            verdict = "straight" if self.straight else "not straight"
            lines.append(f"straightness: {verdict}"
                         + (f" (witness {self.straight_witness})" if self.straight_witness else ""))
        lines.append("base space dimensions:")
        for key, val in self.base_dimensions.items():
            lines.append(f"  {key} = {val}")
        lines.append("audit:")
        for e in self.audit:
            detail = f"  [{e.detail}]" if e.detail else ""
            lines.append(f"  {e.claim}: {e.status}{detail}")
        return "\n".join(lines) + "\n"


def _inclusion_entry(claim, small, big):
    """Audit entry for an ideal inclusion, with a witness on failure."""
    for g in small.gens:
        nf = big.normal_form(g)
        if not nf.is_zero():
            return AuditEntry(
                claim, "fails",
                f"witness {poly_text(g)} has normal form {poly_text(nf)}",
            )
    return AuditEntry(claim, "holds")


def quotient_dimension(sub, full):
    """dim(full/sub) for ideals sub <= full of finite colength, by rank.

    Computed as the rank of the normal forms modulo ``sub`` of all
    monomial multiples of the generators of ``full`` up to the highest
    corner degree (multiples beyond it land in ``sub``).
    """
    hc = sub.highest_corner_degree()
    solver = KernelSolver(lambda c: c)
    rank = 0
    for g in full.gens:
        for d in range(hc + 1):
            for i in range(d + 1):
                multiple = g.mul_monomial((i, d - i))
                nf = sub.normal_form(multiple)
                if not nf.is_zero() and solver.add_row(dict(nf.terms)):
                    rank += 1
    return rank


def hilbert_dim(f, ideals=None):
    """The rooted-Hilbert-scheme dimension by four independent formulas.

    Returns ((by_free_vertices, by_quotient, by_degree_formula, by_tau_s),
    consensus).  A mismatch is reported, never silently resolved.
    """
    if ideals is None:
        ideals = deformation_ideals(f)
    tree = ideals.tree
    by_free = free_vertex_count(tree)
    by_quotient = quotient_dimension(ideals.i_s, ideals.ies_fix)
    by_degree = degree_formula(tree) - ideals.tau_es - 2
    by_tau = ideals.tau_s - ideals.tau_es_fix
    values = (by_free, by_quotient, by_degree, by_tau)
    return values, len(set(values)) == 1


def straightness_check(f, ideals=None):
    """Does I^es equal <f, j(f), I^s>?  On failure returns a witness."""
    if ideals is None:
        ideals = deformation_ideals(f)
    fx, fy = jacobian(f)
    rhs = IdealPresentation([f, fx, fy] + list(ideals.i_s.gens), LOCAL_DS)
    if ideal_equal(ideals.ies, rhs):
        return True, None
    for g in ideals.ies.minimal_std():
        if not rhs.contains(g):
            return False, g
    for g in rhs.minimal_std():
        if not ideals.ies.contains(g):
            return False, g
    return False, None


def milnor_drop_check(f, g, samples):
    """Milnor numbers of f + t*g at the sampled rational values of t."""
    out = {}
    for t in samples:
        ft = f.add(g.scale(Fraction(t)))
        out[Fraction(t)] = milnor_number(ft)
    return out


def claims_audit(f, ideals=None):
    """Evaluate every audited identity independently; failures are data."""
    entries = []
    if f.multiplicity() < 2:
        for claim in _ALL_CLAIMS:
            entries.append(AuditEntry(claim, "not-applicable", "smooth germ"))
        return entries
    if ideals is None:
        ideals = deformation_ideals(f)
    entries.append(_inclusion_entry("Iea_fix subset Iea", ideals.iea_fix, ideals.iea))
    entries.append(_inclusion_entry("Iea subset Ies", ideals.iea, ideals.ies))
    entries.append(_inclusion_entry("Iea_fix subset Is", ideals.iea_fix, ideals.i_s))
    entries.append(_inclusion_entry("Is subset Ies_fix", ideals.i_s, ideals.ies_fix))
    entries.append(
        _inclusion_entry("Ies_fix subset Ies", ideals.ies_fix, ideals.ies)
    )
    gap = ideals.tau_fix - ideals.tau
    entries.append(
        AuditEntry(
            "tau_fix - tau = 2",
            "holds" if gap == 2 else "fails",
            f"gap {gap}",
        )
    )
    gap_es = ideals.tau_es_fix - ideals.tau_es
    entries.append(
        AuditEntry(
            "tau_es_fix - tau_es = 2",
            "holds" if gap_es == 2 else "fails",
            f"gap {gap_es}",
        )
    )
    formula = degree_formula(ideals.tree)
    ok = ideals.i_s.la_colength == formula == ideals.tau_s
    entries.append(
        AuditEntry(
            "deg Z^s = sum m_q(m_q+1)/2",
            "holds" if ok else "fails",
            f"kernel {ideals.i_s.la_colength}, formula {formula}, "
            f"colength {ideals.tau_s}",
        )
    )
    values, consensus = hilbert_dim(f, ideals)
    entries.append(
        AuditEntry(
            "rooted Hilbert dimension four-way",
            "holds" if consensus else "fails",
            f"free/quotient/degree/tau = {values}",
        )
    )
    straight, witness = straightness_check(f, ideals)
    entries.append(
        AuditEntry(
            "Ies = <f, j(f), Is>",
            "holds" if straight else "fails",
            "" if straight else f"witness {poly_text(witness)}",
        )
    )
    try:
        newton = es_ideal_newton(f)
        ok = ideal_equal(newton, ideals.ies)
        entries.append(
            AuditEntry(
                "Newton-order description of Ies",
                "holds" if ok else "fails",
                f"colength {newton.colength()} vs {ideals.tau_es}",
            )
        )
    except NotApplicable:
        entries.append(
            AuditEntry(
                "Newton-order description of Ies",
                "not-applicable",
                "neither semiquasihomogeneous nor Newton nondegenerate",
            )
        )
    fwd = (ideals.tau_fix - ideals.tau_es_fix, ideals.tau - ideals.tau_es)
    entries.append(
        AuditEntry(
            "forgetful isomorphism dimensions",
            "holds" if fwd[0] == fwd[1] else "fails",
            f"with section {fwd[0]}, without {fwd[1]}",
        )
    )
    return entries


_ALL_CLAIMS = [
    "Iea_fix subset Iea",
    "Iea subset Ies",
    "Iea_fix subset Is",
    "Is subset Ies_fix",
    "Ies_fix subset Ies",
    "tau_fix - tau = 2",
    "tau_es_fix - tau_es = 2",
    "deg Z^s = sum m_q(m_q+1)/2",
    "rooted Hilbert dimension four-way",
    "Ies = <f, j(f), Is>",
    "Newton-order description of Ies",
    "forgetful isomorphism dimensions",
]


def invariant_report(f):
    """Everything at once: invariants, dimensions, audits."""
    text = poly_text(f)
    if f.multiplicity() < 2:
        return InvariantReport(
            germ=text, smooth=True, mu=0, tau=0, tau_fix=0, tau_s=0,
            tau_es=0, tau_es_fix=0, deg_zs=0, multiplicities=[],
            total_multiplicities=[], free_vertices=0, satellites=0,
            hilbert=None, hilbert_consensus=None, straight=None,
            straight_witness=None, base_dimensions={},
            audit=claims_audit(f),
        )
    ideals = deformation_ideals(f)
    tree = ideals.tree
    mu = milnor_number(f)
    values, consensus = hilbert_dim(f, ideals)
    straight, witness = straightness_check(f, ideals)
    sum_ifix_is = IdealPresentation(
        list(ideals.i_s.gens) + list(ideals.iea_fix.gens), LOCAL_DS
    )
    base_dims = {
        "semiuniversal": ideals.tau,
        "semiuniversal_with_section": ideals.tau_fix,
        "equisingular": ideals.tau - ideals.tau_es,
        "equisingular_with_section": ideals.tau_fix - ideals.tau_es_fix,
        "straight_equisingular_signed": ideals.tau_fix - ideals.tau_s,
        "straight_tangent_honest": ideals.iea_fix.colength()
        - sum_ifix_is.colength(),
    }
    return InvariantReport(
        germ=text,
        smooth=False,
        mu=mu,
        tau=ideals.tau,
        tau_fix=ideals.tau_fix,
        tau_s=ideals.tau_s,
        tau_es=ideals.tau_es,
        tau_es_fix=ideals.tau_es_fix,
        deg_zs=degree_formula(tree),
        multiplicities=tree.multiplicity_vector(),
        total_multiplicities=tree.mhat_vector(),
        free_vertices=free_vertex_count(tree),
        satellites=satellite_count(tree),
        hilbert=values,
        hilbert_consensus=consensus,
        straight=straight,
        straight_witness=None if witness is None else poly_text(witness),
        base_dimensions=base_dims,
        audit=claims_audit(f, ideals),
    )
