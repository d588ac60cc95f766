"""The regression corpus: named germs with their frozen invariants.

The expected values were derived by hand chart computations (multiplicity
sequences, proximity bookkeeping, the degree formula) and by the quotient
staircases of the classical normal forms; they lock the engine against
regressions.  The runner re-derives everything and reports one row per
check so a failure names the broken invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .audit import claims_audit, hilbert_dim, straightness_check
from .blowup import pullback_total, resolve, validate_tree, free_vertex_count
from .esideals import deformation_ideals, degree_formula
from .newton import is_nnd
from .parse import parse_poly
from .stdbasis import milnor_number, tjurina_number


@dataclass(frozen=True)
class GermFixture:
    name: str
    text: str
    mu: int
    tau: int
    tau_s: int
    free: int
    multiplicities: tuple


CORPUS = [
    GermFixture("node", "xy", 1, 1, 3, 0, (2,)),
    GermFixture("cusp", "y2-x3", 2, 2, 5, 1, (2, 1, 1)),
    GermFixture("A4", "y2-x5", 4, 4, 8, 2, (2, 2, 1, 1)),
    GermFixture("A6", "y2-x7", 6, 6, 11, 3, (2, 2, 2, 1, 1)),
    GermFixture("D4", "x3+xy2", 4, 4, 6, 0, (3,)),
    GermFixture("D5", "x4+xy2", 5, 5, 8, 1, (3, 1, 1)),
    GermFixture("E6", "y3+x4", 6, 6, 9, 1, (3, 1, 1, 1)),
    GermFixture("E7", "y3+x3y", 7, 7, 10, 1, (3, 2, 1)),
    GermFixture("E8", "y3+x5", 8, 8, 11, 1, (3, 2, 1, 1)),
    GermFixture("ord3", "x3-y3", 4, 4, 6, 0, (3,)),
    GermFixture("ord4", "x4-y4", 9, 9, 10, 0, (4,)),
    GermFixture("ord5", "x5-y5", 16, 16, 15, 0, (5,)),
    GermFixture("cusp35", "x3-y5", 8, 8, 11, 1, (3, 2, 1, 1)),
    GermFixture("cusp45", "x4-y5", 12, 12, 14, 1, (4, 1, 1, 1, 1)),
    GermFixture("big", "(y3+x7)*(y3+x10)", 71, 59, 57, 3, (6, 6, 4, 1, 1, 1, 1, 1)),
]


def corpus_fixture(name):
    for fx in CORPUS:
        if fx.name == name:
            return fx
    raise KeyError(name)


def run_germ_checks(fixture):
    """All per-germ corpus checks; returns [(check name, ok, detail)]."""
    rows = []
    f = parse_poly(fixture.text)
    tree = resolve(f)
    problems = validate_tree(tree)
    rows.append(
        (
            "resolution-invariants",
            not problems and tuple(tree.multiplicity_vector()) == fixture.multiplicities,
            "; ".join(problems) or f"m={tree.multiplicity_vector()}",
        )
    )
    mu, tau = milnor_number(f), tjurina_number(f)
    rows.append(
        (
            "milnor-tjurina",
            (mu, tau) == (fixture.mu, fixture.tau),
            f"mu={mu} tau={tau}",
        )
    )
    # total-transform multiplicities against honest chart-chain pullbacks
    ok = True
    for p in tree.points:
        direct = pullback_total(tree, p.pid, f, trunc=p.mhat + 1).multiplicity()
        if direct != p.mhat:
            ok = False
    rows.append(("mhat-direct-pullback", ok, ""))
    ideals = deformation_ideals(f, tree)
    formula = degree_formula(tree)
    rows.append(
        (
            "degree-formula",
            ideals.i_s.la_colength == formula == ideals.tau_s == fixture.tau_s,
            f"kernel={ideals.i_s.la_colength} formula={formula} "
            f"colength={ideals.tau_s}",
        )
    )
    values, consensus = hilbert_dim(f, ideals)
    rows.append(
        (
            "hilbert-four-way",
            consensus and values[0] == fixture.free,
            f"values={values}",
        )
    )
    gaps = (ideals.tau_fix - ideals.tau, ideals.tau_es_fix - ideals.tau_es)
    rows.append(("tjurina-gaps", gaps == (2, 2), f"gaps={gaps}"))
    if is_nnd(f):
        straight, witness = straightness_check(f, ideals)
        rows.append(("straightness-nnd", straight, ""))
    else:
        rows.append(("straightness-nnd", None, "not Newton nondegenerate"))
    audit = claims_audit(f, ideals)
    unexpected = [
        e.claim
        for e in audit
        if e.status == "fails" and e.claim != "Iea_fix subset Is"
    ]
    rows.append(
        (
            "claims-audit",
            not unexpected,
            "unexpected failures: " + ", ".join(unexpected) if unexpected else "",
        )
    )
    return rows


def run_corpus(names=None):
    """Run every fixture; returns (rows, ok) with rows (germ, check, ok, detail)."""
    selected = [fx for fx in CORPUS if names is None or fx.name in names]
    table = []
    all_ok = True
    for fx in selected:
        for check, ok, detail in run_germ_checks(fx):
            table.append((fx.name, check, ok, detail))
            if ok is False:
                all_ok = False
    return table, all_ok
