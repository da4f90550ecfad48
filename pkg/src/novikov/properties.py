"""Structural consequences of the Novikov axioms, run as a check suite.

These are the ideal/center/series facts a valid Novikov structure must
satisfy: both cyclic product identities, ideal closure of products and
commutators of the series terms, vanishing of center-times-commutator
products, and vanishing associators with a central slot.  The suite is used
both by the CLI ``check --checks lemmas`` path and by the property tests.
"""

from __future__ import annotations

from .core import (Algebra, CheckReport, NovikovStructure, Q, QZERO,
                   associator_sparse, commutator_sparse, multiply_sparse)
from .subspaces import (Subspace, bracket_space, center, derived_series,
                        is_two_sided_ideal, lower_central_series,
                        product_space, upper_central_series)


def _sparse_is_zero(v: dict) -> bool:
    return not v


def check_cyclic_identities(a: Algebra) -> CheckReport:
    """[x,y].z + [y,z].x + [z,x].y = 0 and x.[y,z] + y.[z,x] + z.[x,y] = 0.

    Both sums change at most by sign under permutations of (x, y, z), so
    basis triples with i <= j <= k suffice.
    """
    d = a.dim
    bas = [{i: Q(1)} for i in range(d)]
    for i in range(d):
        for j in range(i, d):
            cij = commutator_sparse(a, bas[i], bas[j])
            for k in range(j, d):
                cjk = commutator_sparse(a, bas[j], bas[k])
                cki = commutator_sparse(a, bas[k], bas[i])
                acc: dict[int, Q] = {}
                for left, right in ((cij, bas[k]), (cjk, bas[i]), (cki, bas[j])):
                    for t, c in multiply_sparse(a, left, right).items():
                        acc[t] = acc.get(t, QZERO) + c
                acc = {t: c for t, c in acc.items() if c}
                if acc:
                    return CheckReport("cyclic-left", False, (i, j, k), acc, {})
                acc = {}
                for left, right in ((bas[i], cjk), (bas[j], cki), (bas[k], cij)):
                    for t, c in multiply_sparse(a, left, right).items():
                        acc[t] = acc.get(t, QZERO) + c
                acc = {t: c for t, c in acc.items() if c}
                if acc:
                    return CheckReport("cyclic-right", False, (i, j, k), acc, {})
    return CheckReport("cyclic-identities", True)


def check_associator_bracket_identity(a: Algebra) -> CheckReport:
    """(x,y,z) = x.[y,z] + [z, x.y] + [x,z].y, valid in any left-symmetric algebra."""
    d = a.dim
    bas = [{i: Q(1)} for i in range(d)]
    for i in range(d):
        for j in range(d):
            xy = a.basis_product(i, j)
            for k in range(d):
                lhs = associator_sparse(a, bas[i], bas[j], bas[k])
                acc: dict[int, Q] = {}
                for t, c in multiply_sparse(a, bas[i], commutator_sparse(a, bas[j], bas[k])).items():
                    acc[t] = acc.get(t, QZERO) + c
                for t, c in commutator_sparse(a, bas[k], xy).items():
                    acc[t] = acc.get(t, QZERO) + c
                for t, c in multiply_sparse(a, commutator_sparse(a, bas[i], bas[k]), bas[j]).items():
                    acc[t] = acc.get(t, QZERO) + c
                rhs = {t: c for t, c in acc.items() if c}
                if lhs != rhs:
                    return CheckReport("associator-bracket-identity", False,
                                       (i, j, k), lhs, rhs)
    return CheckReport("associator-bracket-identity", True)


def check_central_associators(a: Algebra) -> CheckReport:
    """Associators vanish whenever one slot lies in the center."""
    z = center(a)
    d = a.dim
    from .core import vector_to_sparse
    centrals = [vector_to_sparse(row) for row in z.rows]
    bas = [{i: Q(1)} for i in range(d)]
    for zc, zv in enumerate(centrals):
        for i in range(d):
            for j in range(d):
                for slot, (x, y, w) in enumerate(((zv, bas[i], bas[j]),
                                                  (bas[i], zv, bas[j]),
                                                  (bas[i], bas[j], zv))):
                    if associator_sparse(a, x, y, w):
                        return CheckReport("central-associator", False, (zc, i, j),
                                           None, None,
                                           f"central vector in slot {slot}")
    return CheckReport("central-associator", True)


def series_ideals(a: Algebra) -> list[Subspace]:
    """All distinct nonzero terms of both series plus the upper central terms."""
    spaces: list[Subspace] = []
    for rep in (lower_central_series(a), derived_series(a), upper_central_series(a)):
        for t in rep.terms:
            if t.rank and t not in spaces:
                spaces.append(t)
    return spaces


def check_series_ideals(a: Algebra) -> CheckReport:
    """Products and commutators of series terms are again two-sided ideals."""
    spaces = series_ideals(a)
    for si, s in enumerate(spaces):
        if not is_two_sided_ideal(a, s):
            return CheckReport("series-ideals", False, (si,), None, None,
                               "series term is not a two-sided ideal")
        for tj, t in enumerate(spaces):
            for made, tag in ((product_space(a, s, t), "product"),
                              (bracket_space(a, s, t), "bracket")):
                if not is_two_sided_ideal(a, made):
                    return CheckReport("series-ideals", False, (si, tj), None,
                                       None, f"{tag} of series terms is not an ideal")
    return CheckReport("series-ideals", True)


def check_gamma_grading(a: Algebra) -> CheckReport:
    """gamma_{i+1} . gamma_{j+1} lies in gamma_{i+j+1} for all i, j >= 0."""
    rep = lower_central_series(a)
    terms = list(rep.terms)
    zero = Subspace.zero(a.dim)
    if rep.terminated and terms[-1].rank:
        terms.append(zero)

    def gamma(m: int) -> Subspace:
        return terms[min(m, len(terms)) - 1]

    top = len(terms) + 1
    for ai in range(1, top):
        for bi in range(1, top):
            ps = product_space(a, gamma(ai), gamma(bi))
            if not gamma(ai + bi - 1).contains(ps):
                return CheckReport("gamma-grading", False, (ai, bi), None, None,
                                   f"gamma_{ai}.gamma_{bi} escapes gamma_{ai + bi - 1}")
    return CheckReport("gamma-grading", True)


def check_center_annihilates_commutators(a: Algebra) -> CheckReport:
    """Z(A).[A,A] = [A,A].Z(A) = 0, and Z(A) is a two-sided ideal."""
    z = center(a)
    g2 = bracket_space(a, Subspace.full(a.dim), Subspace.full(a.dim))
    if product_space(a, z, g2).rank:
        return CheckReport("center-lemmas", False, None, None, None,
                           "Z(A).[A,A] is nonzero")
    if product_space(a, g2, z).rank:
        return CheckReport("center-lemmas", False, None, None, None,
                           "[A,A].Z(A) is nonzero")
    if not is_two_sided_ideal(a, z):
        return CheckReport("center-lemmas", False, None, None, None,
                           "Z(A) is not a two-sided ideal")
    return CheckReport("center-lemmas", True)


def lemma_suite(ns: NovikovStructure) -> list[CheckReport]:
    """The full structural suite for a Novikov structure's product algebra."""
    a = ns.product
    reports = [
        check_cyclic_identities(a),
        check_associator_bracket_identity(a),
        check_central_associators(a),
        check_series_ideals(a),
        check_gamma_grading(a),
        check_center_annihilates_commutators(a),
    ]
    # series computed from the product's commutators must match the bracket's
    for build in (lower_central_series, derived_series, upper_central_series):
        pa = build(a)
        pl = build(ns.lie)
        if pa.terms != pl.terms:
            reports.append(CheckReport("series-compatibility", False, None,
                                       pa.ranks(), pl.ranks(),
                                       f"{pa.kind} series differ between product and bracket"))
            break
    else:
        reports.append(CheckReport("series-compatibility", True))
    return reports
