"""Nonexistence engine for Novikov structures on nilpotent Lie algebras.

Given a Lie algebra L with a basis adapted to its lower central series, the
pipeline introduces one unknown u(i,j,k) per potential product coefficient
(the coefficient of b_k in b_i . b_j), forces the zeros implied by the
lower-central grading, eliminates the three linear constraint families
(compatibility with the bracket, the cyclic product identity, and the operator
identity) by exact Gaussian elimination, and finally scans the quadratic
right-multiplication commutation constraints.  A quadratic constraint that
reduces to a nonzero constant refutes existence and is recorded as a
replayable certificate; otherwise a zero-assignment probe may exhibit an
actual Novikov structure, and anything else is reported as inconclusive.

All elimination is deterministic: constraints are generated in lexicographic
order and each constraint pivots on its least unknown.  Free-variable counts
after each stage equal dim^3 minus the rank of the cumulative linear system
and are therefore invariant under row reordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Iterable, Sequence

from .core import (Algebra, CheckReport, NovikovStructure, Q, QZERO,
                   check_compatibility, check_left_symmetric, check_lie,
                   check_novikov, check_operator_identity)
from .subspaces import Subspace, lower_central_series

CONST = -1  # pseudo-variable key for the constant term of a form

Form = dict[int, Q]  # affine form: var -> coeff, CONST -> constant term

LINEAR_FAMILIES = ("compatibility", "cyclic", "operator-identity")


class BasisNotAdapted(ValueError):
    pass


class SolverInputError(ValueError):
    pass


def unknown_index(i: int, j: int, k: int, dim: int) -> int:
    return (i * dim + j) * dim + k


def unknown_triple(u: int, dim: int) -> tuple[int, int, int]:
    return (u // (dim * dim), (u // dim) % dim, u % dim)


def _form_add(acc: Form, var: int, coeff: Q) -> None:
    if not coeff:
        return
    v = acc.get(var, QZERO) + coeff
    if v:
        acc[var] = v
    else:
        del acc[var]


class Eliminator:
    """Incremental exact Gaussian elimination in solved (fully substituted) form.

    ``subs`` maps a determined unknown to an affine form over surviving free
    unknowns only; forced zeros appear as empty forms.  The map is kept
    triangular by back-substituting every new pivot into existing entries.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.subs: dict[int, Form] = {}
        self.forced: set[int] = set()
        self._occ: dict[int, set[int]] = {}
        self.order: list[int] = []

    @property
    def free_count(self) -> int:
        return self.dim ** 3 - len(self.subs)

    def reduce(self, form: Form) -> Form:
        out: Form = {}
        for v, c in form.items():
            if v == CONST:
                _form_add(out, CONST, c)
            elif v in self.subs:
                for v2, c2 in self.subs[v].items():
                    _form_add(out, v2, c * c2)
            else:
                _form_add(out, v, c)
        return out

    def force_zero(self, u: int) -> None:
        if u in self.subs:
            raise ValueError(f"unknown {u} already determined")
        self.forced.add(u)
        self._install(u, {})

    def add_constraint(self, form: Form) -> Form | None:
        """Eliminate one constraint; returns the residual constant form if inconsistent."""
        g = self.reduce(form)
        vars_ = [v for v in g if v != CONST]
        if not vars_:
            if g.get(CONST):
                return g
            return None
        p = min(vars_)
        a = g.pop(p)
        rhs = {v: -c / a for v, c in g.items()}
        self._install(p, rhs)
        return None

    def _install(self, p: int, rhs: Form) -> None:
        for s in list(self._occ.get(p, ())):
            form_s = self.subs[s]
            coeff = form_s.pop(p)
            self._occ[p].discard(s)
            for v, c in rhs.items():
                before = v in form_s
                _form_add(form_s, v, coeff * c)
                after = v in form_s
                if v != CONST:
                    if after and not before:
                        self._occ.setdefault(v, set()).add(s)
                    elif before and not after:
                        self._occ[v].discard(s)
        self.subs[p] = rhs
        self.order.append(p)
        for v in rhs:
            if v != CONST:
                self._occ.setdefault(v, set()).add(p)
        self._occ.pop(p, None)


# ---------------------------------------------------------------------------
# constraint generation

@dataclass
class ConstraintBundle:
    """Raw constraints for a candidate Novikov product on a Lie algebra."""

    lie: Algebra
    strata: tuple[int, ...]          # lower-central stratum of each basis vector
    gamma_coords: tuple[frozenset[int], ...]  # coordinate set of each gamma term
    forced: tuple[int, ...]          # grading-forced zero unknowns, sorted

    def linear_family(self, name: str) -> list[Form]:
        if name == "compatibility":
            return _compatibility_forms(self.lie)
        if name == "cyclic":
            return _cyclic_forms(self.lie)
        if name == "operator-identity":
            return _operator_identity_forms(self.lie)
        raise KeyError(name)


def _gamma_coordinates(lie: Algebra) -> tuple[list[frozenset[int]], list[int]]:
    """Coordinate sets of the lower central series terms and per-basis strata.

    Requires every gamma term to be a coordinate subspace; the final entry of
    the returned list is the limit term (empty set if the series reaches zero,
    otherwise the stable term).
    """
    report = lower_central_series(lie)
    coords: list[frozenset[int]] = []
    for t, term in enumerate(report.terms):
        if not term.is_coordinate_subspace():
            bad = next(row for row in term.rows if sum(1 for c in row if c) != 1)
            raise BasisNotAdapted(
                f"basis not adapted to the lower central series: gamma_{t + 1} "
                f"contains the non-coordinate vector {bad}")
        coords.append(frozenset(term.pivots))
    if report.terminated:
        if coords[-1]:
            coords.append(frozenset())
    strata = []
    for b in range(lie.dim):
        stratum = max(m for m, cs in enumerate(coords, start=1) if b in cs)
        strata.append(stratum)
    return coords, strata


def grading_zeros(lie: Algebra) -> tuple[int, ...]:
    """Unknowns forced to zero by gamma_a . gamma_b being contained in gamma_{a+b-1}."""
    coords, strata = _gamma_coordinates(lie)
    d = lie.dim

    def gamma(m: int) -> frozenset[int]:
        return coords[min(m, len(coords)) - 1]

    forced = []
    for i in range(d):
        for j in range(d):
            target = gamma(strata[i] + strata[j] - 1)
            for k in range(d):
                if k not in target:
                    forced.append(unknown_index(i, j, k, d))
    return tuple(sorted(forced))


def _compatibility_forms(lie: Algebra) -> list[Form]:
    # u(i,j,k) - u(j,i,k) = c_{ij}^k
    d = lie.dim
    forms = []
    for i in range(d):
        for j in range(i + 1, d):
            br = lie.basis_product(i, j)
            for k in range(d):
                f: Form = {unknown_index(i, j, k, d): Q(1),
                           unknown_index(j, i, k, d): Q(-1)}
                c = br.get(k)
                if c:
                    f[CONST] = -c
                forms.append(f)
    return forms


def _cyclic_forms(lie: Algebra) -> list[Form]:
    # b_i.[b_j,b_k] + b_j.[b_k,b_i] + b_k.[b_i,b_j] = 0, componentwise
    d = lie.dim
    forms = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                pieces = ((i, lie.basis_product(j, k)),
                          (j, lie.basis_product(k, i)),
                          (k, lie.basis_product(i, j)))
                for l in range(d):
                    f: Form = {}
                    for a, br in pieces:
                        for m, c in br.items():
                            _form_add(f, unknown_index(a, m, l, d), c)
                    if f:
                        forms.append(f)
    return forms


def _operator_identity_forms(lie: Algebra) -> list[Form]:
    # entry (r, c) of L([bi,bj]) + ad([bi,bj]) - [ad(bi), L(bj)] - [L(bi), ad(bj)]
    d = lie.dim
    adcol = [[lie.basis_product(i, c) for c in range(d)] for i in range(d)]
    adrow = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for c in range(d):
            for r, q in adcol[i][c].items():
                adrow[i][r][c] = q
    forms = []
    for i in range(d):
        for j in range(i + 1, d):
            br = lie.basis_product(i, j)
            for r in range(d):
                for c in range(d):
                    f: Form = {}
                    const = QZERO
                    for t, q in br.items():
                        _form_add(f, unknown_index(t, c, r, d), q)  # L([bi,bj])
                        const += q * adcol[t][c].get(r, QZERO)      # ad([bi,bj])
                    # -[ad(bi), L(bj)] = -ad_i L_j + L_j ad_i
                    for s, q in adrow[i][r].items():
                        _form_add(f, unknown_index(j, c, s, d), -q)
                    for s, q in adcol[i][c].items():
                        _form_add(f, unknown_index(j, s, r, d), q)
                    # -[L(bi), ad(bj)] = -L_i ad_j + ad_j L_i
                    for s, q in adcol[j][c].items():
                        _form_add(f, unknown_index(i, s, r, d), -q)
                    for s, q in adrow[j][r].items():
                        _form_add(f, unknown_index(i, c, s, d), q)
                    if const:
                        _form_add(f, CONST, const)
                    if f:
                        forms.append(f)
    return forms


def setup(lie: Algebra) -> ConstraintBundle:
    """Validate the input and prepare grading zeros plus the constraint families."""
    rep = check_lie(lie)
    if not rep.passed:
        raise SolverInputError("input is not a Lie algebra: " + rep.describe(lie))
    coords, strata = _gamma_coordinates(lie)
    return ConstraintBundle(lie, tuple(strata), tuple(coords), grading_zeros(lie))


# ---------------------------------------------------------------------------
# quadratic scan

QForm = dict[object, Q]  # keys: CONST, var (int), or (var, var) sorted tuples


def _qform_add_product(acc: QForm, f: Form, g: Form) -> None:
    for v1, c1 in f.items():
        for v2, c2 in g.items():
            c = c1 * c2
            if v1 == CONST and v2 == CONST:
                key: object = CONST
            elif v1 == CONST:
                key = v2
            elif v2 == CONST:
                key = v1
            else:
                key = (v1, v2) if v1 <= v2 else (v2, v1)
            val = acc.get(key, QZERO) + c
            if val:
                acc[key] = val
            else:
                del acc[key]


def right_commutator_entry(i: int, j: int, r: int, c: int, dim: int,
                           resolve) -> QForm:
    """Entry (r, c) of [R(b_i), R(b_j)] with each unknown mapped through ``resolve``."""
    acc: QForm = {}
    for s in range(dim):
        f1 = resolve(unknown_index(s, i, r, dim))
        if f1:
            g1 = resolve(unknown_index(c, j, s, dim))
            if g1:
                _qform_add_product(acc, f1, g1)
        f2 = resolve(unknown_index(s, j, r, dim))
        if f2:
            g2 = resolve(unknown_index(c, i, s, dim))
            if g2:
                neg = {v: -q for v, q in f2.items()}
                _qform_add_product(acc, neg, g2)
    return acc


# ---------------------------------------------------------------------------
# results and certificates

@dataclass
class EliminationState:
    dim: int
    forced_zero: tuple[int, ...]
    eliminator: Eliminator
    stage_counts: list[tuple[str, int]] = field(default_factory=list)

    @property
    def free_count(self) -> int:
        return self.eliminator.free_count


@dataclass(frozen=True)
class Contradiction:
    kind: str                    # "quadratic" | "linear"
    pair: tuple[int, int] | None   # (i, j) of [R(b_i), R(b_j)], 0-based
    entry: tuple[int, int] | None  # (row, col) within the commutator
    constant: Q
    raw_form: tuple | None = None  # raw affine form for linear contradictions


@dataclass
class NonexistenceCertificate:
    """Replayable refutation: forced zeros + substitutions + one contradictory constraint."""

    algebra_name: str
    dim: int
    bracket: dict[tuple[int, int, int], Q]
    forced_zero: tuple[int, ...]
    substitutions: tuple[tuple[int, tuple[tuple[int, Q], ...]], ...]  # application order
    stage_counts: tuple[tuple[str, int], ...]
    contradiction: Contradiction

    def to_json(self) -> str:
        d = self.dim

        def fmt(q: Q) -> str:
            return str(q)

        doc = {
            "schema": 1,
            "kind": "novikov-nonexistence-certificate",
            "algebra": {
                "name": self.algebra_name,
                "dim": d,
                "bracket": [
                    {"i": i + 1, "j": j + 1, "k": k + 1, "c": fmt(c)}
                    for (i, j, k), c in sorted(self.bracket.items())
                ],
            },
            "forced_zero": [list(x + 1 for x in unknown_triple(u, d))
                            for u in self.forced_zero],
            "substitutions": [
                {"unknown": list(x + 1 for x in unknown_triple(u, d)),
                 "form": [[list(x + 1 for x in unknown_triple(v, d)) if v != CONST else "const",
                           fmt(c)] for v, c in terms]}
                for u, terms in self.substitutions
            ],
            "stage_counts": [[name, n] for name, n in self.stage_counts],
            "contradiction": {
                "kind": self.contradiction.kind,
                "pair": [p + 1 for p in self.contradiction.pair] if self.contradiction.pair else None,
                "entry": [e + 1 for e in self.contradiction.entry] if self.contradiction.entry else None,
                "constant": fmt(self.contradiction.constant),
                "raw_form": [[list(x + 1 for x in unknown_triple(v, d)) if v != CONST else "const",
                              fmt(c)] for v, c in self.contradiction.raw_form]
                if self.contradiction.raw_form else None,
            },
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "NonexistenceCertificate":
        doc = json.loads(text)
        if doc.get("schema") != 1 or doc.get("kind") != "novikov-nonexistence-certificate":
            raise ValueError("not a recognized certificate document")
        d = doc["algebra"]["dim"]

        def var(key) -> int:
            if key == "const":
                return CONST
            i, j, k = key
            return unknown_index(i - 1, j - 1, k - 1, d)

        bracket = {(e["i"] - 1, e["j"] - 1, e["k"] - 1): Q(e["c"])
                   for e in doc["algebra"]["bracket"]}
        forced = tuple(unknown_index(i - 1, j - 1, k - 1, d)
                       for i, j, k in doc["forced_zero"])
        subs = tuple(
            (var(s["unknown"]), tuple((var(v), Q(c)) for v, c in s["form"]))
            for s in doc["substitutions"])
        cd = doc["contradiction"]
        contradiction = Contradiction(
            kind=cd["kind"],
            pair=tuple(p - 1 for p in cd["pair"]) if cd["pair"] else None,
            entry=tuple(e - 1 for e in cd["entry"]) if cd["entry"] else None,
            constant=Q(cd["constant"]),
            raw_form=tuple((var(v), Q(c)) for v, c in cd["raw_form"])
            if cd["raw_form"] else None,
        )
        return cls(doc["algebra"]["name"], d, bracket, forced, subs,
                   tuple((n, c) for n, c in doc["stage_counts"]), contradiction)


@dataclass
class ProveResult:
    outcome: str  # "certificate" | "structure" | "inconclusive"
    stage_counts: tuple[tuple[str, int], ...]
    forced_count: int
    certificate: NonexistenceCertificate | None = None
    structure: NovikovStructure | None = None
    residual_count: int = 0
    failed_checks: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# driver

def _make_certificate(name: str, lie: Algebra, state: EliminationState,
                      contradiction: Contradiction) -> NonexistenceCertificate:
    elim = state.eliminator
    subs = tuple(
        (u, tuple(sorted(elim.subs[u].items())))
        for u in elim.order if u not in elim.forced)
    return NonexistenceCertificate(
        algebra_name=name, dim=lie.dim, bracket=dict(lie.constants),
        forced_zero=state.forced_zero, substitutions=subs,
        stage_counts=tuple(state.stage_counts), contradiction=contradiction)


def prove(lie: Algebra, name: str = "", case_split_depth: int = 0,
          shuffle_seed: int | None = None) -> ProveResult:
    """Run the full pipeline against a Lie algebra.

    ``shuffle_seed`` permutes the constraint-row order within each linear
    family; stage counts are rank-determined and therefore unaffected.
    """
    bundle = setup(lie)
    d = lie.dim
    elim = Eliminator(d)
    state = EliminationState(d, bundle.forced, elim)
    for u in bundle.forced:
        elim.force_zero(u)
    state.stage_counts.append(("grading-zeros", elim.free_count))
    rng = Random(shuffle_seed) if shuffle_seed is not None else None
    for fam in LINEAR_FAMILIES:
        forms = bundle.linear_family(fam)
        if rng is not None:
            rng.shuffle(forms)
        for f in forms:
            bad = elim.add_constraint(f)
            if bad is not None:
                contradiction = Contradiction(
                    "linear", None, None, bad[CONST],
                    raw_form=tuple(sorted(f.items(), key=lambda kv: kv[0])))
                state.stage_counts.append((fam, elim.free_count))
                cert = _make_certificate(name, lie, state, contradiction)
                return ProveResult("certificate", tuple(state.stage_counts),
                                   len(bundle.forced), certificate=cert)
        state.stage_counts.append((fam, elim.free_count))

    # quadratic scan
    cache: dict[int, Form] = {}

    def resolve(u: int) -> Form:
        f = cache.get(u)
        if f is None:
            f = elim.reduce({u: Q(1)})
            cache[u] = f
        return f

    residual = 0
    first_contradiction: Contradiction | None = None
    for i in range(d):
        for j in range(i + 1, d):
            for r in range(d):
                for c in range(d):
                    qf = right_commutator_entry(i, j, r, c, d, resolve)
                    if not qf:
                        continue
                    if len(qf) == 1 and CONST in qf:
                        first_contradiction = Contradiction(
                            "quadratic", (i, j), (r, c), qf[CONST])
                        cert = _make_certificate(name, lie, state, first_contradiction)
                        return ProveResult("certificate", tuple(state.stage_counts),
                                           len(bundle.forced), certificate=cert)
                    residual += 1

    # zero probe: free unknowns set to 0
    probe = _zero_probe(lie, elim)
    if probe is not None:
        return ProveResult("structure", tuple(state.stage_counts),
                           len(bundle.forced), structure=probe,
                           residual_count=residual)

    if case_split_depth > 0:
        found = _case_split_search(lie, bundle, case_split_depth, shuffle_seed)
        if found is not None:
            return ProveResult("structure", tuple(state.stage_counts),
                               len(bundle.forced), structure=found,
                               residual_count=residual)

    failed = _zero_probe_failures(lie, elim)
    return ProveResult("inconclusive", tuple(state.stage_counts),
                       len(bundle.forced), residual_count=residual,
                       failed_checks=failed)


def _probe_product(lie: Algebra, elim: Eliminator,
                   assignment: dict[int, Q] | None = None) -> Algebra:
    d = lie.dim
    assignment = assignment or {}
    constants: dict[tuple[int, int, int], Q] = {}
    for u in range(d ** 3):
        if u in elim.forced:
            continue
        form = elim.subs.get(u)
        if form is None:
            val = assignment.get(u, QZERO)
        else:
            val = form.get(CONST, QZERO)
            for v, c in form.items():
                if v != CONST:
                    val += c * assignment.get(v, QZERO)
        if val:
            constants[unknown_triple(u, d)] = val
    return Algebra(d, constants, lie.labels)


def _zero_probe(lie: Algebra, elim: Eliminator) -> NovikovStructure | None:
    product = _probe_product(lie, elim)
    ns = NovikovStructure(lie, product)
    if all(r.passed for r in ns.checks()):
        return ns
    return None


def _zero_probe_failures(lie: Algebra, elim: Eliminator) -> tuple[str, ...]:
    product = _probe_product(lie, elim)
    ns = NovikovStructure(lie, product)
    return tuple(r.name for r in ns.checks() if not r.passed)


def _case_split_search(lie: Algebra, bundle: ConstraintBundle, depth: int,
                       shuffle_seed: int | None) -> NovikovStructure | None:
    """Structure search only: pin surviving unknowns to zero, one at a time.

    Each split restricts the solution set, so a structure found in a branch is
    genuine, but branch failure proves nothing; refutation never relies on
    case splits.
    """
    elim = Eliminator(lie.dim)
    for u in bundle.forced:
        elim.force_zero(u)
    rng = Random(shuffle_seed) if shuffle_seed is not None else None
    for fam in LINEAR_FAMILIES:
        forms = bundle.linear_family(fam)
        if rng is not None:
            rng.shuffle(forms)
        for f in forms:
            if elim.add_constraint(f) is not None:
                return None
    return _case_split_recurse(lie, elim, depth)


def _case_split_recurse(lie: Algebra, elim: Eliminator,
                        depth: int) -> NovikovStructure | None:
    probe = _zero_probe(lie, elim)
    if probe is not None:
        return probe
    if depth == 0:
        return None
    free = [u for u in range(lie.dim ** 3) if u not in elim.subs]
    for u in free:
        branch = _clone_eliminator(elim)
        if branch.add_constraint({u: Q(1)}) is not None:
            continue
        found = _case_split_recurse(lie, branch, depth - 1)
        if found is not None:
            return found
    return None


def _clone_eliminator(elim: Eliminator) -> Eliminator:
    new = Eliminator(elim.dim)
    new.subs = {u: dict(f) for u, f in elim.subs.items()}
    new.forced = set(elim.forced)
    new._occ = {v: set(s) for v, s in elim._occ.items()}
    new.order = list(elim.order)
    return new


# ---------------------------------------------------------------------------
# certificate replay

def verify_certificate(cert: NonexistenceCertificate,
                       lie: Algebra | None = None) -> bool:
    """Re-derive the contradicting equation from raw constraints using only the
    recorded substitutions; True iff it reproduces the recorded nonzero constant."""
    if not cert.contradiction.constant:
        return False
    if lie is not None and dict(lie.constants) != cert.bracket:
        return False
    d = cert.dim
    table: dict[int, Form] = {u: {} for u in cert.forced_zero}
    for u, terms in cert.substitutions:
        if u in table:
            return False
        table[u] = {v: c for v, c in terms}

    def resolve(u: int) -> Form:
        f = table.get(u)
        if f is None:
            return {u: Q(1)}
        return f

    con = cert.contradiction
    if con.kind == "quadratic":
        if con.pair is None or con.entry is None:
            return False
        i, j = con.pair
        r, c = con.entry
        qf = right_commutator_entry(i, j, r, c, d, resolve)
        return qf == {CONST: con.constant}
    if con.kind == "linear":
        if not con.raw_form:
            return False
        acc: Form = {}
        for v, coeff in con.raw_form:
            if v == CONST:
                _form_add(acc, CONST, coeff)
            else:
                for v2, c2 in resolve(v).items():
                    _form_add(acc, v2, coeff * c2)
        return acc == {CONST: con.constant}
    return False
