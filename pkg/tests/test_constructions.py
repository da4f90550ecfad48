"""Factories: free 3-step, cex13, triangular, filiform, registry.

GOLDEN_BRACKETS_N4 / GOLDEN_PRODUCTS_N4 are transcribed by hand and must never
be regenerated from the factory code they test.
"""

import re
from fractions import Fraction as Q

import pytest

from novikov.constructions import (FACTORY_FORMS, UnknownFactory, abelian,
                                   counterexample_13, filiform_f910,
                                   free_3step_lie, make_algebra, novikov_f910,
                                   novikov_free_3step, novikov_strictly_upper,
                                   standard_filiform, strictly_upper_triangular,
                                   upper_triangular)
from novikov.core import check_lie
from novikov.subspaces import Subspace, bracket_space, lower_central_series

GOLDEN_BRACKETS_N4 = """
[x1,x2]=y_{1,2}
[x1,x3]=y_{1,3}
[x1,x4]=y_{1,4}
[x1,y_{1,2}]=z_{1,1,2}
[x1,y_{1,3}]=z_{1,1,3}
[x1,y_{1,4}]=z_{1,1,4}
[x1,y_{2,3}]=z_{1,2,3}
[x1,y_{2,4}]=z_{1,2,4}
[x1,y_{3,4}]=z_{1,3,4}
[x2,x3]=y_{2,3}
[x2,x4]=y_{2,4}
[x2,y_{1,2}]=z_{2,1,2}
[x2,y_{1,3}]=z_{2,1,3}
[x2,y_{1,4}]=z_{2,1,4}
[x2,y_{2,3}]=z_{2,2,3}
[x2,y_{2,4}]=z_{2,2,4}
[x2,y_{3,4}]=z_{2,3,4}
[x3,x4]=y_{3,4}
[x3,y_{1,2}]=-z_{1,2,3}+z_{2,1,3}
[x3,y_{1,3}]=z_{3,1,3}
[x3,y_{1,4}]=z_{3,1,4}
[x3,y_{2,3}]=z_{3,2,3}
[x3,y_{2,4}]=z_{3,2,4}
[x3,y_{3,4}]=z_{3,3,4}
[x4,y_{1,2}]=-z_{1,2,4}+z_{2,1,4}
[x4,y_{1,3}]=-z_{1,3,4}+z_{3,1,4}
[x4,y_{1,4}]=z_{4,1,4}
[x4,y_{2,3}]=-z_{2,3,4}+z_{3,2,4}
[x4,y_{2,4}]=z_{4,2,4}
[x4,y_{3,4}]=z_{4,3,4}
"""

GOLDEN_PRODUCTS_N4 = """
x1.y_{1,2}=z_{1,1,2}/2
x1.y_{1,3}=z_{1,1,3}/2
x1.y_{1,4}=z_{1,1,4}/2
x1.y_{2,3}=z_{1,2,3}/2
x1.y_{2,4}=z_{1,2,4}/2
x1.y_{3,4}=z_{1,3,4}/2
x2.x1=-y_{1,2}
x2.y_{1,2}=z_{2,1,2}
x2.y_{1,3}=-z_{1,2,3}/2+z_{2,1,3}
x2.y_{1,4}=-z_{1,2,4}/2+z_{2,1,4}
x2.y_{2,3}=z_{2,2,3}/2
x2.y_{2,4}=z_{2,2,4}/2
x2.y_{3,4}=z_{2,3,4}/2
x3.x1=-y_{1,3}
x3.x2=-y_{2,3}
x3.y_{1,2}=-z_{1,2,3}+z_{2,1,3}
x3.y_{1,3}=z_{3,1,3}
x3.y_{1,4}=-z_{1,3,4}/2+z_{3,1,4}
x3.y_{2,3}=z_{3,2,3}
x3.y_{2,4}=-z_{2,3,4}/2+z_{3,2,4}
x3.y_{3,4}=z_{3,3,4}/2
x4.x1=-y_{1,4}
x4.x2=-y_{2,4}
x4.x3=-y_{3,4}
x4.y_{1,2}=-z_{1,2,4}+z_{2,1,4}
x4.y_{1,3}=-z_{1,3,4}+z_{3,1,4}
x4.y_{1,4}=z_{4,1,4}
x4.y_{2,3}=-z_{2,3,4}+z_{3,2,4}
x4.y_{2,4}=z_{4,2,4}
x4.y_{3,4}=z_{4,3,4}
y_{1,2}.x1=-z_{1,1,2}/2
y_{1,3}.x1=-z_{1,1,3}/2
y_{1,3}.x2=-z_{1,2,3}/2
y_{1,4}.x1=-z_{1,1,4}/2
y_{1,4}.x2=-z_{1,2,4}/2
y_{1,4}.x3=-z_{1,3,4}/2
y_{2,3}.x1=-z_{1,2,3}/2
y_{2,3}.x2=-z_{2,2,3}/2
y_{2,4}.x1=-z_{1,2,4}/2
y_{2,4}.x2=-z_{2,2,4}/2
y_{2,4}.x3=-z_{2,3,4}/2
y_{3,4}.x1=-z_{1,3,4}/2
y_{3,4}.x2=-z_{2,3,4}/2
y_{3,4}.x3=-z_{3,3,4}/2
"""

_TERM = re.compile(r"([+-]?)(x\d+|[yz]_\{[\d,]+\})(?:/(\d+))?")


def _parse_terms(expr: str) -> dict[str, Q]:
    out: dict[str, Q] = {}
    pos = 0
    for m in _TERM.finditer(expr):
        assert m.start() == pos, f"unparsed junk in {expr!r}"
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        denom = int(m.group(3) or 1)
        out[m.group(2)] = Q(sign, denom)
    assert pos == len(expr), f"unparsed tail in {expr!r}"
    return out


def _parse_table(text: str, bracket: bool):
    rows = []
    for line in text.strip().splitlines():
        lhs, rhs = line.split("=", 1)
        if bracket:
            left, right = lhs[1:-1].split(",", 1)
        else:
            left, right = lhs.split(".", 1)
        rows.append((left, right, _parse_terms(rhs)))
    return rows


def _constants_by_label(a):
    idx = {lab: i for i, lab in enumerate(a.labels)}
    out = {}
    for (i, j, k), c in a.constants.items():
        out.setdefault((a.labels[i], a.labels[j]), {})[a.labels[k]] = c
    return out, idx


def test_free3_dimensions():
    # n + n(n-1)/2 + n(n^2-1)/3
    assert free_3step_lie(2).dim == 5
    assert free_3step_lie(3).dim == 14
    assert free_3step_lie(4).dim == 30
    assert free_3step_lie(5).dim == 55
    assert free_3step_lie(6).dim == 91


def test_free3_rejects_small_n():
    with pytest.raises(ValueError):
        free_3step_lie(1)
    with pytest.raises(ValueError):
        novikov_free_3step(0)


def test_golden_n4_brackets_exact():
    nv = novikov_free_3step(4)
    assert nv.dim == 30
    table = _parse_table(GOLDEN_BRACKETS_N4, bracket=True)
    assert len(table) == 30
    got, _ = _constants_by_label(nv.lie)
    expected = {}
    for left, right, terms in table:
        expected[(left, right)] = terms
        expected[(right, left)] = {lab: -c for lab, c in terms.items()}
    assert got == expected


def test_golden_n4_products_exact():
    nv = novikov_free_3step(4)
    table = _parse_table(GOLDEN_PRODUCTS_N4, bracket=False)
    assert len(table) == 44
    got, _ = _constants_by_label(nv.product)
    expected = {(left, right): terms for left, right, terms in table}
    assert got == expected


def test_free3_factories_are_deterministic():
    a = novikov_free_3step(3)
    b = novikov_free_3step(3)
    assert a.lie == b.lie
    assert a.product == b.product
    assert a.lie.labels == b.lie.labels


def test_free3_n2_explicit():
    nv = novikov_free_3step(2)
    labs = nv.lie.labels
    assert labs == ("x1", "x2", "y_{1,2}", "z_{1,1,2}", "z_{2,1,2}")
    got, idx = _constants_by_label(nv.product)
    assert got[("x2", "x1")] == {"y_{1,2}": Q(-1)}
    assert got[("x1", "y_{1,2}")] == {"z_{1,1,2}": Q(1, 2)}
    assert got[("y_{1,2}", "x1")] == {"z_{1,1,2}": Q(-1, 2)}
    assert got[("x2", "y_{1,2}")] == {"z_{2,1,2}": Q(1)}
    assert ("x1", "x2") not in got  # x1.x2 = 0 in the normalization used
    assert nv.structure.is_valid()


def test_cex13_spot_brackets():
    a = counterexample_13().lie
    assert a.dim == 13
    assert a.basis_product(0, 1) == {4: Q(1)}     # [x1,x2] = x5
    assert a.basis_product(2, 3) == {4: Q(-1)}    # [x3,x4] = -x5
    assert a.basis_product(3, 6) == {8: Q(1), 12: Q(1)}  # [x4,x7] = x9 + x13
    assert a.basis_product(1, 6) == {12: Q(1)}    # [x2,x7] = x13
    assert a.basis_product(1, 0) == {4: Q(-1)}
    assert len([1 for (i, j, _) in a.constants if i < j]) == 16  # 15 brackets, one 2-term
    assert check_lie(a).passed


def test_triangular_dimensions_and_brackets():
    n4 = strictly_upper_triangular(4)
    assert n4.dim == 6
    t3 = upper_triangular(3)
    assert t3.dim == 6
    # [e12, e23] = e13 in n(3)
    n3 = strictly_upper_triangular(3)
    lab = {s: i for i, s in enumerate(n3.lie.labels)}
    out = n3.lie.basis_product(lab["e_{1,2}"], lab["e_{2,3}"])
    assert out == {lab["e_{1,3}"]: Q(1)}
    for n in (2, 3, 4, 5):
        assert check_lie(strictly_upper_triangular(n).lie).passed
        assert check_lie(upper_triangular(n).lie).passed


def test_triangular_series():
    assert lower_central_series(strictly_upper_triangular(4).lie).cls == 3
    assert lower_central_series(strictly_upper_triangular(5).lie).cls == 4
    t3 = upper_triangular(3).lie
    assert lower_central_series(t3).cls is None  # solvable, not nilpotent


def test_novikov_on_strictly_upper():
    for n in (2, 3, 4):
        nv = novikov_strictly_upper(n)
        assert nv.product is not None
        assert nv.structure.is_valid()
    with pytest.raises(ValueError):
        novikov_strictly_upper(5)


def test_filiform_f910_spot_values():
    for n in (7, 10):
        nv = novikov_f910(n, basis="e")
        lie = nv.lie
        # 1-based: [e2,e3]=e5, [e2,e4]=e6, [e2,e5]=(9/10)e7
        assert lie.basis_product(1, 2) == {4: Q(1)}
        assert lie.basis_product(1, 3) == {5: Q(1)}
        assert lie.basis_product(1, 4) == {6: Q(9, 10)}
        assert lie.basis_product(0, 1) == {2: Q(1)}  # [e1,e2]=e3
        # product spot values: e2.e2 = 3 e4, e1.e2 = e3
        assert nv.product.basis_product(1, 1) == {3: Q(3)}
        assert nv.product.basis_product(0, 1) == {2: Q(1)}


def test_filiform_f910_f_basis():
    nv = novikov_f910(8, basis="f")
    # [f_i,f_j] = 6(j-i) f_{i+j}, f_i.f_j = 6(j-1) f_{i+j}
    assert nv.lie.basis_product(1, 2) == {4: Q(6)}   # [f2,f3] = 6 f5
    assert nv.product.basis_product(2, 1) == {4: Q(6)}  # f3.f2 = 6 f5
    assert nv.product.basis_product(0, 0) == {}      # f1.f1 = 0
    assert nv.structure.is_valid()


def test_filiform_bases_are_conjugate():
    # the diagonal change e1 = f1/6, e_j = (j-2)! f_j maps one to the other
    from math import factorial
    n = 9
    e = novikov_f910(n, basis="e")
    f = novikov_f910(n, basis="f")
    scale = [Q(1, 6)] + [Q(factorial(j - 2)) for j in range(2, n + 1)]
    for (i, j, k), c in e.lie.constants.items():
        assert f.lie.constants[(i, j, k)] * scale[i] * scale[j] / scale[k] == c
    for (i, j, k), c in e.product.constants.items():
        assert f.product.constants[(i, j, k)] * scale[i] * scale[j] / scale[k] == c


def test_filiform_is_filiform():
    for n in (5, 9):
        lc = lower_central_series(novikov_f910(n).lie)
        assert lc.cls == n - 1
        assert lc.ranks() == tuple([n] + list(range(n - 2, -1, -1)))


def test_standard_filiform():
    nv = standard_filiform(5)
    assert nv.lie.basis_product(0, 1) == {2: Q(1)}
    assert nv.lie.basis_product(1, 2) == {}
    assert nv.product.basis_product(0, 1) == {2: Q(1)}
    assert nv.product.basis_product(1, 0) == {}
    assert lower_central_series(nv.lie).cls == 4
    assert nv.structure.is_valid()


def test_abelian():
    nv = abelian(3)
    assert nv.lie.constants == {} and nv.product.constants == {}
    assert nv.structure.is_valid()


def test_make_algebra_registry():
    assert make_algebra("cex13").name == "cex13"
    assert make_algebra("free3:4").dim == 30
    assert make_algebra("novikov-free3:2").product is not None
    assert make_algebra("nilt:4").dim == 6
    assert make_algebra("novikov-nilt:3").structure.is_valid()
    assert make_algebra("solvt:3").dim == 6
    assert make_algebra("filiform910:5:e").dim == 5
    assert make_algebra("filiform910:5:f").name.endswith(":f")
    assert make_algebra("stdfiliform:6").dim == 6
    assert make_algebra("abelian:2").dim == 2
    for bad in ("", "free3", "free3:x", "cex14", "filiform910:5:g", "nilt:-1"):
        with pytest.raises((UnknownFactory, ValueError)):
            make_algebra(bad)
    assert len(FACTORY_FORMS) == 9
