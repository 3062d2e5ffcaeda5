import numpy as np
import pytest

from sparsebinom.family import f_poly
from sparsebinom.polycore import SparsePoly
from sparsebinom.roots.solver import PRECISION_LADDER, solve_sparse

# zeros of f_{2,4} = 5 + 6z + 4z^3 + z^6, computed independently with sympy nroots
F24_ROOTS = [
    -1.7154781029193822,
    -0.6573878175726412,
    complex(0.03705493164006774, 1.28691549495128),
    complex(0.03705493164006774, -1.28691549495128),
    complex(1.1493780286059438, 1.163530558945333),
    complex(1.1493780286059438, -1.163530558945333),
]


def match(found, expected, tol):
    remaining = list(found)
    for z in expected:
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
        assert abs(remaining[k] - z) < tol, (z, remaining[k])
        remaining.pop(k)


def test_factored_cubic():
    # f_{2,3} = (z + 1)(z^2 - z + 4)
    sol = solve_sparse(f_poly(2, 3))
    match(sol.roots, [-1, complex(0.5, 15**0.5 / 2), complex(0.5, -(15**0.5) / 2)], 1e-12)
    assert sorted(abs(z) for z in sol.roots) == pytest.approx([1, 2, 2], abs=1e-12)
    assert sum(sol.real) == 1
    assert all(r < 1e-10 for r in sol.radii)


def test_degree_six_against_oracle():
    sol = solve_sparse(f_poly(2, 4))
    match(sol.roots, F24_ROOTS, 1e-12)
    assert sum(sol.real) == 2


def test_radii_contain_reference_roots():
    sol = solve_sparse(f_poly(2, 4), residual_tol=1e-12)
    for z in F24_ROOTS:
        assert any(abs(w - z) <= r + 1e-15 for w, r in zip(sol.roots, sol.radii))


def test_deterministic_for_fixed_seed():
    a = solve_sparse(f_poly(3, 8), seed=3)
    b = solve_sparse(f_poly(3, 8), seed=3)
    assert a.roots == b.roots and a.radii == b.radii


def test_moderate_degree_all_roots_certified():
    p = f_poly(3, 12)
    sol = solve_sparse(p, residual_tol=1e-10)
    assert len(sol.roots) == p.degree == 220
    assert max(sol.radii) < 1e-10
    # every root of a positive-coefficient polynomial with f(0) != 0 is nonzero
    assert min(abs(z) for z in sol.roots) > 0


def test_double_root_is_clustered():
    # (z + 2)^2 (z - 3)
    p = SparsePoly.from_dense([-12, -8, 1, 1])
    sol = solve_sparse(p)
    assert len(sol.roots) == 3
    assert sorted(round(z.real, 6) for z in sol.roots) == [-2, -2, 3]
    assert len(sol.clusters) == 1 and len(sol.clusters[0]) == 2
    for i in sol.clusters[0]:
        assert abs(sol.roots[i] + 2) <= sol.radii[i] + 1e-15
        assert not sol.real[i]
    assert max(sol.radii) < 1e-10 * 2


def test_triple_root_cluster():
    # (z + 1)^3 (z^2 + 5)
    p = SparsePoly.from_dense([5, 15, 16, 8, 3, 1])
    sol = solve_sparse(p)
    assert sorted(len(c) for c in sol.clusters) == [3]


def test_precision_ladder_is_increasing():
    assert list(PRECISION_LADDER) == sorted(PRECISION_LADDER)
    assert PRECISION_LADDER[-1] == 4096


def test_linear():
    sol = solve_sparse(SparsePoly.from_dense([7, 1]))
    assert np.isclose(sol.roots[0], -7)
