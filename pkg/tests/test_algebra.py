"""Residue-product polynomials, multilinear reduction, rank and MIS oracles."""

import itertools
import math

import numpy as np
import pytest

from borsuk.algebra import (
    AvoidingFamily,
    certify_bound,
    coefficient_matrix,
    dimension_bound,
    evaluation_certificate,
    evaluation_matrix,
    excluded_residue,
    greedy_avoiding_family,
    independence_verify,
    max_avoiding_exact,
    monomial_basis,
    property_check,
    property_check_exhaustive,
    rank_gfp,
    rank_mod_p,
    reduce_multilinear,
    reduced_indicator,
    residue_excluded_dots,
    residue_product_polynomial,
    residue_value_table,
    sigma_gram,
    FormalPolynomial,
)
from borsuk.construction import sign_vectors, sigma_matrix
from borsuk.exactnum import binomial


def test_dimension_bound_values():
    assert dimension_bound(16, 5) == 2517
    assert dimension_bound(12, 5) == 794
    assert dimension_bound(8, 5) == 163
    for n, p in [(8, 3), (12, 5), (16, 5)]:
        assert dimension_bound(n, p) == sum(math.comb(n, i) for i in range(p))


def test_excluded_residue_and_dots():
    assert excluded_residue(5, 8) == (-8) % 5 == 2
    assert excluded_residue(3, 4) == 2
    # residues congruent to -a besides -a itself are never multiples of 4
    for n, p in [(8, 3), (12, 5), (16, 5)]:
        for t in residue_excluded_dots(n, p):
            assert t % 4 != 0


def test_residue_value_table_brute():
    for p, a in [(3, 4), (5, 8), (7, 8)]:
        table = residue_value_table(p, a)
        skip = excluded_residue(p, a)
        for s in range(p):
            want = 1
            for i in range(p):
                if i != skip:
                    want = want * (i - s) % p
            assert table[s] == want
        assert table[skip] != 0
        assert all(table[s] == 0 for s in range(p) if s != skip)


def test_residue_product_polynomial_evaluations():
    p, a = 3, 4
    vs = sign_vectors(8)
    x = vs[0]
    poly = residue_product_polynomial(x, p, a)
    assert poly.degree() == p - 1
    skip = excluded_residue(p, a)
    for y in vs[:12]:
        dot = sum(u * v for u, v in zip(x.entries, y.entries))
        want = 1
        for i in range(p):
            if i != skip:
                want = want * (i - dot) % p
        assert poly.evaluate(y.entries) == want


def test_residue_product_polynomial_input_checks():
    with pytest.raises(ValueError, match="p is not prime"):
        residue_product_polynomial((1, 1, -1, -1), 4, 4)
    with pytest.raises(ValueError, match="positive multiple of 4"):
        residue_product_polynomial((1, 1, -1, -1), 3, 3)


def test_reduce_multilinear_preserves_evaluations():
    # random dense-exponent polynomials, checked on every +-1 assignment
    rng = np.random.default_rng(7)
    n, p = 5, 5
    for _ in range(10):
        coeffs = {}
        for _ in range(8):
            expo = tuple(int(e) for e in rng.integers(0, 4, size=n))
            coeffs[expo] = int(rng.integers(1, p))
        poly = FormalPolynomial(n=n, p=p, coefficients=coeffs)
        red = reduce_multilinear(poly, p)
        assert red.degree() <= n
        for signs in itertools.product((1, -1), repeat=n):
            assert poly.evaluate(signs) == red.evaluate(signs)


def test_reduced_indicator_matches_symbolic_route_exhaustive():
    n, p, a = 8, 3, 4
    for x in sign_vectors(n):
        bulk = reduced_indicator(x.entries, p, a)
        symbolic = reduce_multilinear(residue_product_polynomial(x.entries, p, a), p)
        assert bulk.coefficients == symbolic.coefficients


def test_reduced_indicator_matches_symbolic_route_spot():
    n, p, a = 12, 5, 8
    for x in sign_vectors(n)[::97]:
        bulk = reduced_indicator(x.entries, p, a)
        symbolic = reduce_multilinear(residue_product_polynomial(x.entries, p, a), p)
        assert bulk.coefficients == symbolic.coefficients


def test_property_check_pointwise():
    vs = sign_vectors(12)
    G = sigma_gram(12)
    hit = np.argwhere(G == -8)
    i, j = hit[0]
    lhs, rhs = property_check(vs[i].entries, vs[j].entries, 5, 8)
    assert lhs and rhs
    # self-pair: (x, x) = 12 = -8 mod 5, the diagonal congruence
    lhs, rhs = property_check(vs[0].entries, vs[0].entries, 5, 8)
    assert lhs and rhs


@pytest.mark.parametrize("n,p,a", [(8, 3, 4), (12, 5, 8)])
def test_property_equivalence_exhaustive_desk(n, p, a):
    assert property_check_exhaustive(n, p, a) == 0


def test_evaluation_matrix_structure():
    n, p, a = 12, 5, 8
    fam = greedy_avoiding_family(n, -a)
    M = evaluation_matrix(fam.matrix(), p, a)
    assert (np.diag(M) != 0).all()
    off = M.copy()
    np.fill_diagonal(off, 0)
    assert not off.any()


def test_evaluation_certificate_rejects_forbidden_pair():
    vs = sign_vectors(12)
    G = sigma_gram(12)
    i, j = np.argwhere(G == -8)[0]
    members = np.array([vs[i].entries, vs[j].entries], dtype=np.int8)
    assert not evaluation_certificate(members, 5, 8)


def test_avoiding_family_rejects_forbidden_pair():
    vs = sign_vectors(12)
    G = sigma_gram(12)
    i, j = np.argwhere(G == -8)[0]
    with pytest.raises(ValueError, match="forbidden pair"):
        AvoidingFamily(members=(vs[i], vs[j]), forbidden=-8)


def test_independence_verify_input_checks():
    fam = greedy_avoiding_family(12, -8)
    assert independence_verify(fam, 5, 8)
    with pytest.raises(ValueError, match="n - 4p != -a"):
        independence_verify(fam, 5, 12)
    fam4 = greedy_avoiding_family(12, -4)
    with pytest.raises(ValueError, match="certificate needs -a"):
        independence_verify(fam4, 5, 8)


def test_greedy_family_deterministic_and_seeded():
    f1 = greedy_avoiding_family(12, -8)
    f2 = greedy_avoiding_family(12, -8)
    assert f1.members == f2.members
    f3 = greedy_avoiding_family(12, -8, seed=3)
    f4 = greedy_avoiding_family(12, -8, seed=3)
    assert f3.members == f4.members
    assert len(f1) <= 210 and len(f3) <= 210


def test_greedy_family_pool_restriction():
    pool = np.arange(100)
    fam = greedy_avoiding_family(12, -8, pool=pool)
    vs = sign_vectors(12)
    first100 = {v.entries for v in vs[:100]}
    assert all(m.entries in first100 for m in fam.members)


def _rank_oracle(rows, p):
    # plain integer row reduction mod p, no numpy
    A = [[c % p for c in row] for row in rows]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], p - 2, p)
        A[rank] = [v * inv % p for v in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(v - f * w) % p for v, w in zip(A[i], A[rank])]
        rank += 1
        if rank == len(A):
            break
    return rank


def test_rank_mod_p_against_oracle():
    rng = np.random.default_rng(11)
    for p in (3, 5, 7):
        for shape in [(6, 6), (10, 4), (4, 10), (12, 12)]:
            M = rng.integers(0, p, size=shape)
            assert rank_mod_p(M, p) == _rank_oracle(M.tolist(), p)
    # engineered rank deficiency
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank_mod_p(M, 7) == 2


def test_rank_of_full_family_frozen():
    # rank over GF(p) of all reduced polynomials; observed C(n-1, p-1)
    assert rank_mod_p(coefficient_matrix(8, 3, 4), 3) == 21 == binomial(7, 2)
    assert rank_mod_p(coefficient_matrix(12, 5, 8), 5) == 330 == binomial(11, 4)
    assert 330 <= dimension_bound(12, 5)


def test_coefficient_matrix_matches_symbolic_rows():
    n, p, a = 8, 3, 4
    basis = monomial_basis(n, p)
    index = {m: j for j, m in enumerate(basis)}
    C = coefficient_matrix(n, p, a)
    for i, x in enumerate(sign_vectors(n)):
        poly = reduced_indicator(x.entries, p, a)
        row = np.zeros(len(basis), dtype=np.int64)
        for mask, c in poly.coefficients.items():
            row[index[mask]] = c
        assert (C[i] % p == row % p).all()


def test_rank_gfp_certifies_family_independence():
    n, p, a = 12, 5, 8
    fam = greedy_avoiding_family(n, -a, seed=1)
    polys = [reduced_indicator(m.entries, p, a) for m in fam.members]
    assert rank_gfp(polys, p) == len(fam)


def test_max_avoiding_exact_values():
    assert max_avoiding_exact(8, -4) == 15
    assert max_avoiding_exact(4, -4) == 3  # no pair attains -4, whole set
    assert max_avoiding_exact(8, 7) == binomial(7, 3)  # odd dot: empty graph
    with pytest.raises(ValueError, match="exact search infeasible"):
        max_avoiding_exact(16, -4)


def test_max_avoiding_exact_main_case():
    assert max_avoiding_exact(12, -8) == 210


def test_certify_bound_frozen_desk_case():
    cert = certify_bound(12, 5, 8, seeds=8)
    assert cert.bound == 794
    assert cert.sigma_size == 462
    assert cert.mis_exact == 210
    assert cert.rank == 330 and cert.rank_full_family
    assert cert.vacuous  # 794 >= 462
    assert cert.verdict
    assert max(cert.family_sizes) <= cert.mis_exact


def test_certify_bound_relation_check():
    with pytest.raises(ValueError, match="n - 4p != -a"):
        certify_bound(12, 5, 4)
