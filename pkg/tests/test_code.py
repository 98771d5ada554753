"""code: stabilizers, codewords, syndromes, brute-force distances."""

import pytest
from hypothesis import given, settings, strategies as st

from colexa import code as code_mod
from colexa import colex, ring
from colexa.code import PauliWord, symplectic_phase
from oracles import min_logical_weight_x, min_logical_weight_z


@pytest.fixture(scope="module")
def tetra3():
    return colex.build_tetrahedral(3)


def site(L, vertex):
    return list(L.vertex_ids).index(vertex)


def test_generator_counts(tetra3):
    _, C = tetra3
    assert C.n == 15
    assert C.G0.nrows == 4
    assert C.G1.rows == ((1,) * 15,)
    assert C.z_stab.nrows == 18
    assert all(sum(1 for e in r if e) == 8 for r in C.G0.rows)


def test_symplectic_phase_basics():
    X = PauliWord(5, (1,), (0,))
    Z = PauliWord(5, (0,), (1,))
    assert symplectic_phase(X, Z) == 1
    for d in (2, 3, 4, 7):
        XX = PauliWord(d, (1, 1), (0, 0))
        ZZc = PauliWord(d, (0, 0), (1, d - 1))
        assert symplectic_phase(XX, ZZc) == 0


def test_logical_pair_phase_one(tetra3):
    _, C = tetra3
    xbar = C.logical_x_words()[0]
    zbar = C.logical_z_words()[0]
    assert symplectic_phase(xbar, zbar) == 1


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7])
def test_verify_code_tetra(d):
    _, C = colex.build_tetrahedral(d)
    assert code_mod.verify_code(C).ok


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7])
def test_verify_code_triangle(d):
    _, C = colex.build_triangle_2d(d, 3)
    assert code_mod.verify_code(C).ok


def test_star_flip_breaks_commutation(tetra3):
    L, _ = tetra3
    bad = dict(L.star)
    bad[7] = not bad[7]
    C = code_mod.from_colex(L.with_star(bad), mu_prime=3, d=3)
    assert not code_mod.verify_code(C).ok


def test_codeword_counts_and_disjointness(tetra3):
    _, C = tetra3
    w0 = code_mod.codeword(C, 0)
    w1 = code_mod.codeword(C, 1)
    assert len(w0.terms) == len(w1.terms) == 3**4
    assert not (w0.terms & w1.terms)
    assert (0,) * 15 in w0.terms
    # x=0 terms are exactly the row span of G0
    assert w0.terms == frozenset(ring.iter_span(C.G0))
    # x=1 terms are all-ones plus span elements
    for t in w1.terms:
        shifted = tuple((e - 1) % 3 for e in t)
        assert shifted in w0.terms


def test_codeword_cap(tetra3):
    _, C = tetra3
    with pytest.raises(code_mod.CapExceeded):
        code_mod.codeword(C, 0, cap=10)


def test_syndrome_z_error_hits_cells(tetra3):
    L, C = tetra3
    E = PauliWord.single(3, 15, site(L, 0b1111), "Z")
    syn = code_mod.syndrome(C, E)
    assert syn[:4] == (1, 1, 1, 1)
    assert not any(syn[4:])
    E2 = PauliWord.single(3, 15, site(L, 0b1111), "Z", power=2)
    assert code_mod.syndrome(C, E2)[:4] == (2, 2, 2, 2)


def test_syndrome_x_error_hits_six_faces(tetra3):
    L, C = tetra3
    E = PauliWord.single(3, 15, site(L, 0b1111), "X")
    syn = code_mod.syndrome(C, E)
    assert not any(syn[:4])
    assert sum(1 for v in syn[4:] if v) == 6
    # the six flagged faces are exactly those containing vertex 1111
    faces = L.cells_of_dim(2)
    flagged = [i for i, v in enumerate(syn[4:]) if v]
    assert flagged == [i for i, f in enumerate(faces) if 15 in f.vertices]


def test_syndrome_stabilizer_is_silent(tetra3):
    _, C = tetra3
    for g in C.stabilizer_words():
        assert not any(code_mod.syndrome(C, g))


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_syndrome_homomorphism(data, tetra3):
    _, C = tetra3
    draw_word = lambda: PauliWord(
        3,
        tuple(data.draw(st.integers(0, 2)) for _ in range(15)),
        tuple(data.draw(st.integers(0, 2)) for _ in range(15)),
    )
    E1, E2 = draw_word(), draw_word()
    prod = PauliWord(
        3,
        tuple((a + b) % 3 for a, b in zip(E1.x_exp, E2.x_exp)),
        tuple((a + b) % 3 for a, b in zip(E1.z_exp, E2.z_exp)),
    )
    s1, s2, sp = (code_mod.syndrome(C, E) for E in (E1, E2, prod))
    assert sp == tuple((a + b) % 3 for a, b in zip(s1, s2))


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("dist", [3, 5])
def test_triangle_distance_matches_oracle(d, dist):
    _, C = colex.build_triangle_2d(d, dist)
    assert code_mod.distance(C, "x") == dist
    assert code_mod.distance(C, "z") == dist
    assert min_logical_weight_x(C.n, d, C.z_stab.rows, C.star_signs) == dist
    assert min_logical_weight_z(C.n, d, C.G0.rows, C.star_signs) == dist


@pytest.mark.parametrize("d", [2, 3])
def test_tetra_distance_matches_oracle(d):
    _, C = colex.build_tetrahedral(d)
    dx = code_mod.distance(C, "x")
    dz = code_mod.distance(C, "z")
    assert dx == min_logical_weight_x(C.n, d, C.z_stab.rows, C.star_signs)
    assert dz == min_logical_weight_z(C.n, d, C.G0.rows, C.star_signs)
    # regression pins, justified by the oracle agreement above
    assert (dx, dz) == (7, 3)


def test_distance_cap(tetra3):
    _, C = tetra3
    with pytest.raises(code_mod.CapExceeded):
        code_mod.distance(C, "x", cap=10)


def test_code_json_round_trip(tetra3):
    _, C = tetra3
    back = code_mod.code_from_json(code_mod.code_to_json(C))
    assert back.d == C.d and back.n == C.n
    assert back.G0.rows == C.G0.rows
    assert back.G1.rows == C.G1.rows
    assert back.z_stab.rows == C.z_stab.rows
    assert back.star_signs == C.star_signs
    assert back.z_logical.entries == C.z_logical.entries


def test_from_colex_rejects_bad_mu_prime(tetra3):
    L, _ = tetra3
    with pytest.raises(ValueError):
        code_mod.from_colex(L, mu_prime=1, d=3)
    with pytest.raises(ValueError):
        code_mod.from_colex(L, mu_prime=4, d=3)
