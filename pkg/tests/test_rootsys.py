import pytest

from chevpres.rootsys import (DynkinDiagram, Rank2Type, build_affine_diagram, build_finite_diagram,
                              cartan_matrix, classify_pair, components, count_pairs_by_type,
                              finite_type, is_l_spherical, positive_roots, short_node)

R = Rank2Type


def test_affine_a3_is_a_cycle():
    D = build_affine_diagram("A", 3)
    assert D.nodes == (0, 1, 2, 3)
    assert all(e.multiplicity == 1 for e in D.edges)
    assert all(len(D.neighbours(v)) == 2 for v in D.nodes)
    assert classify_pair(D, 0, 1) == R.A2
    assert classify_pair(D, 0, 2) == R.A1xA1


def test_affine_b6_shape():
    D = build_affine_diagram("B", 6)
    assert len(D.nodes) == 7
    assert sum(e.multiplicity == 2 for e in D.edges) == 1
    assert sorted(len(D.neighbours(v)) for v in D.nodes).count(3) == 1   # one fork
    assert sorted(D.neighbours(2)) == [0, 1, 3]
    assert classify_pair(D, 5, 6) == R.C2
    assert short_node(D, 5, 6) == 6


def test_affine_a1_has_infinite_bond():
    D = build_affine_diagram("A", 1)
    assert D.edge(0, 1).label == "infinite"
    with pytest.raises(ValueError):
        count_pairs_by_type(D)


def oracle_counts(D):
    counts = {t: 0 for t in R}
    nodes = list(D.nodes)
    for x in range(len(nodes)):
        for y in range(x + 1, len(nodes)):
            e = D.edge(nodes[x], nodes[y])
            m = 0 if e is None else e.multiplicity
            counts[{0: R.A1xA1, 1: R.A2, 2: R.C2, 3: R.G2}[m]] += 1
    return counts


@pytest.mark.parametrize("letter,l,want", [
    ("A", 5, (9, 6, 0)),
    ("C", 6, (15, 4, 2)),
    ("F", 4, (6, 3, 1)),
])
def test_pair_count_examples(letter, l, want):
    n = count_pairs_by_type(build_affine_diagram(letter, l))
    assert (n[R.A1xA1], n[R.A2], n[R.C2]) == want


@pytest.mark.parametrize("letter,ls", [("A", range(3, 9)), ("B", range(3, 9)), ("C", range(3, 9)),
                                       ("D", range(4, 9)), ("E", (6, 7, 8)), ("F", (4,))])
def test_pair_counts_match_table_rows(letter, ls):
    for l in ls:
        D = build_affine_diagram(letter, l)
        n = count_pairs_by_type(D)
        assert n == {k: v for k, v in oracle_counts(D).items() if k != R.G2}
        L = l + 1
        total = L * (L - 1) // 2
        assert sum(n.values()) == total
        # the three pair-count columns of the table
        want = {
            "A": ((l + 1) * (l - 2) // 2, l + 1, 0),
            "B": (l * (l - 1) // 2, l - 1, 1),
            "C": (l * (l - 1) // 2, l - 2, 2),
            "D": (l * (l - 1) // 2, l, 0),
            "E": (l * (l - 1) // 2, l, 0),
            "F": (6, 3, 1),
        }[letter]
        assert (n[R.A1xA1], n[R.A2], n[R.C2]) == want


@pytest.mark.parametrize("letter,ls", [("A", range(2, 9)), ("B", range(3, 9)), ("C", range(2, 9)),
                                       ("D", range(4, 9)), ("E", (6, 7, 8)), ("F", (4,)), ("G", (2,))])
def test_affine_diagrams_are_l_spherical(letter, ls):
    for l in ls:
        assert is_l_spherical(build_affine_diagram(letter, l))


@pytest.mark.parametrize("name", ["A5", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"])
def test_finite_type_recognizes_whole_diagrams(name):
    D = build_finite_diagram(name)
    assert finite_type(D, D.nodes) == name
    assert len(components(D)) == 1


def test_finite_type_on_subdiagrams():
    D = build_finite_diagram("B", 6)
    assert finite_type(D, {4, 5, 6}) == "B3"
    assert finite_type(D, {5, 6}) == "C2"
    assert finite_type(D, {1, 2, 3}) == "A3"
    E = build_finite_diagram("E", 8)
    assert finite_type(E, {1, 2, 3, 4, 5}) == "D5"
    assert finite_type(E, {1, 2, 3, 4, 5, 6}) == "E6"
    assert sorted(map(sorted, components(D, {1, 2, 4, 5}))) == [[1, 2], [4, 5]]


def test_affine_e8_is_not_finite():
    D = build_affine_diagram("E", 8)
    assert finite_type(D, D.nodes) is None


def test_g2_pairs_unsupported_in_counts():
    with pytest.raises(ValueError):
        count_pairs_by_type(build_affine_diagram("G", 2))


@pytest.mark.parametrize("kind,n", [("A1", 1), ("A1xA1", 2), ("A2", 3), ("C2", 4), ("G2", 6)])
def test_positive_root_counts(kind, n):
    rs = positive_roots(kind)
    assert len(rs.positive_roots) == n
    assert all(rs.cartan[i, i] == 2 for i in range(rs.rank))


def test_c2_roots_with_alpha_short():
    assert positive_roots("C2").positive_roots == ((1, 0), (0, 1), (1, 1), (2, 1))
    assert positive_roots("B2").name == "C2"
    assert positive_roots(R.A2).positive_roots == ((1, 0), (0, 1), (1, 1))


def test_cartan_matrix_of_double_bond():
    D = build_finite_diagram("C", 2)
    A = cartan_matrix(D)
    assert sorted([A[0, 1], A[1, 0]]) == [-2, -1]


def test_diagram_json_roundtrip():
    for D in (build_affine_diagram("B", 6), build_affine_diagram("A", 1), build_affine_diagram("G", 2)):
        back = DynkinDiagram.from_json(D.to_json())
        assert back == D
    assert build_affine_diagram("B", 6).to_json()["edges"][-1][2].startswith("double>")
