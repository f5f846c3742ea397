import numpy as np
import pytest

from tapestry.algebra import FFMatrix, TableTooLarge, conjugacy_partition, sl2_elements, sl2_group


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_group_order(p):
    assert sl2_group(p).order == p * (p * p - 1)
    assert len(sl2_elements(p)) == p * (p * p - 1)


@pytest.mark.parametrize("p", [3, 5])
def test_tables_against_matrices(p):
    G = sl2_group(p)
    rng = np.random.default_rng(p)
    for _ in range(200):
        i, j = rng.integers(0, G.order, 2)
        assert G.matrix(int(G.mul[i, j])) == G.matrix(int(i)) @ G.matrix(int(j))
        assert (G.matrix(int(G.inv[i])) @ G.matrix(int(i))).is_identity()
    assert G.matrix(G.identity).is_identity()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_conjugacy_classes(p):
    table = conjugacy_partition(p)
    assert sum(c.size for c in table.classes) == p * (p * p - 1)
    # SL(2, q) with q odd has q + 4 classes
    assert len(table) == p + 4
    G = sl2_group(p)
    for c in table.classes:
        assert c.rep_index == min(c.members)
        assert G.traces[c.rep_index] == c.trace


def test_conjugation_table_sl_and_gl():
    G = sl2_group(5)
    T = G.conjugation_table("SL")
    g, x = 7, 33
    expect = G.mul[G.mul[g, x], G.inv[g]]
    assert T[g, x] == expect
    assert G.conjugation_table("GL").shape[0] == 2 * G.order


def test_evaluate_word_batch():
    G = sl2_group(5)
    a = G.index(FFMatrix([[1, 1], [0, 1]], 5))
    b = G.index(FFMatrix([[1, 0], [4, 1]], 5))
    rows = np.array([[a, b]])
    # braid relation holds for these two parabolics
    w = ((0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1))
    assert G.evaluate(w, rows)[0] == G.identity


def test_table_cap():
    with pytest.raises(TableTooLarge):
        sl2_group(29)
