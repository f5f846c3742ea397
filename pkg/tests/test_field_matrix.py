import numpy as np
import pytest

from tapestry.algebra import (FFMatrix, FieldElem, ModulusMismatch, SingularMatrix, check_prime,
                              inverse_mod, is_prime, matrix_arithmetic)


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert check_prime(7) == 7
    for bad in (0, 1, 4, 9, -5):
        with pytest.raises(ValueError):
            check_prime(bad)


def test_inverse_mod_exhaustive():
    for p in (2, 3, 5, 7, 13):
        for a in range(1, p):
            assert a * inverse_mod(a, p) % p == 1
    with pytest.raises(ZeroDivisionError):
        inverse_mod(0, 5)


def test_field_elem_arithmetic():
    a, b = FieldElem(3, 7), FieldElem(5, 7)
    assert a + b == 1
    assert a - b == 5
    assert a * b == 1
    assert a / b == 9 % 7
    assert (a ** 6) == 1          # Fermat
    assert -a == 4
    with pytest.raises(ModulusMismatch):
        a + FieldElem(1, 5)


def test_matrix_ops_match_integer_arithmetic():
    rng = np.random.default_rng(0)
    p = 11
    for _ in range(20):
        x = rng.integers(0, p, (3, 3))
        y = rng.integers(0, p, (3, 3))
        X, Y = FFMatrix(x, p), FFMatrix(y, p)
        assert np.array_equal((X @ Y).to_int64(), x @ y % p)
        d = int(round(np.linalg.det(x))) % p
        assert X.det() == d
        if d:
            assert (X @ X.inverse()).is_identity()
        else:
            with pytest.raises(SingularMatrix):
                X.inverse()


def test_matrix_power_and_helpers():
    a = FFMatrix([[1, 1], [0, 1]], 5)
    assert (a ** 5).is_identity()
    assert (a ** -1) == FFMatrix([[1, 4], [0, 1]], 5)
    assert matrix_arithmetic(a, op="trace") == 2
    assert matrix_arithmetic(a, op="det") == 1
    assert matrix_arithmetic(a, a) == a ** 2
    g = FFMatrix([[2, 0], [0, 3]], 5)
    assert a.conjugate_by(g) == g @ a @ g.inverse()


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        FFMatrix([[1]], 5) @ FFMatrix([[1]], 7)
