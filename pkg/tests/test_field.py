import pytest

from fqtotient.errors import DomainError
from fqtotient.field import SUPPORTED_Q, FieldSpec


def test_supported_sizes(fields):
    for q, f in fields.items():
        assert f.q == q == f.p**f.k
        if f.k > 1:
            assert f.modulus[-1] == 1 and len(f.modulus) == f.k + 1


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_field_axioms_exhaustive(q):
    f = FieldSpec.for_q(q)
    elems = range(q)
    for a in elems:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a in elems:
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_element_encoding_is_base_p_digits(f4):
    # index p is the generator class
    g = f4.element_from_fp_coeffs([0, 1])
    assert g == 2
    assert f4.fp_coeffs(3) == (1, 1)  # g + 1
    assert f4.mul(g, g) == 3  # g^2 = g + 1 under x^2 + x + 1


def test_reducible_modulus_rejected():
    with pytest.raises(DomainError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2
    with pytest.raises(DomainError):
        FieldSpec(2, 4, (1, 0, 0, 0, 1))  # x^4 + 1 = (x+1)^4 over F_2


def test_unsupported_q_rejected():
    with pytest.raises(DomainError):
        FieldSpec.for_q(6)
    with pytest.raises(DomainError):
        FieldSpec.for_q(32)


def test_extension_degree_beyond_exhaustive_check_rejected():
    # the irreducibility validation is only exhaustive for k <= 4
    with pytest.raises(DomainError):
        FieldSpec(2, 5, (1, 0, 1, 0, 0, 1))


def test_inverse_table_complete(fields):
    for f in fields.values():
        for a in range(1, f.q):
            assert f.mul(a, f.inv(a)) == 1
