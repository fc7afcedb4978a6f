import pytest

from cohcfg.errors import UsageError
from cohcfg.gf import Field, QuadExtension, is_prime


# independent polynomial oracle: coefficient lists over GF(p), low degree
# first, reduction by long division

def oracle_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def oracle_mod(f, m, p):
    f = list(f)
    while len(f) >= len(m):
        c = f[-1] % p
        if c:
            shift = len(f) - len(m)
            for i, mc in enumerate(m):
                f[shift + i] = (f[shift + i] - c * mc) % p
        f.pop()
    while len(f) < len(m) - 1:
        f.append(0)
    return [c % p for c in f]


def code_of(coeffs, p):
    out = 0
    for c in reversed(coeffs):
        out = out * p + c
    return out


def coeffs_of(code, p, d):
    out = []
    for _ in range(d):
        out.append(code % p)
        code //= p
    return out


def test_char2_addition_is_xor():
    F = Field(2, 3)
    alpha = 2
    assert F.add(alpha, alpha) == 0
    for a in F.elements():
        for b in F.elements():
            assert F.add(a, b) == a ^ b


def test_gf8_multiplication_against_polynomial_oracle():
    F = Field(2, 3)
    assert F.modulus == (1, 1, 0, 1)
    m = list(F.modulus)
    for a in F.elements():
        for b in F.elements():
            fa, fb = coeffs_of(a, 2, 3), coeffs_of(b, 2, 3)
            expect = code_of(oracle_mod(oracle_mul(fa, fb, 2), m, 2), 2)
            assert F.mul(a, b) == expect
    # alpha * alpha^2 reduces to alpha + 1
    assert F.mul(2, 4) == 3


def test_gf9_multiplicative_order():
    F = Field(3, 2)
    for g in range(1, 9):
        assert F.pow(g, 8) == 1


def test_inverse_and_zero_division():
    for F in (Field(2, 4), Field(5, 1), Field(3, 2)):
        for a in range(1, F.q):
            assert F.mul(a, F.inv(a)) == 1
        with pytest.raises(ZeroDivisionError):
            F.inv(0)
        with pytest.raises(ZeroDivisionError):
            F.pow(0, -1)


def test_mixed_field_elements_rejected():
    a = Field(2, 3).element(3)
    b = Field(2, 4).element(3)
    with pytest.raises(UsageError):
        a + b


def test_traces_gf8():
    F = Field(2, 3)
    assert F.trace(0) == 0
    assert F.trace(1) == 1
    # alpha + alpha^2 + alpha^4 via the oracle
    m = list(F.modulus)
    sq = lambda c: code_of(oracle_mod(oracle_mul(coeffs_of(c, 2, 3),
                                                 coeffs_of(c, 2, 3), 2), m, 2), 2)
    alpha = 2
    assert F.trace(alpha) == alpha ^ sq(alpha) ^ sq(sq(alpha))
    assert F.trace(alpha) == 0


def test_trace_frobenius_invariance_exhaustive():
    for d in range(1, 7):
        F = Field(2, d)
        for x in F.elements():
            assert F.trace(F.mul(x, x)) == F.trace(x)


def test_trace_zero_hyperplane():
    sizes = {3: 4, 4: 8, 5: 16}
    for d, size in sizes.items():
        F = Field(2, d)
        t0 = F.trace_zero()
        assert len(t0) == size
        assert 0 in t0
        assert t0 == sorted(t0)
        # additive subgroup of index 2, closed under squaring
        for x in t0:
            for y in t0:
                assert F.add(x, y) in t0
            assert F.mul(x, x) in t0
    with pytest.raises(UsageError):
        Field(3, 2).trace_zero()


def test_gf8_trace_zero_exact():
    assert Field(2, 3).trace_zero() == [0, 2, 4, 6]


def test_frobenius_is_automorphism():
    for F in (Field(2, 3), Field(3, 2), Field(2, 5)):
        for a in F.elements():
            for b in F.elements():
                assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
                assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
        x = list(F.elements())
        for a in x:
            y = a
            for _ in range(F.d):
                y = F.frob(y)
            assert y == a


def test_fixed_moduli_are_verified_irreducible():
    assert Field(2, 4).modulus == (1, 1, 0, 0, 1)
    assert Field(2, 5).modulus == (1, 0, 1, 0, 0, 1)
    assert Field(3, 2).modulus == (1, 0, 1)
    with pytest.raises(UsageError):
        Field(2, 3, modulus=(1, 0, 0, 1))   # x^3 + 1 = (x+1)(x^2+x+1)
    with pytest.raises(UsageError):
        Field(4, 1)


def test_element_wrapper_arithmetic():
    F = Field(5, 1)
    a, b = F.element(2), F.element(4)
    assert (a + b).code == 1
    assert (a * b).code == 3
    assert (a / b).code == F.mul(2, F.inv(4))
    assert (a ** 4).code == 1
    assert a.frobenius() == a


def test_quad_extension_conjugation_and_norm():
    for d in (3, 4, 5):
        F = Field(2, d)
        Q = QuadExtension(F)
        assert F.trace(Q.nu) == 1
        fixed = 0
        for w in Q.elements():
            assert Q.conj(Q.conj(w)) == w
            s = Q.add(w, Q.conj(w))
            assert s[1] == 0               # w + conj(w) in the base field
            assert Q.norm(w) < F.q         # norm lands in the base field
            if Q.conj(w) == w:
                fixed += 1
            if w != (0, 0):
                assert Q.mul(w, Q.inv(w)) == (1, 0)
        assert fixed == F.q                # fixed points are exactly the base


def test_quad_extension_squaring():
    F = Field(2, 3)
    Q = QuadExtension(F)
    for w in Q.elements():
        assert Q.frob2(w) == Q.mul(w, w)


def test_quad_extension_needs_char2():
    with pytest.raises(UsageError):
        QuadExtension(Field(3, 1))


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
