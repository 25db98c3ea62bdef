import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_typify.algebra import COMPLEX, REAL, Multivector, Signature
from clifford_typify.errors import ParseError
from clifford_typify.textfmt import format_multivector, format_real, parse_binary, parse_multivector
from strategies import signatures

S3 = Signature(3, 0)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("e", {0: 1.0}),
        ("2", {0: 2.0}),
        ("e1 + e23", {1: 1.0, 6: 1.0}),
        ("-3*e12 + 0.5e3", {3: -3.0, 4: 0.5}),
        ("1.5E2 e1", {1: 150.0}),
        ("e1 - e1", {}),
        ("-e", {0: -1.0}),
    ],
)
def test_parse_real(text, expected):
    assert parse_multivector(text, S3) == Multivector(S3, expected)


def test_parse_complex():
    got = parse_multivector("(1-2i)*e1 + 3i e12 - i", S3, COMPLEX)
    assert got == Multivector(S3, {1: 1 - 2j, 3: 3j, 0: -1j}, COMPLEX)


def test_high_dimension_indices():
    sig = Signature(12, 0)
    u = parse_multivector("e1_12 + e10", sig)
    assert u == Multivector(sig, {(1 << 0) | (1 << 11): 1.0, 1 << 9: 1.0})
    assert format_multivector(u) == "e10 + e1_12"


@pytest.mark.parametrize(
    "text",
    ["", "e1 +", "e4", "e0", "e11", "2 e1 e2", "(1+2)", "e1 ^ e2", "3i e1", "e1__2"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_multivector(text, S3, REAL)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_multivector("e1 + $", S3)
    assert info.value.position == 5


@pytest.mark.parametrize(
    "sig,text,expected",
    [
        (Signature(2, 0), "e1 comm e2", "2*e12"),
        (Signature(2, 0), "e1 anti e2", "0"),
        (Signature(2, 0), "e1 + e2 * e1 - e2", "-2*e12"),
        (Signature(0, 1), "e + e1 prod e - e1", "2*e"),
        (Signature(2, 0), "e12", "e12"),
    ],
)
def test_binary(sig, text, expected):
    assert format_multivector(parse_binary(text, sig)) == expected


@pytest.mark.parametrize(
    "coeffs,field,expected",
    [
        ({}, REAL, "0"),
        ({0: 1.0}, REAL, "e"),
        ({0: -2.0, 3: 1.0}, REAL, "-2*e + e12"),
        ({1: -1.0, 2: -0.25}, REAL, "-e1 - 0.25*e2"),
        ({1: 1j}, COMPLEX, "1i*e1"),
        ({1: -2 + 1j}, COMPLEX, "-(2-1i)*e1"),
        ({1: 1e-20}, REAL, "1E-20*e1"),
    ],
)
def test_format(coeffs, field, expected):
    assert format_multivector(Multivector(S3, coeffs, field)) == expected


def test_format_real():
    assert format_real(3.0) == "3"
    assert format_real(0.1) == "0.1"
    assert format_real(2.0**60) == "1.152921504606847E+18"


finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e300, max_value=1e300)


@given(st.data())
def test_round_trip_exact(data):
    sig = data.draw(signatures(max_n=11))
    field = data.draw(st.sampled_from([REAL, COMPLEX]))
    masks = data.draw(st.lists(st.integers(0, sig.size - 1), max_size=5, unique=True))
    coeffs = {}
    for m in masks:
        re = data.draw(finite)
        coeffs[m] = complex(re, data.draw(finite)) if field == COMPLEX else re
    u = Multivector(sig, coeffs, field)
    assert parse_multivector(format_multivector(u), sig, field) == u
