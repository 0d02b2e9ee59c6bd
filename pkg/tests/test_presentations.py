import pytest

from grouploc import from_cycles, parse_cycles
from grouploc.errors import GenerationFails, OrderMismatch, RelatorFails
from grouploc.presentations import (CERT_COSET_ENUMERATION, Presentation, certify,
                                    todd_coxeter)


def test_certify_a5(A5):
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"])
    cert = certify(p, A5, A5.generators)
    assert cert.order == 60
    assert p.certified_order == 60
    assert p.certification == CERT_COSET_ENUMERATION


def test_certify_against_wrong_group(A6):
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"])
    with pytest.raises((GenerationFails, OrderMismatch)):
        certify(p, A6, [parse_cycles("(1,2)(3,4)", 6), parse_cycles("(1,3,5)", 6)])


def test_certify_wrong_images(A5):
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"])
    bad = [A5.generators[0], parse_cycles("(1,2,3,4,5)", 5)]  # order 5, relator b^3 fails
    with pytest.raises(RelatorFails) as err:
        certify(p, A5, bad)
    assert err.value.index == 1


def test_presented_order_independent_of_group():
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^7", "(a*b*a*b^-1)^4"])
    assert todd_coxeter(p) == 168
