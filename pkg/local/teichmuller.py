from typing import *

from algebra import Poly, Place
from local.local_element import LocalElement, residue_field


def teichmuller_lift(r: Poly, place: Place, N: int) -> LocalElement:
    """
    Teichmuller representative of a nonzero residue: the fixed point of y -> y^(q^d) above r.
    :param r: residue class, a polynomial of degree < deg(place)
    :param place: place
    :param N: precision
    :return: x with x^(q^d) = x mod pi^N and x = r mod pi
    """
    k = residue_field(place)
    r = r % k.modulus
    if r.is_zero():
        raise ValueError("The Teichmuller lift of zero is zero, not a unit")
    y = LocalElement.from_residue(place, r, N)
    # (1 + pi^k u)^(q^d) = 1 + pi^(k q^d) u^(q^d), so the exponent of the error at least doubles
    for _ in range(N.bit_length() + 2):
        nxt = y ** k.size
        if nxt.unit == y.unit:
            return y
        y = nxt
    raise AssertionError("Frobenius iteration failed to reach its fixed point")


def detect_root_of_unity(x: LocalElement) -> Optional[Poly]:
    """
    Residue r with x = teichmuller_lift(r) to the full relative precision of x, or None.
    """
    if x.is_zero() or x.valuation != 0:
        return None
    if x.precision < 2:
        raise ValueError("Root-of-unity detection needs at least two digits")
    r = x.residue()
    if teichmuller_lift(r, x.place, x.precision).unit == x.unit:
        return r
    return None
