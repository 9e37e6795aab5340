"""Shared measure corpus for protocol audits.

Twenty cases across the four protocols: monomial CDFs x^d for d up to 6
plus mixed polynomials, chosen so every audit stays decidable within the
default degree cap.
"""

from fractions import Fraction

from cakelab import Measure, Poly


def uniform(label="u"):
    return Measure.make(Poly.x(), label)


def power(d, label=None):
    return Measure.make(Poly.monomial(d), label or f"pow{d}")


def mixed_quadratic(label="mq"):
    # f = x/2 + x^2/2
    return Measure.make(Poly([0, Fraction(1, 2), Fraction(1, 2)]), label)


def mixed_quintic(label="mc"):
    # f = x/2 + x^5/2
    return Measure.make(Poly([0, Fraction(1, 2), 0, 0, 0, Fraction(1, 2)]), label)


def corpus():
    """(case id, protocol name, measures) for the twenty audit cases."""
    u, p, mq, mc = uniform, power, mixed_quadratic, mixed_quintic
    return [
        ("cc-uniform", "cut-and-choose", [u("a"), u("b")]),
        ("cc-square", "cut-and-choose", [u("a"), p(2, "b")]),
        ("cc-cube", "cut-and-choose", [u("a"), p(3, "b")]),
        ("cc-quartic", "cut-and-choose", [u("a"), p(4, "b")]),
        ("cc-quintic", "cut-and-choose", [u("a"), p(5, "b")]),
        ("cc-sextic", "cut-and-choose", [u("a"), p(6, "b")]),
        ("cc-quintic-first", "cut-and-choose", [p(5, "a"), u("b")]),
        ("cc-mixed", "cut-and-choose", [mq("a"), p(3, "b")]),
        ("cc-mixed-quintic", "cut-and-choose", [u("a"), mc("b")]),
        ("ld-uniform", "last-diminisher", [u("a"), u("b"), u("c")]),
        ("ld-quintic", "last-diminisher", [u("a"), u("b"), p(5, "c")]),
        ("ld-powers", "last-diminisher", [u("a"), p(2, "b"), p(3, "c")]),
        ("ld-square-first", "last-diminisher", [p(2, "a"), u("b"), p(3, "c")]),
        ("ld-two", "last-diminisher", [u("a"), p(5, "b")]),
        ("ep-uniform", "even-paz", [u("a"), u("b")]),
        ("ep-quintic", "even-paz", [u("a"), p(5, "b")]),
        ("ep-four", "even-paz", [u("a"), u("b"), u("c"), u("d")]),
        ("ep-three", "even-paz", [u("a"), u("b"), p(5, "c")]),
        ("sc-uniform", "selfridge-conway", [u("a"), u("b"), u("c")]),
        ("sc-square", "selfridge-conway", [u("a"), p(2, "b"), u("c")]),
    ]
