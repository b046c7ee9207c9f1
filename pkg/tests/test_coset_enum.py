"""Enumeration tests against brute-force multiplication-table oracles.

Each corpus presentation comes with a concrete model group (residues,
pairs, permutations).  The model's order is computed by closing the
generator set under multiplication - no group theory shortcuts - and the
relators are checked to hold in the model, so the expected index is
verified independently of the enumerator.
"""

import pytest

from sgcalc.coset_enum import (
    EnumResult,
    EnumerationError,
    TrivialityCertificate,
    certify_trivial,
    todd_coxeter,
)
from sgcalc.presentations import Presentation, abelianize, homology_invariants, smith_normal_form
from sgcalc.words import Alphabet, commutator


def closure_order(gens, mul, identity):
    """Brute-force multiplication table of the generated group."""
    elements = {identity}
    frontier = [identity]
    table = {}
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = mul(e, g)
                table[(e, g)] = prod
                if prod not in elements:
                    elements.add(prod)
                    nxt.append(prod)
        frontier = nxt
    # complete the table over all pairs (finite closure)
    for e in list(elements):
        for f in list(elements):
            prod = mul(e, f)
            table[(e, f)] = prod
            assert prod in elements
    return len(elements), table


def model_eval(word, assignment, mul, identity, inverse):
    out = identity
    for name, exp in word.letters():
        g = assignment[name] if exp > 0 else inverse(assignment[name])
        out = mul(out, g)
    return out


def cyclic_case(n):
    ab = Alphabet(("x",))
    p = Presentation(ab, (ab.gen("x", n),))
    model = dict(
        gens=[1 % n],
        assignment={"x": 1 % n},
        mul=lambda u, v: (u + v) % n,
        identity=0,
        inverse=lambda u: (-u) % n,
    )
    return p, model, n


def klein_case():
    ab = Alphabet(("a", "b"))
    a, b = ab.gen("a"), ab.gen("b")
    p = Presentation(ab, (a ** 2, b ** 2, (a * b) ** 2))
    model = dict(
        gens=[(1, 0), (0, 1)],
        assignment={"a": (1, 0), "b": (0, 1)},
        mul=lambda u, v: ((u[0] + v[0]) % 2, (u[1] + v[1]) % 2),
        identity=(0, 0),
        inverse=lambda u: u,
    )
    return p, model, 4


def sym3_case():
    ab = Alphabet(("a", "b"))
    a, b = ab.gen("a"), ab.gen("b")
    p = Presentation(ab, (a ** 2, b ** 2, (a * b) ** 3))

    def mul(u, v):
        return tuple(u[v[i]] for i in range(3))

    def inverse(u):
        out = [0] * 3
        for i, ui in enumerate(u):
            out[ui] = i
        return tuple(out)

    model = dict(
        gens=[(1, 0, 2), (0, 2, 1)],
        assignment={"a": (1, 0, 2), "b": (0, 2, 1)},
        mul=mul,
        identity=(0, 1, 2),
        inverse=inverse,
    )
    return p, model, 6


CORPUS = [cyclic_case(2), cyclic_case(3), cyclic_case(5), cyclic_case(12), klein_case(), sym3_case()]


@pytest.mark.parametrize("p, model, expected", CORPUS)
def test_index_matches_brute_force_order(p, model, expected):
    order, _ = closure_order(model["gens"], model["mul"], model["identity"])
    assert order == expected
    for r in p.relators:
        assert (
            model_eval(r, model["assignment"], model["mul"], model["identity"], model["inverse"])
            == model["identity"]
        )
    result = todd_coxeter(p, max_cosets=10_000)
    assert result.index == order


def test_cyclic_three_enumeration_trace():
    ab = Alphabet(("x",))
    p = Presentation(ab, (ab.gen("x", 3),))
    result = todd_coxeter(p, (), 100)
    assert result == EnumResult(index=3, defined=3, collapsed=0)


def test_subgroup_index():
    ab = Alphabet(("x",))
    p = Presentation(ab, (ab.gen("x", 12),))
    assert todd_coxeter(p, (ab.gen("x", 4),)).index == 4
    assert todd_coxeter(p, (ab.gen("x"),)).index == 1


def test_budget_exhaustion_is_a_value():
    ab = Alphabet(("x", "y"))
    free = Presentation(ab)  # free of rank 2: enumeration cannot close
    result = todd_coxeter(free, max_cosets=50)
    assert result.index is None
    assert result.defined == 50


def test_larger_budget_reproduces_index():
    p, _, _ = sym3_case()
    small = todd_coxeter(p, max_cosets=10_000)
    assert small.found
    again = todd_coxeter(p, max_cosets=100_000)
    assert again.index == small.index


def test_determinism():
    p, _, _ = sym3_case()
    assert todd_coxeter(p) == todd_coxeter(p)


def test_index_agrees_with_snf_on_abelian_presentations():
    ab = Alphabet(("x", "y"))
    x, y = ab.gen("x"), ab.gen("y")
    for relators in [
        (x ** 2, y ** 3, commutator(x, y)),
        (x ** 4, y ** 6, commutator(x, y)),
        (x ** 2 * y ** 2, x * ~y, commutator(x, y)),
    ]:
        p = Presentation(ab, relators)
        rank, _ = homology_invariants(p)
        assert rank == 0
        order = 1
        for d in smith_normal_form(abelianize(p)):
            order *= d
        assert todd_coxeter(p, max_cosets=10_000).index == order


def test_certify_trivial_examples():
    empty = Presentation(Alphabet(()))
    cert = certify_trivial(empty)
    assert isinstance(cert, TrivialityCertificate)
    assert cert.result.index == 1

    ab = Alphabet(("x",))
    # x^2 = x^3 = 1 forces x = 1 since gcd(2, 3) = 1
    p = Presentation(ab, (ab.gen("x", 2), ab.gen("x", 3)))
    cert = certify_trivial(p)
    assert isinstance(cert, TrivialityCertificate)
    assert cert.witnesses == (("x", 1, 1),)

    nontrivial = Presentation(ab, (ab.gen("x", 3),))
    out = certify_trivial(nontrivial)
    assert isinstance(out, EnumResult) and out.index == 3

    free = Presentation(Alphabet(("x", "y")))
    out = certify_trivial(free, max_cosets=30)
    assert isinstance(out, EnumResult) and out.index is None


def test_certify_matches_enumeration():
    for p, _, expected in CORPUS:
        outcome = certify_trivial(p, max_cosets=10_000)
        if expected == 1:
            assert isinstance(outcome, TrivialityCertificate)
        else:
            assert isinstance(outcome, EnumResult) and outcome.index == expected


def test_input_validation():
    ab = Alphabet(("x",))
    p = Presentation(ab, (ab.gen("x", 3),))
    with pytest.raises(EnumerationError):
        todd_coxeter(p, max_cosets=0)
    other = Alphabet(("y",))
    with pytest.raises(EnumerationError):
        todd_coxeter(p, (other.gen("y"),))
