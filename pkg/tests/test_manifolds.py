import pytest

from sgcalc.coset_enum import TrivialityCertificate, certify_trivial
from sgcalc.manifolds import (
    LagrangianTorusMark,
    ManifoldError,
    ManifoldState,
    Minimality,
    Parity,
    SurfaceMark,
    blow_up,
    classify,
    luttinger,
    resolve_intersection,
    symplectic_sum,
)
from sgcalc.presentations import Exactness, Presentation
from sgcalc.words import Alphabet, commutator


def four_torus_block():
    """Surgery template matching the -1/-1 block: marked tori and surfaces."""
    ab = Alphabet(("s1", "t1", "s2", "t2"))
    s1, t1, s2, t2 = (ab.gen(n) for n in ab.names)
    pres = Presentation(
        ab,
        (
            commutator(s1, t1),
            commutator(s2, t2),
            commutator(s1, s2),
            commutator(t1, s2),
        ),
        Exactness.SURJECTIVE_BOUND,
    )
    return ManifoldState(
        pi1=pres,
        euler=0,
        signature=0,
        symplectic=True,
        parity=Parity.EVEN,
        surfaces=(
            SurfaceMark("H", 1, 0, (s1, t1)),
            SurfaceMark("K", 1, 0, (s2, t2)),
        ),
        tori=(
            LagrangianTorusMark("T1", commutator(~t2, ~t1), s1, s2),
            LagrangianTorusMark("T2", commutator(~s1, t2), t1, t2 * s2 * ~t2),
        ),
        transverse_pairs=(("H", "K"),),
        two_torus_pattern=True,
    )


def trivial_odd_state(euler, signature, minimality=Minimality.UNKNOWN):
    p = Presentation(Alphabet(()), (), Exactness.SURJECTIVE_BOUND)
    return ManifoldState(
        pi1=p,
        euler=euler,
        signature=signature,
        symplectic=True,
        minimality=minimality,
        parity=Parity.ODD,
    )


# -- surface mark invariants ---------------------------------------------------

def test_genus_two_surface_needs_four_boundary_generators():
    ab = Alphabet(("s1", "t1", "s2", "t2"))
    with pytest.raises(ManifoldError):
        SurfaceMark("G", 2, 0, (ab.gen("s1"), ab.gen("t1")))
    with pytest.raises(ManifoldError):
        SurfaceMark("G", 1, 0, (ab.gen("s1"), ab.gen("t1")), meridian_killed=True)


# -- Luttinger surgery ----------------------------------------------------------

def test_luttinger_adds_surgery_relator():
    state = four_torus_block()
    ab = state.pi1.alphabet
    out = luttinger(state, "T1", 1, 0, -1)
    expected = commutator(ab.gen("t2", -1), ab.gen("t1", -1)) * ab.gen("s1", -1)
    assert out.pi1.relators[-1] == expected
    assert (out.euler, out.signature) == (0, 0)
    assert out.symplectic
    assert all(t.id != "T1" for t in out.tori)


def test_luttinger_second_torus_relator_is_conjugate_of_isolated_form():
    from sgcalc.words import are_conjugate

    state = four_torus_block()
    ab = state.pi1.alphabet
    out = luttinger(state, "T2", 0, 1, -1)
    raw = out.pi1.relators[-1]
    isolated = commutator(ab.gen("t2", -1), ab.gen("s1", -1)) * ab.gen("s2", -1)
    assert are_conjugate(raw, isolated)


def test_luttinger_rejects_bad_input():
    state = four_torus_block()
    with pytest.raises(ManifoldError):
        luttinger(state, "T1", 1, 0, 0)
    with pytest.raises(ManifoldError):
        luttinger(state, "T1", 2, 4, 1)
    with pytest.raises(ManifoldError):
        luttinger(state, "T9", 1, 0, 1)


def test_luttinger_minimality_rule_r1():
    state = four_torus_block()
    once = luttinger(state, "T1", 1, 0, -1)
    assert once.minimality is Minimality.UNKNOWN
    twice = luttinger(once, "T2", 0, 1, -1)
    assert twice.minimality is Minimality.MINIMAL
    assert twice.minimality_rules == ("R1",)


def test_luttinger_mixed_direction_breaks_r1():
    state = four_torus_block()
    once = luttinger(state, "T1", 1, 1, -1)
    twice = luttinger(once, "T2", 0, 1, -1)
    assert twice.minimality is Minimality.UNKNOWN


# -- blowups --------------------------------------------------------------------

def test_blow_up_arithmetic():
    state = four_torus_block()
    out = blow_up(state)
    assert (out.euler, out.signature) == (1, -1)
    assert out.parity is Parity.ODD
    assert out.minimality is Minimality.NOT_MINIMAL
    assert out.minimality_rules == ("R4",)
    assert out.pi1 == state.pi1


def test_blow_up_on_surface_kills_meridian_and_fixes_normal_bundle():
    state = four_torus_block()
    state = resolve_intersection(state, "H", "K", new_id="G")
    g = state.surface("G")
    assert g.genus == 2 and g.self_intersection == 2
    out = blow_up(state, on_surface="G", count=2)
    g = out.surface("G")
    assert g.meridian_killed and g.meridian_killed_reason
    assert g.self_intersection == 0 and g.normal_bundle == "trivial"
    assert g.carried_relators == state.pi1.relators
    assert (out.euler, out.signature) == (2, -2)


def test_blow_up_unknown_surface():
    with pytest.raises(ManifoldError):
        blow_up(four_torus_block(), on_surface="Q")


# -- intersection resolution -----------------------------------------------------

def test_resolve_intersection_merges_marks():
    state = four_torus_block()
    out = resolve_intersection(state, "H", "K", new_id="G")
    g = out.surface("G")
    assert g.genus == 2
    assert tuple(str(w) for w in g.boundary_generators) == ("s1", "t1", "s2", "t2")
    assert (out.euler, out.signature) == (state.euler, state.signature)
    assert out.pi1 == state.pi1
    assert out.transverse_pairs == ()


def test_resolve_intersection_genus_arithmetic():
    ab = Alphabet(("u", "v"))
    sphere = SurfaceMark("S", 0, 0, ())
    torus = SurfaceMark("T", 1, 0, (ab.gen("u"), ab.gen("v")))
    state = ManifoldState(
        pi1=Presentation(ab, (), Exactness.SURJECTIVE_BOUND),
        euler=4,
        signature=0,
        symplectic=True,
        surfaces=(sphere, torus),
        transverse_pairs=(("S", "T"),),
    )
    out = resolve_intersection(state, "S", "T")
    assert out.surface("S+T").genus == 1


def test_resolve_requires_recorded_intersection():
    state = four_torus_block()
    state = resolve_intersection(state, "H", "K")
    with pytest.raises(ManifoldError):
        resolve_intersection(state, "H", "K")


# -- symplectic sums --------------------------------------------------------------

def _torus_block_pair():
    ab1 = Alphabet(("u1", "v1"))
    ab2 = Alphabet(("u2", "v2"))
    s1 = ManifoldState(
        pi1=Presentation(ab1, (), Exactness.SURJECTIVE_BOUND),
        euler=0,
        signature=0,
        symplectic=True,
        minimality=Minimality.MINIMAL,
        minimality_rules=("R1",),
        surfaces=(SurfaceMark("A", 1, 0, (ab1.gen("u1"), ab1.gen("v1"))),),
    )
    s2 = ManifoldState(
        pi1=Presentation(ab2, (), Exactness.SURJECTIVE_BOUND),
        euler=0,
        signature=0,
        symplectic=True,
        minimality=Minimality.MINIMAL,
        minimality_rules=("R1",),
        surfaces=(SurfaceMark("B", 1, 0, (ab2.gen("u2"), ab2.gen("v2"))),),
    )
    return s1, s2


def test_genus_one_sum():
    s1, s2 = _torus_block_pair()
    out = symplectic_sum(s1, "A", s2, "B", ((0, 0), (1, 1)))
    assert (out.euler, out.signature) == (0, 0)
    assert out.pi1.alphabet.names == ("u1", "v1", "u2", "v2")
    assert [str(r) for r in out.pi1.relators] == ["u1 u2^-1", "v1 v2^-1"]
    assert out.pi1.exactness is Exactness.SURJECTIVE_BOUND
    assert out.minimality is Minimality.MINIMAL
    assert out.minimality_rules == ("R1", "R2")


def test_genus_two_sum_euler_gains_four():
    ab1 = Alphabet(tuple(f"a{i}" for i in range(4)))
    ab2 = Alphabet(tuple(f"b{i}" for i in range(4)))
    mk = lambda ab, name, e, sig: ManifoldState(
        pi1=Presentation(ab, (), Exactness.SURJECTIVE_BOUND),
        euler=e,
        signature=sig,
        symplectic=True,
        surfaces=(SurfaceMark(name, 2, 0, tuple(ab.gen(n) for n in ab.names)),),
    )
    out = symplectic_sum(mk(ab1, "F", 3, 1), "F", mk(ab2, "G", 2, -2), "G", tuple((i, i) for i in range(4)))
    assert out.euler == 3 + 2 + 4
    assert out.signature == -1


def test_sum_genus_mismatch_and_normal_bundle_errors():
    s1, s2 = _torus_block_pair()
    bad = ManifoldState(
        pi1=s2.pi1,
        euler=0,
        signature=0,
        symplectic=True,
        surfaces=(SurfaceMark("B", 1, 2, (s2.pi1.alphabet.gen("u2"), s2.pi1.alphabet.gen("v2"))),),
    )
    with pytest.raises(ManifoldError):
        symplectic_sum(s1, "A", bad, "B", ((0, 0), (1, 1)))
    sphere_side = ManifoldState(
        pi1=Presentation(Alphabet(("z",)), (), Exactness.SURJECTIVE_BOUND),
        euler=0,
        signature=0,
        symplectic=True,
        surfaces=(SurfaceMark("S", 0, 0, ()),),
    )
    with pytest.raises(ManifoldError):
        symplectic_sum(s1, "A", sphere_side, "S", ())


def test_killed_meridian_sum_transports_relators():
    host, donor = _torus_block_pair()
    ab2 = donor.pi1.alphabet
    relator = commutator(ab2.gen("u2"), ab2.gen("v2"))
    donor_mark = SurfaceMark(
        "B",
        1,
        0,
        (ab2.gen("u2"), ab2.gen("v2")),
        meridian_killed=True,
        meridian_killed_reason="meets an exceptional sphere transversally once",
        carried_relators=(relator,),
        no_minus_one_sphere_off_surface=True,
    )
    donor = ManifoldState(
        pi1=Presentation(ab2, (relator,), Exactness.SURJECTIVE_BOUND),
        euler=2,
        signature=-2,
        symplectic=True,
        minimality=Minimality.NOT_MINIMAL,
        minimality_rules=("R4",),
        surfaces=(donor_mark,),
    )
    out = symplectic_sum(host, "A", donor, "B", ((0, 0), (1, 1)))
    assert out.pi1.alphabet == host.pi1.alphabet
    assert [str(r) for r in out.pi1.relators] == ["u1 v1 u1^-1 v1^-1"]
    assert (out.euler, out.signature) == (2, -2)
    assert out.parity is Parity.ODD
    assert out.minimality is Minimality.MINIMAL
    assert out.minimality_rules == ("R1", "R3")


def test_minimality_never_upgrades_not_minimal_without_r3():
    s1, s2 = _torus_block_pair()
    blown = blow_up(s1)
    out = symplectic_sum(blown, "A", s2, "B", ((0, 0), (1, 1)))
    assert out.minimality is Minimality.UNKNOWN


# -- classification ----------------------------------------------------------------

def _certified(state):
    cert = certify_trivial(state.pi1)
    assert isinstance(cert, TrivialityCertificate)
    return cert


def test_classify_headline_values():
    state = trivial_odd_state(6, -2, Minimality.MINIMAL)
    homeo = classify(state, _certified(state))
    assert (homeo.b_plus, homeo.b_minus) == (1, 3)
    assert homeo.description == "CP^2 # 3 CP^2bar"
    assert "Taubes" in homeo.exotic_note
    assert homeo.b_plus + homeo.b_minus == state.euler - 2
    assert homeo.b_plus - homeo.b_minus == state.signature


def test_classify_small_case():
    state = trivial_odd_state(4, 0)
    homeo = classify(state, _certified(state))
    assert (homeo.b_plus, homeo.b_minus) == (1, 1)
    assert homeo.exotic_note == ""


def test_classify_rejects_bad_parity_and_arithmetic():
    state = trivial_odd_state(6, -3)
    with pytest.raises(ManifoldError):
        classify(state, _certified(state))
    even = ManifoldState(
        pi1=Presentation(Alphabet(()), (), Exactness.SURJECTIVE_BOUND),
        euler=4,
        signature=0,
        symplectic=True,
        parity=Parity.EVEN,
    )
    with pytest.raises(ManifoldError):
        classify(even, _certified(even))


def test_classify_requires_matching_certificate():
    state = trivial_odd_state(6, -2)
    other = Presentation(Alphabet(("x",)), (Alphabet(("x",)).gen("x"),))
    cert = certify_trivial(other)
    assert isinstance(cert, TrivialityCertificate)
    with pytest.raises(ManifoldError):
        classify(state, cert)
