import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactverify.abelian.groups import ZERO, FGAbelian, Z
from contactverify.grouppres import (
    Presentation, PresentationError, abelianization, commutator, cyclic_reduce,
    eliminate_generator, exponent_matrix, free_reduce, invert, pi1_complement, pi1_handlebody,
    pi1_m0, pi1_m0_surgered, replay_levine_criterion, simplify, simplify_with_report,
    trivial_in_raag, verify_pi1, word_from_string, word_to_string,
)

GENS = ("a", "b", "c", "d")
letters = st.tuples(st.sampled_from(GENS), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=10).map(tuple)


def w(text):
    return word_from_string(text)


# words

def test_free_reduce_examples():
    assert free_reduce(w("a b b^-1 a")) == w("a a")
    assert free_reduce(w("a a^-1")) == ()
    assert free_reduce(w("a b a^-1 a b^-1")) == w("a")


def test_word_text():
    assert w("a^3 b^-2") == w("a a a b^-1 b^-1")
    assert word_to_string(w("a b^-1")) == "a b^-1"
    assert cyclic_reduce(w("a b c a^-1")) == w("b c")
    with pytest.raises(PresentationError):
        word_from_string("a^x")


@given(words)
def test_free_reduce_properties(u):
    r = free_reduce(u)
    assert free_reduce(r) == r
    assert len(r) <= len(u)
    assert all(not (x == y and e == -f) for (x, e), (y, f) in zip(r, r[1:]))
    assert free_reduce(r + invert(r)) == ()


def test_presentation_invariants():
    with pytest.raises(PresentationError):
        Presentation(("a", "a"), ())
    with pytest.raises(PresentationError):
        Presentation.from_strings("a", ["a b"])
    P = Presentation.from_strings("a b", ["a b b^-1"])
    assert P.relators == (w("a"),)
    assert str(pi1_m0()) == "< a b c | a b a^-1 b^-1 c^-1 >"


# Tietze elimination

def test_eliminate_examples():
    P = eliminate_generator(pi1_m0(), "c")
    assert P.generators == ("a", "b") and P.relators == ()
    ab = Presentation.from_strings("a b", ["a", "b"])
    assert eliminate_generator(eliminate_generator(ab, "a"), "b").is_trivial_presentation()
    Q = eliminate_generator(eliminate_generator(pi1_m0_surgered(), "a"), "b")
    assert eliminate_generator(Q, "c").is_trivial_presentation()


def test_eliminate_in_complement():
    P = eliminate_generator(eliminate_generator(pi1_complement(), "a"), "b")
    assert P.generators == ("c", "d", "e")
    assert commutator("c", "d") in P.relators
    assert commutator("c", "e") in P.relators
    # the one extra relator left by elimination is a consequence of the other two
    extra = [r for r in P.relators if r not in (commutator("c", "d"), commutator("c", "e"))]
    assert len(extra) == 1
    assert trivial_in_raag(extra[0], {frozenset("cd"), frozenset("ce")})
    assert simplify(P).relators == (commutator("c", "d"), commutator("c", "e"))


def test_eliminate_needs_single_occurrence():
    with pytest.raises(PresentationError):
        eliminate_generator(Presentation.from_strings("a b", ["a b a^-1 b^-1"]), "a")
    with pytest.raises(PresentationError):
        eliminate_generator(Presentation.from_strings("a", ["a a"]), "a")
    with pytest.raises(PresentationError):
        eliminate_generator(pi1_m0(), "x")


def test_eliminate_uses_inverted_relator():
    # b occurs once, inverted and in the middle of the first relator
    P = Presentation.from_strings("a b c", ["a b^-1 a c^-1", "b c"])
    Q = eliminate_generator(P, "b")
    assert Q.generators == ("a", "c")
    assert abelianization(Q) == abelianization(P) == FGAbelian(1, (2,))


@st.composite
def presentations(draw):
    n = draw(st.integers(1, 4))
    gens = GENS[:n]
    lt = st.tuples(st.sampled_from(gens), st.sampled_from([1, -1]))
    rels = draw(st.lists(st.lists(lt, max_size=8).map(tuple), max_size=4))
    # guarantee an eligible generator: g times a word avoiding g
    g = draw(st.sampled_from(gens))
    others = [x for x in gens if x != g]
    tail = draw(st.lists(st.tuples(st.sampled_from(others), st.sampled_from([1, -1])),
                         max_size=5).map(tuple)) if others else ()
    pos = draw(st.integers(0, len(rels)))
    rels.insert(pos, ((g, draw(st.sampled_from([1, -1]))),) + tail)
    return Presentation(gens, tuple(rels))


def _eligible(P):
    out = []
    for g in P.generators:
        try:
            out.append((g, eliminate_generator(P, g)))
        except PresentationError:
            pass
    return out


@settings(max_examples=300)
@given(presentations())
def test_elimination_preserves_abelianization(P):
    want = abelianization(P)
    done = _eligible(P)
    assert done
    for g, Q in done:
        assert g not in Q.generators
        assert len(Q.generators) == len(P.generators) - 1
        assert abelianization(Q) == want


@settings(max_examples=200)
@given(presentations())
def test_simplify_terminates_and_is_deterministic(P):
    rep = simplify_with_report(P)
    assert rep == simplify_with_report(P)
    eliminations = [s for s in rep.steps if s.startswith("eliminate")]
    assert len(eliminations) <= len(P.generators)
    assert abelianization(rep.presentation) == abelianization(P)
    if rep.relator_free:
        assert abelianization(rep.presentation).rank == len(rep.presentation.generators)
        assert rep.free_rank == len(rep.presentation.generators)


def test_simplify_examples():
    rep = simplify_with_report(pi1_complement())
    assert rep.presentation.generators == ("c", "d", "e")
    assert rep.presentation.relators == (commutator("c", "d"), commutator("c", "e"))
    assert not rep.relator_free
    m0 = simplify_with_report(pi1_m0())
    assert m0.relator_free and m0.free_rank == 2
    g = Presentation.from_strings("g")
    assert simplify(g) == g
    assert simplify(pi1_m0_surgered()).is_trivial_presentation()
    assert simplify(pi1_handlebody()).is_trivial_presentation()


def test_simplify_drops_trivial_and_duplicate_relators():
    P = Presentation.from_strings("a b", ["a b a^-1 b^-1", "b a b^-1 a^-1", "a a^-1"])
    assert simplify(P).relators == (commutator("a", "b"),)


# abelianization

def test_abelianization_examples():
    assert abelianization(Presentation.from_strings("c d e", ["c d c^-1 d^-1", "c e c^-1 e^-1"])) \
        == FGAbelian(3)
    assert abelianization(pi1_m0()) == FGAbelian(2)
    assert abelianization(Presentation.from_strings("a", ["a a"])) == FGAbelian(0, (2,))
    assert abelianization(pi1_m0_surgered()) == ZERO
    assert exponent_matrix(pi1_m0()).to_rows() == [[0, 0, -1]]


# replays

@pytest.mark.parametrize("name", ["pi1-m0", "pi1-complement", "pi1-handlebody", "pi1-m0-surgered"])
def test_pi1_replays(name):
    assert verify_pi1(name).passed


def test_pi1_replay_negative_control():
    P = pi1_complement()
    mutated = Presentation(P.generators, P.relators[:-1])
    assert not verify_pi1("pi1-complement", mutated).passed


def test_levine():
    assert replay_levine_criterion().passed
    assert not replay_levine_criterion(Presentation.from_strings("c", ["c c c"])).passed
    assert replay_levine_criterion(Presentation.from_strings("c d", ["d"])).passed
    assert not replay_levine_criterion(h1=FGAbelian(2)).passed
    assert replay_levine_criterion().details["abelianization"] == str(Z)
