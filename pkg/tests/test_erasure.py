import random

from cedlite.erasure import (PApp, PLam, PRef, PVar, embed, erase,
                             free_in_erasure)
from cedlite.normalize import subst_pure
from cedlite.parser import parse_signature, parse_term
from cedlite.syntax import subst
from termgen import gen_pure

IDENT = PLam("x", PVar(0))


def test_clause_variable_and_lambda():
    assert erase(parse_term("λ x . x")) == IDENT


def test_clause_implicit_abstraction_dropped():
    assert erase(parse_term("Λ A . λ x . x")) == IDENT


def test_clause_applications():
    t = parse_term("λ f . λ x . f x")
    assert erase(t) == PLam("f", PLam("x", PApp(PVar(1), PVar(0))))


def test_clause_erased_application_drops_argument():
    t = parse_term("λ y . Λ A . λ x . x -y")
    assert erase(t) == PLam("y", PLam("x", PVar(0)))


def test_clause_type_application_dropped():
    sig = parse_signature("c ◂ ★ = ∀ X : ★ . X ➔ X .")
    t = parse_term("λ x . x · c", sig)
    assert erase(t) == IDENT


def test_clause_pair_erases_to_left():
    t = parse_term("λ a . λ b . [ a , b ]")
    assert erase(t) == PLam("a", PLam("b", PVar(1)))


def test_clause_projections_dropped():
    assert erase(parse_term("λ x . x.1")) == IDENT
    assert erase(parse_term("λ x . x.2.1")) == IDENT


def test_clause_beta_is_identity_by_default():
    assert erase(parse_term("β")) == IDENT


def test_clause_beta_witness():
    assert erase(parse_term("λ x . β{x}")) == IDENT


def test_clause_rho_erases_to_body():
    t = parse_term("λ q . λ x . ρ q - x")
    assert erase(t) == PLam("q", PLam("x", PVar(0)))
    t2 = parse_term("λ q . λ x . ρ+ q - x")
    assert erase(t2) == PLam("q", PLam("x", PVar(0)))


def test_clause_symmetry_erases_to_proof():
    t = parse_term("λ q . ς q")
    assert erase(t) == IDENT


def test_clause_reference_preserved():
    sig = parse_signature("c ◂ ★ = ∀ X : ★ . X ➔ X .\n"
                          "i ◂ c = Λ X . λ x . x .")
    assert erase(parse_term("i", sig)) == PRef("i")


def test_all_implicit_material_dropped():
    # Λ A . λ x . x -y · T with y bound outside
    sig = parse_signature("c ◂ ★ = ∀ X : ★ . X ➔ X .")
    t = parse_term("λ y . Λ A . λ x . x -y · c", sig)
    assert erase(t) == PLam("y", PLam("x", PVar(0)))


def test_free_in_erasure_under_implicit_binder():
    t = parse_term("λ x . Λ y . x")
    assert free_in_erasure(0, t.body)  # x seen from under its own binder


def test_free_in_erasure_skips_erased_argument():
    t = parse_term("λ x . λ t . t -x")
    inner = t.body.body  # t -x, where x has index 1
    assert not free_in_erasure(1, inner)
    assert free_in_erasure(0, inner)  # the head t survives


def test_free_in_erasure_consCV_index_argument(corpus_sig):
    # the -n occurrences in consCV's body never survive erasure
    body = corpus_sig.lookup("consCV").body  # Λ A . Λ n . ...
    assert not free_in_erasure(0, body.body.body)


def test_embed_idempotent_on_random_terms():
    rng = random.Random(20240817)
    for _ in range(200):
        p = gen_pure(rng)
        assert erase(embed(p)) == p


def test_erase_commutes_with_substitution_random():
    rng = random.Random(4159)
    for _ in range(200):
        t = gen_pure(rng, depth=4, avail=(0, 1))
        s = gen_pure(rng, depth=3, avail=(0, 1))
        j = rng.randrange(2)
        lhs = erase(subst(embed(t), j, embed(s)))
        rhs = subst_pure(erase(embed(t)), j, erase(embed(s)))
        assert lhs == rhs


def test_erase_commutes_with_substitution_decorated():
    # substitution through erased decorations around explicit positions
    sig = parse_signature("c ◂ ★ = ∀ X : ★ . X ➔ X .\n"
                          "i ◂ c = Λ X . λ x . x .")
    t = parse_term("λ y . Λ A . [ y -i , β{y} ].1", sig)
    s = parse_term("λ z . z z")
    got = erase(subst(t.body, 0, s))
    want = subst_pure(erase(t.body), 0, erase(s))
    assert got == want


def test_helper_and_eliminator_erase_to_identity_raw(corpus_sig):
    # without any reduction: the pair keeps only its left component and
    # the rewrite keeps only its body
    assert erase(corpus_sig.lookup("mkVec").body) == IDENT
    assert erase(corpus_sig.lookup("elimVec").body) == IDENT
    assert erase(corpus_sig.lookup("mkList").body) == IDENT


def test_corpus_constructor_erasures_are_exact(corpus_sig):
    church_nil = PLam("cN", PLam("cC", PVar(1)))
    church_cons = PLam("x", PLam("xs", PLam("cN", PLam("cC", PApp(
        PApp(PVar(0), PVar(3)),
        PApp(PApp(PVar(2), PVar(1)), PVar(0)))))))
    assert erase(corpus_sig.lookup("nilCV").body) == church_nil
    assert erase(corpus_sig.lookup("consCV").body) == church_cons
    assert erase(corpus_sig.lookup("nilCL").body) == church_nil
    assert erase(corpus_sig.lookup("consCL").body) == church_cons
    assert erase(corpus_sig.lookup("nilPV").body) == church_nil
    assert erase(corpus_sig.lookup("consPV").body) == church_cons
