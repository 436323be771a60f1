import pytest

from injring.ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    decode_phi,
    delta,
    enumerate_delta_le,
    extension_witness,
    format_ordinal,
    iter_words,
    mu,
    mu0,
    omega_pow,
    ord_add,
    ord_cmp,
    ordinals_with_delta,
    parse_ordinal,
    phi_word,
)

P = parse_ordinal


@pytest.mark.parametrize("text,d", [("0", 1), ("1", 2), ("2", 5), ("w", 3), ("w+1", 6), ("w^2", 6)])
def test_delta_examples(text, d):
    assert delta(P(text)) == d


def test_addition_absorbs_smaller_terms():
    assert ord_add(ONE, OMEGA) == OMEGA
    assert ord_add(OMEGA, ONE) == P("w+1")
    assert ord_add(P("w^2+w"), P("w*2+3")) == P("w^2+w*3+3")


def test_comparison():
    assert ord_cmp(P("w"), P("w+1")) == "lt"
    assert ord_cmp(P("w^w"), P("w^5*7")) == "gt"
    assert ord_cmp(P("w*2"), P("w+w")) == "eq"
    assert sorted([P("w"), P("3"), P("w^2"), ZERO]) == [ZERO, P("3"), P("w"), P("w^2")]


def test_format_parse_round_trip():
    for a in enumerate_delta_le(11):
        assert parse_ordinal(format_ordinal(a)) == a


def test_phi_word_examples():
    assert phi_word(ZERO) == "0"
    assert phi_word(ONE) == "0π"
    assert decode_phi("0p0p+") == Ordinal.from_int(2)


def test_decode_rejects_malformed():
    for w in ["", "+", "π", "00", "0+"]:
        with pytest.raises(ValueError):
            decode_phi(w)


def test_delta_counts_word_length():
    # delta is the length of the phi-word
    for a in enumerate_delta_le(10):
        assert len(phi_word(a)) == delta(a)


def test_words_decode_to_their_ordinal_and_cover_each_fiber():
    # every valid word of length <= 8 is some phi-word, so decoding is a bijection there
    seen = {}
    for w in iter_words(8):
        try:
            a = decode_phi(w)
        except ValueError:
            continue
        if phi_word(a) == w:
            seen[w] = a
    for d in range(1, 9):
        assert {a for a in seen.values() if delta(a) == d} == set(ordinals_with_delta(d))


def test_fibers_are_finite_and_sorted():
    for d in range(1, 12):
        f = ordinals_with_delta(d)
        assert list(f) == sorted(f)
        assert all(delta(a) == d for a in f)


def test_mu():
    assert mu(P("w^2"), P("w+1")) == 0
    assert mu(P("w*3+2"), ZERO) == 2
    assert mu(ZERO, P("w*3+2")) == 2
    assert mu0(P("w^2*4+w"), P("2")) == 4
    assert mu0(P("w^2*4+w"), P("0")) == 0
    with pytest.raises(ValueError):
        mu(ONE, ONE)


def test_extension_witness_prescribes_mu():
    J = sorted([P("w^2"), P("w"), ONE], reverse=True)
    nu = {J[0]: 2, J[1]: 0, J[2]: 5}
    k = extension_witness(J, nu)
    assert k not in J
    for j in J:
        assert mu(k, j) == nu[j]
    assert extension_witness([], {}) == OMEGA


def test_extension_witness_needs_descending():
    with pytest.raises(ValueError):
        extension_witness([ONE, OMEGA], {})


def test_omega_pow():
    assert omega_pow(ZERO) == ONE
    assert omega_pow(ONE) == OMEGA
