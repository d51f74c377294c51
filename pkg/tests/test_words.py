import numpy as np
import pytest
from hypothesis import given, strategies as st

from mf_errors import DescriptorError
from mf_words import evaluate, compile_word

elements = st.integers(0, 215)


def _pick(G, code):
    return G.decode(np.array(code))


@given(elements, elements)
def test_basic_words(wreath_s3, a, b):
    G = wreath_s3
    x, y = _pick(G, a), _pick(G, b)
    assert np.array_equal(evaluate(G, 'x^-1', x=x), G.inv(x))
    assert np.array_equal(evaluate(G, 'x y', x=x, y=y), G.mul(x, y))
    assert np.array_equal(evaluate(G, 'x^y', x=x, y=y), G.mul(G.mul(G.inv(y), x), y))
    assert np.array_equal(evaluate(G, '[x, y]', x=x, y=y), G.comm(x, y))
    assert np.array_equal(evaluate(G, 'x^2', x=x), G.mul(x, x))


@given(elements, elements, elements)
def test_exponents_act_left_to_right(wreath_s3, a, b, c):
    G = wreath_s3
    x, y, z = _pick(G, a), _pick(G, b), _pick(G, c)
    assert np.array_equal(evaluate(G, 'x^{y z}', x=x, y=y, z=z), G.conj(G.conj(x, y), z))
    assert np.array_equal(evaluate(G, 'x^{rho rho}', x=x), G.rho2(x))
    assert np.array_equal(evaluate(G, 'x^{-rho}', x=x), G.rho(G.inv(x)))
    assert np.array_equal(evaluate(G, 'x^{rho2 sigma}', x=x), G.sigma(G.rho2(x)))
    assert np.array_equal(evaluate(G, 'x^{y^rho}', x=x, y=y), G.conj(x, G.rho(y)))


def test_identity_and_batches(wreath_s3):
    G = wreath_s3
    assert G.is_identity(evaluate(G, '1'))
    xs = G.elements()
    assert np.array_equal(evaluate(G, 'x x^-1', x=xs), np.zeros_like(xs))


def test_words_are_compiled_once():
    assert compile_word('u^{rho m^{-1}}') is compile_word('u^{rho m^{-1}}')


def test_unbound_symbol(wreath_s3):
    with pytest.raises(DescriptorError):
        evaluate(wreath_s3, 'x y', x=wreath_s3.identity())


@pytest.mark.parametrize('text', ['x^', '[x y]', 'x^{rho', '2'])
def test_malformed_words(wreath_s3, text):
    with pytest.raises(DescriptorError):
        evaluate(wreath_s3, text, x=wreath_s3.identity())
