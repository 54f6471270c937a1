import math

import numpy as np
import pytest

from subhull import Alphabet, CyclicWord, NotPrimitiveError, Substitution


def test_fibonacci_matrix_and_application(fibonacci):
    assert fibonacci.apply(("0",)) == ("0", "1")
    assert fibonacci.apply(("1",)) == ("0",)
    assert fibonacci.matrix().tolist() == [[1, 1], [1, 0]]
    assert fibonacci.apply_power(("0",), 5) == tuple("01001010010010100101")[:13]


def test_counterexample_matrix(counterexample):
    assert counterexample.matrix().tolist() == [[2, 2, 1], [1, 0, 1], [0, 1, 1]]
    eig = sorted(np.linalg.eigvals(counterexample.matrix()).real)
    assert eig == pytest.approx([-1.0, 1.0, 3.0], abs=1e-9)


def test_apply_concatenates(fibonacci):
    w = ("0", "1", "0")
    assert fibonacci.apply(w) == ("0", "1", "0", "0", "1")


def test_apply_power_matches_repeated_apply(counterexample):
    w = ("2",)
    stepwise = w
    for _ in range(4):
        stepwise = counterexample.apply(stepwise)
    assert counterexample.apply_power(w, 4) == stepwise


def test_apply_cyclic(counterexample):
    cyc = CyclicWord(("1", "0", "2"))
    image = counterexample.apply_cyclic(cyc)
    assert image.period == tuple("200001102")


def test_from_rules_validates_coverage():
    alph = Alphabet(("0", "1"))
    with pytest.raises(ValueError):
        Substitution.from_rules(alph, {"0": ("0", "1")})
    with pytest.raises(ValueError):
        Substitution.from_rules(alph, {"0": ("0",), "1": ("1",), "2": ("0",)})
    with pytest.raises(ValueError):
        Substitution.from_rules(alph, {"0": ("0", "3"), "1": ("1",)})


def test_compose_matches_sequential_application(fibonacci):
    square = fibonacci.compose(fibonacci)
    for a in fibonacci.alphabet.letters:
        assert square.apply((a,)) == fibonacci.apply_power((a,), 2)
    assert square.matrix().tolist() == (fibonacci.matrix() @ fibonacci.matrix()).tolist()


def test_exact_power_agrees_with_numpy_for_small_n(counterexample):
    m = counterexample.matrix()
    acc = np.eye(3, dtype=np.int64)
    for n in range(7):
        assert counterexample.exact_power(n) == [[int(x) for x in row] for row in acc]
        acc = acc @ m


def test_image_lengths_column_sums(counterexample):
    lengths = counterexample.image_lengths(3)
    for j, a in enumerate(counterexample.alphabet.letters):
        assert lengths[j] == len(counterexample.apply_power((a,), 3))


def test_primitivity_exponents(bundled):
    for name, spec in bundled.items():
        p = spec.substitution.primitivity()
        assert p is not None, name
        mat = np.linalg.matrix_power(spec.substitution.matrix(), p)
        assert (mat > 0).all()


def test_non_primitive_detected():
    alph = Alphabet(("0", "1"))
    sub = Substitution.from_rules(alph, {"0": ("0",), "1": ("1", "0")})
    assert sub.primitivity() is None
    with pytest.raises(NotPrimitiveError):
        sub.perron()


def test_perron_eigenvalues(bundled):
    golden = (1 + math.sqrt(5)) / 2
    expected = {
        "fibonacci": golden,
        "thue_morse": 2.0,
        "period_doubling": 2.0,
        "golay_rudin_shapiro": 2.0,
        "counterexample": 3.0,
    }
    for name, spec in bundled.items():
        data = spec.substitution.perron()
        assert data.eigenvalue == pytest.approx(expected[name], abs=1e-12), name


def test_growth_constants_sandwich_lengths(bundled):
    for name, spec in bundled.items():
        sub = spec.substitution
        data = sub.perron()
        for a in sub.alphabet.letters:
            for n in range(0, 12):
                ln = len(sub.apply_power((a,), n))
                assert data.growth_lower * data.eigenvalue**n <= ln * (1 + 1e-12), name
                assert ln <= data.growth_upper * data.eigenvalue**n * (1 + 1e-12), name


def test_constant_length_growth_is_tight(thue_morse):
    data = thue_morse.perron()
    assert data.growth_lower == pytest.approx(1.0, abs=1e-12)
    assert data.growth_upper == pytest.approx(1.0, abs=1e-12)
