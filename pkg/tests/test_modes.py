"""The truncated vacuum module as an independent oracle for OPE products."""

import pytest

from affkz.liealg import so_algebra, sl_algebra
from affkz.fields import current, so_current, pf_field, sugawara_field
from affkz.ope import nprod, derivative
from affkz import modes


@pytest.fixture(scope="module")
def so6():
    return so_algebra(6)


@pytest.fixture(scope="module")
def sl3():
    return sl_algebra(3)


def test_current_pair_oracle(sl3):
    for a in range(sl3.dim):
        ok, report = modes.check_pair(current(sl3, a), current(sl3, (a + 1) % sl3.dim))
        assert ok, report


def test_pf_pair_oracle(so6):
    ok, report = modes.check_pair(pf_field(so6, (1, 2, 3, 4)),
                                  pf_field(so6, (3, 4, 5, 6)),
                                  regular_depth=1)
    assert ok, report


def test_composite_and_derivative_oracle(so6):
    A = nprod(so_current(so6, 1, 2), so_current(so6, 1, 3))
    B = derivative(pf_field(so6, (2, 3, 4, 5)))
    ok, report = modes.check_pair(A, B)
    assert ok, report


def test_sugawara_oracle(so6):
    ok, report = modes.check_pair(sugawara_field(so6), so_current(so6, 4, 5))
    assert ok, report


def test_state_of_field_linear(so6):
    vm = modes.VacuumModule(so6)
    A = pf_field(so6, (1, 2, 3, 4))
    B = pf_field(so6, (1, 2, 3, 5))
    sum_state = vm.state_of_field(A + B)
    merged = dict(vm.state_of_field(A))
    for w, c in vm.state_of_field(B).items():
        merged[w] = merged.get(w, None) + c if w in merged else c
    merged = {w: c for w, c in merged.items() if not c.is_zero()}
    assert vm.states_equal(sum_state, merged)
