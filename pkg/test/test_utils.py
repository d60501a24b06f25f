# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: test_utils
@Date: 2026/10/17
"""

from fractions import Fraction

import pytest

from pydpcolor.utils import (DEFAULT_BUDGET, derive_seeds, format_charge, format_fraction, format_int_set,
                             get_default_budget, get_default_jobs, get_partial_matchings, get_permutations,
                             parse_kv_txt)


def test_format_fraction():
    assert format_fraction(Fraction(1, 3)) == "1/3"
    assert format_fraction(Fraction(2)) == "2/1"
    assert format_fraction(0) == "0/1"


def test_format_charge():
    assert format_charge(Fraction(-8)) == "-8"
    assert format_charge(Fraction(-4, 6)) == "-2/3"


def test_format_int_set():
    assert format_int_set({4, 3}) == "{3,4}"
    assert format_int_set([]) == "{}"


def test_permutations_are_lexicographic():
    perms = get_permutations(3)
    assert len(perms) == 6
    assert perms[0] == (0, 1, 2)
    assert perms[-1] == (2, 1, 0)


def test_partial_matchings_count():
    # empty, four single pairs, two full matchings
    assert len(get_partial_matchings(2)) == 7
    assert () in get_partial_matchings(2)


def test_parse_kv_txt_skips_comments():
    txt = "# header\n0 1 : 0-1, 1-0\n\ndefault identity k=3  # trailing\n"
    assert list(parse_kv_txt(txt, ':')) == [('0 1', '0-1, 1-0'), ('default identity k=3', '')]


def test_derive_seeds_reproducible():
    first = derive_seeds(7, 5)
    assert first == derive_seeds(7, 5)
    assert len(set(first)) == 5
    assert first != derive_seeds(8, 5)


def test_env_defaults(monkeypatch):
    monkeypatch.delenv('DPCOLOR_BUDGET', raising=False)
    monkeypatch.delenv('DPCOLOR_JOBS', raising=False)
    assert get_default_budget() == DEFAULT_BUDGET
    assert get_default_jobs() == 1
    monkeypatch.setenv('DPCOLOR_BUDGET', '1e3')
    monkeypatch.setenv('DPCOLOR_JOBS', '4')
    assert get_default_budget() == 1000
    assert get_default_jobs() == 4


if __name__ == "__main__":
    pytest.main([__file__])
