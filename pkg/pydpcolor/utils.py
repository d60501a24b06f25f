import functools
import itertools
import os
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

import numpy as np

DEFAULT_BUDGET = 10 ** 8


@functools.lru_cache(maxsize=16)
def get_permutations(k: int) -> Tuple[Tuple[int, ...], ...]:
    # all permutations of range(k) in lexicographic order
    return tuple(itertools.permutations(range(k)))


@functools.lru_cache(maxsize=16)
def get_partial_matchings(k: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """
    All matchings (possibly empty) between two copies of range(k), as sorted pair tuples.
    """
    result = []
    for size in range(k + 1):
        for left in itertools.combinations(range(k), size):
            for right in itertools.permutations(range(k), size):
                result.append(tuple(zip(left, right)))
    return tuple(result)


def get_default_budget() -> int:
    value = os.environ.get('DPCOLOR_BUDGET', '').strip()
    return int(float(value)) if value else DEFAULT_BUDGET


def get_default_jobs() -> int:
    value = os.environ.get('DPCOLOR_JOBS', '').strip()
    return max(1, int(value)) if value else 1


def derive_seeds(master: int, count: int) -> List[int]:
    """
    Derive independent per-trial seeds from one master seed.
    Args:
        master: master seed given on the command line
        count: number of trials

    Returns:
        list of 32-bit seeds, stable for a given (master, count)
    """
    children = np.random.SeedSequence(master).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def strip_comment(line: str) -> str:
    return line.split('#', 1)[0].strip()


def parse_kv_txt(txt: str, sep: Union[str, None] = ':') -> Iterator[Tuple[str, str]]:
    # yields (key, value) per non-empty line; lines without sep give value ''
    for line in txt.splitlines():
        line = strip_comment(line)
        if not line:
            continue
        if sep is None:
            parts = line.split(None, 1)
        else:
            parts = line.split(sep, 1)
        key = parts[0].strip()
        value = parts[1].strip() if len(parts) > 1 else ''
        yield key, value


def format_fraction(value: Union[Fraction, int]) -> str:
    # always p/q, the transfer-log contract
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_charge(value: Union[Fraction, int]) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_int_set(values) -> str:
    return '{' + ','.join(str(v) for v in sorted(values)) + '}'
