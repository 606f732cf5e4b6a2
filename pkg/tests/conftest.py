from fractions import Fraction

import pytest

from adet.cli import BUILTINS, builtin_config


def configs():
    return {name: builtin_config(name) for name in BUILTINS}


@pytest.fixture(scope="session")
def bundled():
    return configs()


@pytest.fixture(scope="session")
def quadratic():
    return builtin_config("quadratic")


@pytest.fixture(scope="session")
def square():
    return builtin_config("square")


@pytest.fixture(scope="session")
def segment2():
    return builtin_config("segment2")


@pytest.fixture(scope="session")
def twisted_cubic():
    return builtin_config("twisted_cubic")


def Q(*xs):
    return tuple(Fraction(x) for x in xs)
