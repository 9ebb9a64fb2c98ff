import json
import os

import pytest
from hypothesis import settings

from stanleydepth import hilbert, modules
from stanleydepth.fields import GF, QQ

settings.register_profile("suite", max_examples=50, deadline=None)
settings.load_profile("suite")

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data_file(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def load_json(name: str):
    with open(data_file(name), encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def m2():
    return modules.build(modules.maximal_ideal(QQ, 2))


@pytest.fixture(scope="session")
def ex34():
    """(X1, X2) + (X1*X2) over the rationals, g = (1, 1)."""
    return modules.load_module_file(data_file("ex34.json"))


@pytest.fixture(scope="session")
def ex34_dec(ex34):
    return hilbert.decomposition_from_json(load_json("ex34_dec.json"), ex34.g)


@pytest.fixture(scope="session")
def ex36():
    return modules.load_module_file(data_file("ex36.json"))


@pytest.fixture(scope="session")
def ex36_f2():
    return modules.load_module_file(data_file("ex36.json"), field_override=GF(2))


@pytest.fixture(scope="session")
def ex36_f5():
    return modules.load_module_file(data_file("ex36.json"), field_override=GF(5))


@pytest.fixture(scope="session")
def ex36_dec(ex36):
    return hilbert.decomposition_from_json(load_json("ex36_dec.json"), ex36.g)
