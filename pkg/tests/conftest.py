import numpy as np
import pytest

from venturicalc import build_model, make_grid


@pytest.fixture(scope="session")
def cosh_model():
    return build_model("cosh")


@pytest.fixture(scope="session")
def mehler_model():
    return build_model("mehler")


@pytest.fixture(scope="session")
def sl2c_model():
    return build_model("sl2c")


@pytest.fixture(scope="session")
def models(cosh_model, mehler_model, sl2c_model):
    return {"cosh": cosh_model, "mehler": mehler_model, "sl2c": sl2c_model}


@pytest.fixture(scope="session")
def grids(models):
    return {name: make_grid(m, xmax=20.0, panels=32, nodes_per_panel=16)
            for name, m in models.items()}


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
