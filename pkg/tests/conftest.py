import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spectralfm.fibration import WeierstrassFamily  # noqa: E402
from spectralfm.spectral import SpectralCover  # noqa: E402

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

BAND_COVER = {"gens": ["(1+lambda)*y - (1-lambda)*x", "y^2 - x^3 - x^2 - t*(1-t)*x + t^2"]}
SECTION_COVER = {"gens": ["x", "y^2 + t^2"], "infinity_components": [{"type": "section"}]}
STRING_COVER = {"gens": ["x + y", "x^2 + t*x + t"]}


def data_path(name):
    return os.path.join(DATA, name)


@pytest.fixture(scope="session")
def family():
    return WeierstrassFamily.from_text("1", "t*(1-t)", "-t^2")


@pytest.fixture(scope="session")
def band_cover(family):
    return SpectralCover.from_json(family, BAND_COVER)


@pytest.fixture(scope="session")
def section_cover(family):
    return SpectralCover.from_json(family, SECTION_COVER)


@pytest.fixture(scope="session")
def string_cover(family):
    return SpectralCover.from_json(family, STRING_COVER)
