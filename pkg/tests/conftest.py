import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from covers.knot import builtin_diagram, linking_hom, wirtinger


@pytest.fixture(scope="session")
def trefoil_w():
    return wirtinger(builtin_diagram("trefoil"))


@pytest.fixture(scope="session")
def fig8_w():
    return wirtinger(builtin_diagram("figure-eight"))


@pytest.fixture(scope="session")
def unknot_w():
    return wirtinger(builtin_diagram("unknot"))


@pytest.fixture(scope="session")
def trefoil_s3_images(trefoil_w):
    """Surjection onto S3: a -> (12), b -> (13), and c -> (23) forced."""
    return {
        trefoil_w.pres.gen("a"): (1, 0, 2),
        trefoil_w.pres.gen("b"): (2, 1, 0),
        trefoil_w.pres.gen("c"): (0, 2, 1),
    }


def cyclic_images(w, n):
    return linking_hom(w, n)
