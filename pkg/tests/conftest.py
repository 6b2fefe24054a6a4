"""Shared fixtures: modest-depth hierarchies reused across test modules."""

import pytest

from vlapmg import mesh, derham


def _levels(domain, nlevels):
    hier = mesh.build_hierarchy(domain, nlevels)
    return hier, [derham.assemble(m) for m in hier.meshes]


@pytest.fixture(scope='session')
def square4():
    """(hierarchy, de Rham levels) for the square, 4 levels (h down to 1/16)."""
    return _levels('square', 4)


@pytest.fixture(scope='session')
def lshape4():
    return _levels('lshape', 4)


@pytest.fixture(scope='session')
def crack4():
    return _levels('crack', 4)


@pytest.fixture(scope='session')
def any4(request, square4, lshape4, crack4):
    return {'square': square4, 'lshape': lshape4, 'crack': crack4}


@pytest.fixture(scope='session')
def square_l3(square4):
    """The h = 1/8 square level alone (the workhorse size for algebra tests)."""
    return square4[1][2]
