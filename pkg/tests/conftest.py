import os
import sys

import numpy as np
import pytest
from hypothesis import settings as hyp_settings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from mf_linalg import gl2_enumerate
from mf_loop import LoopTable, materialize
from mf_products import GdLoop
from mf_ring import field
from mf_sema import default_generators
from mf_triality import wreath_make, wreath_module_make
from mf_loop import symmetric
from mf_zorn import paige_loop

hyp_settings.register_profile('fast', max_examples=25, deadline=None)
hyp_settings.register_profile('debugger', max_examples=5, deadline=None, report_multiple_bugs=False)
hyp_settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'fast'))

# A loop of order 5 that is not a group, hence not Moufang
BROKEN_5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


@pytest.fixture(scope='session')
def F2():
    return field(2)


@pytest.fixture(scope='session')
def F3():
    return field(3)


@pytest.fixture(scope='session')
def m2():
    """ The Paige loop M(2) as a table. """
    return materialize(paige_loop(field(2)))


@pytest.fixture(scope='session')
def gd24():
    """ GL_2(F_2) semidirect F_2^2. """
    r = field(2)
    return GdLoop(r, gl2_enumerate(r))


@pytest.fixture(scope='session')
def s3():
    return symmetric(3)


@pytest.fixture(scope='session')
def wreath_s3():
    return wreath_make(symmetric(3))


@pytest.fixture(scope='session')
def module_group():
    r = field(2)
    return wreath_module_make(r, 2, default_generators(r, 2))


@pytest.fixture
def broken5():
    return LoopTable(np.array(BROKEN_5))


@pytest.fixture
def broken5_file(tmp_path):
    path = tmp_path / 'corrupted.loop'
    rows = '\n'.join(' '.join(str(v) for v in row) for row in BROKEN_5)
    path.write_text('loop-table v1\norder 5\n%s\n' % rows)
    return str(path)
