import pytest

from chevpres.ffield import make_field


@pytest.fixture(params=[(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)], ids=lambda pa: f"q{pa[0]**pa[1]}")
def small_field(request):
    return make_field(*request.param)
