import pytest
from hypothesis import strategies as st

from morseframes import fixtures
from morseframes.complex import closure

ALL_FIXTURES = fixtures.load_all()


@pytest.fixture(params=fixtures.NAMES)
def named_complex(request):
    return request.param, ALL_FIXTURES[request.param]


@pytest.fixture
def hollow():
    return closure([[0, 1], [1, 2], [0, 2]])


@pytest.fixture
def triangle():
    return closure([[0, 1, 2]])


@pytest.fixture
def torus():
    return ALL_FIXTURES["torus"]


@pytest.fixture
def dunce():
    return ALL_FIXTURES["dunce_hat"]


@st.composite
def complexes(draw, max_vertices=7, max_facets=6, max_size=4):
    n = draw(st.integers(1, max_vertices))
    facets = draw(
        st.lists(
            st.sets(st.integers(0, n - 1), min_size=1, max_size=min(max_size, n)),
            min_size=1,
            max_size=max_facets,
        )
    )
    return closure(facets)


SCHEME_GRID = [
    (scheme, order)
    for scheme in ("increasing", "decreasing")
    for order in ("lex", "random")
]
