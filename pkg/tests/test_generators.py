import networkx as nx
import pytest

from wheelwatch.core.errors import ParameterError
from wheelwatch.core.generators import GraphFamily, generate, prism_graph
from wheelwatch.core.graph import hubs


def test_named_families():
    assert nx.is_isomorphic(generate(GraphFamily.CYCLE, n=7).to_networkx(), nx.cycle_graph(7))
    assert nx.is_isomorphic(generate(GraphFamily.PATH, n=4).to_networkx(), nx.path_graph(4))
    assert nx.is_isomorphic(generate(GraphFamily.PETERSEN).to_networkx(), nx.petersen_graph())
    assert nx.is_isomorphic(generate(GraphFamily.THETA_K23).to_networkx(), nx.complete_bipartite_graph(2, 3))


def test_wheel_has_center_zero():
    wheel = generate(GraphFamily.WHEEL, n=5)
    assert wheel.order == 6
    assert wheel.neighbors(0) == (1, 2, 3, 4, 5)
    assert 0 in hubs(wheel)


def test_prism_rungs():
    plain = prism_graph()
    assert plain.order == 6 and plain.size == 9
    long = generate(GraphFamily.PRISM, rung_subdivisions=2)
    assert long.order == 12 and long.size == 15
    assert sorted(long.degree(v) for v in long.vertices).count(3) == 6
    with pytest.raises(ParameterError):
        prism_graph(-1)


def test_gnp_is_seeded():
    first = generate(GraphFamily.GNP, n=12, p=0.4, seed=5)
    assert first == generate(GraphFamily.GNP, n=12, p=0.4, seed=5)
    assert first.order == 12
    assert generate(GraphFamily.GNP, n=0, p=0.5, seed=1).order == 0


@pytest.mark.parametrize(
    "family, kwargs",
    [
        (GraphFamily.CYCLE, {"n": 2}),
        (GraphFamily.CYCLE, {}),
        (GraphFamily.WHEEL, {"n": 2}),
        (GraphFamily.PATH, {"n": 0}),
        (GraphFamily.GNP, {"n": 5}),
        (GraphFamily.GNP, {"n": 5, "p": 1.5}),
    ],
)
def test_parameter_errors(family, kwargs):
    with pytest.raises(ParameterError):
        generate(family, **kwargs)
