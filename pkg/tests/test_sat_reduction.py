import random

import networkx as nx
import pytest

from tests.oracles import all_formulas, random_formula
from wheelwatch.core.detectors import detect_kl_wheel
from wheelwatch.core.errors import CertificateError, FormulaError, GraphError, ParameterError
from wheelwatch.core.graph import bipartition, hubs, induced_subgraph
from wheelwatch.core.graph_models import EdgeColor, HoleWitness
from wheelwatch.core.holes import find_hole_through
from wheelwatch.core.reduction_models import Assignment, CnfFormula, LabelRole, ReductionStage
from wheelwatch.core.sat_reduction import (
    assignment_to_cycle,
    brute_force_satisfiable,
    build_gf,
    cycle_to_assignment,
    expected_gf_counts,
    formula_is_satisfied,
    harden,
    lift_to_wheel_instance,
    make_f_graph,
    random_subdivision_plan,
)
from wheelwatch.core.witnesses import validate_hole, validate_witness


_HEAVY_SHAPES = (nx.empty_graph(1), nx.path_graph(3), nx.cycle_graph(4))


def _formulas(count, seed, max_n=3, max_m=3):
    rng = random.Random(seed)
    return [random_formula(rng, rng.randint(1, max_n), rng.randint(1, max_m)) for _ in range(count)]


def _shortest_cycle_through(graph, vertex):
    nx_graph = graph.to_networkx()
    first, second = graph.neighbors(vertex)
    nx_graph.remove_node(vertex)
    return nx.shortest_path_length(nx_graph, first, second) + 2


def test_expected_counts_closed_forms():
    assert expected_gf_counts(1, 1) == (23, 27, 14)
    assert expected_gf_counts(2, 3) == (2 * 32 + 17, 2 * 34 + 23, 8 * 4 + 18)


def test_gf_matches_counts(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    assert gf.stage is ReductionStage.GF
    assert gf.graph.order == 23
    assert len(gf.graph.edges_of_color(EdgeColor.BLACK)) == 27
    assert len(gf.graph.edges_of_color(EdgeColor.RED)) == 14
    assert gf.params == {"n": 1, "m": 1}
    assert set(gf.terminals) == {"a", "b"}


def test_gf_counts_for_random_formulas():
    for formula in _formulas(20, seed=3):
        g = build_gf(formula).graph
        counts = (g.order, len(g.edges_of_color(EdgeColor.BLACK)), len(g.edges_of_color(EdgeColor.RED)))
        assert counts == expected_gf_counts(formula.n, formula.m)


def test_positive_literals_point_at_false_paths(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    targets = {gf.vertex("f_1,1"), gf.vertex("f'_1,1")}
    for p in (1, 2, 3):
        v = gf.vertex(f"v_1^{p}")
        red = {w for w in gf.graph.neighbors(v) if gf.graph.color(v, w) is EdgeColor.RED}
        assert red == targets


def test_negative_literals_point_at_true_paths(unsatisfiable_formula):
    gf = build_gf(unsatisfiable_formula)
    v = gf.vertex("v_2^1")
    red = {w for w in gf.graph.neighbors(v) if gf.graph.color(v, w) is EdgeColor.RED}
    assert red == {gf.vertex("t_1,3"), gf.vertex("t'_1,3")}


def test_variable_squares_are_red(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    square = [gf.vertex(label) for label in ("t_1,0", "f_1,0", "t'_1,0", "f'_1,0")]
    for left, right in zip(square, square[1:] + square[:1]):
        assert gf.graph.color(left, right) is EdgeColor.RED


def test_formula_helpers(satisfiable_formula, unsatisfiable_formula):
    assert brute_force_satisfiable(satisfiable_formula) == Assignment((1,))
    assert brute_force_satisfiable(unsatisfiable_formula) is None
    assert formula_is_satisfied(satisfiable_formula, Assignment((1,)))
    assert not formula_is_satisfied(satisfiable_formula, Assignment((0,)))
    assert not formula_is_satisfied(satisfiable_formula, Assignment((1, 1)))


def test_assignment_round_trip_on_gf(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    cycle = assignment_to_cycle(gf, Assignment((1,)))
    validate_hole(gf.graph, cycle)
    assert {gf.terminals["a"], gf.terminals["b"]} <= cycle.vertex_set
    assert cycle_to_assignment(gf, cycle) == Assignment((1,))


def test_assignment_to_cycle_rejects_bad_assignments(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    with pytest.raises(CertificateError, match="does not satisfy"):
        assignment_to_cycle(gf, Assignment((0,)))
    with pytest.raises(CertificateError, match="variables"):
        assignment_to_cycle(gf, Assignment((1, 0)))


def test_cycle_to_assignment_rejects_non_certificates(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    a, a1, a_prime = gf.terminals["a"], gf.vertex("a_1"), gf.vertex("a'_1")
    with pytest.raises(CertificateError, match="not an induced cycle"):
        cycle_to_assignment(gf, HoleWitness((a, a1, a_prime)))
    variable_cycle = HoleWitness(
        tuple(gf.vertex(label) for label in ("a_1", "t_1,0", "t_1,1", "t_1,2", "b_1", "f_1,2", "f_1,1", "f_1,0"))
    )
    with pytest.raises(CertificateError):
        cycle_to_assignment(gf, variable_cycle)


def test_hole_through_terminals_tracks_satisfiability(satisfiable_formula, unsatisfiable_formula):
    sat = build_gf(satisfiable_formula)
    found = find_hole_through(sat.graph, sat.terminals["a"], sat.terminals["b"], 4)
    assert found is not None
    assert cycle_to_assignment(sat, found) == Assignment((1,))

    unsat = build_gf(unsatisfiable_formula)
    assert find_hole_through(unsat.graph, unsat.terminals["a"], unsat.terminals["b"], 4) is None


def test_round_trip_for_random_formulas():
    for formula in _formulas(15, seed=5):
        xi = brute_force_satisfiable(formula)
        if xi is None:
            continue
        for art in (build_gf(formula), harden(build_gf(formula))):
            cycle = assignment_to_cycle(art, xi)
            validate_hole(art.graph, cycle)
            assert cycle_to_assignment(art, cycle) == xi


def test_make_f_graph_subdivides_black_edges(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    plan = random_subdivision_plan(gf, seed=11)
    assert plan == random_subdivision_plan(gf, seed=11)
    assert set(plan) == set(gf.graph.edges_of_color(EdgeColor.BLACK))
    assert all(0 <= times <= 2 for times in plan.values())

    fg = make_f_graph(gf, plan)
    assert fg.stage is ReductionStage.F_GRAPH
    assert fg.graph.order == gf.graph.order + sum(plan.values())
    assert len(fg.graph.edges_of_color(EdgeColor.RED)) == 14
    assert fg.subdivision_plan == {edge: times for edge, times in plan.items()}

    cycle = assignment_to_cycle(fg, Assignment((1,)))
    validate_hole(fg.graph, cycle)
    assert cycle_to_assignment(fg, cycle) == Assignment((1,))


def _twin_detour(art, xi):
    """Reroute the clause-1 stretch of the standard cycle through v_1^1, f_1,1 and its twin v_1^2."""
    cycle = list(assignment_to_cycle(art, xi))
    v1, v2, c1 = art.vertex("v_1^1"), art.vertex("v_1^2"), art.vertex("c_1")
    start, end = cycle.index(v1), cycle.index(c1)
    assert start < end
    chain = {v2, c1} | {v for v in art.graph.vertices if art.label_of(v).role is LabelRole.SUB}
    path = nx.shortest_path(induced_subgraph(art.graph, chain).to_networkx(), v2, c1)
    return HoleWitness(tuple(cycle[: start + 1] + [art.vertex("f_1,1"), *path] + cycle[end + 1 :]))


def test_twin_detour_on_hardened_instance(satisfiable_formula):
    hardened = harden(build_gf(satisfiable_formula))
    detour = _twin_detour(hardened, Assignment((1,)))
    validate_hole(hardened.graph, detour)
    cycle = detour.cycle
    red = [
        (u, v) for u, v in zip(cycle, cycle[1:] + cycle[:1])
        if hardened.graph.color(u, v) is EdgeColor.RED
    ]
    assert len(red) == 2
    assert cycle_to_assignment(hardened, detour) == Assignment((1,))


def test_twin_detour_on_f_graph(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    clause_edges = [
        edge for edge in gf.graph.edges_of_color(EdgeColor.BLACK)
        if gf.label_of(edge[0]).role is LabelRole.V or gf.label_of(edge[1]).role is LabelRole.V
    ]
    fg = make_f_graph(gf, {edge: 1 for edge in clause_edges})
    detour = _twin_detour(fg, Assignment((1,)))
    validate_hole(fg.graph, detour)
    assert cycle_to_assignment(fg, detour) == Assignment((1,))


def test_f_graph_round_trips_for_random_plans():
    for index, formula in enumerate(_formulas(20, seed=17, max_n=2, max_m=2)):
        xi = brute_force_satisfiable(formula)
        if xi is None:
            continue
        gf = build_gf(formula)
        fg = make_f_graph(gf, random_subdivision_plan(gf, seed=index))
        cycle = assignment_to_cycle(fg, xi)
        validate_hole(fg.graph, cycle)
        assert cycle_to_assignment(fg, cycle) == xi
        found = find_hole_through(fg.graph, fg.terminals["a"], fg.terminals["b"], 4)
        assert found is not None
        assert formula_is_satisfied(formula, cycle_to_assignment(fg, found))


def test_make_f_graph_rejects_bad_plans(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    red_edge = gf.graph.edges_of_color(EdgeColor.RED)[0]
    with pytest.raises(GraphError, match="only black edges"):
        make_f_graph(gf, {red_edge: 1})
    with pytest.raises(GraphError, match="not an edge"):
        make_f_graph(gf, {(gf.terminals["a"], gf.terminals["b"]): 1})
    black_edge = gf.graph.edges_of_color(EdgeColor.BLACK)[0]
    with pytest.raises(GraphError, match="non-negative"):
        make_f_graph(gf, {black_edge: -1})
    with pytest.raises(ParameterError):
        make_f_graph(harden(gf), {})


def test_harden_postconditions(satisfiable_formula):
    hardened = harden(build_gf(satisfiable_formula), k=9)
    g = hardened.graph
    assert hardened.stage is ReductionStage.HARDENED
    assert hardened.params["k"] == 9
    assert bipartition(g) is not None
    assert hubs(g) == frozenset()
    assert g.degree(hardened.terminals["a"]) == 2
    assert g.degree(hardened.terminals["b"]) == 2
    assert _shortest_cycle_through(g, hardened.terminals["a"]) >= 9
    assert not hardened.has_label("v_1^3")


def test_harden_random_formulas():
    for formula in _formulas(15, seed=7):
        hardened = harden(build_gf(formula))
        assert bipartition(hardened.graph) is not None
        assert not hubs(hardened.graph)
        assert _shortest_cycle_through(hardened.graph, hardened.terminals["a"]) >= 7


def test_harden_preconditions(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    with pytest.raises(ParameterError):
        harden(gf, k=2)
    with pytest.raises(ParameterError):
        harden(harden(gf))


def test_lift_has_single_hub(satisfiable_formula):
    hardened = harden(build_gf(satisfiable_formula))
    lifted = lift_to_wheel_instance(hardened, 5, 4)
    g = lifted.graph
    assert lifted.stage is ReductionStage.WHEEL_INSTANCE
    assert set(lifted.terminals) == {"x", "y"}
    assert hubs(g) == {lifted.terminals["x"]}
    assert bipartition(g) is not None
    assert lifted.params["k"] == 5
    assert lifted.params["l"] == 4
    assert lifted.params["harden_k"] == 7
    assert [lifted.has_label(f"z_{r}") for r in range(1, 7)] == [True] * 5 + [False]
    assert not lifted.has_label("a")


def test_lift_preconditions(satisfiable_formula):
    gf = build_gf(satisfiable_formula)
    hardened = harden(gf)
    with pytest.raises(ParameterError):
        lift_to_wheel_instance(hardened, 4, 2)
    with pytest.raises(ParameterError):
        lift_to_wheel_instance(gf, 4, 3)
    with pytest.raises(ParameterError):
        lift_to_wheel_instance(hardened, 8, 3)
    with pytest.raises(ParameterError):
        lift_to_wheel_instance(hardened, 2, 3)


def test_certificates_need_terminals(satisfiable_formula):
    lifted = lift_to_wheel_instance(harden(build_gf(satisfiable_formula)), 4, 3)
    with pytest.raises(CertificateError, match="no terminals"):
        assignment_to_cycle(lifted, Assignment((1,)))


def test_satisfiable_lift_has_wheel(satisfiable_formula):
    lifted = lift_to_wheel_instance(harden(build_gf(satisfiable_formula)), 4, 3)
    found = detect_kl_wheel(lifted.graph, 4, 3)
    assert found is not None
    assert found.center == lifted.terminals["x"]
    validate_witness(lifted.graph, found)


def _assert_hole_through_matches_satisfiability(art, min_len=4):
    formula = art.formula
    xi = brute_force_satisfiable(formula)
    found = find_hole_through(art.graph, art.terminals["a"], art.terminals["b"], min_len)
    assert (found is not None) == (xi is not None), formula.dimacs_clauses()
    if xi is None:
        return
    cycle = assignment_to_cycle(art, xi)
    validate_hole(art.graph, cycle)
    assert len(cycle) >= min_len
    assert cycle_to_assignment(art, cycle) == xi
    validate_hole(art.graph, found)
    assert formula_is_satisfied(formula, cycle_to_assignment(art, found))


def _sweep_formulas():
    return all_formulas(3, 2) + _formulas(200, seed=13, max_n=5, max_m=4)


@pytest.mark.slow
def test_hole_through_terminals_matches_satisfiability_on_gf():
    for formula in _sweep_formulas():
        _assert_hole_through_matches_satisfiability(build_gf(formula))


@pytest.mark.slow
def test_hole_through_terminals_matches_satisfiability_on_f_graphs():
    for index, formula in enumerate(_sweep_formulas()):
        gf = build_gf(formula)
        _assert_hole_through_matches_satisfiability(make_f_graph(gf, random_subdivision_plan(gf, seed=index)))


@pytest.mark.slow
def test_harden_postconditions_at_scale():
    for formula in _formulas(100, seed=31, max_n=10, max_m=15):
        hardened = harden(build_gf(formula), 7)
        g = hardened.graph
        assert bipartition(g) is not None
        assert not hubs(g)
        assert g.degree(hardened.terminals["a"]) == g.degree(hardened.terminals["b"]) == 2
        heavy = induced_subgraph(g, [v for v in g.vertices if g.degree(v) >= 3]).to_networkx()
        for component in nx.connected_components(heavy):
            shape = heavy.subgraph(component)
            assert any(nx.is_isomorphic(shape, allowed) for allowed in _HEAVY_SHAPES)


@pytest.mark.slow
def test_hole_through_terminals_matches_satisfiability_on_hardened():
    for formula in all_formulas(2, 2):
        _assert_hole_through_matches_satisfiability(harden(build_gf(formula), 7), min_len=7)


@pytest.mark.slow
def test_lift_matches_satisfiability():
    for formula in all_formulas(2, 2):
        lifted = lift_to_wheel_instance(harden(build_gf(formula), 7), 4, 3)
        assert hubs(lifted.graph) == {lifted.terminals["x"]}
        found = detect_kl_wheel(lifted.graph, 4, 3)
        assert (found is not None) == (brute_force_satisfiable(formula) is not None), formula.dimacs_clauses()
        if found is not None:
            validate_witness(lifted.graph, found)


def test_formula_rejects_malformed_input():
    with pytest.raises(FormulaError):
        CnfFormula.from_dimacs_clauses(1, [(1, 2, 1)])
    with pytest.raises(FormulaError):
        CnfFormula.from_dimacs_clauses(1, [(1, 1)])
