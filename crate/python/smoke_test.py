"""Smoke test for the ifpart extension module.

Build with `cargo build --release -p ifpart-py --features extension-module`
and copy target/release/libifpart_py.so to python/ifpart.so (or install with
maturin), then run `python python/smoke_test.py`.
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import ifpart


def main():
    s = ifpart.sharpness_graph(3)
    assert (s.vertex_count, s.edge_count) == (12, 15)
    value, witness = ifpart.mad(s)
    assert value == Fraction(5, 2) and len(witness) == 12
    assert ifpart.solve_if_partition(ifpart.AssignedGraph(s)) is None

    k33 = ifpart.Graph.from_graph6("EFz_")
    assert k33.edge_count == 9
    assert ifpart.star_chromatic_number(k33)[0] == 4
    assert ifpart.solve_if_partition(ifpart.AssignedGraph(k33)) is None

    path = ifpart.Graph(4, [(0, 1), (1, 2), (2, 3)])
    ag = ifpart.AssignedGraph(path, "IUUF")
    p = ifpart.solve_if_partition(ag)
    assert p is not None and ifpart.is_valid_if_partition(ag, p)
    assert 0 in p.independent and 3 in p.forest
    colors = ifpart.star_coloring_from_partition(path, p)
    assert ifpart.is_star_coloring(path, colors)
    assert not ifpart.is_valid_if_partition(ag, ifpart.Partition([0, 1], [2, 3]))

    tri = ifpart.AssignedGraph(ifpart.Graph(3, [(0, 1), (1, 2), (0, 2)]), "IIU")
    assert ifpart.potential(tri, [0, 1, 2]) == -5
    assert ifpart.min_potential(tri)[0] == -5
    assert not ifpart.all_potentials_positive(tri)

    expanded, vertex_map = ifpart.expand_to_unassigned(ag)
    assert set(expanded.labels) == {"U"} and len(vertex_map) == 4

    petersen = ifpart.Graph.from_graph6("IheA@GUAo")
    pa = ifpart.AssignedGraph(petersen)
    assert ifpart.detect_configurations(pa) == []
    assert ifpart.audit_lemma8(pa) == "holds"
    assert all(c >= 0 for c in ifpart.final_charges(pa))
    assert ifpart.detect_configurations(ifpart.AssignedGraph(path))[0][0] == "C1"

    g = ifpart.gnm(5, 4, 42)
    assert g == ifpart.gnm(5, 4, 42) and g.to_graph6() == "DQK"
    try:
        ifpart.gnm(4, 7, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("gnm(4, 7) accepted")

    report = ifpart.run_check("claim4")
    assert report["failures"] == 0 and len(report["notes"]) == 5

    print("smoke test passed")


if __name__ == "__main__":
    main()
