"""Random graph generators shared by the property suites."""

from relzeros import Multigraph


def random_sp_multigraph(rng, max_edges=12):
    """Random series-parallel multigraph grown from a single edge.

    Applies random series/parallel extensions (plus an occasional loop) so
    the result is always series-parallel and connected; classes are drawn
    from {0, 1}.
    """
    target = rng.randint(1, max_edges)
    edges = [(0, 1, rng.randint(0, 1))]
    num_vertices = 2
    while len(edges) < target:
        i = rng.randrange(len(edges))
        u, v, c = edges[i]
        op = rng.random()
        if op < 0.45:
            w = num_vertices
            num_vertices += 1
            edges[i] = (u, w, rng.randint(0, 1))
            edges.append((w, v, rng.randint(0, 1)))
        elif op < 0.90:
            edges.append((u, v, rng.randint(0, 1)))
        else:
            edges.append((u, u, rng.randint(0, 1)))
    return Multigraph(num_vertices, tuple(edges))


def uniform_class(g):
    """The same multigraph with every edge relabeled to class 0."""
    return Multigraph(g.num_vertices, tuple((u, v, 0) for u, v, _ in g.edges))


def random_connected_graph(rng, n, extra_edges):
    """Random connected loopless graph: spanning tree plus extra edges."""
    edges = [(rng.randrange(i), i, 0) for i in range(1, n)]
    for _ in range(extra_edges):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v, 0))
    return Multigraph(n, tuple(edges))
