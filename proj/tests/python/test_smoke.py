import tilescott as ts


def test_white_polygon_permutation():
    doc = ts.white_polygon(5)
    assert ts.validate(doc) == "ok"
    pi, colors = ts.perm(doc)
    assert pi == [5, 1, 2, 3, 4]  # i -> i-1
    assert colors == {}


def test_antigon_type_and_permutation():
    doc = ts.antigon(4)
    pi, _ = ts.perm(doc)
    assert pi == [2, 3, 4, 1]  # i -> i+1
    k, n, v, f = ts.tiling_type(doc)
    assert (k, n, v, f) == (1, 4, 5, 4)


def test_scott_round_trip():
    doc = ts.fan_triangulation(6)
    diagram = ts.scott(doc)
    ok, reason = ts.is_postnikov(diagram)
    assert ok, reason
    back = ts.inv_scott(diagram)
    assert ts.canonical_code(ts.scott(back)) == ts.canonical_code(diagram)
    assert ts.equivalent(back, doc)


def test_pentagon_flip_class():
    size, truncated = ts.flip_class_size(ts.fan_triangulation(5))
    assert size == 5 and not truncated


def test_flip_is_involution():
    doc = ts.fan_triangulation(4)
    once = ts.flip(doc, 1)
    assert ts.canonical_code(once) != ts.canonical_code(doc)
    twice = ts.flip(once, 1)
    assert ts.canonical_code(twice) == ts.canonical_code(doc)


def test_reduce_and_labels():
    diagram = ts.scott(ts.antigon(5))
    uniform, k = ts.labels(diagram)
    assert uniform and k == 1
    reduced = ts.reduce(diagram)
    assert ts.equivalent(reduced, diagram)


def test_svg_census():
    svg = ts.render_svg(ts.white_polygon(5))
    assert svg.count("<text") == 5
    assert svg.rstrip().endswith("</svg>")


def test_document_round_trip():
    doc = ts.random_tiling(7)
    assert ts.validate(doc) == "ok"
    # canonical serialization is a fixpoint
    normalized = ts.normalize(doc)
    assert ts.validate(normalized) == "ok"
