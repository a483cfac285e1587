import re
from html.parser import HTMLParser

import pytest

from subspace_kit.errors import ValidationError
from subspace_kit.formats import read_arff, write_cluster_tables
from subspace_kit.model import Clustering, Dataset, SubspaceCluster
from subspace_kit.visualization import (PALETTE, color_assignment, emit_colored_table, emit_subspace_matrix,
                                        hex_color, parse_color, render_colored_table, render_subspace_matrix)

from _helpers import IRIS_ARFF

NAMES = ["sepallength", "sepalwidth", "petallength", "petalwidth"]


def C(objs, dims):
    return SubspaceCluster(frozenset(objs), frozenset(dims))


class TableScan(HTMLParser):
    """Collects, per object row, its cluster, style and the dims carrying a bar marker."""

    def __init__(self):
        super().__init__()
        self.rows = {}
        self._row = None
        self._dim = None
        self.notices = []
        self._in_notice = False

    def handle_starttag(self, tag, attrs):
        a = dict(attrs)
        if tag == "tr" and "data-object" in a:
            self._row = int(a["data-object"])
            self.rows[self._row] = {"cluster": a.get("data-cluster"), "style": a.get("style"),
                                    "class": a.get("class"), "bars": []}
        elif tag == "td" and "data-dim" in a:
            self._dim = int(a["data-dim"])
        elif tag == "span" and a.get("class") == "bar" and self._row is not None:
            self.rows[self._row]["bars"].append(self._dim)
        elif tag == "p" and a.get("class") == "notice":
            self._in_notice = True

    def handle_data(self, data):
        if self._in_notice:
            self.notices.append(data)
            self._in_notice = False

    def handle_endtag(self, tag):
        if tag == "tr":
            self._row = None


def scan(html):
    p = TableScan()
    p.feed(html)
    return p


def blue_green_scenario():
    # blue cluster 0 in all four dims; green cluster 1 in dims 2 and 4 (0-based 1 and 3),
    # its dim-1 values spread 5.0-6.3 and dim-2 values stay within 2.0-2.4
    blue = [[5.0, 3.4, 1.5, 0.2], [5.1, 3.5, 1.4, 0.2], [4.9, 3.3, 1.4, 0.3]]
    green = [[5.0, 2.0, 3.5, 1.0], [6.3, 2.3, 4.4, 1.0], [5.5, 2.4, 3.8, 1.1], [6.0, 2.2, 4.0, 1.0]]
    other = [[7.7, 3.8, 6.7, 2.2]]
    data = Dataset.from_rows(blue + green + other, NAMES)
    clustering = Clustering((C({0, 1, 2}, {0, 1, 2, 3}), C({3, 4, 5, 6}, {1, 3})), data.n, data.d)
    return data, clustering


def test_green_cluster_bars_on_dims_2_and_4_only():
    data, clustering = blue_green_scenario()
    s = scan(render_colored_table(data, clustering))
    assert PALETTE[1] == (51, 160, 44)  # cluster 1 is drawn green
    green_rows = [r for r in s.rows.values() if r["cluster"] == "1"]
    assert len(green_rows) == 4
    assert all(r["bars"] == [1, 3] for r in green_rows)
    # the blue cluster carries bars in all four dims
    assert all(r["bars"] == [0, 1, 2, 3] for r in s.rows.values() if r["cluster"] == "0")


def test_rows_sorted_and_tinted_per_cluster():
    data, clustering = blue_green_scenario()
    html = render_colored_table(data, clustering)
    s = scan(html)
    assert list(s.rows) == [0, 1, 2, 3, 4, 5, 6, 7]
    tints = {r["style"] for r in s.rows.values() if r["class"] == "obj"}
    assert len(tints) == 2
    assert s.rows[7]["class"] == "noise" and s.rows[7]["bars"] == []
    hidden = scan(render_colored_table(data, clustering, show_unclustered=False))
    assert 7 not in hidden.rows


def test_overlap_primary_and_also_in():
    data = Dataset.from_rows([[0.0], [1.0], [2.0]], ["x"])
    clustering = Clustering((C({1, 2}, {0}), C({0, 1}, {0})), 3, 1)
    html = render_colored_table(data, clustering)
    s = scan(html)
    assert s.rows[1]["cluster"] == "0"
    assert re.search(r'data-object="1".*<td class="also">1</td>', html)
    assert list(s.rows) == [1, 2, 0]


def test_empty_clustering_notice():
    data = Dataset.from_rows([[0.0, 1.0]], ["a", "b"])
    html = render_colored_table(data, Clustering.empty(1, 2))
    assert "<h1>" in html and scan(html).notices == ["no clusters"]


def test_no_scripts_and_deterministic(tmp_path):
    data, clustering = blue_green_scenario()
    emit_colored_table(data, clustering, None, tmp_path / "a.html")
    emit_colored_table(data, clustering, None, tmp_path / "b.html")
    raw = (tmp_path / "a.html").read_bytes()
    assert raw == (tmp_path / "b.html").read_bytes()
    assert b"<script" not in raw and b"http" not in raw.replace(b"http://www.w3.org", b"")


def test_palette_cycles_and_custom_colors():
    cols = color_assignment(14)
    assert cols[12] == cols[0] and cols[13] == cols[1]
    assert color_assignment(2, [(1, 2, 3)]) == [(1, 2, 3), (1, 2, 3)]
    assert parse_color("#1f78b4") == (31, 120, 180) and hex_color((31, 120, 180)) == "#1f78b4"
    with pytest.raises(ValidationError):
        parse_color("blue")


def test_mismatched_clustering_rejected():
    data = Dataset.from_rows([[0.0]], ["x"])
    with pytest.raises(ValidationError):
        render_colored_table(data, Clustering.empty(2, 1))


def filled_cells(svg):
    return {(int(c), int(d)) for c, d in re.findall(r'class="on" data-cluster="(\d+)" data-dim="(\d+)"', svg)}


def test_iris_matrix_cluster_2_row():
    iris = read_arff(IRIS_ARFF)
    clustering = Clustering((C(range(0, 50), {2, 3}), C(range(50, 100), {0, 2}), C(range(100, 150), {0, 1, 3})),
                            iris.n, iris.d)
    svg = render_subspace_matrix(clustering, iris.dim_names)
    assert len(re.findall(r"<rect ", svg)) == 12
    assert {d for c, d in filled_cells(svg) if c == 2} == {0, 1, 3}
    assert "cluster 2 (50)" in svg
    for name in NAMES:
        assert f">{name}</text>" in svg


def test_matrix_agrees_with_dims_table(tmp_path):
    data, clustering = blue_green_scenario()
    write_cluster_tables(clustering, tmp_path / "d.csv", tmp_path / "o.csv", data.dim_names)
    flags = set()
    for line in (tmp_path / "d.csv").read_text().splitlines()[1:]:
        cid, *bits = line.split(",")
        flags |= {(int(cid), j) for j, b in enumerate(bits) if b == "1"}
    assert filled_cells(render_subspace_matrix(clustering, data.dim_names)) == flags
    bars = {(int(r["cluster"]), j) for r in scan(render_colored_table(data, clustering)).rows.values()
            if r["cluster"] is not None for j in r["bars"]}
    assert bars <= flags


def test_matrix_full_row_and_empty(tmp_path):
    one = Clustering((C({0}, {0, 1, 2}),), 1, 3)
    assert filled_cells(render_subspace_matrix(one)) == {(0, 0), (0, 1), (0, 2)}
    assert "no clusters" in render_subspace_matrix(Clustering.empty(1, 3))
    emit_subspace_matrix(one, None, tmp_path / "m.svg")
    assert (tmp_path / "m.svg").read_text().startswith("<?xml")
    with pytest.raises(ValidationError):
        render_subspace_matrix(one, ["a"])
