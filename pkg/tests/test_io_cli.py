import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from strategies import convex_polys
from trapset.cli import main, parse_point, UsageError
from trapset.families import FAMILIES, generate, predicted_polygons, scene_of
from trapset.io import DocumentError, SceneDocument, dumps, load, loads, save
from trapset.constructions import DEFAULT_P


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestDocuments:
    @pytest.mark.parametrize("family", FAMILIES)
    def test_round_trip(self, family):
        doc = generate(family, "rays", seed=1, k=2)
        text = dumps(doc)
        again = loads(text)
        assert again == doc
        assert dumps(again) == text

    @given(st.lists(convex_polys(), max_size=4), st.one_of(st.none(), st.integers(0, 10**6)))
    def test_round_trip_random(self, polys, seed):
        doc = SceneDocument(2, polys, None, {"polygons": polys[:1]} if polys else None, seed)
        back = loads(dumps(doc))
        assert back.polygons == polys
        assert back.seed == seed
        assert dumps(back) == dumps(doc)

    def test_rationals_are_strings(self):
        raw = json.loads(dumps(generate("paper-e2")))
        assert raw["polygons"][0][0] == ["-4", "-4"]
        assert "seed" in raw and raw["version"] == 1

    def test_predicted_block(self):
        doc = generate("paper-e2", "lines")
        assert predicted_polygons(doc) == [DEFAULT_P]

    def test_spatial_rebuild(self):
        con = scene_of(loads(dumps(generate("e3-bounded"))))
        assert con.scene.dim == 3 and len(con.predicted) == 2
        con4 = scene_of(loads(dumps(generate("e4-product"))))
        assert con4.scene.dim == 4

    def test_save_load(self, tmp_path):
        doc = generate("generalized-polygon", k=3)
        path = str(tmp_path / "g.json")
        save(doc, path)
        assert load(path) == doc

    @pytest.mark.parametrize("text,needle", [
        ("{", "invalid JSON"),
        ("[]", "JSON object"),
        ('{"version": 2, "dim": 2}', "version"),
        ('{"version": 1, "dim": 1}', "dim"),
        ('{"version": 1, "dim": 2, "polygons": [[[0.5, 0], [1, 0], [0, 1]]]}', "exact rational"),
        ('{"version": 1, "dim": 2, "polygons": [[["a", 0], [1, 0], [0, 1]]]}', "bad rational"),
        ('{"version": 1, "dim": 2, "polygons": [[[0, 0], [0, 1], [1, 0]]]}', "convex"),
        ('{"version": 1, "dim": 2, "polygons": [[[0, 0], [1, 0]]]}', "3 vertices"),
        ('{"version": 1, "dim": 2, "extra": 1}', "unknown keys"),
        ('{"version": 1, "dim": 3}', "construction"),
        ('{"version": 1, "dim": 2, "seed": "x"}', "seed"),
    ])
    def test_errors(self, text, needle):
        with pytest.raises(DocumentError, match=needle):
            loads(text)

    def test_bad_construction(self):
        doc = loads('{"version": 1, "dim": 3, "construction": {"family": "nope"}}')
        with pytest.raises(DocumentError, match="unknown family"):
            scene_of(doc)
        doc = loads('{"version": 1, "dim": 4, "construction": {"family": "e3-bounded"}}')
        with pytest.raises(DocumentError):
            scene_of(doc)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DocumentError, match="cannot read"):
            load(str(tmp_path / "missing.json"))


class TestCli:
    @pytest.fixture
    def e2(self, tmp_path):
        path = str(tmp_path / "e2.json")
        assert main(["generate", "--family", "paper-e2", "--mode", "rays", "--out", path]) == 0
        return path

    def test_parse_point(self):
        assert parse_point("1/2,-3") == (mpq(1, 2), -3)
        with pytest.raises(UsageError):
            parse_point("1,2,3", 2)
        with pytest.raises(UsageError):
            parse_point("0.5,1")

    def test_generate_matches_family(self, e2):
        doc = load(e2)
        assert doc.construction["mode"] == "rays"
        from trapset.scene import Scene2, scene_components

        assert len(scene_components(Scene2(doc.polygons))) == 3

    def test_generate_deterministic(self, tmp_path):
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        for out in (a, b):
            assert main(["generate", "--family", "random-e2", "--seed", "5", "--out", out]) == 0
        assert open(a).read() == open(b).read()

    def test_classify(self, e2, capsys):
        assert main(["classify", "--scene", e2, "--point", "0/1,0/1"]) == 0
        assert capsys.readouterr().out.strip() == "TrappedBoth"

    def test_classify_empty(self, tmp_path, capsys):
        path = write(tmp_path, "empty.json", '{"version": 1, "dim": 2, "polygons": []}')
        assert main(["classify", "--scene", path, "--point", "0,0"]) == 0
        assert capsys.readouterr().out.strip() == "Free (1,0)"

    def test_classify_spatial(self, tmp_path, capsys):
        path = str(tmp_path / "s.json")
        main(["generate", "--family", "e3-stacked", "--out", path])
        capsys.readouterr()
        assert main(["classify", "--scene", path, "--point", "1/2,0,-1/4", "--samples", "16",
                     "--floor-budget", "8"]) == 0
        assert capsys.readouterr().out.strip() == "EvidenceTrapped(16)"
        assert main(["classify", "--scene", path, "--point", "1/2,0,-1/4", "--samples", "16",
                     "--floor-budget", "0"]) == 3
        assert capsys.readouterr().out.startswith("Inconclusive")

    def test_check(self, e2, capsys):
        assert main(["check", "--scene", e2, "--mode", "ray"]) == 0
        assert main(["check", "--scene", e2, "--mode", "line"]) == 2
        out = capsys.readouterr().out
        assert "weakly 1-semiconvex: true" in out and "weakly 1-convex: false at" in out

    def test_components(self, e2, capsys):
        assert main(["components", "--scene", e2]) == 0
        out = capsys.readouterr().out
        assert "scene components: 3" in out and "area 6, hull area 6, convex" in out

    def test_certify(self, e2, capsys):
        assert main(["certify", "--scene", e2, "--point", "0,0"]) == 0
        assert capsys.readouterr().out.startswith("radius ")
        assert main(["certify", "--scene", e2, "--point", "3,3"]) == 1
        assert "not trapped" in capsys.readouterr().err

    def test_region(self, e2, tmp_path):
        out, svg = str(tmp_path / "r.json"), str(tmp_path / "r.svg")
        assert main(["region", "--scene", e2, "--out", out, "--svg", svg]) == 0
        data = json.loads(open(out).read())
        assert data["areas"]["TrappedBoth"] == "6"
        assert data["areas"]["InE"] == "58"
        assert open(svg).read().startswith("<?xml")
        again = str(tmp_path / "r2.json")
        main(["region", "--scene", e2, "--out", again])
        assert open(again).read() == open(out).read()

    def test_render(self, e2, tmp_path):
        svg = str(tmp_path / "x.svg")
        assert main(["render-svg", "--scene", e2, "--svg", svg]) == 0
        assert 'data-label="TrappedBoth"' in open(svg).read()

    def test_errors(self, tmp_path, capsys):
        bad = write(tmp_path, "bad.json", '{"version": 1, "dim": 2, "polygons": [[[0.5, 0]]]}')
        assert main(["classify", "--scene", bad, "--point", "0,0"]) == 1
        assert "exact rational" in capsys.readouterr().err
        assert main(["classify", "--scene", str(tmp_path / "none.json"), "--point", "0,0"]) == 1
        spatial = str(tmp_path / "s.json")
        main(["generate", "--family", "e3-bounded", "--out", spatial])
        assert main(["region", "--scene", spatial]) == 1
        with pytest.raises(SystemExit):
            main(["generate", "--family", "unknown"])
