import json
import math
import os
import subprocess

import pytest

import mediagraph as mg


def write_jsonl(path, records):
    path.write_text("".join(json.dumps(r) + "\n" for r in records))


def micro_corpus(tmp_path):
    d = tmp_path / "micro"
    d.mkdir()
    write_jsonl(
        d / "channels.jsonl",
        [{"id": "ch", "title": "Ch", "kind": "NM", "orientation": "center", "subscriber_count": 0}],
    )
    write_jsonl(
        d / "videos.jsonl",
        [
            {
                "id": v,
                "channel_id": "ch",
                "published_at": "2024-04-01T00:00:00Z",
                "title": "t",
                "description": "",
                "view_count": 0,
                "like_count": 0,
                "comment_count": 0,
            }
            for v in ("v1", "v2", "v3")
        ],
    )
    pairs = [("v1", "a"), ("v1", "b"), ("v1", "c"), ("v2", "b"), ("v2", "c"), ("v3", "c")]
    write_jsonl(
        d / "comments.jsonl",
        [
            {"id": f"c{i}", "video_id": v, "author_id": a, "published_at": "2024-04-02T00:00:00Z"}
            for i, (v, a) in enumerate(pairs)
        ],
    )
    return d


def test_micro_example(tmp_path):
    corpus = mg.load_corpus(micro_corpus(tmp_path))
    assert corpus.video_count == 3
    assert corpus.commenter_count == 3
    s = mg.summarize_channel(corpus, "ch")
    assert s["vcg_density"] == pytest.approx(0.4)
    assert s["vcg_density_norm"] == pytest.approx(2 / 3)
    assert s["cpwg_density"] == pytest.approx(1.0)
    assert sorted(mg.commenter_projection(corpus, "ch")) == [("a", "b", 1), ("a", "c", 1), ("b", "c", 2)]


def test_synthetic_analytics():
    corpus = mg.generate_synthetic(seed=3, channels_per_group=1, commenters=80, p_in=0.2, p_cross=0.02)
    assert corpus.channel_count == 8
    shares = [row["share_percent"] for row in mg.taxonomy(corpus)]
    assert math.isclose(sum(shares), 100.0, abs_tol=1e-9)
    labels, cells = mg.overlap_matrix(corpus)
    assert len(labels) == len(cells)
    for i in range(len(cells)):
        assert cells[i][i] == 100.0


def test_stats():
    r, p, n = mg.pearson([1, 2, 3, 4, 5], [3, 5, 7, 9, 11])
    assert r == pytest.approx(1.0)
    assert n == 5
    values, survival = mg.ccdf([1, 2, 3])
    assert values == [1, 2, 3]
    assert survival == pytest.approx([1, 2 / 3, 1 / 3])
    with pytest.raises(mg.MediagraphError):
        mg.pearson([1, 1, 1], [1, 2, 3])


def test_interviewees(tmp_path):
    gz = tmp_path / "g.jsonl"
    gz.write_text(
        '{"full_name": "Emmanuel Macron", "aliases": [], "party": "RE", "orientation": "center"}\n'
        '{"full_name": "Jean Dupont", "aliases": [], "party": "X", "orientation": "right"}\n'
    )
    g = mg.Gazetteer.load(gz)
    title = "Interview exclusive avec Emmanuel Macron et Jean Dupont"
    desc = "Le président Emmanuel Macron s’entretient avec Jean Dupont sur les enjeux actuels."
    prompt = mg.extraction_prompt(title, desc)
    names, flags = mg.extract_interviewees(
        title, desc, {prompt: '{"Invited": ["Emmanuel Macron", "Jean Dupont"]}'}, g
    )
    assert names == ["Emmanuel Macron", "Jean Dupont"]
    assert flags == []
    assert g.match("la Macronie") == []
    assert mg.parse_invited("garbage") is None


def test_pipeline_and_cli(tmp_path):
    corpus = mg.generate_synthetic(seed=5, channels_per_group=1, commenters=60, p_in=0.2)
    mg.write_corpus(corpus, tmp_path / "corpus")
    conf = tmp_path / "p.conf"
    conf.write_text("corpus_dir = corpus\noutput_dir = out\n")
    first = mg.run_pipeline(conf)
    assert first["metrics"] == "ran"
    assert first["coverage"] == "disabled"
    second = mg.run_pipeline(conf, parallel=2)
    assert all(v != "ran" for v in second.values())
    assert (tmp_path / "out" / "manifest.json").exists()

    cli = os.environ.get("MEDIAGRAPH_CLI")
    if cli:
        done = subprocess.run([cli, "-q", "run", "--config", str(conf)], capture_output=True)
        assert done.returncode == 0
        bad = subprocess.run([cli, "ingest", "--in", str(tmp_path / "missing")], capture_output=True)
        assert bad.returncode != 0


def test_errors(tmp_path):
    with pytest.raises(mg.MediagraphError):
        mg.load_corpus(tmp_path / "nothing-here")
