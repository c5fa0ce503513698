import io as stdio

import pytest

from assocfans import io as afio
from assocfans.cli import main
from assocfans.genperm import g0_params, post_hrep, rss_hrep, uniform_weights
from assocfans.hl import hl_hrep
from assocfans.santos import make_seed_frame, santos_hrep
from assocfans.polygon import snake_triangulation


def roundtrip(h):
    buf = stdio.StringIO()
    afio.write_hrep(h, buf)
    buf.seek(0)
    return afio.read_hrep(buf)


def test_hrep_round_trip_families():
    for h in (
        post_hrep(uniform_weights(3)),
        rss_hrep(g0_params(2)),
        hl_hrep((1, -1)),
        santos_hrep(make_seed_frame(snake_triangulation(3))),
    ):
        h2 = roundtrip(h)
        assert h2.dim == h.dim and h2.m == h.m
        assert sorted(h2.inequalities) == sorted(h.inequalities)
        assert h2.equalities == h.equalities
        # byte-exact re-serialization
        b1, b2 = stdio.StringIO(), stdio.StringIO()
        afio.write_hrep(h, b1)
        afio.write_hrep(h2, b2)
        assert b1.getvalue() == b2.getvalue()


def test_read_hrep_rejects_garbage():
    with pytest.raises(afio.FormatError):
        afio.read_hrep(stdio.StringIO("not an hrep\n"))
    with pytest.raises(afio.FormatError):
        afio.read_hrep(stdio.StringIO("HREP v1\ndim 2  polygon 5\nE 0\nI 0\n"))


def test_cli_count(capsys):
    assert main(["count", "--n-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "type I" in out and " 3" in out


def test_cli_build_verify_compare(tmp_path, capsys):
    post = tmp_path / "post.hrep"
    snake = tmp_path / "snake.hrep"
    alt = tmp_path / "alt.hrep"
    assert main(["build", "--family", "post", "--n", "3",
                 "--out", str(post)]) == 0
    assert main(["build", "--family", "santos", "--n", "3",
                 "--seed", "6: 1-5, 2-4, 2-5", "--out", str(snake)]) == 0
    assert main(["build", "--family", "hl", "--n", "3", "--sigma", "+-",
                 "--out", str(alt)]) == 0
    capsys.readouterr()

    assert main(["verify", "--in", str(post)]) == 0
    assert '"is_simple_associahedron": true' in capsys.readouterr().out

    assert main(["compare", "--in", str(post), "--in", str(snake)]) == 1
    assert "NOT normally isomorphic" in capsys.readouterr().out

    assert main(["compare", "--in", str(alt), "--in", str(snake)]) == 0
    assert "normally isomorphic" in capsys.readouterr().out


def test_cli_verify_flags_corrupted_file(tmp_path, capsys):
    path = tmp_path / "bad.hrep"
    assert main(["build", "--family", "post", "--n", "2",
                 "--out", str(path)]) == 0
    text = path.read_text().splitlines()
    # bump one inequality rhs by 1000
    parts = text[-1].split()
    parts[-1] = str(int(parts[-1]) - 1000)  # rhs is negative; push it further
    text[-1] = " ".join(parts)
    path.write_text("\n".join(text) + "\n")
    capsys.readouterr()
    assert main(["verify", "--in", str(path)]) == 1


def test_cli_bad_input_exit_codes(tmp_path, capsys):
    assert main(["build", "--family", "hl", "--n", "3",
                 "--out", str(tmp_path / "x.hrep")]) == 2  # missing --sigma
    assert main(["verify", "--in", str(tmp_path / "missing.hrep")]) == 2
    assert main(["build", "--family", "santos", "--n", "4",
                 "--seed", "6: 1-5, 2-4, 2-5",
                 "--out", str(tmp_path / "y.hrep")]) == 2  # size mismatch


def test_cli_build_gkz_and_rss(tmp_path, capsys):
    gkz = tmp_path / "gkz.hrep"
    rss = tmp_path / "rss.hrep"
    assert main(["build", "--family", "gkz", "--n", "2", "--out", str(gkz)]) == 0
    assert main(["build", "--family", "rss", "--n", "2", "--out", str(rss)]) == 0
    capsys.readouterr()
    assert main(["verify", "--in", str(gkz)]) == 0
    assert main(["verify", "--in", str(rss)]) == 0


def test_cli_build_with_points_file(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("0 0\n1 1\n2 4\n3 9\n4 16\n")
    out = tmp_path / "gkz5.hrep"
    assert main(["build", "--family", "gkz", "--n", "2", "--points", str(pts),
                 "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["verify", "--in", str(out)]) == 0


def test_cli_classify(capsys):
    assert main(["classify", "--family", "santos", "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "total: 3" in out


def test_cli_build_with_weights_files(tmp_path, capsys):
    wpost = tmp_path / "weights.txt"
    wpost.write_text(
        "\n".join(f"{i} {j} {i + j}" for i in (1, 2, 3) for j in range(i, 4))
    )
    out = tmp_path / "post.hrep"
    assert main(["build", "--family", "post", "--n", "2",
                 "--weights", str(wpost), "--out", str(out)]) == 0
    wrss = tmp_path / "g.txt"
    wrss.write_text(
        "\n".join(f"{i} {j} {i * (i - j)}" for i in range(4)
                  for j in range(i + 1, 4))
    )
    out2 = tmp_path / "rss.hrep"
    assert main(["build", "--family", "rss", "--n", "2",
                 "--weights", str(wrss), "--out", str(out2)]) == 0
    capsys.readouterr()
    assert main(["verify", "--in", str(out)]) == 0
    assert main(["verify", "--in", str(out2)]) == 0


def test_cli_count_json_output(tmp_path):
    import json

    path = tmp_path / "table.json"
    assert main(["count", "--n-max", "3", "--json", str(path)]) == 0
    rows = json.loads(path.read_text())
    assert rows[3]["type2"] == 3 and rows[3]["type2_enumerated"] == 3


def test_cli_atlas(capsys):
    assert main(["atlas", "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "common_pairs" in out
