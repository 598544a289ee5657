import subprocess
import sys

import pytest

from pcenter.cli import main
from pcenter.coloring import read_coloring
from pcenter.generators import grid, path, toroidal_grid
from pcenter.graph import parse_partition, quotient, read_edge_list, write_edge_list
from pcenter.planar import write_rotation
from pcenter.surface import parse_cutgraph
from pcenter.treedecomp import read_td, validate_td, write_td
from pcenter.generators import partial_ktree
from pcenter.verify import check_p_centered

from .helpers import complete


@pytest.fixture
def files(tmp_path):
    g, rot = grid(5, 5)
    write_edge_list(g, tmp_path / "grid.txt")
    write_rotation(rot, tmp_path / "grid.rot")
    t, trot = toroidal_grid(4, 4)
    write_edge_list(t, tmp_path / "torus.txt")
    write_rotation(trot, tmp_path / "torus.rot")
    k, td = partial_ktree(30, 2, 1)
    write_edge_list(k, tmp_path / "ktree.txt")
    write_td(td, k.n, tmp_path / "ktree.td")
    write_edge_list(path(4), tmp_path / "p4.txt")
    write_edge_list(complete(3), tmp_path / "k3.txt")
    return tmp_path


def test_color_planar(files, capsys):
    out = files / "c.txt"
    rc = main(["color", "planar", str(files / "grid.txt"), str(files / "grid.rot"), "-p", "2",
               "-o", str(out), "--stats", "--verify"])
    assert rc == 0
    stats = capsys.readouterr().out
    assert "colors=" in stats and "bound=" in stats
    col, p = read_coloring(out, 25)
    assert p == 2 and check_p_centered(read_edge_list(files / "grid.txt"), col, 2).ok


def test_color_genus(files):
    out = files / "c.txt"
    assert main(["color", "genus", str(files / "torus.txt"), str(files / "torus.rot"), "-p", "1",
                 "-o", str(out), "--verify"]) == 0


def test_color_treewidth(files, capsys):
    out = files / "c.txt"
    assert main(["color", "treewidth", str(files / "ktree.txt"), str(files / "ktree.td"), "-p", "3",
                 "-o", str(out), "--stats"]) == 0
    assert "bound=10 " in capsys.readouterr().out
    assert main(["color", "treewidth", str(files / "ktree.txt"), "-p", "2", "-o", str(out), "--verify"]) == 0


def test_partition(files):
    out = files / "part.txt"
    assert main(["partition", "planar", str(files / "grid.txt"), str(files / "grid.rot"),
                 "-o", str(out), "--verify"]) == 0
    g = read_edge_list(files / "grid.txt")
    part = parse_partition(out.read_text(), g.n)
    td, n = read_td(str(out) + ".td")
    assert n == len(part)
    assert validate_td(quotient(g, part), td).width <= 8


def test_cutgraph(files):
    out = files / "k.txt"
    assert main(["cutgraph", str(files / "torus.txt"), str(files / "torus.rot"), "-o", str(out)]) == 0
    assert parse_cutgraph(out.read_text()).genus == 1
    assert main(["cutgraph", str(files / "grid.txt"), str(files / "grid.rot")]) == 2


def test_verify(files, capsys):
    good = files / "good.txt"
    bad = files / "bad.txt"
    good.write_text("c colors=3\n0 0\n1 1\n2 0\n3 2\n")
    bad.write_text("0 0\n1 1\n2 0\n3 1\n")
    p4 = str(files / "p4.txt")
    assert main(["verify", "centered", p4, str(good), "-p", "3"]) == 0
    assert capsys.readouterr().out.startswith("OK")
    assert main(["verify", "centered", p4, str(bad), "-p", "2"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("FAIL") and "counterexample:" in out
    assert main(["verify", "centered", p4, str(bad), "-p", "2", "--mode", "sample", "--samples", "300"]) == 1


def test_subiso(files, capsys):
    pat = files / "c4.txt"
    pat.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    rc = main(["subiso", str(pat), str(files / "grid.txt"), "--embedding", str(files / "grid.rot"), "--check"])
    out = capsys.readouterr()
    assert rc == 0 and out.out.startswith("YES") and "MISMATCH" not in out.err
    assert main(["subiso", str(files / "k3.txt"), str(files / "grid.txt")]) == 1
    assert capsys.readouterr().out.startswith("NO")
    assert main(["subiso", str(pat), str(files / "grid.txt"), "--mode", "randomized", "--trials", "20"]) == 0


def test_subiso_bad_p(files):
    with pytest.raises(SystemExit) as info:
        main(["subiso", str(files / "k3.txt"), str(files / "grid.txt"), "-p", "2"])
    assert info.value.code == 2


def test_oracle(files, capsys):
    assert main(["oracle", "mincolors", str(files / "p4.txt"), "-p", "2"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_bench(files, capsys):
    out = files / "bench.txt"
    assert main(["bench", "--sizes", "4", "--repeat", "1", "-o", str(out)]) == 0
    assert "speedup" in capsys.readouterr().out
    assert "True" in out.read_text()


def test_input_errors(files, capsys):
    broken = files / "broken.txt"
    broken.write_text("3 5\n0 1\n")
    assert main(["color", "treewidth", str(broken), "-p", "2"]) == 2
    assert main(["color", "planar", str(files / "missing.txt"), str(files / "grid.rot"), "-p", "2"]) == 2
    assert main(["color", "planar", str(files / "grid.txt"), str(files / "torus.rot"), "-p", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        main(["color", "planar"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["oracle", "mincolors", "x", "-p", "0"])
    assert info.value.code == 2


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "pcenter", "oracle", "mincolors", str(files / "k3.txt"), "-p", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "3"
