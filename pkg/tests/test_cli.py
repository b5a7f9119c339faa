"""End-to-end command-line flows, exit codes and certificate determinism."""

import json

import pytest

from ramsey_cube.cli import main
from ramsey_cube.labelling import random_solvable_instance, write_multigraph
from ramsey_cube.matchings import enumerate_matchings


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_matchings_enumerate_and_classify(capsys):
    code, out, _ = run(capsys, "matchings", "enumerate", "--k", "3")
    assert code == 0
    assert len([ln for ln in out.splitlines() if "|" in ln]) == 9
    code, out, _ = run(capsys, "--json", "matchings", "classify", "--k", "4")
    assert code == 0
    cert = json.loads(out)
    assert cert["schema"] == 1
    assert cert["results"][0]["count"] == 8


def test_build_verify_cycle_roundtrip(tmp_path, capsys):
    g = tmp_path / "g.txt"
    code, _, _ = run(
        capsys, "colouring", "build", "--k", "3", "--n", "5",
        "--matching-class", "0", "--out", str(g),
    )
    assert code == 0
    code, out, _ = run(
        capsys, "--json", "verify", "cycles", "--graph", str(g), "--length", "5"
    )
    assert code == 0
    cert = json.loads(out)
    assert all(r["status"] == "pass" for r in cert["results"])
    # C4 exists in the cross graphs
    code, out, _ = run(
        capsys, "verify", "cycles", "--graph", str(g), "--length", "4"
    )
    assert code == 1


def test_verify_cycles_indefinite_exit_code(tmp_path, capsys):
    # complete bipartite graph, odd target: exhausts any tiny budget
    g = tmp_path / "b.txt"
    lines = ["1 10"] + [f"{u} {5 + v} 1" for u in range(5) for v in range(5)]
    g.write_text("\n".join(lines) + "\n")
    code, out, _ = run(
        capsys, "--json", "verify", "cycles", "--graph", str(g),
        "--length", "7", "--budget", "10",
    )
    assert code == 3
    cert = json.loads(out)
    assert cert["results"][0]["status"] == "indefinite"
    assert cert["results"][0]["budget"] == 10


def test_colouring_verify_structure(tmp_path, capsys):
    g = tmp_path / "g.txt"
    run(
        capsys, "colouring", "build", "--k", "3", "--n", "5",
        "--matching-class", "1", "--out", str(g),
    )
    code, out, _ = run(
        capsys, "--json", "colouring", "verify", "--graph", str(g),
        "--k", "3", "--matching-class", "1", "--clique-size", "4",
        "--cycle-length", "5",
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["per_colour_structure"]
    assert all(s["ok"] for s in cert["per_colour_structure"])
    assert cert["cycle_search_result"]["status"] == "pass"


def test_profile_and_distance(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    run(capsys, "colouring", "build", "--k", "2", "--n", "5", "--out", str(a))
    run(
        capsys, "colouring", "build", "--k", "2", "--n", "5",
        "--matching-class", "0", "--cross-rule", "random", "--seed", "9",
        "--out", str(b),
    )
    code, out, _ = run(capsys, "profile", "compute", "--graph", str(a))
    assert code == 0 and "0* 4" in out and "1* 4" in out
    code, out, _ = run(
        capsys, "--json", "colouring", "distance",
        "--graph", str(a), "--other", str(b), "--eps", "0.5",
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["close"] is True


def test_verify_odd_matching_and_eg(tmp_path, capsys):
    g = tmp_path / "c5.txt"
    g.write_text("1 5\n" + "\n".join(f"{i} {(i + 1) % 5} 1" for i in range(5)) + "\n")
    code, out, _ = run(capsys, "--json", "verify", "odd-matching", "--graph", str(g))
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["order"] == 4
    code, out, _ = run(
        capsys, "--json", "verify", "eg", "--graph", str(g), "--m", "5"
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["applicable"] is True
    # per-colour restriction: the 5-cycle exceeds m=3, bound not applicable
    code, out, _ = run(
        capsys, "--json", "verify", "eg", "--graph", str(g), "--m", "3",
        "--colour", "1",
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["circumference"] == 5
    assert cert["results"][0]["applicable"] is False


def test_opt_f_with_gamma(tmp_path, capsys):
    vec = tmp_path / "v.txt"
    vec.write_text("*0 1.05\n*1 1.05\n")
    code, out, _ = run(
        capsys, "--json", "opt", "f", "--k", "2", "--vec", str(vec), "--gamma", "0.5"
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["member"] is True


def test_opt_subcommands(tmp_path, capsys):
    vec = tmp_path / "v.txt"
    vec.write_text("*0 1.0\n*1 1.0\n")
    code, out, _ = run(capsys, "--json", "opt", "f", "--k", "2", "--vec", str(vec))
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["value"] == 0.0
    assert cert["results"][0]["member"] is True

    code, out, _ = run(
        capsys, "--json", "opt", "kkt", "--alpha", "2,2", "--ell", "0"
    )
    cert = json.loads(out)
    assert code == 0 and cert["results"][0]["bound"] == 4.0

    code, out, _ = run(capsys, "--json", "opt", "shift", "--alpha", "2,3")
    cert = json.loads(out)
    assert code == 0 and cert["results"][0]["holds" if False else "equality"] is False

    vec2 = tmp_path / "w.txt"
    vec2.write_text("** 0.5\n*0 1.0\n")
    code, out, _ = run(
        capsys, "--json", "opt", "compress", "--k", "2", "--vec", str(vec2),
        "--fixpoint",
    )
    cert = json.loads(out)
    assert code == 0 and cert["results"][0]["status"] == "pass"

    code, out, _ = run(
        capsys, "--json", "opt", "nearest-o", "--k", "2", "--vec", str(vec)
    )
    cert = json.loads(out)
    assert code == 0 and cert["results"][0]["distance"] == 0.0


def test_opt_maxnorm_smoke(capsys):
    code, out, _ = run(
        capsys, "--json", "opt", "maxnorm", "--k", "2", "--gamma", "0",
        "--restarts", "8", "--seed", "7",
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["value"] == pytest.approx(2.0, abs=1e-3)


def test_opt_check_graph(tmp_path, capsys):
    g = tmp_path / "g.txt"
    run(capsys, "colouring", "build", "--k", "2", "--n", "5", "--out", str(g))
    code, out, _ = run(
        capsys, "--json", "opt", "check-graph", "--graph", str(g),
        "--n", "5", "--delta", "0.25",
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["applicable"] is True


def test_label_find_and_check(tmp_path, capsys):
    import random

    rng = random.Random(3)
    phi = random_solvable_instance(3, rng, enumerate_matchings(3), noise=3)
    f = tmp_path / "phi.txt"
    f.write_text(write_multigraph(phi))
    code, out, _ = run(capsys, "--json", "label", "find", "--in", str(f))
    assert code == 0
    cert = json.loads(out)
    mapping = cert["results"][0]["mapping"]
    lab = tmp_path / "lab.txt"
    lab.write_text("\n".join(f"{a} {b}" for a, b in mapping.items()) + "\n")
    code, out, _ = run(
        capsys, "--json", "label", "check", "--in", str(f), "--labelling", str(lab)
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["results"][0]["status"] == "pass"


def test_label_find_odd_cycle_exit(tmp_path, capsys):
    m = enumerate_matchings(3)[0]
    vs = m.edges
    text = ["3", " ".join(str(v) for v in vs)]
    # a monochromatic triangle in colour 2 over classes fixed at 2
    idx = [i for i, v in enumerate(vs) if v.trit(2) != "*"]
    a, b, c = idx[:3]
    text += [f"{a} {b} 2", f"{b} {c} 2", f"{a} {c} 2"]
    f = tmp_path / "phi.txt"
    f.write_text("\n".join(text) + "\n")
    code, out, _ = run(capsys, "--json", "label", "find", "--in", str(f))
    assert code == 1
    cert = json.loads(out)
    assert cert["results"][0]["status"] == "fail"
    assert len(cert["results"][0]["witness"]["cycle"]) == 3


def test_build_from_matching_file(tmp_path, capsys):
    m = enumerate_matchings(3)[5]
    f = tmp_path / "m.txt"
    f.write_text("3\n" + "\n".join(m.strings()) + "\n")
    g = tmp_path / "g.txt"
    code, _, _ = run(
        capsys, "colouring", "build", "--n", "4", "--matching-file", str(f),
        "--out", str(g),
    )
    assert code == 0
    code, _, _ = run(
        capsys, "colouring", "verify", "--graph", str(g),
        "--matching-file", str(f), "--clique-size", "3",
    )
    assert code == 0


def test_build_seeded_random_rule_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for out in (a, b):
        run(
            capsys, "colouring", "build", "--k", "3", "--n", "5",
            "--cross-rule", "random", "--seed", "21", "--out", str(out),
        )
    assert a.read_text() == b.read_text()


def test_malformed_inputs_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a graph\n")
    code, _, err = run(capsys, "verify", "cycles", "--graph", str(bad), "--length", "5")
    assert code == 2 and err
    code, _, err = run(capsys, "opt", "kkt", "--alpha", "2,x")
    assert code == 2
    code, _, err = run(capsys, "opt", "shift", "--alpha", "1,2")
    assert code == 2
    code, _, err = run(
        capsys, "verify", "cycles", "--graph", str(tmp_path / "missing.txt"),
        "--length", "5",
    )
    assert code == 2


def test_certificates_are_byte_identical(tmp_path, capsys):
    g = tmp_path / "g.txt"
    run(capsys, "colouring", "build", "--k", "3", "--n", "5", "--out", str(g))
    args = (
        "--json", "opt", "maxnorm", "--k", "2", "--gamma", "0.01",
        "--restarts", "6", "--seed", "11",
    )
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    _, v1, _ = run(capsys, "--json", "verify", "cycles", "--graph", str(g), "--length", "5")
    _, v2, _ = run(capsys, "--json", "verify", "cycles", "--graph", str(g), "--length", "5")
    assert v1 == v2


def test_timings_flag_adds_field(capsys):
    _, out, _ = run(capsys, "--json", "--timings", "opt", "shift", "--alpha", "2")
    assert "timings" in json.loads(out)
    _, out, _ = run(capsys, "--json", "opt", "shift", "--alpha", "2")
    assert "timings" not in json.loads(out)
