"""Command-line entry point wiring the library together.

Every subcommand can emit a JSON certificate with --json: a versioned,
deterministic record of what was checked, with witnesses on failures and the
exhausted budget on indefinite results.  With a fixed seed and fixed inputs
the JSON output is byte identical across runs (timings are only included on
request, since they never replay exactly).

Exit codes: 0 success / definitive negative; 1 search target found;
2 malformed input; 3 budget exhausted or result indefinite; 4 internal
consistency failure (a certificate no valid build should ever produce).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import colourings, labelling, matchings, optimizer, structures

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")


def _digest(parts: list[str]) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode())
        h.update(b"\x00")
    return h.hexdigest()


def _certificate(command: str, inputs: list[str], args: dict, seed=None) -> dict:
    return {
        "schema": 1,
        "command": command,
        "inputs": {"digest": _digest(inputs), "args": args},
        "seed": seed,
        "results": [],
    }


def _result(check: str, status: str, **extra) -> dict:
    out = {"check": check, "status": status}
    out.update(extra)
    return out


def _emit(cert: dict, ns, started: float) -> None:
    if getattr(ns, "timings", False):
        cert["timings"] = {"seconds": round(time.perf_counter() - started, 3)}
    if ns.json:
        print(json.dumps(cert, sort_keys=True, indent=2))
    else:
        for r in cert["results"]:
            line = f"{r['check']}: {r['status']}"
            extras = {k: v for k, v in r.items() if k not in ("check", "status")}
            if extras:
                line += "  " + json.dumps(extras, sort_keys=True, default=str)
            print(line)


def _exit_for(cert: dict) -> int:
    statuses = [r["status"] for r in cert["results"]]
    if any(s == "critical" for s in statuses):
        return EXIT_INTERNAL
    if any(s == "indefinite" for s in statuses):
        return EXIT_BUDGET
    if any(s == "fail" for s in statuses):
        return EXIT_FOUND
    return EXIT_OK


# ---------------------------------------------------------------------------
# matchings


def cmd_matchings_enumerate(ns) -> int:
    ms = matchings.enumerate_matchings(ns.k, allow_large=ns.allow_large)
    if ns.out:
        Path(ns.out).write_text(
            "\n".join("|".join(m.strings()) for m in ms) + "\n"
        )
    cert = _certificate("matchings enumerate", [str(ns.k)], {"k": ns.k})
    cert["results"].append(_result("count", "pass", count=len(ms)))
    if not ns.json and not ns.out:
        for m in ms:
            print("|".join(m.strings()))
    _emit(cert, ns, ns._started)
    return EXIT_OK


def cmd_matchings_classify(ns) -> int:
    classes = matchings.classify_matchings(ns.k)
    cert = _certificate("matchings classify", [str(ns.k)], {"k": ns.k})
    cert["results"].append(
        _result(
            "classes",
            "pass",
            count=len(classes),
            orbits=[
                {"representative": list(c.representative.strings()), "orbit_size": c.orbit_size}
                for c in classes
            ],
        )
    )
    if not ns.json:
        print(len(classes))
    _emit(cert, ns, ns._started)
    return EXIT_OK


# ---------------------------------------------------------------------------
# colourings


def _matching_from_args(ns) -> matchings.PerfectMatching:
    if getattr(ns, "matching_file", None):
        return matchings.read_matching(_read_file(ns.matching_file))
    if ns.k is None:
        raise CliError("need --matching-file or --k with --matching-class")
    classes = matchings.classify_matchings(ns.k)
    if not 0 <= ns.matching_class < len(classes):
        raise CliError(
            f"matching class {ns.matching_class} out of range (k={ns.k} has {len(classes)})"
        )
    return classes[ns.matching_class].representative


def cmd_colouring_build(ns) -> int:
    m = _matching_from_args(ns)
    if ns.cross_rule == "least":
        rule = colourings.least_colour_rule
    else:
        rule = colourings.seeded_random_rule(ns.seed)
    hc = colourings.build_hypercube_colouring(m, ns.n - 1, rule)
    Path(ns.out).write_text(colourings.write_graph(hc.graph))
    cert = _certificate(
        "colouring build",
        ["|".join(m.strings()), str(ns.n)],
        {"k": m.k, "n": ns.n, "cross_rule": ns.cross_rule},
        seed=ns.seed,
    )
    cert["results"].append(
        _result("built", "pass", vertices=hc.graph.n, matching=list(m.strings()))
    )
    _emit(cert, ns, ns._started)
    return EXIT_OK


def cmd_colouring_verify(ns) -> int:
    m = _matching_from_args(ns)
    text = _read_file(ns.graph)
    g = colourings.read_graph(text)
    q = ns.clique_size
    if g.n != len(m.edges) * q:
        raise CliError(f"graph has {g.n} vertices, expected {len(m.edges) * q}")
    classes = {
        p: tuple(range(b * q, (b + 1) * q)) for b, p in enumerate(m.edges)
    }
    hc = colourings.HypercubeColouring(g, m, q, classes)
    structure = colourings.verify_colouring_structure(hc)
    cert = _certificate(
        "colouring verify",
        [text, "|".join(m.strings()), str(q)],
        {"clique_size": q, "cycle_length": ns.cycle_length},
    )
    cert["construction"] = {
        "matching": list(m.strings()),
        "clique_size": q,
    }
    cert["per_colour_structure"] = [
        {
            "colour": s.colour,
            "clique_components": s.clique_components,
            "bipartite_components": s.bipartite_components,
            "ok": s.ok,
        }
        for s in structure
    ]
    all_ok = all(s.ok for s in structure)
    cert["results"].append(
        _result(
            "structure",
            "pass" if all_ok else "fail",
            **({} if all_ok else {"witness": [s.failure for s in structure if s.failure]}),
        )
    )
    if ns.cycle_length:
        worst = None
        for colour in range(1, g.k + 1):
            res = structures.find_cycle(g, colour, ns.cycle_length, ns.budget)
            if res.status == "found":
                cert["results"].append(
                    _result(
                        "cycle_search",
                        "fail",
                        colour=colour,
                        witness=list(res.witness),
                    )
                )
                break
            worst = res
        else:
            status = "pass" if worst.status == "absent" else "indefinite"
            extra = {} if status == "pass" else {"budget": worst.budget}
            cert["results"].append(_result("cycle_search", status, **extra))
        cert["cycle_search_result"] = cert["results"][-1]
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_colouring_distance(ns) -> int:
    ga = colourings.read_graph(_read_file(ns.graph))
    gb = colourings.read_graph(_read_file(ns.other))
    dist = colourings.edit_distance(ga, gb)
    cert = _certificate(
        "colouring distance",
        [_read_file(ns.graph), _read_file(ns.other)],
        {"eps": ns.eps},
    )
    close = colourings.is_eps_close(ga, gb, ns.eps) if ns.eps is not None else None
    per_colour = {str(c): d for c, d in sorted(dist.items())}
    extra = {} if ns.eps is None else {"eps": ns.eps, "close": close}
    if close is False:
        bound = ns.eps * ga.n * ga.n
        extra["witness"] = {
            "bound": bound,
            "exceeding": {c: d for c, d in per_colour.items() if d > bound},
        }
    cert["results"].append(
        _result(
            "edit_distance",
            "pass" if close in (True, None) else "fail",
            per_colour=per_colour,
            **extra,
        )
    )
    _emit(cert, ns, ns._started)
    return EXIT_OK if close in (True, None) else EXIT_FOUND


def cmd_profile_compute(ns) -> int:
    text = _read_file(ns.graph)
    g = colourings.read_graph(text)
    part = colourings.profile_partition(g)
    counts = colourings.profile(part)
    cert = _certificate("profile compute", [text], {"graph": ns.graph})
    cert["results"].append(
        _result(
            "profile",
            "pass",
            entries={str(p): c for p, c in sorted(counts.items())},
            total=sum(counts.values()),
        )
    )
    if not ns.json:
        for p, c in sorted(counts.items()):
            print(p, c)
    _emit(cert, ns, ns._started)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify_cycles(ns) -> int:
    text = _read_file(ns.graph)
    g = colourings.read_graph(text)
    colours = [ns.colour] if ns.colour else list(range(1, g.k + 1))
    cert = _certificate(
        "verify cycles", [text], {"length": ns.length, "colours": colours}
    )
    for colour in colours:
        res = structures.find_cycle(g, colour, ns.length, ns.budget)
        if res.status == "found":
            cert["results"].append(
                _result("cycle", "fail", colour=colour, witness=list(res.witness))
            )
        elif res.status == "absent":
            cert["results"].append(
                _result("cycle", "pass", colour=colour, expansions=res.expansions)
            )
        else:
            cert["results"].append(
                _result("cycle", "indefinite", colour=colour, budget=res.budget)
            )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_verify_odd_matching(ns) -> int:
    text = _read_file(ns.graph)
    g = colourings.read_graph(text)
    cert = _certificate("verify odd-matching", [text], {})
    for colour in range(1, g.k + 1):
        rep = structures.largest_odd_connected_matching(g, colour)
        extra = {}
        if rep.witness is not None:
            extra["witness"] = list(rep.witness.vertices)
        cert["results"].append(
            _result("odd-matching", "pass", colour=colour, order=rep.max_odd_order, **extra)
        )
    _emit(cert, ns, ns._started)
    return EXIT_OK


def cmd_verify_eg(ns) -> int:
    text = _read_file(ns.graph)
    g = colourings.read_graph(text)
    if ns.colour:
        edges = g.colour_class_edges(ns.colour)
    else:
        edges = sorted(g.colours)
    cert = _certificate("verify eg", [text], {"m": ns.m, "colour": ns.colour})
    try:
        rep = structures.erdos_gallai_check(g.n, edges, ns.m, ns.budget)
    except structures.BudgetExceeded as e:
        cert["results"].append(_result("erdos-gallai", "indefinite", budget=str(e)))
        _emit(cert, ns, ns._started)
        return EXIT_BUDGET
    if not rep.applicable:
        cert["results"].append(
            _result(
                "erdos-gallai",
                "pass",
                applicable=False,
                circumference=rep.circumference,
                witness=list(rep.longest_cycle or ()),
            )
        )
    else:
        status = "pass" if rep.holds else "critical"
        cert["results"].append(
            _result(
                "erdos-gallai",
                status,
                applicable=True,
                circumference=rep.circumference,
                edges=rep.edge_count,
                bound=rep.bound,
            )
        )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


# ---------------------------------------------------------------------------
# opt


def cmd_opt_f(ns) -> int:
    sp = optimizer.space(ns.k)
    x = optimizer.read_vector(_read_file(ns.vec), ns.k)
    f = float(optimizer.energy(sp, x))
    q = float(optimizer.energy_quadratic_form(sp, x))
    rep = optimizer.membership_report(sp, x, ns.gamma)
    cert = _certificate("opt f", [_read_file(ns.vec)], {"k": ns.k, "gamma": ns.gamma})
    agree = abs(f - q) <= 1e-9 * max(1.0, abs(f))
    cert["results"].append(
        _result(
            "energy",
            "pass" if agree else "critical",
            value=f,
            quadratic_form=q,
            member=rep.is_member,
            norm=float(x.sum()),
        )
    )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_opt_compress(ns) -> int:
    sp = optimizer.space(ns.k)
    x = optimizer.read_vector(_read_file(ns.vec), ns.k)
    cert = _certificate(
        "opt compress",
        [_read_file(ns.vec)],
        {"k": ns.k, "fixpoint": ns.fixpoint, "pi": ns.pi, "rho": ns.rho},
    )
    if ns.fixpoint:
        res = optimizer.compress_to_fixpoint(sp, x)
        status = "pass" if res.completed else "indefinite"
        cert["results"].append(
            _result(
                "fixpoint",
                status,
                steps=[[str(a), str(b)] for a, b in res.steps],
                vector={str(p): float(res.x[i]) for i, p in enumerate(sp.patterns) if res.x[i]},
                **({} if res.completed else {"budget": 3**ns.k, "diagnostics": list(res.diagnostics)}),
            )
        )
    else:
        if not ns.pi or not ns.rho:
            raise CliError("opt compress needs --pi and --rho, or --fixpoint")
        from .patterns import parse_pattern

        pi, rho = parse_pattern(ns.pi), parse_pattern(ns.rho)
        if pi.k != ns.k or rho.k != ns.k:
            raise CliError(f"--pi/--rho must have dimension {ns.k}")
        y = optimizer.compress(sp, x, pi, rho)
        cert["results"].append(
            _result(
                "compress",
                "pass",
                vector={str(p): float(y[i]) for i, p in enumerate(sp.patterns) if y[i]},
            )
        )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def _parse_alphas(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise CliError(f"bad alpha list: {text!r}")


def cmd_opt_kkt(ns) -> int:
    alphas = _parse_alphas(ns.alpha)
    try:
        sol = optimizer.kkt_solve(optimizer.KktInstance(alphas, ns.ell))
    except ValueError as e:
        raise CliError(str(e))
    cert = _certificate("opt kkt", [ns.alpha, str(ns.ell)], {"alpha": list(alphas), "ell": ns.ell})
    feasible = sol.sphere_residual <= 1e-9 and sol.cap_residual <= 1e-9
    cert["results"].append(
        _result(
            "kkt",
            "pass" if feasible else "critical",
            bound=sol.bound,
            maximiser=list(sol.maximiser),
            sphere_residual=sol.sphere_residual,
        )
    )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_opt_shift(ns) -> int:
    alphas = _parse_alphas(ns.alpha)
    try:
        rep = optimizer.shift_inequality(alphas)
    except ValueError as e:
        raise CliError(str(e))
    cert = _certificate("opt shift", [ns.alpha], {"alpha": list(alphas)})
    cert["results"].append(
        _result(
            "shift",
            "pass" if rep.holds else "critical",
            lhs=rep.lhs,
            rhs=rep.rhs,
            equality=rep.equality,
        )
    )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_opt_maxnorm(ns) -> int:
    res = optimizer.max_norm_search(
        ns.k, ns.gamma, restarts=ns.restarts, seed=ns.seed, threads=ns.threads
    )
    sp = optimizer.space(ns.k)
    cert = _certificate(
        "opt maxnorm",
        [str(ns.k), str(ns.gamma), str(ns.restarts), str(ns.seed)],
        {"k": ns.k, "gamma": ns.gamma, "restarts": ns.restarts},
        seed=ns.seed,
    )
    cert["results"].append(
        _result(
            "maxnorm",
            "pass" if res.membership.is_member else "critical",
            value=res.value,
            exact_optimum=float(2 ** (ns.k - 1)),
            best_restart=res.best_restart,
            vector={str(p): float(res.x[i]) for i, p in enumerate(sp.patterns) if res.x[i] > 1e-12},
        )
    )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_opt_nearest_o(ns) -> int:
    sp = optimizer.space(ns.k)
    x = optimizer.read_vector(_read_file(ns.vec), ns.k)
    near = optimizer.nearest_extremal(sp, x)
    cert = _certificate("opt nearest-o", [_read_file(ns.vec)], {"k": ns.k})
    cert["results"].append(
        _result(
            "nearest",
            "pass",
            distance=near.distance,
            support=[str(p) for p in near.support],
        )
    )
    _emit(cert, ns, ns._started)
    return EXIT_OK


def cmd_opt_check_graph(ns) -> int:
    text = _read_file(ns.graph)
    g = colourings.read_graph(text)
    rep = optimizer.check_graph_constraints(g, ns.n, ns.delta)
    cert = _certificate(
        "opt check-graph", [text], {"n": ns.n, "delta": ns.delta}
    )
    status = "critical" if rep.critical else "pass"
    cert["results"].append(
        _result(
            "graph-constraints",
            status,
            applicable=rep.applicable,
            hypotheses=rep.hypotheses,
            scale=rep.scale,
            energy=rep.energy_value,
            energy_bound=rep.energy_bound,
            cap_worst=rep.cap_worst,
            cap_bound=rep.cap_bound,
            product_worst=rep.product_worst,
            product_bound=rep.product_bound,
            **({"witness": "hypotheses hold but a conclusion fails"} if rep.critical else {}),
        )
    )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


# ---------------------------------------------------------------------------
# label


def cmd_label_find(ns) -> int:
    text = _read_file(getattr(ns, "in"))
    phi = labelling.read_multigraph(text)
    res = labelling.find_admissible_labelling(phi)
    cert = _certificate("label find", [text], {})
    if res.status == "found":
        cert["results"].append(
            _result(
                "labelling",
                "pass",
                mapping={str(s): str(t) for s, t in res.labelling.items()},
                flips=res.flips,
            )
        )
    elif res.status == "odd_cycle":
        colour, cyc = res.odd_cycle
        cert["results"].append(
            _result(
                "labelling",
                "fail",
                witness={"colour": colour, "cycle": [str(p) for p in cyc]},
            )
        )
    elif res.status == "invalid_input":
        raise CliError(res.detail)
    else:
        cert["results"].append(_result("labelling", "critical", witness=res.detail))
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


def cmd_label_check(ns) -> int:
    text = _read_file(getattr(ns, "in"))
    phi = labelling.read_multigraph(text)
    lab = labelling.read_labelling(_read_file(ns.labelling))
    ok, witness = labelling.is_admissible(lab, phi)
    cert = _certificate("label check", [text, _read_file(ns.labelling)], {})
    cert["results"].append(
        _result(
            "admissible",
            "pass" if ok else "fail",
            **({} if ok else {"witness": [str(witness[0]), str(witness[1]), witness[2]]}),
        )
    )
    _emit(cert, ns, ns._started)
    return _exit_for(cert)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ramsey-cube",
        description="Hypercube colourings, profile optimisation and labellings",
    )
    top.add_argument("--json", action="store_true", help="emit a JSON certificate")
    top.add_argument("--timings", action="store_true", help="include wall time in output")
    top.add_argument("--threads", type=int, default=1)
    # the same flags are accepted after the subcommand; suppressed defaults
    # keep them from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = top.add_subparsers(dest="group", required=True)

    def leaf(group, name):
        return group.add_parser(name, parents=[common])

    m = sub.add_parser("matchings").add_subparsers(dest="action", required=True)
    p = leaf(m, "enumerate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_matchings_enumerate)
    p = leaf(m, "classify")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_matchings_classify)

    c = sub.add_parser("colouring").add_subparsers(dest="action", required=True)
    p = leaf(c, "build")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, required=True, help="forbidden cycle length; cliques have n-1 vertices")
    p.add_argument("--matching-class", type=int, default=0)
    p.add_argument("--matching-file")
    p.add_argument("--cross-rule", choices=["least", "random"], default="least")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_colouring_build)
    p = leaf(c, "verify")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--matching-class", type=int, default=0)
    p.add_argument("--matching-file")
    p.add_argument("--clique-size", type=int, required=True)
    p.add_argument("--cycle-length", type=int)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_colouring_verify)
    p = leaf(c, "distance")
    p.add_argument("--graph", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--eps", type=float)
    p.set_defaults(func=cmd_colouring_distance)

    pr = sub.add_parser("profile").add_subparsers(dest="action", required=True)
    p = leaf(pr, "compute")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_profile_compute)

    v = sub.add_parser("verify").add_subparsers(dest="action", required=True)
    p = leaf(v, "cycles")
    p.add_argument("--graph", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--colour", type=int)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_verify_cycles)
    p = leaf(v, "odd-matching")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_verify_odd_matching)
    p = leaf(v, "eg")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--colour", type=int)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_verify_eg)

    o = sub.add_parser("opt").add_subparsers(dest="action", required=True)
    p = leaf(o, "f")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vec", required=True)
    p.add_argument("--gamma", type=float, default=0.0)
    p.set_defaults(func=cmd_opt_f)
    p = leaf(o, "compress")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vec", required=True)
    p.add_argument("--fixpoint", action="store_true")
    p.add_argument("--pi")
    p.add_argument("--rho")
    p.set_defaults(func=cmd_opt_compress)
    p = leaf(o, "kkt")
    p.add_argument("--alpha", required=True, help="comma-separated integers")
    p.add_argument("--ell", type=int, default=0)
    p.set_defaults(func=cmd_opt_kkt)
    p = leaf(o, "shift")
    p.add_argument("--alpha", required=True, help="comma-separated integers >= 2")
    p.set_defaults(func=cmd_opt_shift)
    p = leaf(o, "maxnorm")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_opt_maxnorm)
    p = leaf(o, "nearest-o")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vec", required=True)
    p.set_defaults(func=cmd_opt_nearest_o)
    p = leaf(o, "check-graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_opt_check_graph)

    lbl = sub.add_parser("label").add_subparsers(dest="action", required=True)
    p = leaf(lbl, "find")
    p.add_argument("--in", required=True)
    p.set_defaults(func=cmd_label_find)
    p = leaf(lbl, "check")
    p.add_argument("--in", required=True)
    p.add_argument("--labelling", required=True)
    p.set_defaults(func=cmd_label_check)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    ns._started = time.perf_counter()
    try:
        return ns.func(ns)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except structures.BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
