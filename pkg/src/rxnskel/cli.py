"""Command-line interface.

Exit status: 0 yes/success, 1 negative verdict, 2 unreadable input,
3 failed precondition (the check is named on stderr).  Verdict-style
subcommands print ``{"outcome", "witness", "diagnostics"}`` as JSON.
"""
import argparse
import json
import sys

from . import io
from .core_sets import companion_partition, format_mask, intersection_closure
from .errors import DomainError, ParseError, PreconditionError, ResourceError
from .graphs import OneOutGraph, brute_force_isomorphic, is_isomorphism, out_family
from .lattice import embed_as_cone_graph
from .reaction_systems import (equivalent, extremal_vertices, is_transition_graph,
                               main_skeleton, res_companions, result, swap_states,
                               transition_graph, zero_context_graph)
from .skeletons import (are_companions, build_isomorphism, certify_isomorphic,
                        companion_witness_problems, graph_of_skeleton,
                        skeleton_of_graph)

EXIT_YES, EXIT_NO, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise ParseError(err.strerror or str(err), path) from None


def _load_rs(path):
    return io.parse_rs(_read(path), path)


def _load_graph(path):
    return io.parse_graph(_read(path), path)


def _load_skeleton(path):
    return io.parse_skeleton(_read(path), path)


def _rs_labels(rs):
    return rs.labels or io.default_labels(rs.background_size)


def _verdict(yes, witness=None, diagnostics=()):
    return {"outcome": "yes" if yes else "no",
            "witness": witness if yes else None,
            "diagnostics": list(diagnostics)}


def _emit_verdict(v, out):
    out.write(json.dumps(v, indent=2, ensure_ascii=False) + "\n")
    return EXIT_YES if v["outcome"] == "yes" else EXIT_NO


def _emit_graph(g, labels, dot, marked=(), out=sys.stdout):
    if dot:
        dg = g.to_digraph() if isinstance(g, OneOutGraph) else g
        part = companion_partition(out_family(dg))
        out.write(io.to_dot(g, labels, part, marked))
    else:
        out.write(io.format_graph(g, labels))
    return EXIT_YES


# verdict builders, shared by the subcommands and by revalidate()

def companion_check_verdict(a, b, labels_a, labels_b):
    w = are_companions(a, b)
    if w is None:
        return _verdict(False, diagnostics=["no faithful correspondence is compatible "
                                            "with both representative maps"])
    psi = build_isomorphism(a, b, w)
    witness = io.witness_to_dict(w, labels_a, labels_b)
    witness["isomorphism"] = io.perm_to_dict(psi, labels_a, labels_b)
    return _verdict(True, witness, [f"{len(w.set_map)} closure sets matched"])


def iso_verdict(g1, g2, labels1, labels2, oracle=False):
    psi = certify_isomorphic(g1, g2)
    diagnostics = []
    if oracle:
        expected = brute_force_isomorphic(g1, g2)
        if (psi is None) != (expected is None):
            raise PreconditionError("oracle agreement",
                                    "certificate and brute-force oracle disagree")
        diagnostics.append("brute-force oracle agrees")
    if psi is None:
        return _verdict(False, diagnostics=["no companion skeletons"] + diagnostics)
    return _verdict(True, {"vertex_map": io.perm_to_dict(psi, labels1, labels2)}, diagnostics)


def equivalent_verdict(a, b):
    eq = equivalent(a, b)
    if not eq:
        return _verdict(False, diagnostics=[eq.reason])
    states_a = io.state_labels(a.background_size, _rs_labels(a))
    states_b = io.state_labels(b.background_size, _rs_labels(b))
    witness = io.witness_to_dict(eq.witness, states_a, states_b)
    witness["isomorphism"] = io.perm_to_dict(eq.isomorphism(), states_a, states_b)
    return _verdict(True, witness, [eq.reason])


def _characterize_failure(g):
    size = g.num_vertices
    if size < 2 or size & (size - 1):
        return "vertex count not a power of two"
    if embed_as_cone_graph(g) is None:
        return "out-sets admit no faithful correspondence with a family of upper cones"
    if extremal_vertices(g) is None:
        return "no vertices can play the empty and the full state"
    return "no reaction system realizes the graph"


def characterize_verdict(g, labels):
    c = is_transition_graph(g)
    if c is None:
        return _verdict(False, diagnostics=[_characterize_failure(g)]), None
    states = io.state_labels(c.rs.background_size, _rs_labels(c.rs))
    witness = {"vertex_map": io.perm_to_dict(c.vertex_map, labels, states),
               "reaction_system": json.loads(io.rs_to_json(c.rs))}
    return _verdict(True, witness, [f"empty state {labels[c.bottom]}, full state {labels[c.top]}"]), c.rs


def trace_verdict(rs, seq):
    labels = _rs_labels(rs)
    for w in seq:
        rs.check_state(w)
    if not seq:
        raise DomainError("state sequence must be non-empty")
    steps = []
    for i, (w, nxt) in enumerate(zip(seq, seq[1:])):
        r = result(rs, w)
        if r & ~nxt:
            return _verdict(False, diagnostics=[
                f"step {i}: res({format_mask(w, labels)}) = {format_mask(r, labels)} "
                f"is not contained in {format_mask(nxt, labels)}"])
        steps.append({"state": format_mask(w, labels), "res": format_mask(r, labels),
                      "context": format_mask(nxt & ~r, labels)})
    return _verdict(True, {"steps": steps}, [f"{len(seq)} states"])


# re-validation of printed witnesses

def revalidate(command, paths, verdict) -> list:
    """Problems found when checking a printed yes-verdict against its inputs.

    ``command`` is the subcommand that produced ``verdict``; ``paths`` are its
    positional inputs.  An empty list means the witness holds.
    """
    if verdict.get("outcome") != "yes":
        return ["verdict is not a yes-verdict"]
    wit = verdict.get("witness") or {}
    if command == "iso":
        (g1, l1), (g2, l2) = _load_graph(paths[0]), _load_graph(paths[1])
        psi = io.perm_from_dict(wit["vertex_map"], l1, l2)
        return [] if is_isomorphism(g1, g2, psi) else ["vertex map is not an isomorphism"]
    if command == "companion-check":
        (a, la), (b, lb) = _load_skeleton(paths[0]), _load_skeleton(paths[1])
        return _check_companion_witness(a, b, la, lb, wit)
    if command == "equivalent":
        a, b = _load_rs(paths[0]), _load_rs(paths[1])
        sa, sb = main_skeleton(a).skeleton(), main_skeleton(b).skeleton()
        la = io.state_labels(a.background_size, _rs_labels(a))
        lb = io.state_labels(b.background_size, _rs_labels(b))
        return _check_companion_witness(sa, sb, la, lb, wit)
    if command == "characterize":
        g, labels = _load_graph(paths[0])
        rs = io.parse_rs(json.dumps(wit["reaction_system"]), "<witness>")
        states = io.state_labels(rs.background_size, _rs_labels(rs))
        phi = io.perm_from_dict(wit["vertex_map"], labels, states)
        if not is_isomorphism(g, transition_graph(rs), phi):
            return ["vertex map is not an isomorphism onto the transition graph"]
        return []
    if command == "trace":
        rs = _load_rs(paths[0])
        seq = io.parse_sequence(_read(paths[1]), rs, paths[1])
        labels = _rs_labels(rs)
        problems = []
        if len(wit.get("steps", [])) != len(seq) - 1:
            problems.append("witness step count differs from the sequence")
        for i, step in enumerate(wit.get("steps", [])):
            if step["res"] != format_mask(result(rs, seq[i]), labels):
                problems.append(f"step {i}: recorded result differs")
        return problems
    raise DomainError(f"subcommand {command!r} prints no witness")


def _check_companion_witness(a, b, la, lb, wit):
    w = io.witness_from_dict(wit, intersection_closure(a.family),
                             intersection_closure(b.family), la, lb)
    problems = companion_witness_problems(a, b, w)
    if not problems and "isomorphism" in wit:
        psi = io.perm_from_dict(wit["isomorphism"], la, lb)
        if not is_isomorphism(graph_of_skeleton(a), graph_of_skeleton(b), psi):
            problems.append("recorded isomorphism is not an isomorphism")
    return problems


# subcommands

def cmd_res(args, out):
    rs = _load_rs(args.rs)
    x = io.parse_state(args.state, rs)
    rs.check_state(x)
    out.write(format_mask(result(rs, x), _rs_labels(rs)) + "\n")
    return EXIT_YES


def cmd_graph0(args, out):
    rs = _load_rs(args.rs)
    labels = io.state_labels(rs.background_size, _rs_labels(rs))
    return _emit_graph(zero_context_graph(rs), labels, args.dot, out=out)


def cmd_tgraph(args, out):
    rs = _load_rs(args.rs)
    labels = io.state_labels(rs.background_size, _rs_labels(rs))
    return _emit_graph(transition_graph(rs), labels, args.dot, (0, rs.top), out=out)


def _is_rs_text(text):
    if text.lstrip().startswith("{"):
        return True
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), "")
    return first.startswith("background")


def cmd_companions(args, out):
    text = _read(args.input)
    if _is_rs_text(text):
        rs = io.parse_rs(text, args.input)
        part = res_companions(rs)
        labels = io.state_labels(rs.background_size, _rs_labels(rs))
    else:
        fam, labels = io.parse_family(text, args.input)
        part = companion_partition(fam)
    for block in part.classes:
        out.write(format_mask(block, labels) + "\n")
    return EXIT_YES


def cmd_closure(args, out):
    fam, labels = io.parse_family(_read(args.family), args.family)
    out.write(io.format_family(intersection_closure(fam), labels))
    return EXIT_YES


def cmd_skeleton(args, out):
    g, labels = _load_graph(args.graph)
    out.write(io.format_skeleton(skeleton_of_graph(g), labels))
    return EXIT_YES


def cmd_companion_check(args, out):
    (a, la), (b, lb) = _load_skeleton(args.skel1), _load_skeleton(args.skel2)
    if a.universe_size != b.universe_size:
        return _emit_verdict(_verdict(False, diagnostics=["vertex counts differ"]), out)
    return _emit_verdict(companion_check_verdict(a, b, la, lb), out)


def cmd_iso(args, out):
    (g1, l1), (g2, l2) = _load_graph(args.g1), _load_graph(args.g2)
    return _emit_verdict(iso_verdict(g1, g2, l1, l2, args.oracle), out)


def cmd_characterize(args, out):
    g, labels = _load_graph(args.graph)
    verdict, rs = characterize_verdict(g, labels)
    if rs is not None:
        text = io.format_rs(rs)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            verdict["diagnostics"].append("synthesized reaction system:\n" + text.rstrip())
    return _emit_verdict(verdict, out)


def cmd_equivalent(args, out):
    return _emit_verdict(equivalent_verdict(_load_rs(args.rs1), _load_rs(args.rs2)), out)


def cmd_swap(args, out):
    rs = _load_rs(args.rs)
    x, y = io.parse_state(args.x, rs), io.parse_state(args.y, rs)
    swapped = swap_states(rs, x, y)
    out.write(io.rs_to_json(swapped) + "\n" if args.json else io.format_rs(swapped))
    return EXIT_YES


def cmd_trace(args, out):
    rs = _load_rs(args.rs)
    seq = io.parse_sequence(_read(args.seq), rs, args.seq)
    return _emit_verdict(trace_verdict(rs, seq), out)


def build_parser():
    p = argparse.ArgumentParser(prog="rxnskel",
                                description="Companion skeletons, graph isomorphism and "
                                            "reaction-system equivalence.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("res", help="result of a reaction system on one state")
    s.add_argument("rs")
    s.add_argument("state", help='e.g. "{2,3,4}"')
    s.set_defaults(func=cmd_res)

    for name, func, what in (("graph0", cmd_graph0, "0-context graph"),
                             ("tgraph", cmd_tgraph, "transition graph")):
        s = sub.add_parser(name, help=f"print the {what} of a reaction system")
        s.add_argument("rs")
        s.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
        s.set_defaults(func=func)

    s = sub.add_parser("companions", help="companion partition of a family or of a system's states")
    s.add_argument("input")
    s.set_defaults(func=cmd_companions)

    s = sub.add_parser("closure", help="intersection closure of a set family")
    s.add_argument("family")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("skeleton", help="extract the skeleton of a graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_skeleton)

    s = sub.add_parser("companion-check", help="are two skeletons companions")
    s.add_argument("skel1")
    s.add_argument("skel2")
    s.set_defaults(func=cmd_companion_check)

    s = sub.add_parser("iso", help="certified isomorphism test")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--oracle", action="store_true", help="cross-check with brute force (N <= 8)")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("characterize", help="is a graph the transition graph of a reaction system")
    s.add_argument("graph")
    s.add_argument("-o", "--output", help="write the synthesized reaction system here")
    s.set_defaults(func=cmd_characterize)

    s = sub.add_parser("equivalent", help="decide equivalence of two reaction systems")
    s.add_argument("rs1")
    s.add_argument("rs2")
    s.set_defaults(func=cmd_equivalent)

    s = sub.add_parser("swap", help="swap the successors of two companion states")
    s.add_argument("rs")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--json", action="store_true", help="emit the JSON form")
    s.set_defaults(func=cmd_swap)

    s = sub.add_parser("trace", help="validate a state sequence")
    s.add_argument("rs")
    s.add_argument("seq", help="file with one state per line")
    s.set_defaults(func=cmd_trace)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as e:
        err.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except PreconditionError as e:
        err.write(f"precondition '{e.check}' failed: {e}\n")
        return EXIT_PRECONDITION
    except ResourceError as e:
        err.write(f"precondition 'size cap' failed: {e}\n")
        return EXIT_PRECONDITION
    except DomainError as e:
        err.write(f"precondition 'domain' failed: {e}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
