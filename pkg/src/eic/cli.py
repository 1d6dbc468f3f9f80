"""``eic`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 a size limit was exceeded.  Data goes to stdout unless ``--out`` is
given; diagnostics go to stderr.
"""

from __future__ import annotations

import os
import sys
from dataclasses import fields
from pathlib import Path

import click

from . import experiments as exp
from .errors import EicError, SizeError
from .gen import GenConfig, gen_erdos_renyi_single_unicast, gen_general
from .graph import build_problem_graph
from .instances import NAMED
from .limits import DEFAULT_LIMITS, Limits
from .minrank import minrank_bounds, restricted_minrank
from .problem import is_single_unicast, parse, requirement_pairs, serialize, validate
from .solve import (
    solution_from_json,
    solution_to_json,
    solve_centralized,
    solve_decentralized_2x,
    solve_task_based,
)
from .verify import DataBlocks, simulate, verify

EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_SIZE = 3


class _Fail(click.ClickException):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.exit_code = code


def _guard(fn):
    """Map library errors onto the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SizeError as exc:
            raise _Fail(f"{exc} (raise --limit-{exc.limit_name.replace('_', '-')} to allow it)", EXIT_SIZE) from exc
        except EicError as exc:
            raise _Fail(str(exc), EXIT_USAGE) from exc
        except (OSError, ValueError) as exc:
            raise _Fail(str(exc), EXIT_USAGE) from exc

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _note(msg: str) -> None:
    click.echo(msg, err=True)


def _limits(ctx: click.Context) -> Limits:
    return ctx.obj["limits"]


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _limit_options(fn):
    for f in reversed(fields(Limits)):
        fn = click.option(
            f"--limit-{f.name.replace('_', '-')}",
            f"limit_{f.name}",
            type=int,
            default=getattr(DEFAULT_LIMITS, f.name),
            show_default=True,
        )(fn)
    return fn


@click.group()
@_limit_options
@click.pass_context
def main(ctx: click.Context, **limits) -> None:
    """Embedded index coding: generate, solve, verify and run experiments."""
    ctx.ensure_object(dict)
    ctx.obj["limits"] = Limits(**{k[len("limit_"):]: v for k, v in limits.items()})


@main.command()
@click.option("--n", "n", type=int, required=True, help="Number of nodes.")
@click.option("--p", "p", type=float, help="Edge probability (single-unicast).")
@click.option("--seed", type=int, required=True)
@click.option("--general", is_flag=True, help="General instance instead of single-unicast.")
@click.option("--m", "m", type=int, help="Number of blocks (--general).")
@click.option("--p-has", type=float, help="Probability of holding a block (--general).")
@click.option("--p-need", type=float, help="Probability of requesting a block (--general).")
@click.option("--max-resamples", type=int, default=10_000, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@_guard
def gen(n, p, seed, general, m, p_has, p_need, max_resamples, out) -> None:
    """Generate a random problem."""
    if general:
        if m is None or p_has is None or p_need is None:
            raise click.UsageError("--general needs --m, --p-has and --p-need")
        prob = gen_general(n, m, p_has, p_need, seed, max_resamples)
    else:
        if p is None:
            raise click.UsageError("--p is required")
        prob = gen_erdos_renyi_single_unicast(GenConfig(n, p, seed, max_resamples))
    _emit(serialize(prob) + "\n", out)
    single = "true" if is_single_unicast(prob) else "false"
    _note(f"n={prob.n} m={prob.m} pairs={len(requirement_pairs(prob))} single_unicast={single}")


@main.command()
@click.argument("name", type=click.Choice(sorted(NAMED)))
@click.option("--out", type=click.Path(dir_okay=False))
@_guard
def instance(name, out) -> None:
    """Write a bundled named instance as problem JSON."""
    _emit(serialize(NAMED[name]()) + "\n", out)


@main.command()
@click.argument("problem", type=click.Path(allow_dash=True))
@click.pass_context
@_guard
def info(ctx, problem) -> None:
    """Summarize a problem: sizes, validity, bounds and search spaces."""
    prob = parse(_read(problem), validate_problem=False)
    lines = [f"n={prob.n} m={prob.m} pairs={len(requirement_pairs(prob))}"]
    issues = validate(prob)
    lines.append("valid=" + ("true" if not issues else "false"))
    lines += [f"  {v.kind} at {v.location}: {v.detail}" for v in issues]
    if not issues:
        single = is_single_unicast(prob)
        lines.append(f"single_unicast={'true' if single else 'false'}")
        g = build_problem_graph(prob)
        lines.append(f"graph_vertices={g.size} graph_edges={len(g.edges())}")
        lines.append(f"log2_search_eic={exp.search_space_eic(prob)}")
        if single:
            lines.append(f"log2_search_kim={exp.search_space_kim(prob)}")
            lt, _ = exp.search_space_ltcmar(prob)
            lines.append(f"log2_search_ltcmar_proxy={float(lt):.6f}")
        lo, hi = minrank_bounds(prob, _limits(ctx))
        lines.append(f"minrank_lower={lo} minrank_upper={hi}")
    click.echo("\n".join(lines))


@main.command()
@click.argument("problem", type=click.Path(allow_dash=True))
@click.option("--mode", type=click.Choice(["centralized", "decentralized", "task"]), required=True)
@click.option("--cover", type=click.Choice(["greedy", "exact"]), default="greedy", show_default=True,
              help="Neighbourhood cover for --mode task.")
@click.option("--budget", type=int, help="Node budget for the minrank search (result may be inexact).")
@click.option("--out", type=click.Path(dir_okay=False))
@click.pass_context
@_guard
def solve(ctx, problem, mode, cover, budget, out) -> None:
    """Solve a problem and write the verified solution as JSON."""
    prob = parse(_read(problem))
    limits = _limits(ctx)
    if mode == "centralized":
        sol = solve_centralized(prob, limits, budget)
    elif mode == "decentralized":
        sol = solve_decentralized_2x(prob, limits, budget)
    else:
        if budget is not None:
            raise click.UsageError("--budget is not supported with --mode task")
        sol = solve_task_based(prob, cover, limits)
    report = verify(prob, sol)
    if not report.ok:
        raise _Fail("internal error: solution failed verification\n" + report.to_text(), EXIT_VERIFY)
    _emit(solution_to_json(sol, prob), out)
    _note(f"length={sol.length} minrank_exact={'true' if sol.exact else 'false'}")
    if mode == "task":
        for i, part in enumerate(sol.partition.parts):
            if part:
                pairs = [requirement_pairs(prob)[v] for v in sorted(part)]
                _note(f"  sender {i}: " + " ".join(f"({u},{a})" for u, a in pairs))


@main.command()
@click.argument("problem", type=click.Path(allow_dash=True))
@click.option("--budget", type=int)
@click.pass_context
@_guard
def minrank(ctx, problem, budget) -> None:
    """Exact restricted minrank with its bounds."""
    res = restricted_minrank(parse(_read(problem)), budget, _limits(ctx))
    exact = "true" if res.exact else "false"
    click.echo(f"rank={res.rank} lower={res.lower_bound} upper={res.upper_bound} exact={exact}")


@main.command("verify")
@click.argument("problem", type=click.Path(allow_dash=True))
@click.argument("solution", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@_guard
def verify_cmd(problem, solution, as_json) -> None:
    """Check a solution independently of the solver; exit 1 on failure."""
    prob = parse(_read(problem))
    sol = solution_from_json(_read(solution), prob)
    report = verify(prob, sol)
    click.echo(report.to_json() if as_json else report.to_text())
    if not report.ok:
        sys.exit(EXIT_VERIFY)


@main.command("simulate")
@click.argument("problem", type=click.Path(allow_dash=True))
@click.argument("solution", type=click.Path())
@click.option("--length", "block_length", type=int, default=8, show_default=True, help="Bits per data block.")
@click.option("--seed", type=int, default=0, show_default=True)
@_guard
def simulate_cmd(problem, solution, block_length, seed) -> None:
    """Broadcast random payloads and decode every request; exit 1 on a mismatch."""
    prob = parse(_read(problem))
    sol = solution_from_json(_read(solution), prob)
    data = DataBlocks.random(prob.m, block_length, seed)
    try:
        decoded = simulate(prob, sol, data)
    except EicError as exc:
        raise _Fail(str(exc), EXIT_VERIFY) from exc
    bad = [pair for pair, value in decoded.items() if value != data.blocks[pair.block]]
    for (u, a), value in sorted(decoded.items()):
        mark = "ok" if value == data.blocks[a] else "MISMATCH"
        click.echo(f"({u},{a}) {value:0{block_length}b} {mark}")
    if bad:
        sys.exit(EXIT_VERIFY)


@main.command()
@click.argument("problem", type=click.Path(allow_dash=True))
@click.option("--node-names", help="Comma-separated node labels.")
@click.option("--block-names", help="Comma-separated block labels.")
@click.option("--out", type=click.Path(dir_okay=False))
@_guard
def graph(problem, node_names, block_names, out) -> None:
    """Problem graph in Graphviz DOT."""
    prob = parse(_read(problem))
    nodes = node_names.split(",") if node_names else None
    blocks = block_names.split(",") if block_names else None
    if nodes and len(nodes) != prob.n:
        raise click.UsageError(f"--node-names needs {prob.n} labels")
    if blocks and len(blocks) != prob.m:
        raise click.UsageError(f"--block-names needs {prob.m} labels")
    _emit(build_problem_graph(prob).to_dot(nodes, blocks), out)


@main.command()
@click.argument("kind", type=click.Choice(["search-ratio", "cost-ratio"]))
@click.option("--ns", required=True, help="Comma-separated node counts.")
@click.option("--ps", required=True, help="Comma-separated edge probabilities.")
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--proxy", type=click.Choice(exp.PROXIES), default="union", show_default=True,
              help="Redundancy proxy for the LT-CMAR search space (search-ratio).")
@click.option("--jobs", type=int, default=None, help="Worker processes [default: available cores].")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV path; a .config.json sidecar is written next to it.")
@click.option("--records", type=click.Path(dir_okay=False), help="Also dump per-trial records as JSON.")
@click.pass_context
@_guard
def experiment(ctx, kind, ns, ps, trials, seed, proxy, jobs, out, records) -> None:
    """Run a seeded experiment and write CSV."""
    if trials < 1:
        raise click.UsageError("--trials must be positive")
    jobs = jobs if jobs is not None else (os.cpu_count() or 1)
    if kind == "search-ratio":
        result = exp.run_search_ratio_experiment(_ints(ns), _floats(ps), trials, seed, proxy, jobs)
    else:
        result = exp.run_cost_ratio_experiment(_ints(ns), _floats(ps), trials, seed, _limits(ctx), jobs)
    _emit(result.csv_text, out)
    if out:
        Path(out).with_suffix(".config.json").write_text(result.config_json(), encoding="utf-8")
    if records:
        Path(records).write_text(exp.records_to_json(result.records), encoding="utf-8")
    failed = sum(1 for r in result.records if r.error)
    if failed:
        _note(f"{failed} trial(s) failed and were excluded")


@main.command("find-separation")
@click.option("--n", "n", type=int, default=5, show_default=True)
@click.option("--target", default="3,4,5", show_default=True, help="Wanted (C, D, T) lengths.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the found instance as a fixture.")
@_guard
def find_separation_cmd(n, target, out) -> None:
    """Exhaustive search for an instance separating the three solution lengths."""
    from .separation import find_separation, fixture_json

    want = tuple(_ints(target))
    if len(want) != 3:
        raise click.UsageError("--target takes three comma-separated lengths")
    report = find_separation(n, want)
    click.echo(report.to_text())
    hit = report.found or report.best
    if out and hit:
        Path(out).write_text(fixture_json(hit, n), encoding="utf-8")
    if not report.exact_match:
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
