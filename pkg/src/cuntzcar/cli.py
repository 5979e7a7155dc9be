"""Command line interface: table commands and the verification suites.

Every command accepts ``--json FILE`` and ``--csv FILE`` to write its result
in machine-readable form next to the text printed on stdout.  Exit codes:
0 when everything passes, 1 when a suite reports failures, 2 for invalid
input or configuration.
"""

from __future__ import annotations

import csv
import json
import re
import sys
from typing import Dict, List, Optional

import click

from .algebra import Element, canonical_form
from .carpoly import CarPolynomial
from .dynamics import npoint
from .induced import closed_form_morphism, restrict_by_name
from .parse import ParseError, format_car, format_element, parse
from .reps import branch_index, branching_number, enumerate_branch_labels, necklace_count, necklace_count_closed
from .scalars import fmt
from .states import QuasiFockState
from .suites import SCHEMA_VERSION, SUITES, SuiteConfigError, run_suite

CONFIG_ERROR = 2


def _write_outputs(json_path: Optional[str], csv_path: Optional[str], command: str, rows: List[Dict], extra: Dict) -> None:
    if json_path:
        payload = {"schema": SCHEMA_VERSION, "command": command, **extra, "rows": rows}
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=str)
    if csv_path:
        keys: List[str] = []
        for row in rows:
            keys += [k for k in row if k not in keys]
        with open(csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=keys)
            w.writeheader()
            w.writerows(rows)


def output_options(f):
    f = click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Write the result as CSV.")(f)
    f = click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the result as JSON.")(f)
    return f


def _parse_or_exit(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise click.UsageError(str(exc))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Cuntz algebras, recursive fermion systems and induced CAR dynamics."""


@main.command()
@click.option("--n", "n", type=click.IntRange(1, 64), required=True, help="Label length.")
@output_options
def necklace(n: int, json_path, csv_path):
    """Number C_n of nonperiodic binary labels of length N up to rotation."""
    value = necklace_count(n)
    if value != necklace_count_closed(n):
        raise click.ClickException("recurrence and closed form disagree")
    click.echo(value)
    _write_outputs(json_path, csv_path, "necklace", [{"n": n, "C_n": value}], {})


@main.command()
@click.option("--p", "p", type=click.IntRange(1, 12), required=True, help="Order of phi_sigma_p.")
@output_options
def branch(p: int, json_path, csv_path):
    """Branching number B_p and the labels L with eigenvector indices N(L, lambda)."""
    labels = enumerate_branch_labels(p)
    rows = []
    click.echo(f"B_{p} = {branching_number(p)}")
    for L in labels:
        idx = [branch_index(L, lam, p) for lam in range(len(L))]
        text = "(" + ",".join(map(str, L)) + ")"
        click.echo(f"{text}: " + " ".join(f"e_{N}" for N in idx))
        rows.append({"label": text, "indices": " ".join(map(str, idx))})
    _write_outputs(json_path, csv_path, "branch", rows, {"p": p, "B_p": branching_number(p)})


@main.command("normal-form")
@click.argument("expr")
@output_options
def normal_form(expr: str, json_path, csv_path):
    """Canonical text of a Cuntz or CAR expression."""
    x = _parse_or_exit(expr)
    text = format_element(canonical_form(x)) if isinstance(x, Element) else format_car(x)
    click.echo(text)
    _write_outputs(json_path, csv_path, "normal-form", [{"input": expr, "normal_form": text}], {})


@main.command()
@click.option("--endo", required=True, help='Endomorphism name, e.g. "phi[2,3]", "phi_sigma(2)", "hat_phi(3)", "rho^2".')
@click.option("--n", "n", type=click.IntRange(1, 12), required=True, help="Mode index.")
@click.option("--closed", is_flag=True, help="Use the closed-form table instead of restricting the Cuntz endomorphism.")
@click.option("--expand", is_flag=True, help="Print without Klein factors.")
@output_options
def restrict(endo: str, n: int, closed: bool, expand: bool, json_path, csv_path):
    """Image of a_N under an endomorphism restricted to the CAR algebra."""
    try:
        m = closed_form_morphism(endo) if closed else restrict_by_name(endo)
        x = m.image(n)
    except (KeyError, ValueError) as exc:
        raise click.UsageError(str(exc))
    text = format_car(x, factor_klein=not expand)
    click.echo(text)
    _write_outputs(json_path, csv_path, "restrict", [{"endo": endo, "n": n, "image": text}], {})


@main.command()
@click.option("--lambda", "lambdas", type=click.FloatRange(0, 1), multiple=True, help="Occupation lambda_j; repeat for each j.")
@click.option("--beta", type=click.FloatRange(min=0, min_open=True), help="Inverse temperature.")
@click.option("--eps", type=click.FloatRange(min=0, min_open=True), multiple=True, help="Energy eps_j; repeat for each j.")
@click.option("--expr", "exprs", multiple=True, help="CAR expression to evaluate; repeatable.")
@click.option("--modes", type=click.IntRange(1, 16), default=None, help="Number of modes in the occupation table.")
@output_options
def state(lambdas, beta, eps, exprs, modes, json_path, csv_path):
    """Quasi-free state from --lambda values or from --beta with --eps."""
    if lambdas and (beta is not None or eps):
        raise click.UsageError("give either --lambda or --beta with --eps")
    if beta is not None:
        if not eps:
            raise click.UsageError("--beta needs at least one --eps")
        st = QuasiFockState.from_beta(beta, eps)
    elif lambdas:
        st = QuasiFockState(tuple(lambdas))
    else:
        raise click.UsageError("give --lambda or --beta with --eps")
    rows = []
    for n in range(1, (modes or 2 * st.p) + 1):
        value = st(CarPolynomial.adag(n) * CarPolynomial.a(n))
        click.echo(f"omega(a{n}* a{n}) = {fmt(value)}")
        rows.append({"expr": f"a{n}* a{n}", "value": fmt(value)})
    for text in exprs:
        x = _parse_or_exit(text)
        if not isinstance(x, CarPolynomial):
            raise click.UsageError(f"{text!r} is not a CAR expression")
        value = st(x)
        click.echo(f"omega({text}) = {fmt(value)}")
        rows.append({"expr": text, "value": fmt(value)})
    _write_outputs(json_path, csv_path, "state", rows, {"lambdas": list(st.lambdas)})


_OP = re.compile(r"^a(\d+)(\*?)@([-+0-9.eE]+)$")


def parse_ops(text: str):
    """``"a2@0.3 a2*@0.9"`` -> ``[(2, False, 0.3), (2, True, 0.9)]``."""
    ops = []
    for token in text.replace(",", " ").split():
        m = _OP.match(token)
        if not m:
            raise click.UsageError(f"cannot read operator {token!r}; use aN@t or aN*@t")
        ops.append((int(m.group(1)), bool(m.group(2)), float(m.group(3))))
    if not ops:
        raise click.UsageError("--ops is empty")
    return ops


@main.command("npoint")
@click.option("--example", type=click.IntRange(1, 3), required=True, help="Example id.")
@click.option("--ops", required=True, help='Operators left to right, e.g. "a2@0.3 a1*@0.9 a2*@1.7".')
@click.option("--truncated", is_flag=True, help="Subtract lower-point contributions.")
@click.option("--mu", type=float, default=1.0, show_default=True, help="theta_t = mu t.")
@output_options
def npoint_cmd(example: int, ops: str, truncated: bool, mu: float, json_path, csv_path):
    """Vacuum n-point function of the induced time evolution."""
    parsed = parse_ops(ops)
    value = complex(npoint(example, parsed, truncate=truncated, mu=mu))
    out = value.real if abs(value.imag) < 1e-14 else value
    click.echo(f"{out:.15g}" if isinstance(out, float) else str(out))
    _write_outputs(json_path, csv_path, "npoint", [{"ops": ops, "truncated": truncated, "value": str(out)}], {"example": example})


def _coerce(value: str):
    if "," in value:
        return [_coerce(v) for v in value.split(",") if v]
    try:
        return int(value)
    except ValueError:
        return float(value)


@main.command()
@click.argument("name", type=click.Choice(list(SUITES) + ["all"]))
@click.option("--p", "p", type=int, default=None, help="Restrict rfs and branching to one p.")
@click.option("--n-max", type=int, default=None, help="Mode bound override.")
@click.option("--beta", type=float, multiple=True, help="KMS inverse temperatures; repeatable.")
@click.option("--eps", type=float, multiple=True, help="Block energies of a single KMS state; repeatable.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--set", "settings", multiple=True, help="Other bound as key=value, e.g. relations_cases=200.")
@click.option("--verbose", "-v", is_flag=True, help="List every case, not only failures and conflicts.")
@output_options
def suite(name, p, n_max, beta, eps, seed, settings, verbose, json_path, csv_path):
    """Run a verification suite; exit code 0 iff every case passes."""
    overrides = {"seed": seed}
    if p is not None:
        overrides["p"] = p
    if n_max is not None:
        overrides["n_max"] = n_max
    if beta:
        overrides["beta"] = tuple(beta)
    if eps:
        overrides["eps"] = tuple(eps)
    for item in settings:
        if "=" not in item:
            click.echo(f"error: --set expects key=value, got {item!r}", err=True)
            sys.exit(CONFIG_ERROR)
        key, value = item.split("=", 1)
        overrides[key.strip()] = _coerce(value.strip())
    try:
        report = run_suite(name, **overrides)
    except SuiteConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(CONFIG_ERROR)
    for case in report.cases:
        if verbose or case.status != "pass":
            line = f"{case.status.upper():8s} {case.id}"
            click.echo(line + (f"  {case.witness}" if case.witness else ""))
    click.echo(report.summary())
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(report.to_json())
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            fh.write(report.to_csv())
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
