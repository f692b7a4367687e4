"""Command-line surface: diagram ingestion, tables, sweeps, comparisons.

Two entry points are installed: ``kh`` (Khovanov homology of planar
diagrams) and ``hfk`` (grid knot Floer homology).  Bigraded tables are
printed in the superscript/subscript convention ``d^i_q`` with braces
around multi-character gradings, e.g. ``1^0_{-1} 1^0_1`` for the unknot.

Exit codes: 0 success, 2 parse/usage error on input data, 3 size guard.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from . import diagram as dg
from . import gridhfk as gh
from . import khovanov as khm
from . import lee as leem
from . import skein as skm
from .algebra import field_by_name

EXIT_PARSE = 2
EXIT_SIZE = 3


def _sup(v):
    s = str(v)
    return s if len(s) == 1 else "{" + s + "}"


def format_table(dims):
    """``d^i_q`` text table, entries sorted by (i, q)."""
    if not dims:
        return "0"
    return " ".join(f"{d}^{_sup(i)}_{_sup(q)}"
                    for (i, q), d in sorted(dims.items()))


def format_delta(collapse):
    return " ".join(f"{d}_{_sup(delta)}"
                    for delta, d in sorted(collapse.items()))


def format_poly(poly):
    if not poly:
        return "0"
    parts = []
    for e in sorted(poly):
        c = poly[e]
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        term = "" if mag == 1 and e != 0 else str(mag)
        if e != 0:
            term += f"q^{_sup(e)}" if term else f"q^{_sup(e)}"
        parts.append(sign + term)
    return " ".join(parts)


def dims_to_json(dims):
    return [[i, q, d] for (i, q), d in sorted(dims.items())]


def dims_from_json(rows):
    return {(i, q): d for i, q, d in rows}


def emit_json(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(path):
    try:
        return dg.load_diagram(path)
    except (dg.DiagramError, OSError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PARSE)


def _kh_guarded(D, field, reduced=False):
    try:
        return khm.kh(D, field, reduced=reduced)
    except khm.SizeLimitError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_SIZE)
    except dg.DiagramError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PARSE)


@click.group()
def kh():
    """Khovanov homology of planar diagram codes (exact arithmetic)."""


@kh.command("compute")
@click.option("--pd", "pd_path", required=True,
              type=click.Path(exists=False), help="PD fixture (JSON or PD[...]).")
@click.option("--ring", default="Q", type=click.Choice(["Q", "F2"]))
@click.option("--reduced", is_flag=True)
@click.option("--delta", "show_delta", is_flag=True)
@click.option("--euler", "show_euler", is_flag=True)
@click.option("--json", "json_out", default=None,
              help="Write machine-readable output to this path ('-' = stdout).")
def kh_compute(pd_path, ring, reduced, show_delta, show_euler, json_out):
    """Bigraded homology table of one diagram."""
    D = _load(pd_path)
    field = field_by_name(ring)
    dims = _kh_guarded(D, field, reduced=reduced)
    click.echo(format_table(dims))
    collapse = khm.delta_collapse(dims)
    euler = khm.graded_euler_characteristic(dims)
    if show_delta:
        click.echo("delta: " + format_delta(collapse))
    if show_euler:
        click.echo("euler: " + format_poly(euler))
    if json_out:
        emit_json({"ring": ring, "reduced": reduced,
                   "dims": dims_to_json(dims),
                   "total": khm.total_dim(dims),
                   "delta": [[k, v] for k, v in sorted(collapse.items())],
                   "euler": [[e, c] for e, c in sorted(euler.items())]},
                  json_out)


def _family_member(args):
    base_json, n, ring = args
    base = dg.parse_pd(base_json)
    D = dg.generate_family(dg.FamilySpec(base, n))
    field = field_by_name(ring)
    dims = khm.kh(D, field)
    s = leem.s_invariant(D)
    return n, dims, s, D.n_crossings


@kh.command("family")
@click.option("--base", "base_path", required=True, type=click.Path())
@click.option("--twists", type=int, default=None)
@click.option("--sweep", default=None, help="Range a..b of twist counts.")
@click.option("--ring", default="Q", type=click.Choice(["Q", "F2"]))
@click.option("--jobs", type=int, default=1)
@click.option("--json", "json_out", default=None)
def kh_family(base_path, twists, sweep, ring, jobs, json_out):
    """Generate twist-family members and report their homology."""
    base = _load(base_path)
    if base.band_site is None:
        click.echo("error: fixture has no band_site", err=True)
        sys.exit(EXIT_PARSE)
    if sweep is not None:
        try:
            a, b = (int(x) for x in sweep.split(".."))
        except ValueError:
            click.echo("error: --sweep expects a..b", err=True)
            sys.exit(EXIT_PARSE)
        ns = list(range(a, b + 1))
    elif twists is not None:
        ns = [twists]
    else:
        click.echo("error: need --twists or --sweep", err=True)
        sys.exit(EXIT_PARSE)
    base_json = base.to_json()
    work = [(base_json, n, ring) for n in ns]
    try:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_family_member, work))
        else:
            results = [_family_member(w) for w in work]
    except khm.SizeLimitError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_SIZE)
    except dg.DiagramError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PARSE)
    records = []
    for n, dims, s, nc in results:
        rec = {"n": n, "crossings": nc, "dims": dims_to_json(dims),
               "total": khm.total_dim(dims), "s": s}
        if n >= 8 and ring == "Q":
            for mutant in (False, True):
                if dims == skm.family_closed_form(n, mutant=mutant):
                    rec["closed_form"] = "mutant" if mutant else "plain"
                    break
            else:
                rec["closed_form"] = "none"
        records.append(rec)
        line = f"n={n}: {format_table(dims)}  s={s}"
        if "closed_form" in rec:
            line += f"  closed-form: {rec['closed_form']}"
        click.echo(line)
    if json_out:
        emit_json({"ring": ring, "members": records}, json_out)


def comparison_report(dims_a, dims_b, s_a=None, s_b=None):
    """Recompute all comparison flags from the raw bigraded tables."""
    da = khm.delta_collapse(dims_a)
    db = khm.delta_collapse(dims_b)
    swapped = {-k: v for k, v in da.items()}
    return {
        "total": [khm.total_dim(dims_a), khm.total_dim(dims_b)],
        "bigraded_equal": dims_a == dims_b,
        "delta_a": [[k, v] for k, v in sorted(da.items())],
        "delta_b": [[k, v] for k, v in sorted(db.items())],
        "delta_swap": swapped == db,
        "euler_equal": (khm.graded_euler_characteristic(dims_a)
                        == khm.graded_euler_characteristic(dims_b)),
        "s": [s_a, s_b],
    }


@kh.command("compare")
@click.option("--a", "path_a", required=True, type=click.Path())
@click.option("--b", "path_b", required=True, type=click.Path())
@click.option("--ring", default="Q", type=click.Choice(["Q", "F2"]))
@click.option("--json", "json_out", default=None)
def kh_compare(path_a, path_b, ring, json_out):
    """Compare two diagrams: bigraded equality, delta-swap, Euler, s."""
    Da, Db = _load(path_a), _load(path_b)
    field = field_by_name(ring)
    dims_a = _kh_guarded(Da, field)
    dims_b = _kh_guarded(Db, field)
    s_a = leem.s_invariant(Da) if Da.n_components == 1 else None
    s_b = leem.s_invariant(Db) if Db.n_components == 1 else None
    rep = comparison_report(dims_a, dims_b, s_a, s_b)
    click.echo("A: " + format_table(dims_a))
    click.echo("B: " + format_table(dims_b))
    click.echo(f"totals: {rep['total'][0]} vs {rep['total'][1]}")
    click.echo(f"bigraded equal: {rep['bigraded_equal']}")
    click.echo(f"delta-swap: {rep['delta_swap']}")
    click.echo(f"euler equal: {rep['euler_equal']}")
    click.echo(f"s: {s_a} vs {s_b}")
    if json_out:
        emit_json(rep, json_out)


@click.group()
def hfk():
    """Grid-diagram knot Floer homology over F2."""


@hfk.command("grid")
@click.option("--file", "grid_path", required=True, type=click.Path())
@click.option("--flavor", default="hat", type=click.Choice(["hat", "minus"]))
@click.option("--tau", "show_tau", is_flag=True)
@click.option("--delta", "show_delta", is_flag=True)
@click.option("--json", "json_out", default=None)
def hfk_grid(grid_path, flavor, show_tau, show_delta, json_out):
    """Homology table of a grid diagram (Maslov^m, Alexander_a axes)."""
    try:
        G = gh.GridDiagram.load(grid_path)
    except (gh.GridError, OSError, ValueError, KeyError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PARSE)
    out = {"size": G.size, "flavor": flavor}
    try:
        if flavor == "hat":
            dims = gh.hat_hfk(G)
            click.echo(format_table({(m, a): d for (m, a), d in dims.items()}))
            out["dims"] = dims_to_json(dims)
        else:
            res = gh.minus_hfk(G)
            dims = res["dims"]
            click.echo(format_table(dims))
            click.echo("towers: " + " ".join(
                f"({m},{a})" for m, a in sorted(res["tower_starts"])))
            out["dims"] = dims_to_json(dims)
            out["tower_starts"] = sorted(list(t) for t in res["tower_starts"])
            out["depth"] = res["depth"]
        if show_delta and flavor == "hat":
            collapse = gh.hfk_delta_collapse(dims)
            click.echo("delta: " + format_delta(collapse))
            out["delta"] = [[k, v] for k, v in sorted(collapse.items())]
        if show_tau:
            t = gh.tau(G)
            click.echo(f"tau: {t}")
            out["tau"] = t
    except gh.GridError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_SIZE)
    if json_out:
        emit_json(out, json_out)
