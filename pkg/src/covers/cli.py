"""Command-line interface.

Subcommands:
  group   parse a knot and print its group presentation with meridian,
          longitude, writhe and abelianisation
  cover   branched-cover reports for cyclic quotients or an explicit
          homomorphism
  verify  machine-check the covering-space relations; exits nonzero when an
          applicable check fails (not-applicable and not-closed are not
          failures)

Knot sources (exactly one): --pd "X[1,4,2,5] ...", --braid "s1 s1 s1",
--builtin trefoil.  Quotient modes for cover/verify (exactly one):
--cyclic A..B or --hom FILE, where FILE maps each arc generator to a
permutation in cycle notation, one per line, e.g. ``a: (1 2)``.
"""

from __future__ import annotations

import re
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import __version__
from .abelian import FinGenAbelianGroup
from .coset_table import EnumerationLimits, NotClosed
from .cover import CoverReport, analyze
from .knot import (
    BUILTIN_ALIASES,
    BUILTIN_KNOTS,
    WirtingerData,
    builtin_diagram,
    parse_braid,
    parse_pd,
    wirtinger,
)
from .presentation import format_presentation, format_word, tietze_simplify_with_images
from .report import SCHEMA, render
from .verify import NotApplicable, check_prop_b, check_prop_c_degree01, check_prop_d, check_splitting
from .words import Word, substitute


def _load_knot(pd: str | None, braid: str | None, builtin: str | None) -> tuple[str, WirtingerData]:
    sources = [s for s in (pd, braid, builtin) if s is not None]
    if len(sources) != 1:
        raise click.UsageError("give exactly one knot source: --pd, --braid or --builtin")
    try:
        if pd is not None:
            return f"pd:{' '.join(pd.split())}", wirtinger(parse_pd(pd))
        if braid is not None:
            return f"braid:{' '.join(braid.split())}", wirtinger(parse_braid(braid))
        return f"builtin:{BUILTIN_ALIASES.get(builtin, builtin)}", wirtinger(builtin_diagram(builtin))
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc


def _parse_cyclic(spec: str) -> list[int]:
    m = re.match(r"^(\d+)(?:\.\.(\d+))?$", spec.strip())
    if not m:
        raise click.UsageError(f"--cyclic expects N or A..B, got {spec!r}")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) else a
    if a < 1 or b < a:
        raise click.UsageError(f"--cyclic range {spec!r} is empty or not positive")
    return list(range(a, b + 1))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_hom_file(path: str, w: WirtingerData) -> dict[int, tuple[int, ...]]:
    entries: dict[str, list[list[int]]] = {}
    degree = 0
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            name, sep, rest = line.partition(":")
            if not sep:
                raise click.ClickException(f"{path}:{lineno}: expected 'name: cycles'")
            name = name.strip()
            rest = rest.strip()
            if name == "degree":
                degree = int(rest)
                continue
            cycles: list[list[int]] = []
            if rest not in ("id", "()", ""):
                consumed = "".join(_CYCLE_RE.findall(rest))
                if not _CYCLE_RE.findall(rest) or _CYCLE_RE.sub("", rest).strip():
                    raise click.ClickException(f"{path}:{lineno}: cannot parse cycles {rest!r}")
                del consumed
                for body in _CYCLE_RE.findall(rest):
                    pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
                    if len(pts) < 2:
                        raise click.ClickException(f"{path}:{lineno}: cycle needs at least 2 points")
                    cycles.append(pts)
            entries[name] = cycles
            for cyc in cycles:
                degree = max(degree, max(cyc))
    names = w.pres.generator_names
    missing = [nm for nm in names if nm not in entries]
    extra = [nm for nm in entries if nm not in names]
    if missing or extra:
        raise click.ClickException(
            f"homomorphism file must give exactly the arc generators {list(names)}; "
            f"missing {missing}, unknown {extra}"
        )
    if degree < 1:
        degree = 1
    images: dict[int, tuple[int, ...]] = {}
    for idx, nm in enumerate(names, start=1):
        perm = list(range(degree))
        for cyc in entries[nm]:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                perm[a - 1] = b - 1
        images[idx] = tuple(perm)
    return images


def _h1_doc(h1: FinGenAbelianGroup) -> dict:
    return {"rank": h1.free_rank, "invariant_factors": list(h1.torsion)}


def _order_doc(order) -> object:
    if isinstance(order, NotClosed):
        return {"status": "not-closed", "cosets_defined": order.cosets_defined, "limit": order.limit}
    return order


def _knot_doc(source: str, w: WirtingerData) -> dict:
    return {
        "source": source,
        "arc_generators": w.pres.n_generators,
        "writhe": w.writhe,
        "presentation": format_presentation(w.pres),
        "meridian": format_word(Word([w.meridian]), w.pres.generator_names),
        "longitude": format_word(w.longitude, w.pres.generator_names),
    }


def _cover_doc(report: CoverReport) -> dict:
    return {
        "index": report.efr.index,
        "e": report.efr.e,
        "f": report.efr.f,
        "r": report.efr.r,
        "q_presentation": format_presentation(report.q_presentation),
        "order": _order_doc(report.order),
        "h1": _h1_doc(report.h1),
        "label": report.label,
        "prime_knot_hypothesis": "not verified",
    }


def _junctions_doc(rep) -> list:
    return [{"at": j.at, "verdict": j.verdict, **j.details} for j in rep.junctions]


def _emit(doc: dict, fmt: str, out: str | None) -> None:
    text = render(doc, fmt)
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _knot_options(fn):
    fn = click.option("--pd", default=None, help="planar diagram code, X[a,b,c,d] tokens")(fn)
    fn = click.option("--braid", default=None, help="braid word, s<k> / s<k>^-1 tokens")(fn)
    fn = click.option(
        "--builtin",
        default=None,
        type=str,
        help=f"builtin knot: {', '.join(sorted(BUILTIN_KNOTS))}",
    )(fn)
    return fn


def _mode_options(fn):
    fn = click.option("--cyclic", default=None, help="cyclic quotients, N or A..B")(fn)
    fn = click.option("--hom", default=None, type=click.Path(exists=True), help="homomorphism file")(fn)
    fn = click.option("--max-cosets", default=EnumerationLimits().max_cosets, show_default=True, type=int)(fn)
    fn = click.option("--max-steps", default=EnumerationLimits().max_steps, show_default=True, type=int)(fn)
    fn = click.option("--workers", default=1, show_default=True, type=int)(fn)
    return fn


def _output_options(fn):
    fn = click.option("--out", default=None, type=click.Path(), help="write the report to a file")(fn)
    fn = click.option("--format", "fmt", default="text", type=click.Choice(["text", "json"]), show_default=True)(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="covers")
def main():
    """Branched covering spaces of knots, from group presentations."""


@main.command("group")
@_knot_options
@_output_options
def cmd_group(pd, braid, builtin, out, fmt):
    """Print the knot group presentation and peripheral data."""
    source, w = _load_knot(pd, braid, builtin)
    simplified, images = tietze_simplify_with_images(w.pres)
    from .presentation import abelian_invariants

    doc = {
        "schema": SCHEMA,
        "command": "group",
        "knot": _knot_doc(source, w),
        "simplified_presentation": format_presentation(simplified),
        "meridian_in_simplified": format_word(images[w.meridian], simplified.generator_names),
        "longitude_in_simplified": format_word(
            substitute(w.longitude, images), simplified.generator_names
        ),
        "h1": _h1_doc(abelian_invariants(w.pres)),
    }
    _emit(doc, fmt, out)


def _jobs(w: WirtingerData, cyclic, hom) -> list[tuple[str, dict[int, tuple[int, ...]]]]:
    from .knot import linking_hom

    if (cyclic is None) == (hom is None):
        raise click.UsageError("give exactly one of --cyclic or --hom")
    if cyclic is not None:
        return [(str(n), linking_hom(w, n)) for n in _parse_cyclic(cyclic)]
    return [(f"hom-file", _parse_hom_file(hom, w))]


@main.command("cover")
@_knot_options
@_mode_options
@_output_options
def cmd_cover(pd, braid, builtin, cyclic, hom, max_cosets, max_steps, workers, out, fmt):
    """Branched-cover report: e/f/r, quotient presentation, order, homology."""
    source, w = _load_knot(pd, braid, builtin)
    limits = EnumerationLimits(max_cosets=max_cosets, max_steps=max_steps)
    jobs = _jobs(w, cyclic, hom)

    def run(job):
        name, images = job
        entry = {"quotient": name}
        if name.isdigit():
            entry["n"] = int(name)
        entry.update(_cover_doc(analyze(w, images, limits)))
        return entry

    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        entries = list(pool.map(run, jobs))

    doc = {
        "schema": SCHEMA,
        "command": "cover",
        "knot": _knot_doc(source, w),
        "limits": {"max_cosets": limits.max_cosets, "max_steps": limits.max_steps},
        "covers": entries,
    }
    _emit(doc, fmt, out)


@main.command("verify")
@_knot_options
@_mode_options
@_output_options
def cmd_verify(pd, braid, builtin, cyclic, hom, max_cosets, max_steps, workers, out, fmt):
    """Check the covering-space sequences and the splitting criterion."""
    source, w = _load_knot(pd, braid, builtin)
    limits = EnumerationLimits(max_cosets=max_cosets, max_steps=max_steps)
    jobs = _jobs(w, cyclic, hom)

    def run(job):
        name, images = job
        entry: dict = {"quotient": name}
        if name.isdigit():
            entry["n"] = int(name)

        splits, witness = check_splitting(w, images)
        expected = witness["hom_trivial"]
        entry["splitting"] = {"value": splits, "expected": expected, "pass": splits == expected, **witness}

        b = check_prop_b(w, images, limits)
        entry["abelianised_sequence"] = {"pass": b.passed, "junctions": _junctions_doc(b)}

        c = check_prop_c_degree01(w, images, limits)
        entry["duality_degree01"] = {"pass": c.passed, "junctions": _junctions_doc(c)}

        d = check_prop_d(w, images, limits)
        if isinstance(d, NotApplicable):
            entry["five_term"] = {"applicable": False, "failed_hypothesis": d.failed_hypothesis}
        else:
            entry["five_term"] = {"applicable": True, "pass": d.passed, "junctions": _junctions_doc(d)}
        return entry

    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        entries = list(pool.map(run, jobs))

    failed = any(
        not entry[key]["pass"]
        for entry in entries
        for key in ("splitting", "abelianised_sequence", "duality_degree01")
    ) or any(
        entry["five_term"].get("applicable") and not entry["five_term"]["pass"] for entry in entries
    )

    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "knot": _knot_doc(source, w),
        "limits": {"max_cosets": limits.max_cosets, "max_steps": limits.max_steps},
        "all_passed": not failed,
        "checks": entries,
    }
    _emit(doc, fmt, out)
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
