"""Command-line surface.

Verbs: validate, convert, dualize, concept-lattice, check, sweep, gen,
export-dot. Exit codes: 0 when the input is valid and the property or
conversion goes through, 1 when an axiom, theorem precondition, or
roundtrip fails (diagnostics on standard error), 2 for parse and usage
errors. Identical arguments and seeds produce byte-identical standard
output; nothing time-dependent is ever printed there.
"""

from __future__ import annotations

import sys

import click

from .bidcpo import (
    BiDcpo,
    EmbeddedBiDcpo,
    bifounded_crosscheck,
    is_bifounded,
    is_distributive_bidcpo,
    is_raney,
)
from .equivalence import (
    bidcpo_to_embedded,
    bidcpo_to_kospace,
    embedded_to_bidcpo,
    embedded_to_kospace,
    kospace_to_bidcpo,
    kospace_to_embedded,
    lawson_dual,
    lawson_dual_morphism,
)
from .generate import GEN_KINDS, generate
from .io import ParseError, document_of, export_dot, parse_document, realize, render
from .kospace import KoSpace, degroot_dual, kospace_isomorphic
from .localcompact import (
    Dirspace,
    check_bicontinuous,
    check_locally_compact,
    dirspace_ops,
    hofmann_mislove,
    wilker_check,
)
from .order import GuardrailError, distributivity_cut_witness
from .polarity import (
    GaloisMorphism,
    concept_lattice,
    dbl_isomorphic,
    polarity_isomorphic,
)
from .sweeps import run_sweep


class _Workbench(click.Group):
    """Guardrail violations are size limits, not axiom failures; report
    them like usage errors wherever they surface."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except GuardrailError as exc:
            click.echo(str(exc), err=True)
            sys.exit(2)


@click.group(cls=_Workbench)
def main() -> None:
    """Finite duality workbench: ko-spaces, bi-dcpos, embedded bi-dcpos,
    their morphisms, and the de Groot and Lawson dualities."""


def _fail_diagnostics(diags) -> None:
    for d in diags:
        click.echo(str(d), err=True)
    sys.exit(1)


def _load(path: str, override: bool):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(2)
    try:
        doc = parse_document(text)
        got = realize(doc, override_guardrail=override)
    except ParseError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    if isinstance(got, list):
        _fail_diagnostics(got)
    return got


def _emit(structure, fmt: str) -> None:
    try:
        click.echo(render(structure, fmt), nl=False)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)


_FMT = click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="json",
    help="Output document format.",
)
_OVERRIDE = click.option(
    "--override-guardrail", is_flag=True,
    help="Lift the size guardrails on exhaustive enumeration.",
)


@main.command()
@click.argument("path")
@_OVERRIDE
def validate(path: str, override_guardrail: bool) -> None:
    """Check every axiom of the structure in PATH."""
    got = _load(path, override_guardrail)
    click.echo(f"valid {document_of(got)['kind']}")


_CONVERTERS = {
    (KoSpace, "kospace"): lambda s: s,
    (KoSpace, "polarity"): kospace_to_bidcpo,
    (KoSpace, "embedded"): kospace_to_embedded,
    (BiDcpo, "kospace"): bidcpo_to_kospace,
    (BiDcpo, "polarity"): lambda b: b,
    (BiDcpo, "embedded"): bidcpo_to_embedded,
    (EmbeddedBiDcpo, "kospace"): embedded_to_kospace,
    (EmbeddedBiDcpo, "polarity"): embedded_to_bidcpo,
    (EmbeddedBiDcpo, "embedded"): lambda e: e,
}

_KIND_OF = {KoSpace: "kospace", BiDcpo: "polarity", EmbeddedBiDcpo: "embedded"}


def _convert(structure, to_kind: str):
    key = (type(structure), to_kind)
    if key not in _CONVERTERS:
        raise click.UsageError(
            f"cannot convert a {document_of(structure)['kind']} document; "
            "convert accepts ko-space, polarity, and embedded inputs"
        )
    got = _CONVERTERS[key](structure)
    if isinstance(got, list):
        _fail_diagnostics(got)
    return got


@main.command()
@click.argument("path")
@click.option("--to", "to_kind", type=click.Choice(["kospace", "polarity", "embedded"]),
              required=True, help="Target structure kind.")
@click.option("--roundtrip", is_flag=True,
              help="Convert back and require an isomorphism with the input.")
@_FMT
@_OVERRIDE
def convert(path: str, to_kind: str, roundtrip: bool, fmt: str, override_guardrail: bool) -> None:
    """Convert between the three equivalent structure kinds."""
    source = _load(path, override_guardrail)
    target = _convert(source, to_kind)
    if roundtrip:
        back = _convert(target, _KIND_OF[type(source)])
        if isinstance(source, KoSpace):
            ok = kospace_isomorphic(source, back)
        elif isinstance(source, BiDcpo):
            ok = polarity_isomorphic(source.pol, back.pol)
        else:
            ok = dbl_isomorphic(source.dbl, back.dbl)
        if ok is None:
            click.echo("roundtrip failed: no isomorphism with the input", err=True)
            sys.exit(1)
    _emit(target, fmt)


@main.command()
@click.argument("mode", type=click.Choice(["degroot", "lawson"]))
@click.argument("path")
@_FMT
@_OVERRIDE
def dualize(mode: str, path: str, fmt: str, override_guardrail: bool) -> None:
    """Apply the de Groot dual (ko-spaces, dirspaces) or the Lawson dual
    (bi-dcpos, morphisms)."""
    s = _load(path, override_guardrail)
    if mode == "degroot":
        if isinstance(s, KoSpace):
            _emit(degroot_dual(s), fmt)
            return
        if isinstance(s, Dirspace):
            _emit(dirspace_ops(s, override_guardrail).degroot, fmt)
            return
        raise click.UsageError("degroot applies to kospace and dirspace documents")
    if isinstance(s, BiDcpo):
        _emit(lawson_dual(s), fmt)
        return
    if isinstance(s, GaloisMorphism):
        _emit(lawson_dual_morphism(s), fmt)
        return
    raise click.UsageError("lawson applies to polarity and galois documents")


@main.command("concept-lattice")
@click.argument("path")
@_FMT
@_OVERRIDE
def concept_lattice_cmd(path: str, fmt: str, override_guardrail: bool) -> None:
    """Embed a polarity into its lattice of formal concepts."""
    s = _load(path, override_guardrail)
    if not isinstance(s, BiDcpo):
        raise click.UsageError("concept-lattice applies to polarity documents")
    _emit(bidcpo_to_embedded(s), fmt)


def _as_bidcpo(s) -> BiDcpo:
    if isinstance(s, BiDcpo):
        return s
    if isinstance(s, KoSpace):
        return kospace_to_bidcpo(s)
    if isinstance(s, EmbeddedBiDcpo):
        return embedded_to_bidcpo(s)
    raise click.UsageError(
        "this check applies to kospace, polarity, and embedded documents"
    )


def _check_distributive(s):
    if isinstance(s, EmbeddedBiDcpo):
        wit = distributivity_cut_witness(s.dbl.lattice)
        names = (
            None
            if wit is None
            else tuple(s.dbl.lattice.carrier.elements[i] for i in wit)
        )
        return wit is None, f"cut witness (k, u, c) = {names}"
    b = _as_bidcpo(s)
    ok, wit = is_distributive_bidcpo(b)
    return ok, f"cut witness (k, l, u, v) = {wit}"


def _check_bifounded(s):
    if isinstance(s, EmbeddedBiDcpo):
        return is_bifounded(s.dbl.lattice), "a non-related pair escapes every diagonal pair"
    ok = bifounded_crosscheck(_as_bidcpo(s).pol)
    return ok, "a non-related pair escapes every diagonal pair"


def _check_raney(s):
    if isinstance(s, EmbeddedBiDcpo):
        lat = s.dbl.lattice
    else:
        lat = concept_lattice(_as_bidcpo(s).pol).lattice
    return is_raney(lat), "some strict pair admits no completely prime pair"


def _report_lc(s, want_bicontinuous: bool):
    rep = check_bicontinuous(s) if want_bicontinuous else check_locally_compact(s)
    flag = rep.bicontinuous if want_bicontinuous else rep.locally_compact
    label = "bicontinuous" if want_bicontinuous else "locally compact"
    click.echo(f"{label}: {flag}")
    if not flag:
        for kind, data in rep.witnesses:
            click.echo(f"witness [{kind}]: {data}", err=True)
    return flag


@main.command()
@click.argument(
    "prop",
    type=click.Choice(
        ["distributive", "bifounded", "raney", "lc", "bicontinuous", "wilker", "hofmis"]
    ),
)
@click.argument("path")
@_OVERRIDE
def check(prop: str, path: str, override_guardrail: bool) -> None:
    """Decide one property of the structure in PATH; exit 0 when it holds."""
    s = _load(path, override_guardrail)
    if prop in ("lc", "bicontinuous"):
        if not isinstance(s, (KoSpace, BiDcpo, EmbeddedBiDcpo)):
            raise click.UsageError(
                "this check applies to kospace, polarity, and embedded documents"
            )
        ok = _report_lc(s, prop == "bicontinuous")
        sys.exit(0 if ok else 1)
    if prop == "wilker":
        target = s if isinstance(s, KoSpace) else _as_bidcpo(s)
        for variant in (1, 2):
            try:
                wilker_check(target, variant)
            except AssertionError as exc:
                click.echo(f"wilker variant {variant}: {exc}", err=True)
                sys.exit(1)
            except GuardrailError:
                raise
            except ValueError as exc:
                click.echo(f"wilker variant {variant} precondition: {exc}", err=True)
                sys.exit(1)
            click.echo(f"wilker variant {variant}: holds")
        sys.exit(0)
    if prop == "hofmis":
        b = _as_bidcpo(s)
        try:
            rep = hofmann_mislove(b, override_guardrail)
        except GuardrailError:
            raise
        except ValueError as exc:
            click.echo(f"hofmis precondition: {exc}", err=True)
            sys.exit(1)
        for k, f in rep.k_to_filter:
            click.echo(f"k-set {k} <-> filter {{{', '.join(f)}}}")
        for u, d in rep.u_to_downset:
            click.echo(f"o-set {u} <-> downset {{{', '.join(d)}}}")
        sys.exit(0)
    checker = {
        "distributive": _check_distributive,
        "bifounded": _check_bifounded,
        "raney": _check_raney,
    }[prop]
    ok, witness = checker(s)
    click.echo(f"{prop}: {ok}")
    if not ok:
        click.echo(witness, err=True)
        sys.exit(1)
    sys.exit(0)


@main.command()
@click.argument("theorem_id")
@click.option("--bound", default=None, help="Size bound, e.g. 6 or 3x3.")
@click.option("--seed", default=0, show_default=True, help="Seed for random corpora.")
def sweep(theorem_id: str, bound: str | None, seed: int) -> None:
    """Run one theorem sweep from the registry over its instance corpus."""
    try:
        outcome = run_sweep(theorem_id, bound=bound, seed=seed)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    click.echo(outcome.render())
    sys.exit(0 if outcome.ok else 1)


@main.command()
@click.argument("kind", type=click.Choice(list(GEN_KINDS)))
@click.option("--seed", default=0, show_default=True)
@click.option("--bound", default=4, show_default=True, help="Carrier size cap.")
@_FMT
def gen(kind: str, seed: int, bound: int, fmt: str) -> None:
    """Generate a random structure; identical seeds give identical output."""
    _emit(generate(kind, seed, bound), fmt)


@main.command("export-dot")
@click.argument("path")
@_OVERRIDE
def export_dot_cmd(path: str, override_guardrail: bool) -> None:
    """Render the structure in PATH as a Graphviz document."""
    s = _load(path, override_guardrail)
    try:
        click.echo(export_dot(s), nl=False)
    except (ValueError, TypeError) as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
