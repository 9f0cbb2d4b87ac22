"""Read and write ``.alg`` presentation files.

A presentation file is a list of ``[section]`` headers, each followed by
``key = value`` lines; ``#`` starts a comment. Values are written in the
expression grammar of :mod:`polyrep.parser.expression`.

Sections::

    [presentation]          name, description
    [parameters]            free|central|energy|separation|coordinate = names...
    [radicals]              <radical> = <base parameter or integer>
    [derived]               <name> = <scalar expression>
    [generators]            names = <generators in normal-ordering order>
    [weights]               <generator> = <positive integer>
    [relations]             [<g>,<h>] = <expression>
    [casimir]               element = <expression>; eigenvalue = <scalar>
    [functional_relations]  <label> = <expression>
    [module]                template, order, energy, <generator> = <base rule>
    [reference]             <label> = <expression>
"""
from __future__ import annotations

import hashlib
import logging
import re
from pathlib import Path

import networkx as nx
from lark import Token, Tree

from polyrep.base.presentation import ModuleSpec, Presentation, build_algebra
from polyrep.base.scalar import Param, make_field
from polyrep.errors import ParseError, PresentationError, UnknownIdent
from polyrep.parser.expression import Namespace, lower, lower_scalar, parse
from polyrep.utils.config import EngineConfig

logger = logging.getLogger(__name__)

SECTIONS = (
    "presentation",
    "parameters",
    "radicals",
    "derived",
    "generators",
    "weights",
    "relations",
    "casimir",
    "functional_relations",
    "module",
    "reference",
)
PARAM_KINDS = ("free", "central", "energy", "separation", "coordinate")
_HEADER = re.compile(r"^\[([A-Za-z_]+)\]$")


class _Entry:
    __slots__ = ("key", "value", "line")

    def __init__(self, key: str, value: str, line: int) -> None:
        self.key = key
        self.value = value
        self.line = line


def read_sections(text: str) -> dict[str, list[_Entry]]:
    """Split presentation text into sections of ``key = value`` entries."""
    sections: dict[str, list[_Entry]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            current = header.group(1)
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", lineno, 1)
            if current in sections:
                raise ParseError(f"duplicate section [{current}]", lineno, 1)
            sections[current] = []
            continue
        if current is None:
            raise ParseError("entry outside of a section", lineno, 1)
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ParseError("expected 'key = value'", lineno, 1, frozenset({"EQUAL"}))
        sections[current].append(_Entry(key.strip(), value.strip(), lineno))
    return sections


def _located(entry: _Entry, section: str, func, *args):
    try:
        return func(*args)
    except ParseError as exc:
        raise ParseError(
            f"[{section}] {entry.key}: {exc.args[0].split(' at line')[0]}",
            entry.line,
            exc.column,
            exc.expected,
        ) from None
    except UnknownIdent as exc:
        raise UnknownIdent(exc.name, f"[{section}] line {entry.line}") from None


def load_presentation(
    source: str | Path,
    config: EngineConfig | None = None,
    validate: bool = True,
) -> Presentation:
    """Load a presentation from a path or from ``.alg`` text.

    Parameters
    ----------
    source : str or Path
        A path to a ``.alg`` file, or the file contents.
    config : EngineConfig, optional
        Rewriting configuration of the algebra.
    validate : bool, default=True
        Run the load-time checks.

    Returns
    -------
    Presentation
        The (validated) presentation.

    Raises
    ------
    ParseError, UnknownIdent, PresentationError
        On malformed text or a failed check.
    """
    if isinstance(source, Path) or (
        isinstance(source, str) and source.endswith(".alg") and "\n" not in source
    ):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    sections = read_sections(text)
    for required in ("parameters", "weights", "relations", "casimir"):
        if required not in sections:
            raise PresentationError(f"missing section [{required}]")

    meta = {e.key: e.value for e in sections.get("presentation", [])}
    params, central = _parameters(sections)
    field = make_field(tuple(params))
    derived = _derived(sections.get("derived", []), field)

    weights = _weights(sections)
    algebra = build_algebra(field, weights, config)
    namespace = Namespace(field, algebra, derived)

    for entry in sections["relations"]:
        left, right = _located(entry, "relations", _bracket_pair, entry.key, algebra)
        if algebra.has_bracket(left, right):
            raise PresentationError(f"duplicate relation for [{left},{right}]")
        value = _located(entry, "relations", lower, entry.value, namespace)
        algebra.set_bracket(left, right, value)

    casimir_entries = {e.key: e for e in sections["casimir"]}
    if "element" not in casimir_entries:
        raise PresentationError("[casimir] needs an 'element' entry")
    entry = casimir_entries["element"]
    casimir = _located(entry, "casimir", lower, entry.value, namespace)
    eigenvalue = None
    if "eigenvalue" in casimir_entries:
        entry = casimir_entries["eigenvalue"]
        eigenvalue = _located(entry, "casimir", lower_scalar, entry.value, namespace)

    functional = {
        e.key: _located(e, "functional_relations", lower, e.value, namespace)
        for e in sections.get("functional_relations", [])
    }
    references = {
        e.key: _located(e, "reference", lower, e.value, namespace)
        for e in sections.get("reference", [])
    }
    module_spec = None
    if "module" in sections:
        module_spec = _module_spec(sections["module"], namespace)

    presentation = Presentation(
        name=meta.get("name", "unnamed"),
        algebra=algebra,
        casimir=casimir,
        central=central,
        derived=derived,
        casimir_eigenvalue=eigenvalue,
        functional_relations=functional,
        module_spec=module_spec,
        references=references,
        description=meta.get("description", ""),
    )
    if validate:
        presentation.validate()
    logger.info("loaded presentation %s", presentation.name)
    return presentation


def _parameters(sections) -> tuple[list[Param], str]:
    params: list[Param] = []
    central = "H"
    for entry in sections["parameters"]:
        if entry.key not in PARAM_KINDS:
            raise ParseError(f"unknown parameter kind {entry.key!r}", entry.line, 1)
        names = entry.value.split()
        if entry.key == "central":
            if len(names) != 1:
                raise PresentationError("exactly one central parameter is supported")
            central = names[0]
        params.extend(Param(name, entry.key) for name in names)
    for entry in sections.get("radicals", []):
        base = int(entry.value) if entry.value.lstrip("-").isdigit() else entry.value
        params.append(Param(entry.key, "radical", base))
    return params, central


def _derived(entries, field) -> dict:
    """Expand derived parameters in dependency order."""
    trees = {}
    graph = nx.DiGraph()
    for entry in entries:
        if entry.key in field:
            raise PresentationError(f"derived {entry.key!r} shadows a parameter")
        trees[entry.key] = (entry, _located(entry, "derived", parse, entry.value))
        graph.add_node(entry.key)
    for name, (_, tree) in trees.items():
        for token in tree.scan_values(lambda t: isinstance(t, Token) and t.type == "NAME"):
            if str(token) in trees:
                graph.add_edge(str(token), name)
    try:
        ordered = list(nx.topological_sort(graph))
    except nx.NetworkXUnfeasible:
        cycle = [edge[0] for edge in nx.find_cycle(graph)]
        raise PresentationError(f"cyclic derived parameters: {cycle}") from None
    derived: dict = {}
    for name in ordered:
        entry, tree = trees[name]
        derived[name] = _located(
            entry, "derived", lower_scalar, tree, Namespace(field, None, derived)
        )
    return derived


def _weights(sections) -> dict[str, int]:
    weights = {}
    for entry in sections["weights"]:
        try:
            weights[entry.key] = int(entry.value)
        except ValueError:
            raise ParseError("weights must be integers", entry.line, 1) from None
    names = None
    for entry in sections.get("generators", []):
        if entry.key == "names":
            names = entry.value.split()
    if names is None:
        return weights
    if sorted(names) != sorted(weights):
        raise PresentationError(f"generators {names} and weights {list(weights)} differ")
    return {name: weights[name] for name in names}


def _bracket_pair(text: str, algebra) -> tuple[str, str]:
    tree = parse(text)
    if not (
        isinstance(tree, Tree)
        and tree.data == "commutator"
        and all(isinstance(c, Tree) and c.data == "ident" for c in tree.children)
    ):
        raise ParseError("relation keys must look like [g,h]")
    left, right = (str(c.children[0]) for c in tree.children)
    for name in (left, right):
        if name not in algebra.generators:
            raise UnknownIdent(name, "relation key")
    return left, right


def _module_spec(entries, namespace) -> ModuleSpec:
    template: tuple[str, ...] = ()
    order: tuple[str, ...] = ()
    energy = "E"
    rules = {}
    for entry in entries:
        match entry.key:
            case "template":
                template = tuple(entry.value.split())
            case "order":
                order = tuple(entry.value.split())
            case "energy":
                energy = entry.value
            case _:
                if entry.key not in namespace.algebra.generators:
                    raise UnknownIdent(entry.key, f"[module] line {entry.line}")
                rules[entry.key] = _located(entry, "module", lower, entry.value, namespace)
    if not template:
        raise PresentationError("[module] needs a template")
    return ModuleSpec(template, order or template, rules, energy)


def dump_presentation(presentation: Presentation) -> str:
    """Canonical ``.alg`` text of a presentation."""
    field = presentation.field
    lines = ["[presentation]", f"name = {presentation.name}"]
    if presentation.description:
        lines.append(f"description = {presentation.description}")
    lines += ["", "[parameters]"]
    for kind in PARAM_KINDS:
        names = [p.name for p in field.params.values() if p.kind == kind]
        if names:
            lines.append(f"{kind} = {' '.join(names)}")
    radicals = [p for p in field.params.values() if p.kind == "radical"]
    if radicals:
        lines += ["", "[radicals]"]
        lines += [f"{p.name} = {p.base}" for p in radicals]
    if presentation.derived:
        lines += ["", "[derived]"]
        lines += [f"{name} = {value}" for name, value in presentation.derived.items()]
    algebra = presentation.algebra
    lines += ["", "[generators]", f"names = {' '.join(algebra.order)}", "", "[weights]"]
    lines += [f"{name} = {algebra.generators[name].weight}" for name in algebra.order]
    lines += ["", "[relations]"]
    for i, left in enumerate(algebra.order):
        for right in algebra.order[i + 1 :]:
            lines.append(f"[{left},{right}] = {algebra.bracket(left, right)}")
    lines += ["", "[casimir]", f"element = {presentation.casimir}"]
    if presentation.casimir_eigenvalue is not None:
        lines.append(f"eigenvalue = {presentation.casimir_eigenvalue}")
    if presentation.functional_relations:
        lines += ["", "[functional_relations]"]
        lines += [f"{k} = {v}" for k, v in presentation.functional_relations.items()]
    spec = presentation.module_spec
    if spec is not None:
        lines += [
            "",
            "[module]",
            f"template = {' '.join(spec.template)}",
            f"order = {' '.join(spec.order)}",
            f"energy = {spec.energy}",
        ]
        lines += [f"{k} = {v}" for k, v in spec.base_rules.items()]
    if presentation.references:
        lines += ["", "[reference]"]
        lines += [f"{k} = {v}" for k, v in presentation.references.items()]
    return "\n".join(lines) + "\n"


def presentation_hash(presentation: Presentation) -> str:
    """SHA-256 of the canonical text."""
    return hashlib.sha256(dump_presentation(presentation).encode()).hexdigest()
