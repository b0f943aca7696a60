"""Linha de comando ``gauge-lattice``.

Cada subcomando é um adaptador fino sobre ``app.services.query_service``:
JSON estável em stdout, logs em stderr, código de saída 0/1/2.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import structlog

from app.core.logging import configure_logging
from app.domain import corpus
from app.domain.errors import GaugeLatticeError, InvalidInput
from app.domain.graph_model import Graph, parse_graph
from app.domain.ideal_structure import Pair, pair_from_document, vertex_set_from_document
from app.services import query_service as qs
from app.services.query_service import CommandResult

log = structlog.get_logger()

CORPUS_PREFIX = "corpus:"


class _Parser(argparse.ArgumentParser):
    # erro de uso é entrada inválida (saída 1), não o 2 padrão do argparse
    def error(self, message: str):  # type: ignore[override]
        raise InvalidInput("invalid_arguments", message)


# ---- leitura de entradas ----
def _read_text(value: str, what: str) -> str:
    stripped = value.strip()
    if stripped.startswith(("{", "[")):
        return stripped
    path = Path(value)
    if not path.is_file():
        raise InvalidInput(f"{what}_not_found", f"no such file: {value}", {"path": value})
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InvalidInput(
            "invalid_document", f"{value} is not valid UTF-8", {"path": value, "offset": e.start}
        )
    except OSError as e:
        raise InvalidInput(
            f"{what}_unreadable", f"cannot read {value}: {e.strerror}", {"path": value}
        )


def load_graph(value: str) -> Graph:
    if value.startswith(CORPUS_PREFIX):
        return corpus.named_graph(value[len(CORPUS_PREFIX):])
    return parse_graph(_read_text(value, "graph_file"))


def load_pair(g: Graph, value: str) -> Pair:
    return pair_from_document(g, _read_text(value, "pair_file"))


def load_vertex_set(g: Graph, value: str) -> List[str]:
    return sorted(vertex_set_from_document(g, _read_text(value, "vertex_set_file")))


def _format(args: argparse.Namespace) -> str:
    return getattr(args, "format", None) or "json"


# ---- subcomandos ----
def cmd_check(args: argparse.Namespace) -> CommandResult:
    def run():
        if args.graph.startswith(CORPUS_PREFIX):
            named = corpus.named_graph(args.graph[len(CORPUS_PREFIX):])
            return qs.check_graph(named.to_document().model_dump())
        return qs.check_graph(_read_text(args.graph, "graph_file"))

    return qs.execute(run)


def cmd_lattice(args: argparse.Namespace) -> CommandResult:
    def run():
        g = load_graph(args.graph)
        return qs.lattice_dot(g) if _format(args) == "dot" else qs.lattice_payload(g)

    return qs.execute(run)


def _pairs(args: argparse.Namespace, g: Graph) -> List[Pair]:
    return [load_pair(g, raw) for raw in args.pair or []]


def cmd_meet(args: argparse.Namespace) -> CommandResult:
    def run():
        g = load_graph(args.graph)
        return qs.meet_payload(g, _pairs(args, g), verify=args.verify)

    return qs.execute(run)


def cmd_join(args: argparse.Namespace) -> CommandResult:
    def run():
        g = load_graph(args.graph)
        return qs.join_payload(g, _pairs(args, g), verify=args.verify)

    return qs.execute(run)


def cmd_morphism(args: argparse.Namespace) -> CommandResult:
    def run():
        g = load_graph(args.graph)
        if args.kernel is not None:
            # direção oposta: maior covariância com kernel dado que ainda mapeia em --to
            if args.to is None:
                raise InvalidInput("invalid_arguments", "--kernel requires --to")
            return qs.max_covariance_payload(
                g, load_vertex_set(g, args.kernel), load_pair(g, args.to)
            )
        if args.source is None or args.to_kernel is None:
            raise InvalidInput("invalid_arguments", "--from and --to-kernel are required")
        return qs.morphism_payload(
            g, load_pair(g, args.source), load_vertex_set(g, args.to_kernel)
        )

    return qs.execute(run)


def cmd_dilate(args: argparse.Namespace) -> CommandResult:
    def run():
        g = load_graph(args.graph)
        p = load_pair(g, args.pair)
        return qs.dilate_dot(g, p) if _format(args) == "dot" else qs.dilate_payload(g, p)

    return qs.execute(run)


def cmd_realize(args: argparse.Namespace) -> CommandResult:
    def run():
        g = load_graph(args.graph)
        return qs.realize_payload(g, load_pair(g, args.pair), verify=args.verify)

    return qs.execute(run)


def cmd_fock(args: argparse.Namespace) -> CommandResult:
    def run():
        return qs.fock_payload(load_graph(args.graph), args.truncate, verify=args.verify)

    return qs.execute(run)


def cmd_corpus(args: argparse.Namespace) -> CommandResult:
    return qs.execute(qs.corpus_payload, args.name)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gauge-lattice",
        description="Kernel-covariance pairs of finite graph correspondences.",
    )
    parser.add_argument("--format", choices=["json", "dot"], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(
        name: str, func: Callable, summary: str, graph: bool = True
    ) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=summary)
        if graph:
            p.add_argument("graph", help="Graph JSON file, inline JSON or corpus:<name>.")
        p.set_defaults(func=func)
        return p

    command("check", cmd_check, "Validate a graph document.")

    p = command("lattice", cmd_lattice, "Enumerate all kernel-covariance pairs.")
    p.add_argument("--format", choices=["json", "dot"], default=argparse.SUPPRESS)

    for name, func in (("meet", cmd_meet), ("join", cmd_join)):
        p = command(name, func, f"{name.capitalize()} of one or more pairs.")
        p.add_argument("--pair", action="append", help="Pair JSON (inline or file). Repeatable.")
        p.add_argument("--verify", action="store_true", help="Compare with the brute-force oracle.")

    p = command("morphism", cmd_morphism, "Connecting morphism between pairs.")
    p.add_argument("--from", dest="source", help="Source pair JSON.")
    p.add_argument("--to-kernel", dest="to_kernel", help="Target kernel as a JSON list.")
    p.add_argument("--kernel", help="Source kernel as a JSON list (max-covariance direction).")
    p.add_argument("--to", help="Target pair JSON (max-covariance direction).")

    p = command("dilate", cmd_dilate, "Katsura dilation of a pair.")
    p.add_argument("--pair", required=True)
    p.add_argument("--format", choices=["json", "dot"], default=argparse.SUPPRESS)

    p = command("realize", cmd_realize, "Finite-dimensional relative Cuntz-Pimsner algebra.")
    p.add_argument("--pair", required=True)
    p.add_argument("--verify", action="store_true", help="Also check kernel/covariance recovery.")

    p = command("fock", cmd_fock, "Fock representation relation report.")
    p.add_argument("--truncate", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="Also run the embedding check.")

    p = command("corpus", cmd_corpus, "List the worked-example graphs.", graph=False)
    p.add_argument("--name", default=None)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except GaugeLatticeError as e:
        return CommandResult(status=qs.STATUS_INVALID, payload={"error": e.to_payload()})
    log.debug("cli_command", command=args.command)
    return args.func(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    result = run(argv)
    sys.stdout.write(result.render())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
