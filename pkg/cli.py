"""
Exécutable SegalBench.

    python cli.py check atelier.sb
    python cli.py run atelier.sb --format csv --pbound 2 --qbound 2
    python cli.py verify-paper --seed 0

Codes de sortie: 0 succès, 1 propriété vérifiée en échec, 2 erreur
d'usage ou d'analyse.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from config.settings import Settings
from core.dsl.workspace import Bounds
from core.services.workbench_service import WorkbenchService

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

logger = logging.getLogger(__name__)


def _non_negative(raw: str) -> int:
    value = int(raw)
    if value < 0:
        raise argparse.ArgumentTypeError("entier >= 0 attendu")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segalbench", description="Atelier d'ensembles (bi)simpliciaux marqués")
    parser.add_argument("--log-level", default=Settings.LOG_LEVEL, help="Niveau de journalisation (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Analyse un atelier sans l'exécuter")
    check.add_argument("file", type=Path)

    run = sub.add_parser("run", help="Exécute les commandes d'un atelier")
    run.add_argument("file", type=Path)

    verify = sub.add_parser("verify-paper", help="Exécute les fixtures de recette")
    verify.add_argument("--seed", type=int, default=Settings.SEED)
    verify.add_argument("--fixture", type=int, action="append", dest="fixtures", help="Fixture à exécuter (répétable)")

    for command in (check, run, verify):
        command.add_argument("--pbound", type=_non_negative, default=Settings.DEFAULT_PBOUND)
        command.add_argument("--qbound", type=_non_negative, default=Settings.DEFAULT_QBOUND)
        command.add_argument("--jtrunc", type=_non_negative, default=Settings.J_TRUNCATION)
    for command in (run, verify):
        command.add_argument("--format", choices=Settings.OUTPUT_FORMATS, default=Settings.OUTPUT_FORMAT)
        command.add_argument("--output", type=Path, help="Fichier de sortie (défaut: stdout)")
    return parser


def _emit(content: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(content)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(content, encoding="utf-8")
    logger.info(f"Rapport écrit: {output}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")

    bounds = Bounds(args.pbound, args.qbound, args.jtrunc)
    try:
        service = WorkbenchService(bounds, getattr(args, "format", None))
    except ValueError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    if args.command == "verify-paper":
        result = service.verify_paper(args.seed, args.fixtures)
        if not result["success"]:
            sys.stderr.write(f"erreur: {result['error']}\n")
            return EXIT_USAGE
        _emit(result["content"], args.output)
        return EXIT_OK if result["ok"] else EXIT_FAILED

    try:
        text = service.load_text(str(args.file))
    except (OSError, ValueError) as e:
        sys.stderr.write(f"erreur: {e}\n")
        return EXIT_USAGE

    if args.command == "check":
        result = service.check_text(text)
        if not result["success"]:
            sys.stderr.write(f"{args.file}: {result['error']}\n")
            return EXIT_USAGE
        sys.stdout.write(f"ok: {result['bindings']} liaisons, {result['commands']} commandes\n")
        return EXIT_OK

    result = service.run_text(text)
    if not result["success"]:
        sys.stderr.write(f"{args.file}: {result['error']}\n")
        return EXIT_USAGE
    _emit(result["content"], args.output)
    return EXIT_OK if result["ok"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
