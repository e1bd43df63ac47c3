import argparse
import logging
import os
import sys

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from forcinglab.commons import setup_logging
from forcinglab.errors import InputError
from forcinglab.renderer import Renderer, get_renderer
from forcinglab.runner import Runner

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")


def build_parser() -> argparse.ArgumentParser:
    # absent flags stay out of the namespace so they never shadow config-file values
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    shared.add_argument("--config", help="YAML file merged over the default run configuration")
    shared.add_argument("--poset", help="Poset file or built-in name (chain2, anti2, tree3, tree7)")
    shared.add_argument("--valuation", help="Valuation file or built-in name (vt)")
    shared.add_argument("--cap", type=int, help="Exhaustion cap (name cap for `hierarchy`)")
    shared.add_argument("--seed", type=int, help="Seed for sampled corpora")
    shared.add_argument("--format", choices=["text", "doc"], help="Report format")
    shared.add_argument("--regularize", action="store_true", help="Apply X -> X'' to valuation inputs")

    parser = argparse.ArgumentParser(
        prog="forcinglab",
        description="Finite-scale laboratory for abstract forcing",
        parents=[shared],
        argument_default=argparse.SUPPRESS,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, summary: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, help=summary, parents=[shared], argument_default=argparse.SUPPRESS)

    command("algebra", "List the regular-open algebra of a poset")

    sub = command("check-byrne", "Check Byrne's axioms on the algebra of a poset")
    sub.add_argument("--laws", action="store_true", help="Also check the Boolean laws exhaustively")

    command("separative", "Check separativity and the embedding p -> p's down-set")

    sub = command("generic", "Enumerate D-generic filters; build one through a point")
    sub.add_argument("--dense-file", "--dense", dest="dense", help='Dense-family file, or "all" for every dense set')
    sub.add_argument("--at", help="Point for the Rasiowa-Sikorski construction")

    sub = command("eval", "Boolean value of a sentence")
    sub.add_argument("--formula", help="Sentence in the forcing language")

    sub = command("forces", "Does a point force a sentence")
    sub.add_argument("--at", help="Forcing condition")
    sub.add_argument("--formula", help="Sentence in the forcing language")
    sub.add_argument("--semantic", action="store_true", help="Quantify over generic filters instead")

    sub = command("verify", "Verify the forcing, truth and quantifier lemmas")
    sub.add_argument("target", choices=["lemmas"])
    sub.add_argument("--formulas", help="Formula list (document or .txt, one per line)")
    sub.add_argument("--formula", help="A single sentence")

    sub = command("collapse", "Least quasi-extensional collapse of an eps-structure")
    sub.add_argument("--input", help="Eps-structure file or built-in name (ea, eb, eq)")
    sub.add_argument("--greatest", action="store_true", help="Also show the greatest bisimulation")

    sub = command("hierarchy", "Build the full name hierarchy up to a stage")
    sub.add_argument("--stages", type=int, help="Top stage")

    sub = command("power-check", "Evaluate the power-set axiom at a name")
    sub.add_argument("--input", help="Name-system file or built-in name (ns2)")
    sub.add_argument("--name", help="Name id")
    sub.add_argument("--subset-mode", choices=["membership", "subname"], help="Reading of the subset relation")

    sub = command("corpus", "Generate posets or eps-structures of a given size")
    sub.add_argument("--kind", choices=["posets", "eps"], help="Structure kind")
    sub.add_argument("--size", type=int, help="Number of points or nodes")
    sub.add_argument("--samples", type=int, help="Sample count above the exhaustive size")

    return parser


def dispatch(args: argparse.Namespace, renderer: Renderer | None = None) -> int:
    renderer = renderer or get_renderer()
    overrides = vars(args).copy()
    overrides.pop("verbose", None)
    config_path = overrides.pop("config", None)
    try:
        layers = [OmegaConf.load(DEFAULT_CONFIG)]
        if config_path is not None:
            if not os.path.isfile(config_path):
                raise InputError(f"no such file: {config_path}")
            layers.append(OmegaConf.load(config_path))
        runner = Runner(*layers, overrides, renderer=renderer)
    except (InputError, OmegaConfBaseException) as e:
        renderer.error(f"invalid configuration: {e}")
        return InputError.exit_code
    return runner.run()


def run_command(argv: list[str], renderer: Renderer | None = None) -> int:
    """Parse and dispatch without touching logging."""
    return dispatch(build_parser().parse_args(argv), renderer)


def main(argv: list[str] | None = None):
    args = build_parser().parse_args(argv)
    setup_logging(verbose=getattr(args, "verbose", False))
    logger.debug(f"Running {args.command}")
    sys.exit(dispatch(args))


if __name__ == "__main__":
    main()
