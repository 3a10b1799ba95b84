# Python
import os
import sys
import json
import logging
from pathlib import Path
from argparse import ArgumentParser, Namespace
from typing import Optional

# 3rd Party
import jsons
from omegaconf import OmegaConf, SCMode
from omegaconf.errors import OmegaConfBaseException

# 1st Party
from src.optimal_cur_base import OptimalCurBase
from src.cur_processing_config import Settings, BenchSuite
from src.cli import ProgressItemGeneratorCLI, ExitCode
from src.developer_options import DeveloperOptions
from src.linalg.dataclasses_and_types import CurArgumentError, NumericalFailureError, InvariantViolationError


# Command-line spelling -> enum member name
VARIANTS = {
    "linear": "Linear",
    "sparse": "Sparse",
    "deterministic": "Deterministic",
}

FIDELITIES = {
    "paper": "Paper",
    "heuristic": "Heuristic",
}

DEFAULT_OUT_DIR = "./optimal_cur_output"


class OptimalCurCommandLineInterface():
    """ OptimalCur's command-line interface.

    Operates in a 'one-shot' fashion: one subcommand per call. Decomposition settings come from an optional .yaml file
    that is merged over the CurConfig schema via OmegaConf, and the command-line flags are merged last, so a flag always
    wins over the file.
    """

    def __init__(self) -> None:
        self.parser = self._create_command_lineparser()


    def run(self, incoming_arguments: list[str]) -> ExitCode:
        parsed_arguments = self.parser.parse_args(incoming_arguments)

        if parsed_arguments.command == "decompose":
            self._decompose(parsed_arguments)
        elif parsed_arguments.command == "verify":
            self._verify(parsed_arguments)
        elif parsed_arguments.command == "gen-adversarial":
            self._generate_adversarial(parsed_arguments)
        elif parsed_arguments.command == "bench":
            self._bench(parsed_arguments)

        return ExitCode.Success


    def _create_command_lineparser(self) -> ArgumentParser:
        parser = ArgumentParser(prog="optimal_cur", description="Relative-error CUR matrix decompositions")
        parser.add_argument('--version', action='version', version=f'OptimalCur {DeveloperOptions.version}')

        subparsers = parser.add_subparsers(dest="command", required=True)

        # Immediately convert path arguments into absolute pathlib.Paths
        to_path = lambda p: Path(p).absolute()

        decompose = subparsers.add_parser("decompose", help="Compute C, U and R for a Matrix Market input")
        decompose.add_argument("--input", type=to_path, help="Matrix Market file holding A")
        decompose.add_argument("--rank", type=int, help="Target rank k")
        decompose.add_argument("--epsilon", type=float, help="Accuracy parameter in (0, 1]")
        decompose.add_argument("--variant", choices=list(VARIANTS))
        decompose.add_argument("--seed", type=int)
        decompose.add_argument("--trials", type=int)
        decompose.add_argument("--fidelity", choices=list(FIDELITIES))
        decompose.add_argument("--out-dir", type=to_path, default=None)
        decompose.add_argument("--settings", type=to_path, default=None, help="Settings .yaml, see settings-example.yaml")
        decompose.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                               help="Dotted settings override, e.g. decomposition.constants.c1=12")

        verify = subparsers.add_parser("verify", help="Re-evaluate a decomposition written by 'decompose'")
        verify.add_argument("--input", type=to_path, required=True)
        verify.add_argument("--decomposition", type=to_path, required=True)
        verify.add_argument("--rank", type=int, default=None, help="Defaults to the rank in the decomposition's report")

        adversarial = subparsers.add_parser("gen-adversarial", help="Write the lower-bound instance")
        adversarial.add_argument("--n", type=int, required=True, help="Block width, at least 2")
        adversarial.add_argument("--k", type=int, required=True)
        adversarial.add_argument("--alpha", type=float, default=1e-10)
        adversarial.add_argument("--out", type=to_path, required=True, help="Matrix Market file to write")

        bench = subparsers.add_parser("bench", help="Run a suite of decompositions")
        bench.add_argument("--suite", type=to_path, required=True, help="Bench suite .yaml")
        bench.add_argument("--out-dir", type=to_path, default=None)

        return parser


    def _default_out_dir(self, out_dir: Optional[Path]) -> Path:
        if out_dir is not None:
            return out_dir
        return Path(os.environ.get(DeveloperOptions.out_dir_environment_variable, DEFAULT_OUT_DIR)).absolute()


    def _command_line_overrides(self, parsed_arguments: Namespace) -> list[str]:
        overrides = []

        if parsed_arguments.input is not None:
            overrides.append(f"data.path_to_input={parsed_arguments.input}")
        if parsed_arguments.out_dir is not None:
            overrides.append(f"data.path_to_output={parsed_arguments.out_dir}")

        for flag in ("rank", "epsilon", "seed", "trials"):
            value = getattr(parsed_arguments, flag)
            if value is not None:
                overrides.append(f"decomposition.{flag}={value!r}")

        if parsed_arguments.variant is not None:
            overrides.append(f"decomposition.variant={VARIANTS[parsed_arguments.variant]}")
        if parsed_arguments.fidelity is not None:
            overrides.append(f"decomposition.fidelity={FIDELITIES[parsed_arguments.fidelity]}")

        return overrides + parsed_arguments.overrides


    def _read_settings(self, path_to_settings_file: Optional[Path], overrides: list[str], out_dir: Path) -> Settings:
        omegaconf_settings_schema = OmegaConf.structured(Settings)
        omegaconf_settings_schema.data.path_to_output = str(out_dir)

        layers = [omegaconf_settings_schema]
        if path_to_settings_file is not None:
            layers.append(OmegaConf.load(path_to_settings_file))
        layers.append(OmegaConf.from_dotlist(overrides))

        validated_settings = OmegaConf.merge(*layers)

        # Turn dict-like structure into dataclass object
        settings = OmegaConf.to_container(validated_settings, structured_config_mode=SCMode.INSTANTIATE)

        return settings


    def _read_bench_suite(self, path_to_suite_file: Path) -> BenchSuite:
        omegaconf_suite_schema = OmegaConf.structured(BenchSuite)
        suite_from_disk = OmegaConf.load(path_to_suite_file)

        validated_suite = OmegaConf.merge(omegaconf_suite_schema, suite_from_disk)
        return OmegaConf.to_container(validated_suite, structured_config_mode=SCMode.INSTANTIATE)


    def _decompose(self, parsed_arguments: Namespace):
        overrides = self._command_line_overrides(parsed_arguments)
        settings = self._read_settings(parsed_arguments.settings, overrides, self._default_out_dir(None))

        optimal_cur = OptimalCurBase(settings.data.path_to_output)
        optimal_cur.decompose(settings, ProgressItemGeneratorCLI())


    def _verify(self, parsed_arguments: Namespace):
        optimal_cur = OptimalCurBase(parsed_arguments.decomposition)
        evaluation = optimal_cur.verify(parsed_arguments.input, parsed_arguments.decomposition, parsed_arguments.rank)

        print(json.dumps(jsons.dump(evaluation), indent=4))


    def _generate_adversarial(self, parsed_arguments: Namespace):
        optimal_cur = OptimalCurBase(parsed_arguments.out.parent)
        optimal_cur.generate_adversarial(parsed_arguments.n, parsed_arguments.k, parsed_arguments.alpha,
                                         parsed_arguments.out)


    def _bench(self, parsed_arguments: Namespace):
        suite = self._read_bench_suite(parsed_arguments.suite)

        optimal_cur = OptimalCurBase(self._default_out_dir(parsed_arguments.out_dir))
        summary = optimal_cur.bench(suite, ProgressItemGeneratorCLI())

        logging.info(f"Bench finished: {summary.within_guarantee} of {len(summary.entries)} entries within guarantee, "
                     f"{summary.failed} failed")


def main(incoming_arguments: list[str]) -> int:
    """ Runs one subcommand and maps the outcome onto the process exit code. """
    try:
        exit_code = OptimalCurCommandLineInterface().run(incoming_arguments)
    except SystemExit as parser_exit:
        # argparse: --help / --version exit with 0, malformed arguments with 2
        return parser_exit.code if isinstance(parser_exit.code, int) else ExitCode.ArgumentError.value
    except (CurArgumentError, OmegaConfBaseException) as error:
        exit_code = ExitCode.ArgumentError
        logging.error(f"{exit_code.text}: {error}")
    except (NumericalFailureError, InvariantViolationError) as error:
        exit_code = ExitCode.NumericalFailure
        logging.error(f"{exit_code.text}: {error}")

    return exit_code.value


if __name__ == "__main__":

    incoming_parameters = sys.argv[1:]

    # Debug/Test overrides
    # incoming_parameters = ["-h"]
    # incoming_parameters = ["--version"]
    # incoming_parameters = ["gen-adversarial", "--n", "4", "--k", "2", "--out", "adversarial.mtx"]
    # incoming_parameters = ["decompose", "--input", "adversarial.mtx", "--rank", "2", "--epsilon", "1"]

    sys.exit(main(incoming_parameters))
