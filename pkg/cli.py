# cli.py
"""
Command-line entry point.

    python cli.py run <config|preset> [--out DIR] [--seed INT] [--shots INT]
                  [--readout-flip FLOAT] [--mode level|transition]
    python cli.py oracle <config|preset>
    python cli.py compare <config|preset>
    python cli.py preset-list

Exit codes: 0 success, 1 configuration/IO error or failed comparison,
2 anticommutation violation, 3 enumeration cap exceeded.
"""
import sys
from typing import List, Optional

import click
import pandas as pd

from main import compare, run_oracle, run_scenario
from src.config.scenario_config import ScenarioConfig, apply_overrides, load_scenario
from src.core.errors import LevelEngineError
from src.models.presets import PRESETS


def scenario_options(func):
    """Options shared by run, oracle and compare."""
    options = [
        click.argument("config"),
        click.option("--out", "out", type=click.Path(file_okay=False), default=None,
                      help="Output directory (default: <output_dir>/<scenario name>)."),
        click.option("--seed", type=int, default=None, help="Seed of the sampling streams."),
        click.option("--shots", type=click.IntRange(min=0), default=None,
                     help="Shots per grid point; 0 gives exact expectations."),
        click.option("--readout-flip", "readout_flip", type=float, default=None,
                     help="Independent readout bit-flip probability in [0, 0.5)."),
        click.option("--mode", type=click.Choice(["level", "transition"]), default=None,
                     help="Report energy levels (E = omega/2) or transition frequencies."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _load(config: str, out, seed, shots, readout_flip, mode) -> ScenarioConfig:
    return apply_overrides(load_scenario(config), out=out, seed=seed, shots=shots,
                           readout_flip=readout_flip, mode=mode)


def _echo_table(rows, columns) -> None:
    frame = pd.DataFrame(list(rows), columns=columns)
    click.echo(frame.to_string(index=False) if len(frame) else "(none)")


@click.group()
def cli():
    """Energy levels from the evolution of an anticommuting observable."""


@cli.command("run")
@scenario_options
def run_command(config, out, seed, shots, readout_flip, mode) -> int:
    """Simulate a scenario and extract its spectrum, peaks and levels."""
    summary = run_scenario(_load(config, out, seed, shots, readout_flip, mode))
    value = "energy" if summary["mode"] == "level" else "omega"
    click.echo(f"scenario {summary['scenario']} ({summary['mode']} mode, run {summary['run_id']})")
    _echo_table(({value: r["energy"], "height": r["height"]} for r in summary["levels"]),
                [value, "height"])
    return 0


@cli.command("oracle")
@scenario_options
def oracle_command(config, out, seed, shots, readout_flip, mode) -> int:
    """Enumerate the exact energy histogram."""
    rows = run_oracle(_load(config, out, seed, shots, readout_flip, mode))
    _echo_table(rows, ["energy", "degeneracy", "weight"])
    return 0


@cli.command("compare")
@scenario_options
def compare_command(config, out, seed, shots, readout_flip, mode) -> int:
    """Match detected levels against the oracle; exit 0 iff nothing is missed or spurious."""
    report = compare(_load(config, out, seed, shots, readout_flip, mode))
    click.echo(
        f"{report['scenario']}: {len(report['matched'])} matched, {len(report['missed'])} missed, "
        f"{len(report['spurious'])} spurious (tolerance {report['tolerance']:.4g})")
    claims = report["claimed_discrepancies"]
    if claims["claimed_not_in_oracle"] or claims["oracle_not_claimed"]:
        click.echo(
            f"claimed levels disagree with the oracle: claimed but absent "
            f"{claims['claimed_not_in_oracle']}, present but not claimed {claims['oracle_not_claimed']}")
    click.echo("PASSED" if report["passed"] else "FAILED")
    return 0 if report["passed"] else 1


@cli.command("preset-list")
def preset_list_command() -> int:
    """List the named scenarios."""
    for preset in PRESETS.values():
        click.echo(f"{preset.name:14s} {preset.description}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return the process exit code."""
    try:
        result = cli.main(args=argv, prog_name="level-engine", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        # exit code 2 is reserved for anticommutation violations
        return 1
    except click.Abort:
        click.echo("Aborted.", err=True)
        return 1
    except LevelEngineError as e:
        click.echo(f"error: {e}", err=True)
        return e.exit_code
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
