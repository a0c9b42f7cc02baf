# src/managers/flow/handlers/scenario_handler.py

import time

from src.analysis.plotting import render_spectrum_svg
from src.analysis.spectral import (
    default_omega_max, dft, find_peaks, level_bounds, peaks_to_levels,
)
from src.config.scenario_config import Scenario
from src.core.data_types import LevelRow, RunSummary
from src.managers.flow.handlers.base_handler import (
    BaseHandler, LEVEL_COLUMNS, LEVELS_FILE, PEAK_COLUMNS, PEAKS_FILE, PLOT_FILE,
    SPECTRUM_COLUMNS, SPECTRUM_FILE, SUMMARY_FILE, TIMESERIES_COLUMNS, TIMESERIES_FILE,
)
from src.quantum.protocol import ProtocolRun, measure_series


class ScenarioHandler(BaseHandler):
    """
    Handler for the full pipeline: simulate the protocol sweep, transform,
    read peaks and write the run artifacts.
    """

    def run(self, scenario: Scenario, run_id: str) -> RunSummary:
        """
        Execute one scenario.

        Args:
            scenario: Resolved scenario
            run_id: Identifier recorded in the summary

        Returns:
            RunSummary, also written as run_summary.json

        Raises:
            AnticommutationError: level mode with an observable that does not anticommute with H
        """
        started = time.perf_counter()
        self.logger.info(
            f"Running scenario '{scenario.name}': H = {scenario.hamiltonian.describe()}, "
            f"A = {scenario.observable.label}, tau = {scenario.grid.tau:.6g}, N = {scenario.grid.big_n}")

        run = ProtocolRun(scenario.hamiltonian, scenario.observable, scenario.grid,
                          scenario.noise, mode=scenario.mode)
        series = measure_series(run, n_jobs=self.n_jobs)

        settings = scenario.spectral
        omega_max = default_omega_max(scenario.grid.tau, settings.omega_step, settings.omega_max)
        spectrum = dft(series, -omega_max, omega_max, settings.omega_step,
                       normalize=settings.normalize, window=settings.window)
        peaks = find_peaks(spectrum, settings.threshold_fraction, settings.min_separation,
                           kind=scenario.mode)
        levels = peaks_to_levels(peaks, scenario.mode)
        self.logger.info(
            f"Detected {len(peaks)} peaks at omega = {[round(p.omega, 4) for p in peaks]}")

        am = self.artifact_manager
        am.write_table(TIMESERIES_FILE, series.to_rows(), TIMESERIES_COLUMNS)
        am.write_table(SPECTRUM_FILE, spectrum.to_rows(), SPECTRUM_COLUMNS)
        am.write_table(PEAKS_FILE, peaks.to_rows(), PEAK_COLUMNS)
        am.write_table(LEVELS_FILE, [LevelRow(energy=v, height=h) for v, h in levels],
                       LEVEL_COLUMNS)
        if scenario.plot:
            am.write_text(PLOT_FILE, render_spectrum_svg(
                spectrum, peaks, title=f"{scenario.name}: Re A(ω)"))

        summary = RunSummary(
            scenario=scenario.name,
            run_id=run_id,
            mode=scenario.mode,
            num_spins=scenario.hamiltonian.num_spins,
            observable=scenario.observable.sorted_qubits,
            tau=scenario.grid.tau,
            big_n=scenario.grid.big_n,
            shots=scenario.noise.shots,
            readout_flip_prob=scenario.noise.readout_flip_prob,
            seed=scenario.noise.seed,
            window=spectrum.window,
            peaks=peaks.to_rows(),
            levels=[LevelRow(energy=v, height=h) for v, h in levels],
            level_bounds=level_bounds(levels),
            elapsed_s=round(time.perf_counter() - started, 3),
        )
        am.write_json(SUMMARY_FILE, dict(summary))
        self.logger.info(f"Scenario '{scenario.name}' finished in {summary['elapsed_s']}s")
        return summary
