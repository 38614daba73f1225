from pathlib import Path
from typing import Any, Optional, Sequence, Union

from freemax.managers.convergence_manager import ConvergenceManager
from freemax.objects.distributions.catalog_entry import CatalogEntry
from freemax.objects.evd.gap_check import GapCheck
from freemax.objects.evd.u_gap_check import UGapCheck
from freemax.objects.factories.catalog_factory import CatalogFactory
from freemax.objects.factories.convergence_report_factory import ConvergenceReportFactory
from freemax.objects.factories.experiment_config_factory import ExperimentConfigFactory
from freemax.objects.free_powers.free_power import FreePower
from freemax.objects.free_powers.support_window import SupportWindow
from freemax.objects.norming.norming_pair import NormingPair
from freemax.objects.reports.convergence_report import ConvergenceReport
from freemax.objects.reports.von_mises_report import VonMisesReport
from freemax.objects.reports.witness_result import WitnessResult
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver
from freemax.services.evd_service import EvdService
from freemax.services.free_max_convolution_service import FreeMaxConvolutionService
from freemax.services.norming_service import NormingService
from freemax.services.report_writer_service import ReportWriterService
from freemax.services.von_mises_service import VonMisesService


class FreeMax:
    def __init__(self, worker_count: Optional[int] = None):
        self._convergence_manager = ConvergenceManager(worker_count)

    @staticmethod
    def catalog() -> list[CatalogEntry]:
        return [
            CatalogFactory.create(name, DistributionNameResolver.default_parameters(name))
            for name in CatalogFactory.names()
        ]

    @staticmethod
    def entry(name: str, params: Sequence[float] = ()) -> CatalogEntry:
        return CatalogFactory.create(name, params)

    def norming(self, name: str, params: Sequence[float], n: int) -> NormingPair:
        return NormingService.norming(self.entry(name, params), n)

    def density(self, name: str, params: Sequence[float], n: int, x: float) -> tuple[float, SupportWindow]:
        entry = self.entry(name, params)
        free_power = FreePower(base=entry.spec, n=n, norming=NormingService.norming(entry, n))
        window = FreeMaxConvolutionService.support_window(free_power)
        return FreeMaxConvolutionService.density_wn(free_power, x, window), window

    def von_mises(self, name: str, params: Sequence[float], x_grid: Sequence[float], n_grid: Sequence[int], auto_envelope: bool = False) -> VonMisesReport:
        return VonMisesService.check_membership(self.entry(name, params), n_grid, x_grid, auto_envelope)

    @staticmethod
    def frechet_gap(alpha1: float, alpha2: float) -> GapCheck:
        return EvdService.frechet_gap_bound(alpha1, alpha2)

    @staticmethod
    def x_weighted_gap(beta1: float, beta2: float) -> GapCheck:
        return EvdService.x_weighted_gap_bound(beta1, beta2)

    @staticmethod
    def u_gap(a: float) -> UGapCheck:
        return EvdService.u_gap_bound(a)

    def sandwich(self, name: str, params: Sequence[float], n: int, x_grid: Sequence[float]) -> bool:
        return EvdService.sandwich_check(self.entry(name, params), n, x_grid)

    def converge(self, experiment_config: dict[str, Any]) -> ConvergenceReport:
        return self._convergence_manager.run_experiment(ExperimentConfigFactory.create(experiment_config))

    def boundary_gap(self, name: str, params: Sequence[float], n: int) -> float:
        return self._convergence_manager.boundary_gap(self.entry(name, params), n)

    def witness(self, alpha: float, n: int) -> WitnessResult:
        return self._convergence_manager.nonconvergence_witness(alpha, n)

    @staticmethod
    async def write_report(report: ConvergenceReport, prefix: Union[str, Path]) -> list[Path]:
        return await ReportWriterService.write_report(report, prefix)

    @staticmethod
    async def load_report(csv_path: Union[str, Path], json_path: Union[str, Path]) -> ConvergenceReport:
        return await ConvergenceReportFactory.from_files(csv_path, json_path)
