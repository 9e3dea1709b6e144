import logging
from typing import Optional, Tuple

import numpy as np

from commands.analysis_commands import AnalysisCommands
from commands.graph_commands import GraphCommands
from config import ZycloneConfig
from errors import BudgetExhausted, ZycloneError
from zycle_search import SearchBudget

logger = logging.getLogger(__name__)


class ZycloneEngine:
    """
    Core engine that dispatches zyclone subcommands and turns failures into exit codes.

    Every handler returns (exit_code, stdout, stderr).
    """

    def __init__(self, config: Optional[ZycloneConfig] = None, seed: Optional[int] = None):
        self.config = config or ZycloneConfig.from_env()
        self.seed = seed

        # Initialize command modules
        self.graph_commands = GraphCommands(self)
        self.analysis_commands = AnalysisCommands(self)

        self.subcommands = {
            'gen': self.graph_commands.gen,
            'stats': self.graph_commands.stats,
            'export': self.graph_commands.export,
            'search': self.analysis_commands.search,
            'exco': self.analysis_commands.exco,
            'verify': self.analysis_commands.verify,
        }

    @property
    def jobs(self) -> int:
        return self.config.jobs

    def budget(self, deterministic: bool = True) -> SearchBudget:
        return SearchBudget(node_limit=self.config.budget_nodes,
                            time_limit=self.config.budget_seconds,
                            deterministic=deterministic)

    def resolve_seed(self) -> int:
        """The --seed value, or a fresh one that is logged so the run can be repeated."""
        if self.seed is None:
            self.seed = int(np.random.SeedSequence().entropy % (2 ** 32))
            logger.warning("no --seed given; using seed %d", self.seed)
        return self.seed

    def execute(self, name: str, **options) -> Tuple[int, str, str]:
        """Run one subcommand; diagnostics are single lines prefixed with its name."""
        handler = self.subcommands.get(name)
        if handler is None:
            return 2, "", f"zyclone: unknown subcommand '{name}'"
        try:
            return handler(**options)
        except BudgetExhausted as exc:
            return 3, "", f"{name}: {exc}"
        except FileNotFoundError as exc:
            return 2, "", f"{name}: no such file: {exc.filename}"
        except OSError as exc:
            return 2, "", f"{name}: {exc.strerror or exc}"
        except (ZycloneError, ValueError, KeyError) as exc:
            message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
            return 2, "", f"{name}: {message}"
