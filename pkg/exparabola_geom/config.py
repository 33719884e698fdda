"""
Run configuration for the command-line tools.

Library functions take explicit tolerances with module-level defaults; this
module only collects the knobs the CLI exposes so they can be kept in a JSON
file next to the project (see exparabola_config.json).
"""

from dataclasses import asdict, dataclass, fields
import json
import logging
from typing import Any, Dict, Optional

from exparabola_geom.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "exparabola_config.json"


@dataclass
class ToleranceConfig:
    """
    Configuration shared by the CLI subcommands.

    Attributes:
        tol: Convergence tolerance for the limit hexagon (--tol)
        seed: Seed of the random sampler used by verify (--seed)
        trials: Number of random samples per invariant (--trials)
        iteration_cap: Maximum number of focal-triangle steps
        blowup_tolerance: Relative drift of circumcircle or orthocenter that aborts iteration
        max_side_ratio: Sampler rejects triangles with longest side / shortest side above this
        svg_size: Pixel width of rendered figures
        svg_margin: Relative viewBox margin
        arc_padding: Parameter range added on both sides of the tangency points when drawing arcs
    """
    tol: float = 1e-9
    seed: int = 0
    trials: int = 1000
    iteration_cap: int = 200
    blowup_tolerance: float = 1e-6
    max_side_ratio: float = 50.0
    svg_size: int = 600
    svg_margin: float = 0.05
    arc_padding: float = 0.35

    def validate(self) -> bool:
        """Validate the configuration."""
        if not 0 < self.tol < 1:
            return False
        if self.trials < 1 or self.iteration_cap < 1:
            return False
        if self.seed < 0:
            return False
        if not 0 < self.blowup_tolerance < 1:
            return False
        if self.max_side_ratio <= 1:
            return False
        if self.svg_size <= 0 or not 0 <= self.svg_margin < 0.5:
            return False
        if self.arc_padding < 0:
            return False
        return True

    def updated(self, **overrides: Any) -> 'ToleranceConfig':
        """Return a copy with the non-None overrides applied."""
        data = asdict(self)
        data.update({key: value for key, value in overrides.items() if value is not None})
        return ToleranceConfig(**data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ToleranceConfig':
        """
        Build a configuration from a mapping.

        Args:
            data: Mapping with a subset of the configuration fields

        Returns:
            ToleranceConfig with defaults for the missing fields

        Raises:
            ConfigError: on unknown keys or invalid values
        """
        known = {f.name: f.type for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")

        try:
            values = {}
            for key, value in data.items():
                values[key] = int(value) if key in ("seed", "trials", "iteration_cap",
                                                    "svg_size") else float(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid configuration value: {e}") from e

        config = cls(**values)
        if not config.validate():
            raise ConfigError(f"Configuration out of range: {config}")
        return config

    @classmethod
    def load(cls, config_file: str) -> 'ToleranceConfig':
        """
        Load configuration from JSON file.

        Args:
            config_file: Path to configuration file

        Returns:
            Loaded configuration
        """
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Failed to load config {config_file}: {e}") from e

        if not isinstance(data, dict):
            raise ConfigError(f"Config {config_file} must contain a JSON object")

        logger.debug("Loaded configuration from %s", config_file)
        return cls.from_dict(data)

    def save(self, config_file: str) -> None:
        """
        Save configuration to JSON file.

        Args:
            config_file: Path to configuration file
        """
        with open(config_file, 'w', encoding='utf-8') as f:
            json.dump(asdict(self), f, indent=2, sort_keys=True)
            f.write("\n")


def load_config(config_file: Optional[str] = None) -> ToleranceConfig:
    """Load the given config file, or return the defaults when none is given."""
    if config_file is None:
        return ToleranceConfig()
    return ToleranceConfig.load(config_file)
