"""
Sweep Configuration Manager
===========================

Load and manage sweep profiles (series, rank range, coefficient bound,
output options) stored as JSON under config/sweeps/.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from wonderlat.config import PROJECT_ROOT


class SweepConfig:
    """Manages sweep profiles."""

    def __init__(self, profile: str, config_path: Optional[str] = None):
        """
        Initialize sweep configuration.

        Args:
            profile: Name of the profile (e.g., "all_types")
            config_path: Optional path to config file
        """
        self.profile = profile

        if config_path is None:
            config_path = PROJECT_ROOT / "config" / "sweeps" / f"{profile}.json"

        self.config_path = Path(config_path)
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load sweep profile from JSON."""
        if not self.config_path.exists():
            raise FileNotFoundError(
                f"Sweep profile not found: {self.config_path}\n"
                f"Create config/sweeps/{self.profile}.json"
            )

        with open(self.config_path, encoding="utf-8") as f:
            return json.load(f)

    def get_section(self, name: str) -> Dict[str, Any]:
        """
        Get a named section of the profile.

        Args:
            name: Section name ("sweep", "paths" or "options")

        Returns:
            Section dict
        """
        if name not in self.config:
            raise KeyError(f"Section '{name}' not found in sweep profile '{self.profile}'")
        return self.config[name]

    def get_sweep_params(self) -> Dict[str, Any]:
        """
        Get the sweep parameters with defaults filled in.

        Returns:
            Dict with series, max_rank, coeff_bound, min_scope_rank
        """
        sweep = self.get_section("sweep")
        series = sweep.get("series", ["A", "B", "C", "D"])
        if isinstance(series, str):
            series = [s.strip() for s in series.split(",") if s.strip()]

        return {
            "series": [s.upper() for s in series],
            "max_rank": int(sweep.get("max_rank", 4)),
            "coeff_bound": int(sweep.get("coeff_bound", 1)),
            "min_scope_rank": int(sweep.get("min_scope_rank", 3)),
        }

    def get_paths(self) -> Dict[str, Any]:
        """Get output paths configuration."""
        paths = self.config.get("paths", {})

        return {
            "output_folder": PROJECT_ROOT / paths.get("output_folder", "results"),
        }

    def get_options(self) -> Dict[str, Any]:
        """Get sweep options."""
        options = self.config.get("options", {})
        return {
            "workers": int(options.get("workers", 1)),
            "save_summary": bool(options.get("save_summary", True)),
            "save_failures": bool(options.get("save_failures", True)),
        }

    @property
    def description(self) -> str:
        return self.config.get("description", "")

    def __repr__(self):
        return f"SweepConfig('{self.profile}')"


def list_profiles(config_dir: Optional[Path] = None) -> List[str]:
    """
    List available sweep profiles.

    Args:
        config_dir: Directory to scan (default: config/sweeps)

    Returns:
        Sorted profile names
    """
    config_dir = Path(config_dir or PROJECT_ROOT / "config" / "sweeps")
    return sorted(p.stem for p in config_dir.glob("*.json"))


def load_sweep(profile: str) -> SweepConfig:
    """
    Quick helper to load a sweep profile.

    Args:
        profile: Name of the profile

    Returns:
        SweepConfig instance

    Example:
        >>> config = load_sweep("smoke")
        >>> config.get_sweep_params()["series"]
        ['A']
    """
    return SweepConfig(profile)
