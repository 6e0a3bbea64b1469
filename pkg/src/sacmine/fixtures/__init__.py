"""Bundled golden data files.

- ``sac_panel_10x5.csv``: SAC values for 10 modules over 5 academic
  years, the reference panel for the reliability computation. The one
  duplicated module row and the one cell that disagreed between the two
  published printings were resolved in favor of the alpha-computation
  table.
- ``module_sac_sample.csv``: three real module aggregates (one recording
  per term, seven, and a full eleven) whose scores span the credibility
  range.
- ``strength_rule_thresholds.json``: the attendance-average thresholds
  separating the top six strength classes.
"""

from importlib import resources

PANEL = "sac_panel_10x5.csv"
MODULE_SAMPLE = "module_sac_sample.csv"
RULE_THRESHOLDS = "strength_rule_thresholds.json"


def path(name: str):
    """Traversable path of a bundled fixture file."""
    return resources.files(__package__) / name
