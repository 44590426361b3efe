"""Shared container for traced equilibrium branches."""

from dataclasses import dataclass, field


@dataclass
class BranchTrace:
    """One branch of a bifurcation diagram as an ordered point list.

    points holds equilibrium records in trace order.  events maps names
    of special configurations (force zero crossings, lobe switches) to
    their locations along the trace parameter.  complete turns False
    when a continuation stops early, with the reason in diagnostic.
    """

    label: str
    points: list
    events: dict = field(default_factory=dict)
    complete: bool = True
    diagnostic: str = ""
