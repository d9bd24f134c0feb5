"""Verification suites, one per checked statement, run in a fixed order"""

import logging
from typing import Dict, List, Sequence, Type, Union

from ..types import RunConfig, SuiteName, SuiteReport
from .base import Suite, SuiteContext, instance_rng, instance_seed
from .commutator import CommutatorSuite, CrossedCommutatorSuite
from .hypotheses import HypothesesSuite
from .length_functions import LengthFunctionsSuite
from .mixing import MixingSupportSuite
from .mmap import MmapInequalitiesSuite
from .normal_form import NormalFormSuite
from .quotient import QuotientSuite
from .syllable_bounds import SyllableBoundsSuite

logger = logging.getLogger(__name__)

SUITES: Dict[SuiteName, Type[Suite]] = {
    SuiteName.NORMAL_FORM: NormalFormSuite,
    SuiteName.SYLLABLE_BOUNDS: SyllableBoundsSuite,
    SuiteName.LENGTH_FUNCTIONS: LengthFunctionsSuite,
    SuiteName.MMAP_INEQUALITIES: MmapInequalitiesSuite,
    SuiteName.COMMUTATOR: CommutatorSuite,
    SuiteName.CROSSED_COMMUTATOR: CrossedCommutatorSuite,
    SuiteName.MIXING_SUPPORT: MixingSupportSuite,
    SuiteName.QUOTIENT: QuotientSuite,
    SuiteName.HYPOTHESES: HypothesesSuite,
}


def run_suites(
    source: Union[RunConfig, SuiteContext], names: Sequence[SuiteName] = ()
) -> List[SuiteReport]:
    """
    Run the selected suites sequentially in registry order

    Args:
        source: A run configuration, or a context already built from one
        names: Suites to run; defaults to the configuration's selection

    Returns:
        One report per suite
    """
    context = source if isinstance(source, SuiteContext) else SuiteContext(source)
    selected = set(names or context.config.suites)
    reports = []
    for name, cls in SUITES.items():
        if name in selected:
            reports.append(cls(context).run())
    logger.debug("ran %d suites", len(reports))
    return reports


__all__ = [
    "SUITES",
    "Suite",
    "SuiteContext",
    "instance_rng",
    "instance_seed",
    "run_suites",
    "CommutatorSuite",
    "CrossedCommutatorSuite",
    "HypothesesSuite",
    "LengthFunctionsSuite",
    "MixingSupportSuite",
    "MmapInequalitiesSuite",
    "NormalFormSuite",
    "QuotientSuite",
    "SyllableBoundsSuite",
]
