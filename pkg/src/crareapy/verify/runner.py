# src/crareapy/verify/runner.py

import logging
from typing import Iterable, List, Optional, Tuple

from joblib import Parallel, delayed

from crareapy.verify.lemmas import LEMMAS, verify_lemma
from crareapy.verify.report import LemmaReport

logger = logging.getLogger(__name__)


def verify_all(
    lemma_ids: Optional[Iterable[str]] = None,
    grid: Optional[Tuple[int, int]] = None,
    seed: int = 0,
    workers: int = 1,
) -> List[LemmaReport]:
    """
    Run registered checks as independent jobs.

    Args:
        lemma_ids (Iterable[str], optional): Ids to run; all registered checks by default.
        grid (tuple, optional): Sampling grid passed to every check.
        seed (int): Seed of randomized members.
        workers (int): Parallel jobs; 1 runs in process.

    Returns:
        list: Reports in registry order.
    """
    ids = list(lemma_ids) if lemma_ids is not None else list(LEMMAS)
    logger.debug("running %d checks on %d workers", len(ids), workers)
    if workers == 1:
        return [verify_lemma(i, grid, seed) for i in ids]
    return Parallel(n_jobs=workers)(delayed(verify_lemma)(i, grid, seed) for i in ids)


def all_match(reports: List[LemmaReport]) -> bool:
    """True iff every report's status matches its expectation."""
    return all(report.matches_expectation for report in reports)
