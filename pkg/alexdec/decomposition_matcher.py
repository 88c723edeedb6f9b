"""Comparison of filtration decompositions against the Smith-form oracle."""

from typing import List, Optional

from . import logger
from .config import AgreementResult, FactorAgreement
from .obstruction import Decomposition


def match_decompositions(
    filtration: Decomposition, oracle: Decomposition
) -> AgreementResult:
    """Match two decompositions factor by factor.

    Args:
        filtration: Decomposition recovered from the filtration
        oracle: Decomposition read off the invariant factors

    Returns:
        AgreementResult with one entry per factor appearing in either input
    """
    log = logger.get_logger(__name__)

    # Filtration order first, then oracle-only factors
    factors = list(filtration.exponents)
    factors += [f for f in oracle.exponents if f not in filtration.exponents]

    entries: List[FactorAgreement] = []
    matched_count = 0
    mismatched_count = 0

    for factor in factors:
        ours = filtration.exponents.get(factor)
        theirs = oracle.exponents.get(factor)

        if ours is not None and theirs is not None:
            status = "matched" if ours == theirs else "mismatched"
        elif ours is not None:
            status = "filtration_only"
        else:
            status = "oracle_only"

        if status == "matched":
            matched_count += 1
        else:
            mismatched_count += 1
            log.warning(
                f"Decomposition disagreement at {factor}: filtration {ours}, oracle {theirs}"
            )

        entries.append(
            FactorAgreement(factor=factor, filtration=ours, oracle=theirs, status=status)
        )

    result = AgreementResult(
        factors=entries, matched_count=matched_count, mismatched_count=mismatched_count
    )
    log.info(f"Comparison complete: {matched_count} matched, {mismatched_count} mismatched")
    return result


def matches_expected(
    computed: Decomposition, expected: Optional[Decomposition]
) -> Optional[bool]:
    """Compare with a recorded expectation; None when there is none."""
    if expected is None:
        return None
    return computed == expected
