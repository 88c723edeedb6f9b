"""Per-knot orchestration: validation, filtration, oracle cross-check and representations."""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence

from . import logger
from .config import Config, KnotRecord, KnotReport, RepresentationSet
from .decomposition_matcher import match_decompositions, matches_expected
from .metabelian import (
    MetabelianElement,
    RepMatrix,
    build_rep,
    solutions_to_builders,
    verify_homomorphism,
)
from .obstruction import build_obstruction_system, run_filtration, solution_spaces
from .seifert import (
    NormalizedAlexanderPoly,
    alexander_matrix,
    alexander_polynomial,
    root_classes,
    validate_seifert,
)
from .snf_oracle import oracle_decomposition, oracle_moduli, smith_normal_form

log = logger.get_logger(__name__)


def alexander_for(record: KnotRecord) -> NormalizedAlexanderPoly:
    s = validate_seifert(record.name, record.seifert)
    return alexander_polynomial(alexander_matrix(s))


def analyze_knot(record: KnotRecord, config: Config, with_oracle: bool = True) -> KnotReport:
    """Run the filtration on one knot and, optionally, the Smith-form oracle.

    Args:
        record: Knot to analyze
        config: Run configuration (max_n, verify_snf, no_timing)
        with_oracle: Also compute invariant factors and compare

    Returns:
        KnotReport for the knot
    """
    start = time.perf_counter()
    s = validate_seifert(record.name, record.seifert)
    filtration, decomposition = run_filtration(s, config.max_n)

    report = KnotReport(
        name=record.name,
        genus=s.genus,
        alexander=filtration.alexander,
        filtration=filtration,
        decomposition=decomposition,
        expected_match=matches_expected(decomposition, record.expected),
    )
    if report.expected_match is False:
        log.warning(f"{record.name}: decomposition differs from the recorded expectation")

    if with_oracle:
        invariant_factors = smith_normal_form(alexander_matrix(s), verify=config.verify_snf)
        # Keyed by its own root classes, refined to the branch moduli of any split
        moduli = oracle_moduli(invariant_factors, decomposition.factors())
        report.oracle = oracle_decomposition(invariant_factors, moduli)
        report.invariant_factors = invariant_factors
        report.agreement = match_decompositions(decomposition, report.oracle)

    if not config.no_timing:
        report.seconds = time.perf_counter() - start
    log.info(f"Analyzed {record.name}")
    return report


def analyze_corpus(
    records: Sequence[KnotRecord], config: Config, with_oracle: bool = True
) -> List[KnotReport]:
    """Analyze every record, in parallel when configured; results keep input order."""
    if config.parallel == 1 or len(records) <= 1:
        return [analyze_knot(r, config, with_oracle) for r in records]
    with ThreadPoolExecutor(max_workers=config.parallel) as executor:
        return list(executor.map(lambda r: analyze_knot(r, config, with_oracle), records))


def _generator_images(builder_size: int, build) -> Dict[str, RepMatrix]:
    images = {"mu": build(MetabelianElement.meridian(builder_size))}
    for i in range(builder_size):
        images[f"e{i + 1}"] = build(MetabelianElement.generator(builder_size, i))
    return images


def build_representations(record: KnotRecord, config: Config) -> List[RepresentationSet]:
    """Representations at ``config.level`` for every root class (and branch) of one knot."""
    s = validate_seifert(record.name, record.seifert)
    alexander = alexander_polynomial(alexander_matrix(s))
    results = []
    for root_class in root_classes(alexander):
        system = build_obstruction_system(s, root_class.factor, config.level)
        for space in solution_spaces(system):
            builders = list(solutions_to_builders(space))
            images = [
                _generator_images(s.size, lambda g, b=b: build_rep(b, g)) for b in builders
            ]
            checks = [
                verify_homomorphism(b, config.trials, config.seed + index)
                for index, b in enumerate(builders)
            ]
            results.append(
                RepresentationSet(
                    knot=record.name,
                    factor=root_class.factor,
                    modulus=space.field.modulus,
                    level=config.level,
                    builders=builders,
                    images=images,
                    checks=checks,
                )
            )
            log.info(
                f"{record.name} mod {space.field.modulus}: {len(builders)} representation(s) "
                f"at level {config.level}"
            )
    return results
