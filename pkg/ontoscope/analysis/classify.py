"""Classification driven by a RunConfig."""

import logging

from ontoscope.models.classifier import ModelClassifier

logger = logging.getLogger(__name__)


def classifier_for(model, run_config):
    return ModelClassifier(
        model,
        tolerance=run_config.tolerance,
        pair_budget=run_config.pair_budget,
        seed=run_config.seed,
        coverage_floor=run_config.coverage_floor,
        f_overlap_floor=run_config.f_overlap_floor,
        orthogonality_threshold=run_config.orthogonality_threshold,
        support_eps_rel=run_config.support_eps_rel,
    )


def classify_model(model, run_config):
    report = classifier_for(model, run_config).classify()
    verdict = report.model_verdict
    logger.info(
        "Model %s: %s, 1MpsiE=%s, 2MpsiE=%s",
        model.metadata.get("kind", "?"),
        verdict.ontic_or_epistemic.verdict.value,
        verdict.max_psi_epistemic_1.verdict.value,
        verdict.max_psi_epistemic_2.verdict.value,
    )
    return report
