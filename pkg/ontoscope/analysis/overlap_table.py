"""Per-pair overlap rows for the CSV report."""

import logging
from dataclasses import dataclass
from typing import Optional

from ontoscope.models.overlap import ORTHOGONALITY_THRESHOLD, degree_of_epistemicity, overlap_record

logger = logging.getLogger(__name__)

CSV_HEADER = ("pair_id", "overlap_sq", "l_q", "l_c", "f", "deficit")


@dataclass
class OverlapRow:
    pair_id: str
    overlap_sq: float
    l_q: float
    l_c: float
    f: Optional[float]
    deficit: float

    def as_row(self):
        return [
            self.pair_id,
            repr(self.overlap_sq),
            repr(self.l_q),
            repr(self.l_c),
            "" if self.f is None else repr(self.f),
            repr(self.deficit),
        ]


def overlap_table(model, pairs, f_overlap_floor=0.1, orthogonality_threshold=ORTHOGONALITY_THRESHOLD):
    """One row per (preparation, preparation) pair; f is blank below the overlap floor."""
    rows = []
    for p, q in pairs:
        record = overlap_record(model, p, q)
        f = None
        if record.overlap_sq >= max(f_overlap_floor, orthogonality_threshold):
            f = degree_of_epistemicity(model, p, q, orthogonality_threshold).value
        rows.append(OverlapRow(
            pair_id=f"{p.label}|{q.label}",
            overlap_sq=record.overlap_sq,
            l_q=record.l_q,
            l_c=record.l_c,
            f=f,
            deficit=record.deficit,
        ))
    logger.debug("Built %d overlap rows", len(rows))
    return rows
