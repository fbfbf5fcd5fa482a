from ontoscope.analysis.theorem1 import theorem1_check
from ontoscope.analysis.theorem2 import theorem2_check
from ontoscope.analysis.theorem3 import theorem3_enumerate
from ontoscope.analysis.feasibility import theorem3_lp
from ontoscope.analysis.convergence import born_convergence
from ontoscope.analysis.overlap_table import overlap_table
from ontoscope.analysis.classify import classify_model

__all__ = [
    "theorem1_check",
    "theorem2_check",
    "theorem3_enumerate",
    "theorem3_lp",
    "born_convergence",
    "overlap_table",
    "classify_model",
]
