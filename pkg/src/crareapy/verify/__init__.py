"""
Registered numeric checks of the lemmas on the model surfaces, their reports, the job
runner and parameter scans.
"""

from crareapy.verify.lemmas import LEMMAS, LemmaCheck, verify_lemma
from crareapy.verify.report import Expectation, LemmaReport, MeasuredRow
from crareapy.verify.runner import all_match, verify_all
from crareapy.verify.scans import ellipse_hcr_root, scan_rossi_E2, spot_check_no_zero_E1

__all__ = [
    "LEMMAS",
    "LemmaCheck",
    "verify_lemma",
    "verify_all",
    "all_match",
    "LemmaReport",
    "MeasuredRow",
    "Expectation",
    "scan_rossi_E2",
    "ellipse_hcr_root",
    "spot_check_no_zero_E1",
]
