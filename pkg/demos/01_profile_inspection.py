"""
Profiling an inspection
=======================

Load the bundled case study, keep the defects the developer accepted, and
look at where they sit and what kind they are.
"""

from guidedtest import build_profile, load_case_study, monitor
from guidedtest.monitoring import Baseline
from guidedtest.report import code_class_order, profile_tables

dataset = load_case_study()
profile = build_profile(dataset)

print(profile_tables(profile, code_class_order(dataset)))

###############################################################################
# Densest classes first. Class V is small and defect-rich.

rows = sorted(profile.per_part.items(), key=lambda kv: -kv[1].defect_density)
for part_id, row in rows[:4]:
    print(f"{part_id:>5}  {row.defect_content:3d} defects in {row.loc:4d} LOC  ({row.defect_density:.3f}/LOC)")

###############################################################################
# Was the inspection itself sound? Compare the reading rate with the rates a
# similar earlier run produced (550 and 685 LOC/h).

report = monitor(profile, Baseline(reading_rate_band=(500, 700)))
print(report.to_text())
