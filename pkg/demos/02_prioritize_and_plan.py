"""
From assumptions to a test plan
===============================

Two assumptions drive the focus: defects missed by inspection cluster in the
code nobody read, and testing should look for the defect types inspection
found most often.
"""

from guidedtest import build_plan, build_profile, compose_strategy, load_case_study
from guidedtest.config import load_config_file
from guidedtest.io import bundled_path

dataset = load_case_study()
profile = build_profile(dataset)

config = load_config_file(bundled_path("default_rules.json"))
result = compose_strategy(config.strategy, profile, dataset.parts)

print("parts in focus:", ", ".join(result.prioritized_parts))
print("types in focus:", ", ".join(str(t) for t in result.prioritized_types))

plan = build_plan(result, dataset)
print(f"effort saved: {plan.predicted_effort_saved_fraction:.1%}")

###############################################################################
# Going further: also skip the tree-style reading supports that resemble the
# inspected one, and the simple checklist view.

aggressive = load_config_file(bundled_path("omit_four_groups.json"))
result = compose_strategy(aggressive.strategy, profile, dataset.parts)
plan = build_plan(result, dataset)
print(f"effort saved: {plan.predicted_effort_saved_fraction:.1%}")
print(plan.to_checklist(dataset))
