"""
Classifying the bundled recruitment example
===========================================

Loads the packaged special-forces model (twenty candidates, four
categories) and walks through the classification output.
"""

from catsd import casestudy, classify, format_trace

project = casestudy.load()
model = project.model

print(f"{len(project.actions)} candidates, {len(model.categories)} categories:")
print(" ", ", ".join(c.id for c in model.categories))
print()

report = classify(project.actions, project.performances, model)

# membership matrix, one row per candidate
header = ["candidate"] + [c.id for c in model.categories] + [model.dummy_category_name]
print("  ".join(header))
for assignment in report.assignments:
    marks = ["x" if c.id in assignment.accepted else "." for c in model.categories]
    marks.append("x" if assignment.dummy else ".")
    print(f"{assignment.action_id:9}  " + "  ".join(f"{m:^{len(h)}}" for m, h in zip(marks, header[1:])))

# a17 sits just under the Snipers threshold; look at the full comparison
print()
outcome = report.assignment("a17").outcome("Snipers")
print(f"a17 vs Snipers: likeness {outcome.likeness:.4f}, threshold 0.80 -> rejected")
print(format_trace(outcome.traces[0]))
