"""
Cartan forms and the index checks on three models: A2 (where the
suspension does not square to the identity), the one-dimensional
sigma_swap toy, and A3.

    python3 demos/forms_checks.py
"""

from ggk import generate
from ggk.forms import (cartan_form, check_all_congruences, check_antisymmetry, check_congruence,
                       check_invariance, check_middle_terms, check_theorem_b_forms)


def line(report):
    first = report.witnesses[0] if report.witnesses else ""
    return "%-13s %-4s %s" % (report.check, report.status, first)


for model in (generate("a_n", n=2), generate("sigma_swap", c=2)):
    print(model.name)
    print("  Cartan form at %s: %s" % (model.reference, cartan_form(model, model.reference).matrix))
    for r in (check_theorem_b_forms(model), check_invariance(model), check_antisymmetry(model),
              check_all_congruences(model), check_middle_terms(model)):
        print("  " + line(r))
    print()

a2 = generate("a_n", n=2)
r = check_congruence(a2, "13+14", "14+24")
print("A2, one neighbouring pair: %s, P = %s" % (r.status, r.details["P"]))

a3 = generate("a_n", n=3)
dets = check_theorem_b_forms(a3).details["determinants"]
print("\nA3 Cartan determinants:", sorted(set(dets.values())))
print("determinant 2 at:", ", ".join(l for l, d in dets.items() if d == 2))
