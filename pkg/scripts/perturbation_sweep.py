#!/usr/bin/env python3
"""Show that exact identities break under small changes of their constants."""
from g2daha import mcg
from g2daha.kfield import KScalar, kq
from g2daha.psi import compatibility_defect
from g2daha.qdiff import verify_knot_relation

rows = [
    ("q-Serre, constant q^{1/2}+q^{-1/2}", verify_knot_relation("qserre-aba")),
    ("q-Serre, constant 2", verify_knot_relation("qserre-aba", qsum=KScalar(2))),
    ("q-Serre, constant q+q^{-1}", verify_knot_relation("qserre-aba", qsum=kq(4) + kq(-4))),
    ("compatibility", compatibility_defect(0, 1, 1).is_zero()),
    ("compatibility, doubled coefficient", compatibility_defect(0, 1, 1, perturb=True).is_zero()),
    ("b12 rule", mcg.verify_b_rule_in_F(1, 2, 1, "A1")),
    ("b12 rule, q^{1/2} for q^{1/4}", mcg.verify_b_rule_in_F(1, 2, 1, "A1", quarter=2)),
    ("a1 rule", mcg.verify_automorphism_consistency(1, "B12", 4)),
    ("a1 rule, q^{1/2} for q^{1/4}", mcg.verify_automorphism_consistency(1, "B12", 4, quarter=2)),
]
for name, ok in rows:
    print("%-40s %s" % (name, "holds" if ok else "fails"))
