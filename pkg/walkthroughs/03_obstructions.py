# No meridional epimorphism G(K_T) -> G(trefoil), nor G(J_-1) -> G(figure eight)
from tapestry.presentation import load_fixture, load_hom_fixture
from tapestry.tap import meridional_obstruction, plain_divisibility_check
from tapestry.wordprob import meridian_trace_obstruction, verify_group_hom, verify_surjectivity_witnesses

kt, trefoil = load_fixture("kt_simplified"), load_fixture("trefoil")

report = meridional_obstruction(kt, trefoil, 5)
print(report.verdict.value, report.stats)
w = report.witness
print("witness rho':", w.representation.to_json())
print("  Delta^N' =", w.pair.numerator, "  Delta^D' =", w.pair.denominator)

# For every source representation, at least one of the two conditions fails for both eps
for rec in w.records[:5]:
    print("  source", rec.index, rec.checks)

# The weaker test (divisibility of the whole fraction) does not see the obstruction
print("plain test:", plain_divisibility_check(kt, trefoil, 5).verdict.value)

# There *is* an epimorphism, given explicitly; it is just not meridional
wirtinger = load_fixture("kt_wirtinger")
f = load_hom_fixture("f_kt_to_trefoil", wirtinger, trefoil)
print("homomorphism:", verify_group_hom(f), "surjective:", verify_surjectivity_witnesses(f))
tr = meridian_trace_obstruction(f, "x1")
print("rho(f(x1)) =", tr.matrix, "trace", tr.trace, "vs", tr.meridian_trace, "->", tr.verdict)

# The same test over F_7 for J_-1 and the figure eight
j, e = load_fixture("j_minus1"), load_fixture("figure8")
report = meridional_obstruction(j, e, 7)
print(report.verdict.value, report.stats)

# Sanity check: every knot maps meridionally onto itself, so nothing is obstructed
for name, p in [("trefoil", 5), ("figure8", 7), ("kt_simplified", 5)]:
    g = load_fixture(name)
    print(name, meridional_obstruction(g, g, p).verdict.value)
