# Twist knots J(2, 2q): Riley polynomials, trace gaps and pseudo-meridians
from tapestry.twistknot import (generating_identity_check, non_meridian_certificate, pseudo_meridian,
                                riley_phi, trace_gap_p, trace_w, twist_presentation)
from tapestry.wordprob import todd_coxeter_trivial

print("tr rho(w) =", trace_w())

# phi_q has degree 2q - 1 for q > 0 and 2|q| for q < 0
for q in [1, 2, 3, -1, -2, -3]:
    print("q = %2d  phi = %-40s p = %s" % (q, riley_phi(q), trace_gap_p(q)))

# The recursion p_q = (u^2 + 2) p_{q-1} - p_{q-2} + 2u^2 agrees with multiplying matrices out
print(all(trace_gap_p(q) == trace_gap_p(q, "direct") for q in range(-6, 7) if q))

# g1 is never conjugate to the meridian when gcd(phi_q, p_q / u^2) is constant
for q in [1, 2, 3, -1, -2, -3]:
    c = non_meridian_certificate(q)
    print(q, c.verdict.value, "-", c.reason)

# ... yet killing g1 kills the whole group, so g1 is a pseudo-meridian
for q in [1, 2, 3, -1, -2, -3]:
    g = twist_presentation(q)
    res = todd_coxeter_trivial(g, [pseudo_meridian(q)])
    print(q, g.format_word(pseudo_meridian(q)), "->", res.status.value, "(%d cosets)" % res.defined)

# The conjugates g1, g2, g3 generate: check the explicit identity in SL(2, F_p) images
print([generating_identity_check(q, 5) for q in (1, 2, -1, -2)])
