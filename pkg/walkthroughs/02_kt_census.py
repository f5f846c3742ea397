# All SL(2, F_5) representations of the knot K_T and their polynomials
import time
from collections import Counter

from tapestry.presentation import abelianization, load_fixture, simplify_presentation
from tapestry.reps import enumerate_representations
from tapestry.tap import format_table, tap_table

# The Wirtinger presentation has 24 generators; Tietze moves shrink it
wirtinger = load_fixture("kt_wirtinger")
small = simplify_presentation(wirtinger)
print(wirtinger.num_generators, "->", small.num_generators, "generators,",
      [len(r) for r in small.relators], "letters per relator")
print("abelianization:", abelianization(small))

# The shipped 3-generator presentation is the one used below
kt = load_fixture("kt_simplified")

t0 = time.perf_counter()
reps = enumerate_representations(kt, 5)
print(len(reps), "representations up to conjugacy (", reps.raw_count, "before removing conjugates )",
      "in %.2f s" % (time.perf_counter() - t0))

# Which conjugacy class does the meridian land in?
traces = Counter(int(r.images[0].trace()) for r in reps)
print("trace of the meridian image:", dict(sorted(traces.items())))

# Collapse to distinct (numerator, denominator) pairs
rows = tap_table(kt, 5, reps=reps)
print(format_table(kt, rows))
print([r.multiplicity for r in rows], "=", sum(r.multiplicity for r in rows))

# Up to GL(2, F_5) conjugacy there are fewer classes
print("GL classes:", len(enumerate_representations(kt, 5, conjugation="GL")))
