"""SO(5) from three directions: the mod-2 ring, the Bockstein data and the cells.

    python3 demos/so5_walkthrough.py
"""

from thomcob.bockstein import bockstein_cohomology, reconstruct_integral
from thomcob.cellular import incidence_edges, integral_homology_so
from thomcob.fpalg import Element, format_element, parse_element
from thomcob.liegroups import build_group
from thomcob.steenrod import apply_word
from thomcob.thom import obstruction_verdict

g = build_group("SO(5)")
pres, table = g.data[2]

print("mod-2 basis by degree")
for d in range(g.dim + 1):
    print(f"  {d:>2}", ", ".join(format_element(pres, Element.monomial(m)) for m in pres.basis(d)))

x = parse_element(pres, "u1^3 + u3")
print("\nSq3 on the degree-3 class:", format_element(pres, apply_word(pres, table, "Sq3", x).value))

bh = bockstein_cohomology(g, 2, 3)
print("BH^3 has dimension", bh.dimension, "spanned by", format_element(pres, bh.representatives[0]))

pat = reconstruct_integral(g, 2)
print("\nintegral cohomology, 2-primary")
for n in range(g.dim + 1):
    print(f"  H^{n:<2} = {pat.describe(n)}")

v = obstruction_verdict(g, 2, 3)
w = v.witnesses[0]
print(f"\nverdict in degree 3: {v.status} via [{w.word}]({format_element(pres, w.candidate)})"
      f" = {format_element(pres, w.value)}")

print("\ncellular homology, for comparison")
for h in integral_homology_so(5):
    print(f"  H_{h.degree:<2} = {h.describe()}")
print("\nincidence numbers")
for lo, hi, c in incidence_edges(5):
    print(f"  {lo.label:>9} -- {hi.label:<10} {c:>2}")
