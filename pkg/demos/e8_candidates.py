"""Follow the E8 degree-15 candidates up through Sq8, Sq4 and Sq3.

    python3 demos/e8_candidates.py
"""

from thomcob.fpalg import format_element, parse_element
from thomcob.liegroups import build_group
from thomcob.steenrod import apply_word

pres, table = build_group("E8").data[2]


def show(word, text):
    r = apply_word(pres, table, word, parse_element(pres, text))
    out = format_element(pres, r.value)
    print(f"  [{word}]({text}) = {out}" + ("  (tainted)" if r.tainted else ""))
    return out


for start in ("x15 + x3^2*x9", "x15 + x3^2*x9 + x3^5", "x15 + x5^3", "x15 + x5^3 + x3^5"):
    print(start)
    a = show("Sq8", start)
    b = show("Sq4", a)
    show("Sq1,Sq2", b)
    print()
