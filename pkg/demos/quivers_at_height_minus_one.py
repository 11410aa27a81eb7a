"""Ext^1-quivers of u(W(1,1), 0) for p = 7, computed twice and compared with the closed form.

Run:  python3 demos/quivers_at_height_minus_one.py
"""

from wittquiver import quiver

p = 7
for family in ("verma", "simple"):
    der = quiver.build_quiver(p, -1, family, "derivation")
    coc = quiver.build_quiver(p, -1, family, "cocycle")
    expected = quiver.expected_quiver(p, -1, family)
    print(quiver.emit(coc, "text"))
    print(f"engines agree: {not quiver.diff(der, coc)}; differences from closed form: {len(quiver.diff(coc, expected).mismatches)}")
    print()

# the double arrows between L(0) and L(p-1) show up as repeated DOT edges
dot = quiver.emit(quiver.build_quiver(p, -1, "simple", "derivation"), "dot")
print("\n".join(line for line in dot.splitlines() if "0 -> 6" in line or "6 -> 0" in line))
