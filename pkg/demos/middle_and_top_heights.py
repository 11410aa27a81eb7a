"""Characters of height 2 <= r <= p-1 at p = 5, and height 2 at p = 7.

Run:  python3 demos/middle_and_top_heights.py
"""

from wittquiver.midheight import analyze_midheight, classify_height_pm1
from wittquiver.witt import Character, default_character

for p, r in ((5, 2), (5, 3), (7, 2)):
    rep_ = analyze_midheight(p, default_character(p, r))
    print(f"p={p} r={r} chi={rep_.chi}: dim S={rep_.dim_S}, dim L={rep_.dim_L}, "
          f"Ext(S,S)={rep_.ext_SS}, Ext(L,L)={rep_.ext_LL}, H^1(u(rad),k)={rep_.h1_rad}, "
          f"lower bound holds: {rep_.propB_holds}, equality reading: {rep_.conjecture}")

for vals in ((0, 0, 0, 0, 1), (0, 0, 1, 0, 1)):
    res = classify_height_pm1(5, Character(vals, 5))
    print(f"p=5 chi={list(vals)}: centralizer {res.centralizer} is {res.verdict}; "
          f"loops on the distinguished simple: {res.loop_multiplicity}")
