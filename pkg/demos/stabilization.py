"""How root-of-unity data settles down to the generic answer as κ grows."""

from tlcenter import stability as st

print(st.hom_dim_profile(3, 10).table())
print()
for r in range(5):
    rep = st.fusion_stability(r, 30)
    print(f"fusion window r={r}: agrees with the generic rule from κ = {rep.threshold}")
for window in ("total", "each"):
    ths = [st.center_label_agree(r, 30, window=window).threshold for r in range(5)]
    print(f"center labels, {window} window, r=0..4: thresholds {ths}")
