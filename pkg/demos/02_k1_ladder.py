"""The v1-Bockstein ladder at p = 3.

One differential per power of mu3: d_{r(n,1)} kills mu3^{p^{n-1}} into
v1^{r(n,1)} times a recursively defined lambda-class.  The lengths r(n,1)
and the lambda degrees obey the exact identity
|mu^{p^{n-1}}| - 1 - d(n+1,1) = |v1| * r(n,1).
"""

from bockstein import (
    LambdaFamily,
    Window,
    compare,
    d_deg,
    r_len,
    run,
    schedule_v1,
    t12_profile,
    thh_mod_p_algebra,
)

p, D = 3, 130
print("ladder lengths r(n,1):", [r_len(p, n, 1) for n in range(1, 5)])
print("target degrees d(n,1):", [d_deg(p, n, 1) for n in range(1, 6)])

family = LambdaFamily("v1", p)
for s in range(4, 7):
    base, e = family.entry(s)
    print(f"  λ{s} unrolls to λ{base}·μ3^{e}  (degree {family.degree(s)})")

A = thh_mod_p_algebra(p, 2)
w = Window(D)
pages, profile = run(A, schedule_v1(p, w), w)
print(f"\ntowers on 0..{D} (length k = P(v1)/v1^k summand, inf = free):")
for line in profile.summary_lines():
    print(" ", line)

print("\ncertification:", compare(profile, t12_profile(p, D), D).lines()[0])
