"""Solve the eigenpolynomial ladder and inspect its exact structure.

The eigenvalue formula is mu = (lambda - 1)(p + q) + p^2 + pq + q^2;
back-substitution through the moment recursion gives every coefficient
and the squared norm as exact rationals.
"""

from deltoid import Lambda, Rat, eigenvalue, inner_product, moments, solve_eigenpoly

lam = Lambda(4)

print("= the first levels at lambda = 4 =")
for total in range(4):
    for p in range(total, -1, -1):
        q = total - p
        ep = solve_eigenpoly(p, q, lam)
        print(f"P_{p}{q}: mu = {ep.mu}, norm^2 = {ep.norm2}")
        print(f"      {ep.poly}")

print()
print("= moment normalization =")
for lv in (Rat(1), Rat(4), Rat(7, 2)):
    lam_v = Lambda(lv)
    m11 = moments(lam_v, 2).get(1, 1)
    print(f"lambda = {lv}: m_11 = {m11} (formula 1/(2 lambda + 1))")
    assert m11 == 1 / (2 * lv + 1)

print()
print("= exact orthogonality, including eigenvalue collisions =")
# at lambda = 1 the levels (3,5) and (7,0) share mu = 49; orthogonality
# still holds exactly because the degree spaces are orthogonal as spaces
lam1 = Lambda(1)
table = moments(lam1, 16)
for (p1, q1), (p2, q2) in [((3, 5), (7, 0)), ((2, 1), (1, 2)), ((4, 0), (0, 4))]:
    a = solve_eigenpoly(p1, q1, lam1)
    b = solve_eigenpoly(p2, q2, lam1)
    ip = inner_product(a.poly, b.poly, table)
    print(f"<P_{p1}{q1}, P_{p2}{q2}> = {ip}"
          f"   (mu: {eigenvalue(p1, q1, lam1)} vs {eigenvalue(p2, q2, lam1)})")
    assert ip == 0
