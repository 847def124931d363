"""Walk through the exact polynomial layer: the carre du champ, the
boundary curve, and the two identities everything else leans on.

Everything here is computed in Gaussian-rational arithmetic; any printed
"residual" is an exact polynomial that must be identically zero.
"""

from deltoid import (
    Lambda,
    Z,
    ZBAR,
    boundary_poly,
    gamma,
    gamma2,
    generator,
)
from deltoid.operator import (
    check_boundary_equation,
    hessian_logP_direct,
    hessian_logP_reduced,
)

print("= the operator on coordinates =")
lam = Lambda(4)
print("Gamma(Z, Z)      =", gamma(Z, Z))
print("Gamma(Z, Zbar)   =", gamma(Z, ZBAR))
print("L Z at lambda=4  =", generator(Z, lam))
print("Gamma2(Z, Z)     =", gamma2(Z, Z, lam))

print()
print("= the boundary curve =")
P = boundary_poly()
print("P =", P)
ok, res_z, res_w = check_boundary_equation()
print("Gamma(Z, P) + 3 Z P == 0:", res_z.is_zero())
print("Gamma(Zbar, P) + 3 Zbar P == 0:", res_w.is_zero())
assert ok

# cusps sit at the cube roots of unity; P vanishes there to third order
for eps in (1e-2, 1e-3, 1e-4):
    print(f"P(1 + {eps:g}) = {complex(P.eval(1 + eps)).real: .3e}"
          f"   (cubic tangency: ~ -eps^3 = {-eps**3: .3e})")

print()
print("= log-density Hessian reduction =")
direct = hessian_logP_direct()
reduced = hessian_logP_reduced()
diff = direct.sub(reduced)
print("H[log P] - (-3 Gamma + 3/2 DGamma) entries zero:",
      diff.r11.is_zero(), diff.r12.is_zero(), diff.r22.is_zero())
