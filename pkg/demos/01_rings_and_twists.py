"""Tour of the coefficient layer: finite rings, endomorphisms, derivations.

Run with: python3 demos/01_rings_and_twists.py
"""

from spbw import (
    dual_z2,
    dual_z2_derivation,
    idempotents,
    left_invertibles,
    swap_endomorphism,
    upper_triangular,
    zmod,
    zmod_product,
)


def show(ring):
    idem = ", ".join(ring.name(e) for e in idempotents(ring))
    units = ", ".join(ring.name(u) for u in left_invertibles(ring))
    comm = "commutative" if ring.is_commutative() else "noncommutative"
    print(f"{ring.label:12s} order {ring.order:2d}  {comm}")
    print(f"{'':12s} idempotents: {idem}")
    print(f"{'':12s} left invertibles: {units}")


def main():
    for ring in (zmod(6), zmod_product(2, 2), dual_z2(), upper_triangular(2, 2)):
        show(ring)
        print()

    # the two twist maps the bundled instances lean on
    prod = zmod_product(2, 2)
    sw = swap_endomorphism(prod)
    print("swap on Z2xZ2:", {prod.name(a): prod.name(sw(a))
                             for a in prod.elements()})

    dual = dual_z2()
    d = dual_z2_derivation(dual)
    print("d/dy on Z2[y]/(y^2):", {dual.name(a): dual.name(d(a))
                                   for a in dual.elements()})
    # Leibniz sanity: d(y * (1+y)) = sigma(y) d(1+y) + d(y)(1+y) = y + 1 + y
    y = dual.element_index("y")
    oy = dual.element_index("1+y")
    print("d(y*(1+y)) =", dual.name(d(dual.mul(y, oy))))


if __name__ == "__main__":
    main()
