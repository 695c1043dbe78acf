"""Normal forms in two flavors of extension.

The quantum plane imposes x2 x1 = 2 x1 x2 over Z5; the Weyl-like extension
of the dual numbers imposes x y = y x + 1.  Both are confluence-certified at
validation time, so every product below is already in normal form.
"""

from spbw import (
    dual_z2,
    dual_z2_derivation,
    identity_map,
    mul,
    validate_presentation,
    zero_map,
    zmod,
)


def quantum_plane():
    ring = zmod(5)
    i, z = identity_map(ring), zero_map(ring)
    return validate_presentation(ring, [i, i], [z, z], {(0, 1): 2},
                                 label="quantum plane")


def weyl_like():
    ring = dual_z2()
    return validate_presentation(ring, [identity_map(ring)],
                                 [dual_z2_derivation(ring)], {},
                                 label="weyl-like")


def main():
    P = quantum_plane()
    x1, x2 = P.variable(0), P.variable(1)
    print("quantum plane over Z5, c = 2")
    print("  x2 * x1      =", mul(x2, x1).to_string())
    print("  x2^2 * x1    =", mul(mul(x2, x2), x1).to_string())
    print("  (x1+x2)^2    =", mul(x1 + x2, x1 + x2).to_string())
    print()

    W = weyl_like()
    ring = W.ring
    x = W.variable(0)
    y = W.constant(ring.element_index("y"))
    print("weyl-like over Z2[y]/(y^2)")
    print("  x * y        =", mul(x, y).to_string())
    print("  x^2 * y      =", mul(mul(x, x), y).to_string())
    print("  (x+y)*(x+y)  =", mul(x + y, x + y).to_string())
    # left and right coefficient placement genuinely differ here
    print("  y * x        =", mul(y, x).to_string(), " (not equal to x * y)")


if __name__ == "__main__":
    main()
