"""
Corings as calculi.

The Sweedler coring A (x) A rebuilds the universal calculus.  On a coring
with two group-like elements a group-like iota gives a flat connection whose
contramodule satisfies the pentagon; an averaged iota does not.
"""

from homconnections.algrep import regular_module
from homconnections.calculus import universal_calculus
from homconnections.duality import (contramodule_checks, coring_to_dga, cosplit_check,
                                    grouplike_coring, grouplike_element,
                                    homconn_to_contramodule, sweedler_coring)
from homconnections.exactlin import QQ
from homconnections.homconn import inner_homconnection
from homconnections.zoo import product_field


def main():
    A = product_field(2)
    R = coring_to_dga(sweedler_coring(A), 2)
    print("Sweedler calculus dims:", R.dims(), "universal:", universal_calculus(A, 2).dims())

    cor = grouplike_coring(A, 2)
    O = coring_to_dga(cor, 2)
    M = regular_module(A)
    g1, g2 = grouplike_element(cor, 0), grouplike_element(cor, 1)
    for label, iota in (("g2", g2), ("(g1 + g2)/2", (g1 + g2) * QQ("1/2"))):
        res = cosplit_check(cor, O, iota)
        nabla = inner_homconnection(O, M, res.xi)
        rep = contramodule_checks(homconn_to_contramodule(nabla))
        print("iota = %-12s flat: %-5s pentagon: %s"
              % (label, nabla.is_flat(), "pentagon" not in rep.labels()))


if __name__ == "__main__":
    main()
