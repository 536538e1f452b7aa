"""
The q-deformed calculus on Laurent polynomials, u du = q du u.

Every hom-connection is nabla0^a(f) = a f(q^-1 u) + d_q[f(q^-1 u)] for a
single Laurent polynomial a.  Here we evaluate a few and check the
defining identity on random pairs.
"""

import numpy

from homconnections.exactlin import QQ
from homconnections.qlaurent import (classification_check, homconn_from_element,
                                     inner_xi_connection, parse, random_poly)


def main():
    q = QQ(2)
    nabla = homconn_from_element(parse("0"), q)
    for text in ("1", "u", "u^2", "u^-1 + 3*u"):
        print("nabla(%s) = %s" % (text, nabla(parse(text))))

    rng = numpy.random.default_rng(1)
    pairs = [(random_poly(rng), random_poly(rng)) for _ in range(200)]
    twisted = homconn_from_element(parse("u^-1 - 1/3*u^2"), q)
    rep = classification_check(twisted, q, pairs)
    print("identity on %d random pairs: %s" % (rep.checked, rep.ok))

    print("inner connection on u^3:", inner_xi_connection(q, parse("u^3")))


if __name__ == "__main__":
    main()
