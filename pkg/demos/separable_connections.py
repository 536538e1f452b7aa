"""
Hom-connections on the product algebra Q x Q.

Solves for all hom-connections on M = A over the universal calculus, builds
the inner one from a separability element, and shows that it is not flat,
while the connection dual to d (nabla0(f)(a) = -f(da)) is flat and has
computable homology.
"""

from homconnections.algrep import regular_module
from homconnections.calculus import find_separability, universal_calculus
from homconnections.exactlin import QQ, fmt_matrix, kron
from homconnections.homconn import (curvature, homology, inner_homconnection,
                                    solve_homconnections)
from homconnections.induce import dualize_left_connection, left_connection_from_d
from homconnections.zoo import product_field


def main():
    A = product_field(2)
    O = universal_calculus(A, 3)
    M = regular_module(A)
    print("Omega^n dims:", O.dims())

    space = solve_homconnections(O, M)
    print("affine space of hom-connections: dim", space.dimension)
    print("a particular nabla0: " + fmt_matrix(QQ, space.any().nabla0))

    sep = find_separability(A)
    u = A.unit
    xi = O.meta["ambient"][1].coords(sep.iota - kron(u, u))
    inner = inner_homconnection(O, M, xi)
    print("inner connection curvature: " + fmt_matrix(QQ, curvature(inner).F))
    print("flat?", inner.is_flat())

    L = left_connection_from_d(O)
    dual = dualize_left_connection(L, regular_module(L.M.right_algebra))
    print("dual of d is flat?", dual.is_flat())
    print("homology dims:", [homology(dual, n).dim for n in range(3)])


if __name__ == "__main__":
    main()
