"""Exact computations in Temperley-Lieb categories, their fusion quotients and centers.

Submodules:

* ``qarith``      exact scalar domains (Q(v), cyclotomic fields, finite fields)
* ``diagram``     planar matchings and their composition
* ``tlcat``       morphisms, Jones-Wenzl projectors, Gram matrices
* ``fusiondata``  fusion rings and modular data of A_{κ-1}
* ``linalg``      exact and multimodular linear algebra
* ``braidcenter`` braidings, half-braidings, center objects and fusion
* ``polysolve``   Gröbner bases and zero-dimensional varieties over Q
* ``crystal``     the crystal limit and its half-braiding searches
* ``primes``      prime towers
* ``stability``   stabilization of A_{κ-1} data as κ grows
* ``cli``         command-line front end
"""

from .qarith import Cyclotomic, DomainError, Finite, GenericV, Scalar, qint, root_of_unity_domain
from .tlcat import Morphism, compose, generic_domain, jones_wenzl, tensor

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "DomainError",
    "Finite",
    "GenericV",
    "Scalar",
    "qint",
    "root_of_unity_domain",
    "Morphism",
    "compose",
    "generic_domain",
    "jones_wenzl",
    "tensor",
]
