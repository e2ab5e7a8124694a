"""Primes carrying a root of order 2^(k+1) for a fixed integer or algebraic q.

For q an integer the k-th prime divides q^(2^k) + 1 and is new.  For q a
root of x^2 - x - 1 the primes come from the resultant with x^(2^k) + 1, and
q itself may only live in an extension F_(p^d).
"""

from tlcenter import primes as pr

tower = pr.integer_tower(2, 8)
print("q = 2")
for e in tower:
    print(f"  k={e.k}: p={e.p}, order of 2 mod p = {e.order}")

golden = pr.algebraic_tower("x^2 - x - 1", 6)
print("q a root of x^2 - x - 1")
print(golden.to_csv(), end="")

print("q a root of x^2 + 2, k = 1:", [(m.k, m.status) for m in pr.algebraic_tower("x^2 + 2", 1).misses])
