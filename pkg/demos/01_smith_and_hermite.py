"""Exact integer linear algebra: Smith and Hermite normal forms.

Everything in this package rests on two canonical forms of integer matrices.
The Smith form diagonalizes a matrix by invertible integer row and column
operations and reads off a finite abelian group; the Hermite form is the
canonical basis of the row lattice and powers all deduplication.
"""

from nhdm import IntMatrix, det, hnf, snf

# The 2x2 matrix that appears when two specific quartic terms constrain the
# two torus angles of a three-doublet potential.
m = IntMatrix.from_text("3,2;-3,-1")
print("matrix:")
for row in m.entries:
    print("   ", row)

res = snf(m)
print("\nSmith diagonal:", res.d)
print("row transform u:", res.u.entries)
print("column transform v:", res.v.entries)
print("u @ m @ v:", (res.u @ m @ res.v).entries)
print("determinant:", det(m), "(equals the product of the diagonal)")

# Diagonal entries > 1 are cyclic factors: this matrix encodes Z3.
# A diagonal entry 0 would contribute a U(1) factor instead.

print("\nHermite form canonicalizes lattices:")
a = IntMatrix.from_rows([(3, 2), (-3, -1)])
b = IntMatrix.from_rows([(0, 1), (3, 2)])
print("basis one:", hnf(a).entries)
print("basis two:", hnf(b).entries)
print("same row lattice, identical canonical form:", hnf(a) == hnf(b))

print("\nZero rows are dropped:", hnf(IntMatrix.from_rows([(1, 1), (0, 0)])).entries)
