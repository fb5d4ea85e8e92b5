"""Formal series over the path space: products, Fourier parts, Cesaro sums.

Elements are finite complex combinations of paths; multiplication
concatenates paths when the inner endpoints meet.  The grading by path
length gives Fourier coefficients and a Cesaro smoothing with polynomial
weights.
"""

from semigroupoid_kit import (
    FormalElement,
    Path,
    cesaro,
    cycle_graph,
    formal_mul,
    fourier_coeff,
    graded_ideal_degree,
    l2_row_norm,
    looped_triangle,
)

g = looped_triangle()

a = FormalElement(
    g,
    {
        Path.vertex("t"): 1.0,
        Path("t", ("tl1",)): 2.0,
        Path("t", ("loop_t",)): 1.0 + 1.0j,
    },
)
b = FormalElement(g, {Path.vertex("t"): 1.0, Path("t", ("loop_t",)): -1.0})

print("a =")
for p, c in a.sorted_terms():
    print(f"  {c} * [{' '.join(p.edges) or p.base}]")
print("b =")
for p, c in b.sorted_terms():
    print(f"  {c} * [{' '.join(p.edges) or p.base}]")

ab = formal_mul(a, b)
print("\na * b =")
for p, c in ab.sorted_terms():
    print(f"  {c} * [{' '.join(p.edges) or p.base}]")

print("\nFourier (grade) parts of a*b:")
deg = ab.degree()
for m in range((deg or 0) + 1):
    part = fourier_coeff(ab, m)
    if not part.is_zero():
        print(f"  grade {m}: {len(part.terms)} term(s)")

# Leibniz rule: the grade-m part of a product assembles from the factor
# grades; spot check one grade
m = 1
assembled = FormalElement.zero(g)
for i in range(m + 1):
    assembled = assembled + formal_mul(fourier_coeff(a, i), fourier_coeff(b, m - i))
print(f"\nLeibniz check at grade {m}:", fourier_coeff(ab, m).approx_eq(assembled))

# Cesaro weights 1 - len/k keep low grades and fade the high ones
loop = cycle_graph(1)
x = FormalElement(
    loop, {Path.vertex("v1"): 1.0, Path("v1", ("e1",)): 2.0, Path("v1", ("e1", "e1")): 4.0}
)
print("\nCesaro smoothing on 1 + 2e + 4e^2 with k=2:")
for p, c in cesaro(x, 2).sorted_terms():
    print(f"  {c} * [{' '.join(p.edges) or p.base}]")

print("\ngraded ideal degree of a*b:", graded_ideal_degree(ab))
print("graded ideal degree of 0:", graded_ideal_degree(FormalElement.zero(g)), "(infinity)")

print("\nl2 row norm of a at grade 1, source t:", l2_row_norm(a, 1, "t"))
