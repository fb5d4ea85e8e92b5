"""Road colorings and synchronizing words.

A strong coloring of an in-degree d-regular graph labels the incoming
edges at every vertex with distinct colors from {1..d}.  Reading a color
word backward from a vertex follows the unique incoming edge of each
color; a word is synchronizing when every starting vertex lands on the
same target.
"""

from semigroupoid_kit import (
    color_word,
    find_synchronizing_word,
    follow_backward,
    is_synchronizing_word,
    looped_triangle,
    obrien_coloring,
    search_synchronizing_coloring,
    syncdiag_paths,
    synchronizing_guarantee,
    validate_coloring,
)

g = looped_triangle()
print("the looped triangle is in-degree 2-regular with a loop at t\n")

# the loop-based coloring: color the loop 1, spread 1 along a reverse
# spanning tree, fill the rest with the remaining colors
c, word = obrien_coloring(g, "loop_t")
print("loop-based coloring:")
for e in sorted(edge.id for edge in g.edges):
    print(f"  {e}: color {c.of(e)}")
print("validation ok:", validate_coloring(g, c).valid)
print(f"promised synchronizing word: {word!r}")
print("target vertex:", is_synchronizing_word(g, c, word))

# walking a word backward from each vertex
print("\nreading '12' backward from each vertex:")
for v in g.sorted_vertices():
    end, path = follow_backward(g, c, v, "12")
    print(f"  {v} -> {end}  via edges {path.edges}")

# shortest synchronizing word by subset search
print("\nshortest synchronizing word:", find_synchronizing_word(g, c))

# blind search over all strong colorings
found = search_synchronizing_coloring(g)
assert found is not None
c2, w2 = found
print(f"search found a synchronizing coloring with word {w2!r}")

# the guarantee summary ties it to the graph-level hypotheses
info = synchronizing_guarantee(g)
print("\nguarantee summary:")
for k, v in sorted(info.items()):
    if k == "synchronizing_coloring" and v is not None:
        col, w = v
        print(f"  {k}: colors {col.color} with word {w!r}")
    else:
        print(f"  {k}: {v}")

# the synchronization diagram: a closed path at the target whose color
# word is the concatenation of the test word and the synchronizing word
diag = syncdiag_paths(g, c, word, "122")
print("\nsynchronization diagram for gamma'=122, gamma=1:")
print("  target vertex:", diag.vertex)
print("  mu' edges:", diag.mu_prime.edges)
print("  mu  edges:", diag.mu.edges)
print("  closed loop colors:", color_word(g, c, diag.closed))
