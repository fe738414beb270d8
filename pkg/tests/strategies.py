from hypothesis import assume, strategies as st

from galoiscat.algebra import permutation_group, relabel
from galoiscat.catalog import named_group

SMALL = ["C1", "C2", "C3", "C4", "V4", "C5", "S3", "C6", "D4", "Q8"]
CORPUS = ["C2", "C3", "C4", "V4", "S3", "D4", "Q8", "A4"]


@st.composite
def relabelled_groups(draw, names=SMALL):
    g = named_group(draw(st.sampled_from(names)))
    perm = draw(st.permutations(range(g.size)))
    return relabel(g, perm)


@st.composite
def perm_groups(draw, degree=4, max_gens=3, max_order=12):
    gens = draw(st.lists(st.permutations(range(degree)), min_size=1, max_size=max_gens))
    g, _ = permutation_group([tuple(p) for p in gens], degree, "P")
    assume(g.size <= max_order)
    return g


groups = st.one_of(relabelled_groups(), perm_groups())
