from hypothesis import strategies as st

from commprob.algebra import (
    EXCEPTIONAL,
    GL,
    MIN_RANK,
    Additive,
    Borel,
    Simple,
    SimpleType,
    Torus,
    Trivial,
    UnipotentRadical,
    product,
)

classical_types = st.builds(
    lambda fam, extra: SimpleType(fam, MIN_RANK[fam] + extra),
    st.sampled_from(sorted(MIN_RANK)),
    st.integers(0, 12),
)
exceptional_types = st.sampled_from(sorted(EXCEPTIONAL)).map(SimpleType.exceptional)
simple_types = st.one_of(classical_types, exceptional_types)

atoms = st.one_of(
    simple_types.map(Simple),
    st.integers(1, 12).map(GL),
    st.integers(1, 20).map(Torus),
    st.integers(1, 20).map(Additive),
    simple_types.map(UnipotentRadical),
    simple_types.map(Borel),
)

# nonempty product of 1..5 atoms; never trivial
nontrivial_exprs = st.lists(atoms, min_size=1, max_size=5).map(lambda fs: product(*fs))
exprs = st.one_of(st.just(Trivial()), nontrivial_exprs)
