"""Random group-expression trees for property tests."""

import random

from hypothesis import strategies as st

from plmorse.groupexpr import Atom, Product, Trivial, Wreath1, Wreath2, Z, Zn

LABELS = ["a", "b", "c", "ST(Y_0)", "ST(Y_1)", "ST(Y_12)", "π0 S_id(f|Y0,∂Y0)"]


def random_expr(rng: random.Random, depth: int = 6):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([
            lambda: Trivial(),
            lambda: Z(rng.randint(1, 3)),
            lambda: Zn(rng.randint(2, 9)),
            lambda: Atom(rng.choice(LABELS)),
        ])()
    kind = rng.random()
    if kind < 0.6:
        return Product(random_expr(rng, depth - 1) for _ in range(rng.randint(0, 4)))
    if kind < 0.8:
        return Wreath1(random_expr(rng, depth - 1), rng.choice([1, 2, 3, "k"]))
    return Wreath2(random_expr(rng, depth - 1), rng.choice([1, 2, "a"]), rng.choice([1, 3, "b"]))


leaves = st.one_of(
    st.just(Trivial()),
    st.integers(1, 3).map(Z),
    st.integers(2, 9).map(Zn),
    st.sampled_from(LABELS).map(Atom),
)

exprs = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.lists(kids, max_size=4).map(Product),
        st.tuples(kids, st.sampled_from([1, 2, "k"])).map(lambda t: Wreath1(*t)),
        st.tuples(kids, st.sampled_from([1, 2]), st.sampled_from([1, "b"])).map(lambda t: Wreath2(*t)),
    ),
    max_leaves=12,
)
