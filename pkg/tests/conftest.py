import numpy as np
import pytest

from grouploc import Perm, PermGroup, from_cycles, parse_cycles
from grouploc.presentations import Presentation, certify


# -- tiny independent oracles (kept free of the package's chain machinery) --


def brute_closure(gens):
    """All elements of <gens> as a set of image tuples, by plain BFS."""
    degree = gens[0].degree
    idp = tuple(range(degree))
    gen_tuples = [g.images for g in gens] + [g.inverse().images for g in gens]
    seen = {idp}
    frontier = [idp]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gen_tuples:
                u = tuple(g[x] for x in t)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


def compose_tuples(a, b):
    """Right factor acts first."""
    return tuple(a[x] for x in b)


@pytest.fixture(scope="session")
def A5():
    return from_cycles(["(1,2)(3,4)", "(1,3,5)"], 5, name="A5")


@pytest.fixture(scope="session")
def A5_pres(A5):
    return certify(Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"]), A5, A5.generators)


@pytest.fixture(scope="session")
def S5():
    return from_cycles(["(1,2)", "(1,2,3,4,5)"], 5, name="S5")


@pytest.fixture(scope="session")
def A6():
    return from_cycles(["(3,4)(5,6)", "(1,3)(2,4,5,6)"], 6, name="A6")


@pytest.fixture(scope="session")
def trivial():
    return PermGroup([Perm.identity(4)], name="1")
