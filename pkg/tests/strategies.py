from hypothesis import strategies as st

from agcodes.gf import GF
from agcodes.poly import MultiPoly

F9 = GF(3, 2, "a^2+1")
NAMES = ["x", "y"]


@st.composite
def polys(draw, field=F9, names=NAMES, max_deg=3, max_terms=5):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg)] * len(names)),
        st.integers(1, field.q - 1), max_size=max_terms))
    p = MultiPoly.zero(field, names)
    for e, c in terms.items():
        p = p + MultiPoly.monomial(field, names, e, field.elem(c))
    return p


def nonzero_polys(**kw):
    return polys(**kw).filter(lambda p: not p.is_zero())
