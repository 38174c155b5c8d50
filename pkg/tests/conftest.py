from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-4, max_value=4)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
positive_rationals = st.builds(Fraction, st.integers(1, 30), st.integers(1, 7))


def vectors(dim, elements=small_ints):
    return st.tuples(*([elements] * dim))
