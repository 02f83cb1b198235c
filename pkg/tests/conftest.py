from functools import lru_cache

from hypothesis import settings

from slopefib.field import Field
from slopefib.pfaffian import build_family

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@lru_cache(maxsize=None)
def family(name: str, param: int, seed: int = 0, p: int | None = None):
    return build_family(name, param, seed, Field.prime(p))


@lru_cache(maxsize=None)
def horikawa_of(name: str, param: int, seed: int = 0):
    from slopefib.horikawa import horikawa

    return horikawa(family(name, param, seed))


@lru_cache(maxsize=None)
def invariants_of(name: str, param: int, seed: int = 0):
    from slopefib.cohomology import invariants

    return invariants(family(name, param, seed))
