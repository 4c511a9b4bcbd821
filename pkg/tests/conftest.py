import random

from ringkakeya import KakeyaSet, enumerate_directions, full_set
from ringkakeya.kakeya import _lines_in_direction


def random_full_witness(spec, seed: int) -> KakeyaSet:
    """The full point set with a randomly chosen witness line per direction."""
    rng = random.Random(seed)
    S = full_set(spec)
    witness = {}
    for d in enumerate_directions(spec):
        witness[d] = rng.choice(_lines_in_direction(d, spec))
    return KakeyaSet(spec=spec, points=S.points, witness=witness)
