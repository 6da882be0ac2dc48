"""Random small transformation monoids and the end-to-end fuzz check."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .pipeline import decompose_to_groups, krohn_rhodes, predicted_flat_size
from .tmonoid import StateSet, generate

# certify exhaustively only below this many flat states; larger cases check bounds only
FUZZ_CERTIFY_LIMIT = 200_000


def random_monoid(rng: random.Random, max_states: int = 4, max_elements: int = 8, max_gens: int = 3):
    """Rejection-sample a monoid generated by random maps on at most ``max_states`` states."""
    while True:
        n = rng.randint(1, max_states)
        gens = [tuple(rng.randrange(n) for _ in range(n)) for _ in range(rng.randint(1, max_gens))]
        tm = generate(StateSet.range(n, "s"), gens)
        if len(tm) <= max_elements:
            return tm


@dataclass
class FuzzResult:
    cases: int = 0
    certified: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def run_fuzz(count: int = 200, seed: int = 0, strategy: str = "first-nonunit",
             certify_limit: int = FUZZ_CERTIFY_LIMIT, max_states: int = 4, max_elements: int = 8) -> FuzzResult:
    rng = random.Random(seed)
    res = FuzzResult()
    for _ in range(count):
        tm = random_monoid(rng, max_states, max_elements)
        res.cases += 1
        try:
            gd = decompose_to_groups(tm, strategy, certify=False)
            certify = predicted_flat_size(gd.leaves) <= certify_limit
            seq = krohn_rhodes(tm, strategy, certify=certify)
        except AssertionError as exc:
            res.failures.append((tm, str(exc)))
            continue
        if certify:
            res.certified += 1
            if not seq.verification.ok:
                res.failures.append((tm, str(seq.verification.witness)))
    return res
