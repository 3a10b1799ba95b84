# Python
import math
from dataclasses import dataclass

# 3rd Party
import numpy as np

# 1st Party


def smallest_prime_at_least(n: int) -> int:
    candidate = max(n, 2)
    while True:
        if all(candidate % divisor for divisor in range(2, math.isqrt(candidate) + 1)):
            return candidate
        candidate += 1


@dataclass(frozen=True)
class PairwiseHashFamily():
    """ h_{a,b}(x) = ((a x + b) mod p) mod range, for every (a, b) in Z_p^2.

    Members are enumerated in a fixed order, family index = a * p + b, so "lowest family index" is well defined.
    """
    prime: int
    output_range: int

    @classmethod
    def for_range(cls, output_range: int, domain_size: int = 0) -> "PairwiseHashFamily":
        """ Smallest prime family covering 'output_range' whose field also separates the points 1, ..., domain_size. """
        prime = smallest_prime_at_least(max(output_range, domain_size + 1))
        return cls(prime=prime, output_range=output_range)

    @property
    def size(self) -> int:
        return self.prime * self.prime

    def __call__(self, a: int, b: int, x) -> np.ndarray:
        return ((a * np.asarray(x, dtype=np.int64) + b) % self.prime) % self.output_range

    def evaluate_block(self, a: int, x: np.ndarray) -> np.ndarray:
        """ Hash values for the members (a, 0), ..., (a, p - 1) at every point of x, shape p x len(x). """
        b = np.arange(self.prime, dtype=np.int64)[:, np.newaxis]
        return ((a * np.asarray(x, dtype=np.int64)[np.newaxis, :] + b) % self.prime) % self.output_range
