"""Seeded field factories and brute-force oracles shared by tests and `kstails verify`.

Public Interfaces:
- `random_hermitian`, `odd_field`, `band_limited`: reproducible real fields.
- `dft_coefficients`, `triple_sum`: direct O(N^2) sums used as references.
"""

from kstails.testing.fields import band_limited, odd_field, random_hermitian
from kstails.testing.oracles import dft_coefficients, triple_sum

__all__ = [
    "band_limited",
    "odd_field",
    "random_hermitian",
    "dft_coefficients",
    "triple_sum",
]
