"""Cell-planning toolkit: base-station placement on weighted city maps.

Combines k-medoids clustering with GSM radio dimensioning (link budget,
Okumura-Hata coverage, Erlang-B capacity) to choose base-station sites
and per-cell boundaries.
"""

__version__ = "0.1.0"
