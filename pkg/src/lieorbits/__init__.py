"""Isotropic foliations of regular coadjoint orbits from the Iwasawa decomposition.

Subpackages:
  rootsys   - exact root-system combinatorics (admissible systems, sigma chains)
  liealg    - exact Chevalley-basis engine for split and complex-as-real forms
  realforms - numeric matrix realizations of classical real forms
  catalog   - appendix-table reproduction and serialization
  cli       - command-line interface
"""

__version__ = "0.1.0"
