"""eisrank: Eisenstein-local cuspidal Hecke algebras of weight k and prime
level, computed from modular symbols, cross-verified against elementary
p-th-power residue criteria."""

__version__ = "0.1.0"
