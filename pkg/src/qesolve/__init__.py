"""qesolve: exact solver and verifier for quasi-exactly-solvable polynomial
oscillators in the large spatial-dimension limit."""

__version__ = "0.1.0"
