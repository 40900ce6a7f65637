"""
liewide

Exact-arithmetic checks for wide and cyclic wide regular subalgebras of
semisimple Lie algebras, with brute-force verification on highest-weight modules.
"""

__version__ = "0.1.0"
