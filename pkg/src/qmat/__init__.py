"""Exact q-matroid computations over small finite fields."""
