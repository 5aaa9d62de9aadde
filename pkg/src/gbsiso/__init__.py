"""Isomorphism decisions for two-loop generalized Baumslag-Solitar graphs."""
