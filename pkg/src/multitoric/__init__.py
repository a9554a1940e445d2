"""Toric ideals of poset multichains and graph edge rings with loops."""
