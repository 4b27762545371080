"""Exact integer arithmetic: factorizations, radicals, S-parts and shapes"""
