"""Maximal orders of quadratic, cubic and quartic fields"""
