"""The (a, b, c) parameterization of S4 quartic fields and its bounds"""
