"""Class groups of quadratic and cubic fields, with certificates"""
