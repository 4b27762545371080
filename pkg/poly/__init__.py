"""Integer polynomials: parsing, discriminants, irreducibility and Galois groups"""
