"""reflectq: exact quantum R/K matrices of affine type A and symbolic
verification of the identities they satisfy (Yang-Baxter, reflection,
intertwining, q-hypergeometric and combinatorial limits)."""

__version__ = "0.1.0"
