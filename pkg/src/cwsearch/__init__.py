"""Existence search for circulant weighing matrices via sequence compression.

Submodules
----------
seqcore    exact PAF / DFT / PSD sequence algebra and verification
affine     affine index maps mod k, orbits, canonical forms, lifting
compress   m-compression, fiber tables, mixed-radix preimage indexing
contents   feasible multiplicity vectors of compressed candidates
canon      canonical orbit representatives of a fixed content
liftsearch sharded exhaustive search of compression preimages
pipeline   end-to-end existence / nonexistence runs
cli        command-line entry points
"""

__version__ = "0.1.0"
