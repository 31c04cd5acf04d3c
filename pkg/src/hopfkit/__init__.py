"""hopfkit: exact computation with Hopf algebras and Hopf Galois extensions.

The package is layered bottom-up:

* :mod:`hopfkit.scalar` -- exact coefficient fields and parameter rings,
* :mod:`hopfkit.linalg` -- exact linear algebra over those rings,
* :mod:`hopfkit.ncalg` -- noncommutative polynomials and rewriting,
* :mod:`hopfkit.hopf` -- Hopf structure on presented algebras,
* :mod:`hopfkit.findim` -- finite-dimensional Hopf algebras by structure
  constants, group algebras and their duals,
* :mod:`hopfkit.comod` -- comodule algebras, gradings, coinvariants, and the
  Galois map,
* :mod:`hopfkit.galoisobj` -- cocycles, twisted group algebras, and Galois
  objects,
* :mod:`hopfkit.generic` -- the universal comodule-algebra construction and
  its specializations,
* :mod:`hopfkit.catalog` -- the built-in examples,
* :mod:`hopfkit.cli` -- the command-line verifier.
"""

__version__ = "0.1.0"
