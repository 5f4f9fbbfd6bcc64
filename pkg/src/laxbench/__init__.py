"""laxbench: exact verification workbench for polynomial-matrix integrable
systems -- pencil-parameterized Poisson structures, multi-Hamiltonian
ladders, gauge normal forms, r-matrix chart brackets and Lax flows."""

__version__ = "0.1.0"
