"""splitcone: verification-grade numerics for light-cone Bessel kernel
operators on split quaternions.

Submodules: geometry (coordinates and measures), special (Bessel/Gamma
evaluators with integral oracles), quadrature (oscillatory engine),
kernels (regularized Fourier transforms and delta functionals),
operators (cone integral operators and test functions), mellin
(transform machinery and the ratio verification), kalgebra (exact basis
algebra), suites/cli/report (the verification driver).
"""

__version__ = "0.1.0"
