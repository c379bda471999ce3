"""
Equal marginals are not enough for mixed states
===============================================

Mix the two GHZ-type states (|000> +- |111>)/sqrt(2) with weights (1/3, 2/3)
and (1/2, 1/2). All three two-party marginals coincide, yet the mixtures
have different spectra, so no unitary at all relates them. Both have rank 2:
it is the spectrum, not the rank, that separates them.
"""

from luequiv import counterexample_report

rep = counterexample_report()
print("marginal residuals (trace out 1, 2, 3):", rep.reduced_residuals)
print("spectrum rho1:", rep.spectrum_1)
print("spectrum rho2:", rep.spectrum_2)
print("ranks:", rep.ranks)
print("max spectral gap:", rep.max_spectral_gap)
print("verdict:", rep.verdict.value)
