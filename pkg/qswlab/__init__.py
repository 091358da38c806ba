# Quantum stochastic walk lab package
