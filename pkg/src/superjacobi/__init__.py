"""Exact symbolic kernel for odd Jacobi structures and their derived Loday-Poisson brackets."""
