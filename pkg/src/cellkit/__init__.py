"""Kazhdan-Lusztig cells, dual KL products and Kostant's problem for S_n."""

__version__ = "0.1.0"
