"""Hecke algebra of S_n: standard basis arithmetic, KL data, dual KL basis."""

from .algebra import (
    HeckeElement,
    kl_simple,
    multiply_standard,
    product,
    simple_element,
    standard_basis_element,
)
from .klcache import KLCache, a_function, get_cache, install_cache

__all__ = [
    "HeckeElement",
    "KLCache",
    "a_function",
    "get_cache",
    "install_cache",
    "kl_simple",
    "multiply_standard",
    "product",
    "simple_element",
    "standard_basis_element",
]
from .kh import DualProducts, KhMode, KhReport, dual_product, kh_search, kh_witness  # noqa: E402

__all__ += ["DualProducts", "KhMode", "KhReport", "dual_product", "kh_search", "kh_witness"]
