#pragma once

#include "treeharm/psdo.hpp"

namespace treeharm {

// Brute-force references the quadrature-based operations are checked against.
// These never go through the spectral grid: they are plain finite linear
// algebra over the decomposition data.

/// sum_k f_k (x) g_k(y) as a dense matrix.
KernelMatrix outer_product_kernel(const NuclearDecomposition& dec, int n);

/// sum_k sum_x f_k(x) g_k(x).
Complex direct_trace(const NuclearDecomposition& dec);

}  // namespace treeharm
