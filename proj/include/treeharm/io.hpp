#pragma once

#include <map>
#include <string>

#include "treeharm/psdo.hpp"

namespace treeharm {

/// One run's parameters. D defaults to R (the smallest depth making every
/// height in the kernel formulas exact); M defaults to 256.
struct RunConfig {
    int q = 2;
    int R = 4;
    int D = -1;  // -1: use R
    int M = 256;
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    std::map<std::string, double> tol;  // per-check overrides, keyed by check id

    int cylinder_depth() const { return D < 0 ? R : D; }
    double tolerance(const std::string& key, double fallback) const {
        const auto it = tol.find(key);
        return it == tol.end() ? fallback : it->second;
    }
    /// Throws std::invalid_argument unless q >= 2, R >= 0, D >= R, M >= 2.
    void validate() const;
};

/// Fixed 17-significant-digit decimal form; the only float format used in
/// serialized files, so identical runs emit identical bytes.
std::string format_float(double v);
std::string format_complex(const Complex& v);  // "re im" pair, same format

std::string hex_digest(std::uint64_t h);

// --- file formats -----------------------------------------------------------
// Tree functions and decompositions are JSON; kernels, spectral grids, and
// spectral functions are CSV whose first line records q, R, D, M.

void write_tree_function(const std::string& path, const TreeFunction& f, const RunConfig& cfg);
TreeFunction read_tree_function(const std::string& path, const TreeBall& ball);

void write_decomposition(const std::string& path, const NuclearDecomposition& dec, const RunConfig& cfg);
NuclearDecomposition read_decomposition(const std::string& path, const TreeBall& ball);

void write_spectral_function(const std::string& path, const SpectralFunction& F, const RunConfig& cfg);
SpectralFunction read_spectral_function(const std::string& path, const CylinderPartition& part,
                                        const SpectralGrid& grid);

void write_kernel_csv(const std::string& path, const KernelMatrix& K, const RunConfig& cfg);
KernelMatrix read_kernel_csv(const std::string& path);

void write_grid_csv(const std::string& path, const SpectralGrid& grid, const RunConfig& cfg);

}  // namespace treeharm
