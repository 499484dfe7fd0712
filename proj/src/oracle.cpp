#include "treeharm/oracle.hpp"

namespace treeharm {

KernelMatrix outer_product_kernel(const NuclearDecomposition& dec, int n) {
    KernelMatrix K = KernelMatrix::Zero(n, n);
    for (const auto& [f, g] : dec.pairs) {
        if (static_cast<int>(f.values.size()) != n || static_cast<int>(g.values.size()) != n)
            throw std::invalid_argument("outer_product_kernel: pair size does not match n");
        Eigen::Map<const Eigen::VectorXcd> fv(f.values.data(), n);
        Eigen::Map<const Eigen::VectorXcd> gv(g.values.data(), n);
        K += fv * gv.transpose();
    }
    return K;
}

Complex direct_trace(const NuclearDecomposition& dec) {
    Complex acc{};
    for (const auto& [f, g] : dec.pairs)
        for (std::size_t x = 0; x < f.values.size(); ++x) acc += f.values[x] * g.values[x];
    return acc;
}

}  // namespace treeharm
