#include "treeharm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace treeharm {

void RunConfig::validate() const {
    if (q < 2) throw std::invalid_argument("config: q must be >= 2");
    if (R < 0) throw std::invalid_argument("config: R must be >= 0");
    if (D >= 0 && D < R) throw std::invalid_argument("config: D must be >= R");
    if (D > R) throw std::invalid_argument("config: cells deeper than the ball radius are not representable; use D = R");
    if (M < 2) throw std::invalid_argument("config: M must be >= 2");
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(const Complex& v) {
    return format_float(v.real()) + " " + format_float(v.imag());
}

std::string hex_digest(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::string csv_header(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# q=" << cfg.q << " R=" << cfg.R << " D=" << cfg.cylinder_depth() << " M=" << cfg.M;
    return os.str();
}

// Sparse vertex map {"0": [re, im], ...} with fixed float formatting.
void emit_values(std::ostream& out, const std::vector<Complex>& values) {
    out << '{';
    bool first = true;
    for (std::size_t v = 0; v < values.size(); ++v) {
        if (values[v] == Complex{}) continue;
        if (!first) out << ',';
        first = false;
        out << '"' << v << "\":[" << format_float(values[v].real()) << ','
            << format_float(values[v].imag()) << ']';
    }
    out << '}';
}

std::vector<Complex> parse_values(const nlohmann::json& j, const TreeBall& ball) {
    std::vector<Complex> values(static_cast<std::size_t>(ball.size()), Complex{});
    for (const auto& [key, val] : j.items()) {
        const long idx = std::stol(key);
        if (idx < 0 || idx >= ball.size())
            throw std::runtime_error("tree function file: vertex index out of range: " + key);
        if (!val.is_array() || val.size() != 2)
            throw std::runtime_error("tree function file: value must be [re, im]");
        values[static_cast<std::size_t>(idx)] = Complex(val[0].get<double>(), val[1].get<double>());
    }
    return values;
}

void check_file_dims(const nlohmann::json& j, const TreeBall& ball) {
    if (j.at("q").get<int>() != ball.q() || j.at("R").get<int>() != ball.radius())
        throw std::runtime_error("file q/R do not match the configured ball");
}

}  // namespace

void write_tree_function(const std::string& path, const TreeFunction& f, const RunConfig& cfg) {
    auto out = open_out(path);
    out << "{\"format\":\"tree-function\",\"q\":" << cfg.q << ",\"R\":" << cfg.R << ",\"values\":";
    emit_values(out, f.values);
    out << "}\n";
}

TreeFunction read_tree_function(const std::string& path, const TreeBall& ball) {
    auto in = open_in(path);
    nlohmann::json j;
    in >> j;
    check_file_dims(j, ball);
    return {&ball, parse_values(j.at("values"), ball)};
}

void write_decomposition(const std::string& path, const NuclearDecomposition& dec, const RunConfig& cfg) {
    auto out = open_out(path);
    out << "{\"format\":\"nuclear-decomposition\",\"q\":" << cfg.q << ",\"R\":" << cfg.R << ",\"pairs\":[";
    for (std::size_t k = 0; k < dec.pairs.size(); ++k) {
        if (k) out << ',';
        out << "{\"f\":";
        emit_values(out, dec.pairs[k].first.values);
        out << ",\"g\":";
        emit_values(out, dec.pairs[k].second.values);
        out << '}';
    }
    out << "]}\n";
}

NuclearDecomposition read_decomposition(const std::string& path, const TreeBall& ball) {
    auto in = open_in(path);
    nlohmann::json j;
    in >> j;
    check_file_dims(j, ball);
    NuclearDecomposition dec;
    for (const auto& pair : j.at("pairs")) {
        TreeFunction f{&ball, parse_values(pair.at("f"), ball)};
        TreeFunction g{&ball, parse_values(pair.at("g"), ball)};
        dec.pairs.emplace_back(std::move(f), std::move(g));
    }
    return dec;
}

void write_spectral_function(const std::string& path, const SpectralFunction& F, const RunConfig& cfg) {
    auto out = open_out(path);
    out << csv_header(cfg) << "\ncell,node,re,im\n";
    for (int c = 0; c < F.part->count(); ++c)
        for (int m = 0; m < F.grid->M; ++m)
            out << c << ',' << m << ',' << format_float(F.at(c, m).real()) << ','
                << format_float(F.at(c, m).imag()) << '\n';
}

SpectralFunction read_spectral_function(const std::string& path, const CylinderPartition& part,
                                        const SpectralGrid& grid) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line);  // dimension header
    {
        int q = 0, R = 0, D = 0, M = 0;
        if (std::sscanf(line.c_str(), "# q=%d R=%d D=%d M=%d", &q, &R, &D, &M) != 4)
            throw std::runtime_error("spectral function file: malformed header: " + line);
        if (q != part.ball().q() || D != part.depth() || M != grid.M)
            throw std::runtime_error("spectral function file: header does not match the configuration");
    }
    std::getline(in, line);  // column header
    auto F = SpectralFunction::zero(part, grid);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int c, m;
        double re, im;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &c, &m, &re, &im) != 4)
            throw std::runtime_error("spectral function file: malformed row: " + line);
        if (c < 0 || c >= part.count() || m < 0 || m >= grid.M)
            throw std::runtime_error("spectral function file: index out of range: " + line);
        F.at(c, m) = Complex(re, im);
    }
    return F;
}

void write_kernel_csv(const std::string& path, const KernelMatrix& K, const RunConfig& cfg) {
    auto out = open_out(path);
    out << csv_header(cfg) << "\nrow,col,re,im\n";
    for (Eigen::Index x = 0; x < K.rows(); ++x)
        for (Eigen::Index y = 0; y < K.cols(); ++y)
            out << x << ',' << y << ',' << format_float(K(x, y).real()) << ','
                << format_float(K(x, y).imag()) << '\n';
}

KernelMatrix read_kernel_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    struct Entry {
        int x, y;
        Complex v;
    };
    std::vector<Entry> entries;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int x, y;
        double re, im;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &x, &y, &re, &im) != 4)
            throw std::runtime_error("kernel file: malformed row: " + line);
        entries.push_back({x, y, Complex(re, im)});
        n = std::max({n, x + 1, y + 1});
    }
    KernelMatrix K = KernelMatrix::Zero(n, n);
    for (const auto& e : entries) K(e.x, e.y) = e.v;
    return K;
}

void write_grid_csv(const std::string& path, const SpectralGrid& grid, const RunConfig& cfg) {
    auto out = open_out(path);
    out << csv_header(cfg) << "\nnode,s,base_weight,plancherel_weight\n";
    for (int m = 0; m < grid.M; ++m)
        out << m << ',' << format_float(grid.nodes[m]) << ',' << format_float(grid.base_weights[m])
            << ',' << format_float(grid.plancherel_weights[m]) << '\n';
}

}  // namespace treeharm
