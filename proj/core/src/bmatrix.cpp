#include "butson/bmatrix.hpp"

#include "butson/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace butson {

bool Monomial::is_valid(int n) const {
    if (int(perm.size()) != n || int(scales.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) return false;
        seen[p] = 1;
    }
    return true;
}

BHMatrix::BHMatrix(int n, int k) : n_(n), k_(k), e_(size_t(n) * n, 0) {
    if (n < 1 || k < 1) throw std::invalid_argument("BHMatrix: n and k must be >= 1");
}

BHMatrix::BHMatrix(int n, int k, std::vector<int> exps) : n_(n), k_(k), e_(std::move(exps)) {
    if (n < 1 || k < 1) throw std::invalid_argument("BHMatrix: n and k must be >= 1");
    if (e_.size() != size_t(n) * n) throw std::invalid_argument("BHMatrix: exponent array size mismatch");
    for (int v : e_)
        if (v < 0 || v >= k) throw std::invalid_argument("BHMatrix: exponent out of range [0,k)");
}

void BHMatrix::set_exp(int i, int j, int v) {
    if (v < 0 || v >= k_) throw std::invalid_argument("BHMatrix: exponent out of range [0,k)");
    e_[size_t(i) * n_ + j] = v;
}

Cyc inner_product(const BHMatrix& h, Axis axis, int i, int j) {
    const int n = h.order(), k = h.root_order();
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("inner_product: index out of range");
    Cyc c(k);
    for (int t = 0; t < n; ++t) {
        int d = (axis == Axis::rows) ? h.exp(i, t) - h.exp(j, t) : h.exp(t, i) - h.exp(t, j);
        if (d < 0) d += k;
        c.coeff(d) += 1;
    }
    return c;
}

std::optional<std::pair<int, int>> first_nonorthogonal_rows(const BHMatrix& h) {
    const int n = h.order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!inner_product(h, Axis::rows, i, j).is_zero()) return std::make_pair(i, j);
    return std::nullopt;
}

bool is_butson_hadamard(const BHMatrix& h) {
    return !first_nonorthogonal_rows(h).has_value();
}

BHMatrix apply_monomial(const BHMatrix& h, const Monomial& left, const Monomial& right) {
    const int n = h.order(), k = h.root_order();
    if (!left.is_valid(n) || !right.is_valid(n))
        throw std::invalid_argument("apply_monomial: monomial dimensions do not match matrix");
    std::vector<int> out(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = (left.scales[i] + h.exp(left.perm[i], right.perm[j]) - right.scales[j]) % k;
            if (v < 0) v += k;
            out[size_t(i) * n + j] = v;
        }
    return BHMatrix(n, k, std::move(out));
}

UMatrix::UMatrix(int n) : n_(n), a_(size_t(n) * n, std::complex<double>(1.0, 0.0)) {
    if (n < 1) throw std::invalid_argument("UMatrix: n must be >= 1");
}

UMatrix::UMatrix(int n, std::vector<std::complex<double>> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("UMatrix: n must be >= 1");
    if (a_.size() != size_t(n) * n) throw std::invalid_argument("UMatrix: entry array size mismatch");
    for (const auto& z : a_)
        if (std::abs(std::abs(z) - 1.0) > 1e-12)
            throw std::invalid_argument("UMatrix: entry modulus differs from 1 by more than 1e-12");
}

void UMatrix::set(int i, int j, std::complex<double> v) {
    if (std::abs(std::abs(v) - 1.0) > 1e-12)
        throw std::invalid_argument("UMatrix: entry modulus differs from 1 by more than 1e-12");
    a_[size_t(i) * n_ + j] = v;
}

UMatrix to_unimodular(const BHMatrix& h) {
    const int n = h.order(), k = h.root_order();
    std::vector<std::complex<double>> a(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[size_t(i) * n + j] = std::polar(1.0, 2.0 * M_PI * h.exp(i, j) / k);
    return UMatrix(n, std::move(a));
}

bool is_complex_hadamard_float(const UMatrix& h, double tol) {
    if (tol <= 0) throw std::invalid_argument("is_complex_hadamard_float: tol must be > 0");
    const int n = h.order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::complex<double> acc(0.0, 0.0);
            for (int t = 0; t < n; ++t) acc += h.at(i, t) * std::conj(h.at(j, t));
            if (std::abs(acc) >= tol * n) return false;
        }
    return true;
}

namespace {

// Strips '#' comments, returns whitespace-separated tokens per line.
std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

long parse_int_token(const std::string& t, const char* what) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw parse_error(std::string("expected integer ") + what + ", got '" + t + "'");
    }
    if (pos != t.size())
        throw parse_error(std::string("expected integer ") + what + ", got '" + t + "'");
    return v;
}

double parse_real_token(const std::string& t, const char* what) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw parse_error(std::string("expected real ") + what + ", got '" + t + "'");
    }
    if (pos != t.size())
        throw parse_error(std::string("expected real ") + what + ", got '" + t + "'");
    return v;
}

} // namespace

BHMatrix parse_bh(std::string_view text) {
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw parse_error("empty BH input");
    const auto& hdr = lines[0];
    if (hdr.size() != 3 || hdr[0] != "BH")
        throw parse_error("bad header: expected 'BH <n> <k>'");
    long n = parse_int_token(hdr[1], "n");
    long k = parse_int_token(hdr[2], "k");
    if (n < 1 || k < 1) throw parse_error("bad header: n and k must be >= 1");
    if (int(lines.size()) != n + 1)
        throw parse_error("expected " + std::to_string(n) + " matrix rows, got " +
                          std::to_string(lines.size() - 1));
    std::vector<int> exps;
    exps.reserve(size_t(n) * n);
    for (long i = 1; i <= n; ++i) {
        const auto& row = lines[size_t(i)];
        if (long(row.size()) != n)
            throw parse_error("ragged row " + std::to_string(i - 1) + ": expected " +
                              std::to_string(n) + " entries, got " + std::to_string(row.size()));
        for (const auto& t : row) {
            long v = parse_int_token(t, "exponent");
            if (v < 0 || v >= k)
                throw parse_error("exponent " + std::to_string(v) + " out of range [0," +
                                  std::to_string(k) + ")");
            exps.push_back(int(v));
        }
    }
    return BHMatrix(int(n), int(k), std::move(exps));
}

std::string emit_bh(const BHMatrix& h) {
    std::ostringstream os;
    os << "BH " << h.order() << ' ' << h.root_order() << '\n';
    for (int i = 0; i < h.order(); ++i) {
        for (int j = 0; j < h.order(); ++j) {
            if (j) os << ' ';
            os << h.exp(i, j);
        }
        os << '\n';
    }
    return os.str();
}

BHMatrix read_bh_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw parse_error("cannot open file: " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bh(buf.str());
}

void write_bh_file(const std::filesystem::path& p, const BHMatrix& h) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write file: " + p.string());
    out << emit_bh(h);
}

UMatrix parse_um(std::string_view text) {
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw parse_error("empty CH input");
    const auto& hdr = lines[0];
    if (hdr.size() != 2 || hdr[0] != "CH")
        throw parse_error("bad header: expected 'CH <n>'");
    long n = parse_int_token(hdr[1], "n");
    if (n < 1) throw parse_error("bad header: n must be >= 1");
    if (int(lines.size()) != n + 1)
        throw parse_error("expected " + std::to_string(n) + " matrix rows");
    std::vector<std::complex<double>> a;
    a.reserve(size_t(n) * n);
    for (long i = 1; i <= n; ++i) {
        const auto& row = lines[size_t(i)];
        if (long(row.size()) != 2 * n)
            throw parse_error("ragged row " + std::to_string(i - 1) +
                              ": expected re/im pairs for " + std::to_string(n) + " entries");
        for (long j = 0; j < n; ++j) {
            double re = parse_real_token(row[size_t(2 * j)], "re");
            double im = parse_real_token(row[size_t(2 * j + 1)], "im");
            a.emplace_back(re, im);
        }
    }
    return UMatrix(int(n), std::move(a));
}

std::string emit_um(const UMatrix& h) {
    std::ostringstream os;
    os.precision(17);
    os << "CH " << h.order() << '\n';
    for (int i = 0; i < h.order(); ++i) {
        for (int j = 0; j < h.order(); ++j) {
            if (j) os << ' ';
            auto z = h.at(i, j);
            os << z.real() << ' ' << z.imag();
        }
        os << '\n';
    }
    return os.str();
}

UMatrix read_um_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw parse_error("cannot open file: " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_um(buf.str());
}

} // namespace butson
