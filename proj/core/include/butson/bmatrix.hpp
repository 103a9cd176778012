#pragma once

#include "butson/cyclo.hpp"

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace butson {

enum class Axis { rows, cols };

/// A monomial transformation: row (or column) i of the image is row perm[i]
/// of the source, scaled by zeta^{scales[i]}.
struct Monomial {
    std::vector<int> perm;
    std::vector<int> scales;

    static Monomial identity(int n) {
        Monomial m;
        m.perm.resize(n);
        m.scales.assign(n, 0);
        for (int i = 0; i < n; ++i) m.perm[i] = i;
        return m;
    }
    bool is_valid(int n) const;
};

/// n x n Butson matrix stored as exponents: entry (i,j) represents
/// zeta_k^{exps(i,j)}. Immutable in spirit; operations return new values.
class BHMatrix {
public:
    BHMatrix(int n, int k);
    BHMatrix(int n, int k, std::vector<int> exps);

    int order() const { return n_; }
    int root_order() const { return k_; }
    int exp(int i, int j) const { return e_[size_t(i) * n_ + j]; }
    void set_exp(int i, int j, int v);
    const std::vector<int>& exps() const { return e_; }

    bool operator==(const BHMatrix& o) const {
        return n_ == o.n_ && k_ == o.k_ && e_ == o.e_;
    }

private:
    int n_, k_;
    std::vector<int> e_;
};

/// Exact inner product of two rows (or columns) as a counting vector over
/// exponent differences: coeff d counts positions where the difference is d.
Cyc inner_product(const BHMatrix& h, Axis axis, int i, int j);

/// First row pair (i<j) with nonzero inner product, if any.
std::optional<std::pair<int, int>> first_nonorthogonal_rows(const BHMatrix& h);

bool is_butson_hadamard(const BHMatrix& h);

/// H(M,N) = M H N*: image exps (i,j) = left.scales[i]
///   + H.exps(left.perm[i], right.perm[j]) - right.scales[j]  (mod k).
BHMatrix apply_monomial(const BHMatrix& h, const Monomial& left, const Monomial& right);

/// General unit-modulus complex matrix, for the continuous-coefficient path.
class UMatrix {
public:
    explicit UMatrix(int n);
    UMatrix(int n, std::vector<std::complex<double>> entries);

    int order() const { return n_; }
    std::complex<double> at(int i, int j) const { return a_[size_t(i) * n_ + j]; }
    void set(int i, int j, std::complex<double> v);

private:
    int n_;
    std::vector<std::complex<double>> a_;
};

UMatrix to_unimodular(const BHMatrix& h);

/// True iff every off-diagonal row inner product has modulus < tol * n.
bool is_complex_hadamard_float(const UMatrix& h, double tol);

// BH file format: line 1 "BH <n> <k>", then n rows of n exponents in [0,k);
// '#' starts a comment line.
BHMatrix parse_bh(std::string_view text);
std::string emit_bh(const BHMatrix& h);
BHMatrix read_bh_file(const std::filesystem::path& p);
void write_bh_file(const std::filesystem::path& p, const BHMatrix& h);

// CH file format for UMatrix: line 1 "CH <n>", then n rows of 2n reals
// (re im pairs); '#' starts a comment line.
UMatrix parse_um(std::string_view text);
std::string emit_um(const UMatrix& h);
UMatrix read_um_file(const std::filesystem::path& p);

} // namespace butson
