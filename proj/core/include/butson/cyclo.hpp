#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <vector>

namespace butson {

using Int = boost::multiprecision::cpp_int;

/// Cyclotomic polynomial Phi_k, coefficients in ascending degree order.
/// Computed by exact division of x^k - 1 by the product of Phi_d over the
/// proper divisors d of k. Results are memoized; safe to call concurrently.
std::vector<Int> cyclotomic_poly(int k);

/// An element of Z[zeta_k] held in the full length-k power basis:
/// coeffs[j] is the integer coefficient of zeta_k^j. Values are reduced
/// modulo Phi_k only inside the zero test, so root multiplication and
/// conjugation stay cyclic shifts / index flips.
class Cyc {
public:
    Cyc() : k_(1), c_(1) {}
    explicit Cyc(int k);
    Cyc(int k, std::vector<Int> coeffs);

    /// zeta_k^e (e taken mod k, negatives allowed).
    static Cyc root(int k, long e);
    /// The rational integer v, embedded as v * zeta^0.
    static Cyc integer(int k, Int v);

    int order() const { return k_; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(int j) const { return c_[j]; }
    Int& coeff(int j) { return c_[j]; }

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator-() const;
    Cyc operator*(const Cyc& o) const;
    Cyc& operator+=(const Cyc& o);
    Cyc& operator-=(const Cyc& o);

    /// Multiplication by zeta_k^e: a cyclic shift of the coefficients.
    Cyc mul_root(long e) const;
    /// Complex conjugation: coefficient of zeta^j moves to (k-j) mod k.
    Cyc conj() const;

    /// True iff the value is zero in the ring, i.e. the coefficient
    /// polynomial is divisible by Phi_k.
    bool is_zero() const;
    /// Ring equality: (a - b) reduces to zero mod Phi_k.
    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    /// Floating evaluation at e^{2*pi*i/k}. Validation hook only.
    std::complex<double> to_complex() const;

    /// "(c0,c1,...,c{k-1})"
    std::string str() const;

private:
    int k_;
    std::vector<Int> c_;
    void check_same_order(const Cyc& o) const;
};

} // namespace butson
