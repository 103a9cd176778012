#include "butson/cyclo.hpp"

#include "butson/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace butson {

namespace {

// Polynomials are coefficient vectors in ascending degree, no trailing zeros
// maintained except where noted.

std::vector<Int> poly_trim(std::vector<Int> p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Exact division a / b for monic b; throws on nonzero remainder.
std::vector<Int> poly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
    a = poly_trim(std::move(a));
    const int db = int(b.size()) - 1;
    if (int(a.size()) - 1 < db) throw std::logic_error("poly_div_exact: degree underflow");
    std::vector<Int> q(a.size() - db);
    for (int i = int(a.size()) - 1; i >= db; --i) {
        Int c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (const Int& c : a)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

// Remainder of a modulo monic b.
std::vector<Int> poly_rem_monic(std::vector<Int> a, const std::vector<Int>& b) {
    const int db = int(b.size()) - 1;
    for (int i = int(a.size()) - 1; i >= db; --i) {
        Int c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(db == 0 ? 1 : db);
    return a;
}

} // namespace

std::vector<Int> cyclotomic_poly(int k) {
    if (k < 1) throw std::invalid_argument("cyclotomic_poly: k must be >= 1");
    static std::map<int, std::vector<Int>> cache;
    static std::mutex mtx;
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    // x^k - 1
    std::vector<Int> num(k + 1);
    num[0] = -1;
    num[k] = 1;
    std::vector<Int> den{1};
    for (int d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        den = poly_mul(den, cyclotomic_poly(d));
    }
    auto phi = poly_div_exact(std::move(num), poly_trim(std::move(den)));
    std::lock_guard lock(mtx);
    cache.emplace(k, phi);
    return phi;
}

Cyc::Cyc(int k) : k_(k), c_(k) {
    if (k < 1) throw std::invalid_argument("Cyc: k must be >= 1");
}

Cyc::Cyc(int k, std::vector<Int> coeffs) : k_(k), c_(std::move(coeffs)) {
    if (k < 1) throw std::invalid_argument("Cyc: k must be >= 1");
    if (int(c_.size()) != k) throw std::invalid_argument("Cyc: coefficient vector must have length k");
}

Cyc Cyc::root(int k, long e) {
    Cyc r(k);
    long j = e % k;
    if (j < 0) j += k;
    r.c_[size_t(j)] = 1;
    return r;
}

Cyc Cyc::integer(int k, Int v) {
    Cyc r(k);
    r.c_[0] = std::move(v);
    return r;
}

void Cyc::check_same_order(const Cyc& o) const {
    if (k_ != o.k_) throw std::invalid_argument("Cyc: mismatched root orders");
}

Cyc Cyc::operator+(const Cyc& o) const {
    Cyc r = *this;
    r += o;
    return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
    Cyc r = *this;
    r -= o;
    return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
    check_same_order(o);
    for (int j = 0; j < k_; ++j) c_[j] += o.c_[j];
    return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
    check_same_order(o);
    for (int j = 0; j < k_; ++j) c_[j] -= o.c_[j];
    return *this;
}

Cyc Cyc::operator-() const {
    Cyc r(k_);
    for (int j = 0; j < k_; ++j) r.c_[j] = -c_[j];
    return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
    check_same_order(o);
    Cyc r(k_);
    for (int i = 0; i < k_; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < k_; ++j) {
            if (o.c_[j] == 0) continue;
            int t = i + j;
            if (t >= k_) t -= k_;
            r.c_[t] += c_[i] * o.c_[j];
        }
    }
    return r;
}

Cyc Cyc::mul_root(long e) const {
    long s = e % k_;
    if (s < 0) s += k_;
    Cyc r(k_);
    for (int j = 0; j < k_; ++j) {
        int t = j + int(s);
        if (t >= k_) t -= k_;
        r.c_[t] = c_[j];
    }
    return r;
}

Cyc Cyc::conj() const {
    Cyc r(k_);
    for (int j = 0; j < k_; ++j) r.c_[(k_ - j) % k_] = c_[j];
    return r;
}

bool Cyc::is_zero() const {
    const auto phi = cyclotomic_poly(k_);
    auto rem = poly_rem_monic(c_, phi);
    for (const Int& c : rem)
        if (c != 0) return false;
    return true;
}

bool Cyc::operator==(const Cyc& o) const {
    check_same_order(o);
    return (*this - o).is_zero();
}

std::complex<double> Cyc::to_complex() const {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < k_; ++j) {
        if (c_[j] == 0) continue;
        double ang = 2.0 * std::numbers::pi * double(j) / double(k_);
        acc += c_[j].convert_to<double>() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

std::string Cyc::str() const {
    std::ostringstream os;
    os << '(';
    for (int j = 0; j < k_; ++j) {
        if (j) os << ',';
        os << c_[j];
    }
    os << ')';
    return os.str();
}

} // namespace butson
