#include "butson/construct.hpp"

#include "butson/errors.hpp"

#include <numeric>
#include <stdexcept>

namespace butson {

BHMatrix fourier(int n) {
    if (n < 1) throw std::invalid_argument("fourier: n must be >= 1");
    std::vector<int> e(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e[size_t(i) * n + j] = int((long(i) * j) % n);
    return BHMatrix(n, n, std::move(e));
}

BHMatrix lift_root_order(const BHMatrix& h, int target_k) {
    const int k = h.root_order();
    if (k == target_k) return h;
    if (target_k % k != 0) throw std::invalid_argument("lift_root_order: target not a multiple of k");
    const int f = target_k / k;
    const int n = h.order();
    std::vector<int> e(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e[size_t(i) * n + j] = h.exp(i, j) * f;
    return BHMatrix(n, target_k, std::move(e));
}

BHMatrix kronecker(const BHMatrix& a, const BHMatrix& b) {
    const int k = std::lcm(a.root_order(), b.root_order());
    const BHMatrix al = lift_root_order(a, k);
    const BHMatrix bl = lift_root_order(b, k);
    const int na = al.order(), nb = bl.order(), n = na * nb;
    std::vector<int> e(size_t(n) * n);
    for (int i = 0; i < na; ++i)
        for (int r = 0; r < nb; ++r)
            for (int j = 0; j < na; ++j)
                for (int s = 0; s < nb; ++s) {
                    int v = al.exp(i, j) + bl.exp(r, s);
                    if (v >= k) v -= k;
                    e[size_t(i * nb + r) * n + (j * nb + s)] = v;
                }
    return BHMatrix(n, k, std::move(e));
}

BHMatrix circulant_bh(int k) {
    if (k < 1 || (k % 2 == 0 && k != 4))
        throw std::invalid_argument("circulant_bh: k must be odd or equal to 4");
    std::vector<int> first(k);
    if (k == 4) {
        first = {0, 1, 2, 1};
    } else {
        for (int j = 1; j <= k; ++j) first[j - 1] = int((long(j) * (j - 1) / 2) % k);
    }
    std::vector<int> e(size_t(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) e[size_t(i) * k + j] = first[((j - i) % k + k) % k];
    BHMatrix h(k, k, std::move(e));
    if (auto bad = first_nonorthogonal_rows(h))
        throw property_error("circulant_bh: construction failed the Hadamard check", bad->first,
                             bad->second);
    return h;
}

BHMatrix bush_type(const BHMatrix& k_seed) {
    const int n = k_seed.order(), k = k_seed.root_order();
    for (int j = 0; j < n; ++j)
        if (k_seed.exp(0, j) != 0)
            throw std::invalid_argument("bush_type: seed's first row must be all-ones");
    if (!is_butson_hadamard(k_seed)) throw std::invalid_argument("bush_type: seed is not Hadamard");

    // Block (u,v) = rank-one product from row (v-u) mod n:
    // entry (a,b) = conj(K[r][a]) * K[r][b].
    const int N = n * n;
    std::vector<int> e(size_t(N) * N);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            const int r = ((v - u) % n + n) % n;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    int val = (k_seed.exp(r, b) - k_seed.exp(r, a)) % k;
                    if (val < 0) val += k;
                    e[size_t(u * n + a) * N + (v * n + b)] = val;
                }
        }
    BHMatrix h(N, k, std::move(e));

    auto report = weak_bush_blocks(h, n);
    if (!report.bush) {
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                const Cyc want =
                    (u == v) ? Cyc::integer(k, n) : Cyc(k);
                for (int t = 0; t < n; ++t)
                    if (report.blocks[u][v].row_sums[t] != want ||
                        report.blocks[u][v].col_sums[t] != want)
                        throw property_error("bush_type: block sum validation failed", u, v);
            }
    }
    if (auto bad = first_nonorthogonal_rows(h))
        throw property_error("bush_type: output failed the Hadamard check", bad->first, bad->second);
    return h;
}

WeakBushReport weak_bush_blocks(const BHMatrix& h, int m) {
    const int n = h.order(), k = h.root_order();
    if (m < 1 || n % m != 0) throw std::invalid_argument("weak_bush_blocks: m must divide n");
    const int nb = n / m;
    WeakBushReport rep;
    rep.m = m;
    rep.bush = true;
    rep.blocks.assign(size_t(nb), std::vector<BlockSums>(size_t(nb)));
    for (int bi = 0; bi < nb; ++bi)
        for (int bj = 0; bj < nb; ++bj) {
            BlockSums& bs = rep.blocks[bi][bj];
            bs.row_sums.assign(size_t(m), Cyc(k));
            bs.col_sums.assign(size_t(m), Cyc(k));
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    const int e = h.exp(bi * m + a, bj * m + b);
                    bs.row_sums[a].coeff(e) += 1;
                    bs.col_sums[b].coeff(e) += 1;
                }
            const Cyc want = (bi == bj) ? Cyc::integer(k, m) : Cyc(k);
            for (int t = 0; t < m && rep.bush; ++t)
                if (bs.row_sums[t] != want || bs.col_sums[t] != want) rep.bush = false;
        }
    return rep;
}

namespace {

// Minimal GF(p^r) arithmetic: elements encoded as base-p digit vectors packed
// into ints [0, q). Only what the quadratic character needs.
struct GaloisField {
    int q, p, r;
    std::vector<int> f; // irreducible monic poly coefficients, degree r

    explicit GaloisField(int q_in) : q(q_in) {
        p = smallest_prime_factor(q);
        int t = q;
        r = 0;
        while (t > 1) {
            if (t % p != 0) throw std::invalid_argument("paley_seed: q is not a prime power");
            t /= p;
            ++r;
        }
        find_irreducible();
    }

    static int smallest_prime_factor(int v) {
        for (int d = 2; d * d <= v; ++d)
            if (v % d == 0) return d;
        return v;
    }

    std::vector<int> decode(int e) const {
        std::vector<int> d(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) {
            d[size_t(i)] = e % p;
            e /= p;
        }
        return d;
    }

    int sub(int a, int b) const {
        auto da = decode(a), db = decode(b);
        int e = 0, base = 1;
        for (int i = 0; i < r; ++i) {
            e += ((da[size_t(i)] - db[size_t(i)]) % p + p) % p * base;
            base *= p;
        }
        return e;
    }

    int mul(int a, int b) const {
        auto da = decode(a), db = decode(b);
        std::vector<int> prod(size_t(2 * r - 1), 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                prod[size_t(i + j)] = (prod[size_t(i + j)] + da[size_t(i)] * db[size_t(j)]) % p;
        // reduce modulo f (monic)
        for (int i = 2 * r - 2; i >= r; --i) {
            int c = prod[size_t(i)];
            if (c == 0) continue;
            for (int j = 0; j < r; ++j)
                prod[size_t(i - r + j)] =
                    ((prod[size_t(i - r + j)] - c * f[size_t(j)]) % p + p) % p;
            prod[size_t(i)] = 0;
        }
        int e = 0, base = 1;
        for (int i = 0; i < r; ++i) {
            e += prod[size_t(i)] * base;
            base *= p;
        }
        return e;
    }

private:
    // Polynomial-as-int helpers over Z_p, used only to find f.
    static std::vector<int> int_to_poly(int v, int p, int deg) {
        std::vector<int> c(size_t(deg + 1));
        for (int i = 0; i <= deg; ++i) {
            c[size_t(i)] = v % p;
            v /= p;
        }
        return c;
    }

    static bool divides(const std::vector<int>& div, std::vector<int> num, int p) {
        int dd = int(div.size()) - 1;
        for (int i = int(num.size()) - 1; i >= dd; --i) {
            int c = num[size_t(i)];
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j)
                num[size_t(i - dd + j)] =
                    ((num[size_t(i - dd + j)] - c * div[size_t(j)]) % p + p) % p;
        }
        for (int c : num)
            if (c) return false;
        return true;
    }

    void find_irreducible() {
        if (r == 1) {
            f = {0, 1};
            return;
        }
        // candidates: monic degree-r polys; test divisibility by every monic
        // poly of degree 1..r/2
        int count = 1;
        for (int i = 0; i < r; ++i) count *= p;
        for (int low = 0; low < count; ++low) {
            std::vector<int> cand = int_to_poly(low, p, r - 1);
            cand.push_back(1);
            bool irred = true;
            for (int d = 1; 2 * d <= r && irred; ++d) {
                int dcount = 1;
                for (int i = 0; i < d; ++i) dcount *= p;
                for (int dl = 0; dl < dcount && irred; ++dl) {
                    std::vector<int> div = int_to_poly(dl, p, d - 1);
                    div.push_back(1);
                    if (divides(div, cand, p)) irred = false;
                }
            }
            if (irred) {
                f = cand;
                return;
            }
        }
        throw std::logic_error("paley_seed: no irreducible polynomial found");
    }
};

} // namespace

BHMatrix paley_seed(int q) {
    if (q < 3 || q % 2 == 0 || q % 4 != 3)
        throw std::invalid_argument("paley_seed: q must be an odd prime power with q = 3 mod 4");
    GaloisField gf(q);

    std::vector<char> is_square(size_t(q), 0);
    for (int e = 1; e < q; ++e) is_square[size_t(gf.mul(e, e))] = 1;

    // chi(d) as an exponent over k=2: 0 for squares, 1 for non-squares.
    auto chi_exp = [&](int d) { return is_square[size_t(d)] ? 0 : 1; };

    const int n = q + 1;
    std::vector<int> e(size_t(n) * n, 0);
    for (int b = 0; b < q; ++b) e[size_t(0) * n + (b + 1)] = 0;
    for (int a = 0; a < q; ++a) e[size_t(a + 1) * n + 0] = 1;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            e[size_t(a + 1) * n + (b + 1)] = (a == b) ? 0 : chi_exp(gf.sub(a, b));
    BHMatrix h(n, 2, std::move(e));
    if (auto bad = first_nonorthogonal_rows(h))
        throw property_error("paley_seed: construction failed the Hadamard check", bad->first,
                             bad->second);
    return h;
}

} // namespace butson
