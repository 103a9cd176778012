#include "butson/equiv.hpp"

#include "butson/errors.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>
#include <sstream>

namespace butson {

ColoredGraph encode_graph(const BHMatrix& h) {
    const int n = h.order(), k = h.root_order();
    ColoredGraph g;
    g.nv = 2 * n * k;
    g.color.assign(size_t(g.nv), 0);
    g.adj.assign(size_t(g.nv), {});
    auto row_id = [k](int i, int e) { return i * k + e; };
    auto col_id = [k, n](int j, int f) { return n * k + j * k + f; };
    for (int v = n * k; v < g.nv; ++v) g.color[size_t(v)] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int d = h.exp(i, j);
            for (int e = 0; e < k; ++e) {
                int f = e + d;
                if (f >= k) f -= k;
                g.adj[size_t(row_id(i, e))].push_back(col_id(j, f));
                g.adj[size_t(col_id(j, f))].push_back(row_id(i, e));
            }
        }
    for (auto& l : g.adj) std::sort(l.begin(), l.end());
    return g;
}

namespace {

// Flat ordered partition: lab holds the vertices, cell_end[p] = 1 iff
// position p closes its cell. Cells only ever split, so refinement and
// individualization both work in place; the cell order stays
// structure-relative, which keeps the canonical search sound.
struct FlatPartition {
    std::vector<int> lab;
    std::vector<char> cell_end;
};

struct CanonSearcher {
    const ColoredGraph& g;
    std::vector<unsigned char> best_bytes;
    std::vector<int> best_lab;
    bool have_best = false;
    std::vector<std::vector<int>> autos; // discovered automorphisms

    // scratch buffers
    std::vector<int> cnt_;
    std::vector<int> pos_;
    std::vector<std::pair<int, int>> seg_;
    std::vector<int> queue_;
    std::vector<char> queued_;

    explicit CanonSearcher(const ColoredGraph& graph)
        : g(graph), cnt_(size_t(graph.nv), 0), pos_(size_t(graph.nv), 0),
          queued_(size_t(graph.nv), 0) {}

    // Worklist refinement to the coarsest equitable partition.
    void refine(FlatPartition& p) {
        const int n = g.nv;
        queue_.clear();
        std::fill(queued_.begin(), queued_.end(), 0);
        for (int s = 0; s < n; s = cell_after(p, s)) {
            queue_.push_back(s);
            queued_[size_t(s)] = 1;
        }
        while (!queue_.empty()) {
            const int ws = queue_.back();
            queue_.pop_back();
            queued_[size_t(ws)] = 0;
            const int we = cell_after(p, ws);
            // count adjacencies into the splitter cell
            for (int q = ws; q < we; ++q)
                for (int w : g.adj[size_t(p.lab[size_t(q)])]) ++cnt_[size_t(w)];
            for (int ds = 0; ds < n;) {
                const int de = cell_after(p, ds);
                if (de - ds > 1) split_segment(p, ds, de);
                ds = de;
            }
            for (int q = ws; q < we; ++q)
                for (int w : g.adj[size_t(p.lab[size_t(q)])]) cnt_[size_t(w)] = 0;
        }
    }

    static int cell_after(const FlatPartition& p, int s) {
        int q = s;
        while (!p.cell_end[size_t(q)]) ++q;
        return q + 1;
    }

    void split_segment(FlatPartition& p, int ds, int de) {
        bool uniform = true;
        const int c0 = cnt_[size_t(p.lab[size_t(ds)])];
        for (int q = ds + 1; q < de; ++q)
            if (cnt_[size_t(p.lab[size_t(q)])] != c0) {
                uniform = false;
                break;
            }
        if (uniform) return;
        seg_.clear();
        for (int q = ds; q < de; ++q) seg_.emplace_back(cnt_[size_t(p.lab[size_t(q)])], p.lab[size_t(q)]);
        std::stable_sort(seg_.begin(), seg_.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int q = ds; q < de; ++q) {
            p.lab[size_t(q)] = seg_[size_t(q - ds)].second;
            const bool boundary =
                (q + 1 == de) || seg_[size_t(q - ds)].first != seg_[size_t(q + 1 - ds)].first;
            p.cell_end[size_t(q)] = boundary ? 1 : 0;
            if (boundary && q + 1 < de) enqueue_cell(q + 1);
        }
        enqueue_cell(ds);
    }

    void enqueue_cell(int s) {
        if (!queued_[size_t(s)]) {
            queue_.push_back(s);
            queued_[size_t(s)] = 1;
        }
    }

    std::vector<unsigned char> serialize(const std::vector<int>& lab) {
        const int n = g.nv;
        for (int p = 0; p < n; ++p) pos_[size_t(lab[size_t(p)])] = p;
        std::vector<unsigned char> bytes;
        bytes.reserve(size_t(n) + size_t(n) * size_t(n) / 8 + 8);
        for (int p = 0; p < n; ++p) bytes.push_back((unsigned char)g.color[size_t(lab[size_t(p)])]);
        std::vector<char> row(size_t(n), 0);
        unsigned char acc = 0;
        int nbits = 0;
        for (int p = 0; p < n; ++p) {
            const int v = lab[size_t(p)];
            for (int w : g.adj[size_t(v)]) row[size_t(pos_[size_t(w)])] = 1;
            for (int q = p + 1; q < n; ++q) {
                acc = (unsigned char)((acc << 1) | row[size_t(q)]);
                if (++nbits == 8) {
                    bytes.push_back(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
            for (int w : g.adj[size_t(v)]) row[size_t(pos_[size_t(w)])] = 0;
        }
        if (nbits) bytes.push_back((unsigned char)(acc << (8 - nbits)));
        return bytes;
    }

    void leaf(const FlatPartition& p) {
        auto bytes = serialize(p.lab);
        if (!have_best || bytes < best_bytes) {
            best_bytes = std::move(bytes);
            best_lab = p.lab;
            have_best = true;
            return;
        }
        if (bytes == best_bytes) {
            // equal leaves witness an automorphism
            std::vector<int> gamma(size_t(g.nv));
            bool ident = true;
            for (int q = 0; q < g.nv; ++q) {
                gamma[size_t(best_lab[size_t(q)])] = p.lab[size_t(q)];
                if (best_lab[size_t(q)] != p.lab[size_t(q)]) ident = false;
            }
            if (!ident && autos.size() < 256) autos.push_back(std::move(gamma));
        }
    }

    // Union-find orbits under the discovered automorphisms fixing the
    // individualized prefix pointwise. Conservative subgroup; safe to prune.
    std::vector<int> stabilizer_orbits(const std::vector<int>& prefix) const {
        std::vector<int> uf(size_t(g.nv));
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&uf](int x) {
            while (uf[size_t(x)] != x) {
                uf[size_t(x)] = uf[size_t(uf[size_t(x)])];
                x = uf[size_t(x)];
            }
            return x;
        };
        for (const auto& gamma : autos) {
            bool fixes = true;
            for (int v : prefix)
                if (gamma[size_t(v)] != v) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int v = 0; v < g.nv; ++v) {
                int a = find(v), b = find(gamma[size_t(v)]);
                if (a != b) uf[size_t(a)] = b;
            }
        }
        for (int v = 0; v < g.nv; ++v) uf[size_t(v)] = find(v);
        return uf;
    }

    void search(FlatPartition p, std::vector<int>& prefix) {
        refine(p);
        // target: first smallest non-singleton cell
        int target = -1, target_end = -1;
        int best_size = INT32_MAX;
        for (int s = 0; s < g.nv;) {
            const int e = cell_after(p, s);
            if (e - s > 1 && e - s < best_size) {
                best_size = e - s;
                target = s;
                target_end = e;
            }
            s = e;
        }
        if (target == -1) {
            leaf(p);
            return;
        }
        const std::vector<int> branch(p.lab.begin() + target, p.lab.begin() + target_end);
        std::vector<int> tried;
        std::vector<int> orbit;
        size_t orbit_gen = SIZE_MAX;
        for (int v : branch) {
            if (!tried.empty()) {
                if (orbit_gen != autos.size()) {
                    orbit = stabilizer_orbits(prefix);
                    orbit_gen = autos.size();
                }
                bool skip = false;
                for (int u : tried)
                    if (orbit[size_t(u)] == orbit[size_t(v)]) {
                        skip = true;
                        break;
                    }
                if (skip) continue;
            }
            tried.push_back(v);
            FlatPartition child = p;
            // individualize: v first in its cell, rest keep order
            int w = target;
            child.lab[size_t(w)] = v;
            child.cell_end[size_t(w)] = 1;
            ++w;
            for (int q = target; q < target_end; ++q) {
                const int u = p.lab[size_t(q)];
                if (u == v) continue;
                child.lab[size_t(w)] = u;
                child.cell_end[size_t(w)] = (w + 1 == target_end) ? 1 : 0;
                ++w;
            }
            prefix.push_back(v);
            search(std::move(child), prefix);
            prefix.pop_back();
        }
    }
};

} // namespace

Certificate certificate(const BHMatrix& h) {
    const long nk = long(h.order()) * h.root_order();
    if (nk > 512)
        throw budget_error("certificate: n*k exceeds the 512 cost cap");
    ColoredGraph g = encode_graph(h);
    CanonSearcher searcher(g);
    FlatPartition init;
    init.lab.reserve(size_t(g.nv));
    init.cell_end.assign(size_t(g.nv), 0);
    for (int v = 0; v < g.nv; ++v)
        if (g.color[size_t(v)] == 0) init.lab.push_back(v);
    init.cell_end[init.lab.size() - 1] = 1;
    for (int v = 0; v < g.nv; ++v)
        if (g.color[size_t(v)] == 1) init.lab.push_back(v);
    init.cell_end[size_t(g.nv) - 1] = 1;
    std::vector<int> prefix;
    searcher.search(std::move(init), prefix);

    Certificate cert;
    cert.canonical_graph = std::move(searcher.best_bytes);
    cert.canonical_lab = std::move(searcher.best_lab);
    std::vector<unsigned char> msg;
    const std::string tag = "BHC1 " + std::to_string(h.order()) + " " +
                            std::to_string(h.root_order()) + "\n";
    msg.insert(msg.end(), tag.begin(), tag.end());
    msg.insert(msg.end(), cert.canonical_graph.begin(), cert.canonical_graph.end());
    SHA256(msg.data(), msg.size(), cert.digest.data());
    return cert;
}

std::string Certificate::hex() const {
    static const char* d = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (unsigned char b : digest) {
        s.push_back(d[b >> 4]);
        s.push_back(d[b & 0xf]);
    }
    return s;
}

namespace {

// Counting vector of exponent differences between two rows, canonicalized
// to its lexicographically least cyclic rotation (scaling-invariant).
std::vector<int> pair_invariant(const BHMatrix& h, int i, int j) {
    const int n = h.order(), k = h.root_order();
    std::vector<int> cnt(size_t(k), 0);
    for (int t = 0; t < n; ++t) {
        int d = h.exp(i, t) - h.exp(j, t);
        if (d < 0) d += k;
        ++cnt[size_t(d)];
    }
    std::vector<int> best = cnt;
    std::vector<int> rot(static_cast<size_t>(k));
    for (int s = 1; s < k; ++s) {
        for (int d = 0; d < k; ++d) rot[size_t(d)] = cnt[size_t((d + s) % k)];
        if (rot < best) best = rot;
    }
    return best;
}

struct EquivSearcher {
    const BHMatrix& a;
    const BHMatrix& b;
    int n, k;
    std::vector<std::vector<std::vector<int>>> inv_a, inv_b; // [i][j] canonical vectors
    std::vector<int> pi, sigma;
    std::vector<char> used;

    EquivSearcher(const BHMatrix& a_in, const BHMatrix& b_in)
        : a(a_in), b(b_in), n(a_in.order()), k(a_in.root_order()) {
        auto build = [this](const BHMatrix& m) {
            std::vector<std::vector<std::vector<int>>> inv(
                static_cast<size_t>(n), std::vector<std::vector<int>>(static_cast<size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) inv[size_t(i)][size_t(j)] = pair_invariant(m, i, j);
            return inv;
        };
        inv_a = build(a);
        inv_b = build(b);
        pi.assign(size_t(n), -1);
        sigma.assign(size_t(n), 0);
        used.assign(size_t(n), 0);
    }

    bool quick_reject() const {
        auto multiset_of = [this](const std::vector<std::vector<std::vector<int>>>& inv) {
            std::vector<std::vector<std::vector<int>>> rows;
            for (int i = 0; i < n; ++i) {
                std::vector<std::vector<int>> r;
                for (int j = 0; j < n; ++j)
                    if (j != i) r.push_back(inv[size_t(i)][size_t(j)]);
                std::sort(r.begin(), r.end());
                rows.push_back(std::move(r));
            }
            std::sort(rows.begin(), rows.end());
            return rows;
        };
        return multiset_of(inv_a) != multiset_of(inv_b);
    }

    std::optional<std::pair<Monomial, Monomial>> make_witness(
        const std::vector<int>& class_a, const std::vector<int>& class_b) const {
        // pair columns of equal class in ascending index order
        std::vector<std::vector<int>> bucket_a, bucket_b;
        const int nclasses = 1 + *std::max_element(class_a.begin(), class_a.end());
        bucket_a.assign(size_t(nclasses), {});
        bucket_b.assign(size_t(nclasses), {});
        for (int j = 0; j < n; ++j) bucket_a[size_t(class_a[size_t(j)])].push_back(j);
        for (int c = 0; c < n; ++c) bucket_b[size_t(class_b[size_t(c)])].push_back(c);
        Monomial left = Monomial::identity(n), right = Monomial::identity(n);
        for (int cls = 0; cls < nclasses; ++cls) {
            if (bucket_a[size_t(cls)].size() != bucket_b[size_t(cls)].size()) return std::nullopt;
            for (size_t t = 0; t < bucket_a[size_t(cls)].size(); ++t) {
                int j = bucket_a[size_t(cls)][t], c = bucket_b[size_t(cls)][t];
                right.perm[size_t(j)] = c;
                int tau = (b.exp(pi[0], c) - a.exp(0, j)) % k;
                if (tau < 0) tau += k;
                right.scales[size_t(j)] = tau;
            }
        }
        for (int i = 0; i < n; ++i) {
            left.perm[size_t(i)] = pi[size_t(i)];
            left.scales[size_t(i)] = sigma[size_t(i)];
        }
        if (apply_monomial(b, left, right) == a) return std::make_pair(left, right);
        return std::nullopt;
    }

    std::optional<std::pair<Monomial, Monomial>> recurse(int level,
                                                         const std::vector<int>& class_a,
                                                         const std::vector<int>& class_b,
                                                         int nclasses) {
        if (level == n) return make_witness(class_a, class_b);
        for (int r = 0; r < n; ++r) {
            if (used[size_t(r)]) continue;
            bool ok = true;
            for (int i2 = 0; i2 < level && ok; ++i2)
                ok = inv_a[size_t(level)][size_t(i2)] == inv_b[size_t(r)][size_t(pi[size_t(i2)])];
            if (!ok) continue;
            for (int s = 0; s < k; ++s) {
                // refine column classes by the new difference row
                // key: class * k + diff
                std::vector<int> key_a(static_cast<size_t>(n)), key_b(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) {
                    int d = a.exp(level, j) - a.exp(0, j);
                    d %= k;
                    if (d < 0) d += k;
                    key_a[size_t(j)] = class_a[size_t(j)] * k + d;
                }
                for (int c = 0; c < n; ++c) {
                    // a column c can map to j only when dA(j) = dB(c) + sigma
                    int d = b.exp(r, c) - b.exp(pi[0], c) + s;
                    d %= k;
                    if (d < 0) d += k;
                    key_b[size_t(c)] = class_b[size_t(c)] * k + d;
                }
                std::vector<int> remap(size_t(nclasses) * size_t(k), -1);
                std::vector<int> count_a(size_t(nclasses) * size_t(k), 0),
                    count_b(size_t(nclasses) * size_t(k), 0);
                for (int j = 0; j < n; ++j) ++count_a[size_t(key_a[size_t(j)])];
                for (int c = 0; c < n; ++c) ++count_b[size_t(key_b[size_t(c)])];
                if (count_a != count_b) continue;
                int next_id = 0;
                for (size_t t = 0; t < remap.size(); ++t)
                    if (count_a[t] > 0) remap[t] = next_id++;
                std::vector<int> na(static_cast<size_t>(n)), nb(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) na[size_t(j)] = remap[size_t(key_a[size_t(j)])];
                for (int c = 0; c < n; ++c) nb[size_t(c)] = remap[size_t(key_b[size_t(c)])];

                pi[size_t(level)] = r;
                sigma[size_t(level)] = s;
                used[size_t(r)] = 1;
                auto res = recurse(level + 1, na, nb, next_id);
                used[size_t(r)] = 0;
                if (res) return res;
            }
        }
        return std::nullopt;
    }

    std::optional<std::pair<Monomial, Monomial>> run() {
        if (quick_reject()) return std::nullopt;
        std::vector<int> class_a(size_t(n), 0), class_b(size_t(n), 0);
        // level 0 places pi[0] with sigma 0
        for (int r = 0; r < n; ++r) {
            pi[0] = r;
            sigma[0] = 0;
            used[size_t(r)] = 1;
            auto res = recurse(1, class_a, class_b, 1);
            used[size_t(r)] = 0;
            if (res) return res;
        }
        return std::nullopt;
    }
};

} // namespace

namespace {

// When the canonical labelings pair the two graphs through a copy-respecting
// isomorphism, the monomial witness can be read off directly. Returns the
// verified witness or nothing (then the exact search decides).
std::optional<std::pair<Monomial, Monomial>> witness_from_canonical(const BHMatrix& a,
                                                                    const BHMatrix& b,
                                                                    const Certificate& ca,
                                                                    const Certificate& cb) {
    const int n = a.order(), k = a.root_order();
    const int nv = 2 * n * k;
    std::vector<int> pos_a(static_cast<size_t>(nv));
    for (int p = 0; p < nv; ++p) pos_a[size_t(ca.canonical_lab[size_t(p)])] = p;
    auto phi = [&](int v) { return cb.canonical_lab[size_t(pos_a[size_t(v)])]; };

    Monomial left = Monomial::identity(n), right = Monomial::identity(n);
    for (int i = 0; i < n; ++i) {
        const int w = phi(i * k);
        if (w >= n * k) return std::nullopt;
        const int pi = w / k, si = w % k;
        for (int e = 1; e < k; ++e)
            if (phi(i * k + e) != pi * k + (si + e) % k) return std::nullopt;
        left.perm[size_t(i)] = pi;
        left.scales[size_t(i)] = si;
    }
    for (int j = 0; j < n; ++j) {
        const int w = phi(n * k + j * k);
        if (w < n * k) return std::nullopt;
        const int rj = (w - n * k) / k, tj = w % k;
        for (int f = 1; f < k; ++f)
            if (phi(n * k + j * k + f) != n * k + rj * k + (tj + f) % k) return std::nullopt;
        right.perm[size_t(j)] = rj;
        right.scales[size_t(j)] = tj;
    }
    if (apply_monomial(b, left, right) == a) return std::make_pair(left, right);
    return std::nullopt;
}

} // namespace

namespace {

std::optional<std::pair<Monomial, Monomial>> decide_equivalence(const BHMatrix& a,
                                                                const BHMatrix& b,
                                                                const Certificate* ca,
                                                                const Certificate* cb) {
    if (a.order() != b.order() || a.root_order() != b.root_order())
        throw std::invalid_argument("equivalent_monomial: matrices must share n and k");
    if (a.order() == 1) {
        Monomial left = Monomial::identity(1), right = Monomial::identity(1);
        left.scales[0] = ((a.exp(0, 0) - b.exp(0, 0)) % a.root_order() + a.root_order()) %
                         a.root_order();
        return std::make_pair(left, right);
    }
    EquivSearcher s(a, b);
    if (s.quick_reject()) return std::nullopt;
    Certificate local_a, local_b;
    if (!ca && long(a.order()) * a.root_order() <= 512) {
        local_a = certificate(a);
        local_b = certificate(b);
        ca = &local_a;
        cb = &local_b;
    }
    if (ca && cb) {
        if (*ca != *cb) return std::nullopt;
        if (ca->canonical_graph == cb->canonical_graph)
            if (auto w = witness_from_canonical(a, b, *ca, *cb)) return w;
    }
    return s.run();
}

} // namespace

std::optional<std::pair<Monomial, Monomial>> equivalent_monomial(const BHMatrix& a,
                                                                 const BHMatrix& b) {
    return decide_equivalence(a, b, nullptr, nullptr);
}

std::optional<std::pair<Monomial, Monomial>> equivalent_monomial(const BHMatrix& a,
                                                                 const BHMatrix& b,
                                                                 const Certificate& ca,
                                                                 const Certificate& cb) {
    return decide_equivalence(a, b, &ca, &cb);
}

} // namespace butson
