#include "butson/sites.hpp"

#include "butson/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace butson {

namespace {

int mod_k(int v, int k) {
    v %= k;
    return v < 0 ? v + k : v;
}

// Column type of column t against reference row r0: the vector of exponent
// differences down the chosen rows, first entry always 0.
std::vector<int> column_type(const BHMatrix& h, const std::vector<int>& rows, int t) {
    const int k = h.root_order();
    std::vector<int> ty(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        ty[i] = mod_k(h.exp(rows[i], t) - h.exp(rows[0], t), k);
    return ty;
}

std::optional<FourierSite> detect_site(const BHMatrix& h, const std::vector<int>& rows) {
    const int n = h.order(), k = h.root_order();
    if (int(rows.size()) != k) return std::nullopt;
    if (n % k != 0) return std::nullopt;
    const int m = n / k;

    std::map<std::vector<int>, std::vector<int>> groups;
    for (int t = 0; t < n; ++t) groups[column_type(h, rows, t)].push_back(t);
    if (int(groups.size()) != k) return std::nullopt;
    for (const auto& [ty, cols] : groups)
        if (int(cols.size()) != m) return std::nullopt;

    // Fourier column j as a type vector: (i*j mod k)_i.
    auto fcol = [k](int j) {
        std::vector<int> f(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) f[size_t(i)] = (i * j) % k;
        return f;
    };

    // Try to express the type set as { fcol(j) + c } for a common shift c.
    const std::vector<int>& tau0 = groups.begin()->first;
    for (int j0 = 0; j0 < k; ++j0) {
        std::vector<int> shift(static_cast<size_t>(k));
        const auto f0 = fcol(j0);
        for (int i = 0; i < k; ++i) shift[size_t(i)] = mod_k(tau0[size_t(i)] - f0[size_t(i)], k);
        if (shift[0] != 0) continue;
        std::vector<const std::vector<int>*> block_cols(size_t(k), nullptr);
        bool ok = true;
        for (const auto& [ty, cols] : groups) {
            std::vector<int> base(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) base[size_t(i)] = mod_k(ty[size_t(i)] - shift[size_t(i)], k);
            // which Fourier column is this?
            int j = -1;
            if (k == 1) {
                j = 0;
            } else {
                j = base[1]; // row 1 of F_k is (0,1,2,..)*j, so entry 1 = j
                if (fcol(j) != base) j = -1;
            }
            if (j < 0 || block_cols[size_t(j)]) {
                ok = false;
                break;
            }
            block_cols[size_t(j)] = &cols;
        }
        if (!ok) continue;

        FourierSite site;
        site.rows = rows;
        site.m = m;
        site.col_blocks.resize(size_t(k));
        for (int j = 0; j < k; ++j) site.col_blocks[size_t(j)] = *block_cols[size_t(j)];

        // Normalizer: rows of the site first (scaled by -shift), remaining
        // rows after; columns grouped block by block, scaled against row 0.
        Monomial left = Monomial::identity(n), right = Monomial::identity(n);
        std::vector<char> in_site(size_t(n), 0);
        for (int r : rows) in_site[size_t(r)] = 1;
        int pos = 0;
        for (int i = 0; i < k; ++i, ++pos) {
            left.perm[size_t(pos)] = rows[size_t(i)];
            left.scales[size_t(pos)] = mod_k(-shift[size_t(i)], k);
        }
        for (int r = 0; r < n; ++r)
            if (!in_site[size_t(r)]) {
                left.perm[size_t(pos)] = r;
                left.scales[size_t(pos)] = 0;
                ++pos;
            }
        pos = 0;
        for (int j = 0; j < k; ++j)
            for (int c : site.col_blocks[size_t(j)]) {
                right.perm[size_t(pos)] = c;
                right.scales[size_t(pos)] = h.exp(rows[0], c);
                ++pos;
            }
        site.left = std::move(left);
        site.right = std::move(right);
        return site;
    }
    return std::nullopt;
}

} // namespace

std::vector<FourierSite> find_fourier_sites(const BHMatrix& h, const std::vector<int>& row_set) {
    std::vector<int> rows = row_set;
    std::sort(rows.begin(), rows.end());
    for (int r : rows)
        if (r < 0 || r >= h.order())
            throw std::out_of_range("find_fourier_sites: row index out of range");
    std::vector<FourierSite> out;
    if (auto site = detect_site(h, rows)) out.push_back(std::move(*site));
    return out;
}

std::vector<FourierSite> find_fourier_sites(const BHMatrix& h) {
    const int n = h.order(), k = h.root_order();
    if (n % k != 0) return {};
    if (n > 24 || k > 6)
        throw budget_error("find_fourier_sites: order cap exceeded (n <= 24, k <= 6); "
                           "pass an explicit row set");
    std::vector<FourierSite> out;
    std::vector<int> pick(static_cast<size_t>(k));
    // lexicographic k-subsets
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            if (auto site = detect_site(h, pick)) out.push_back(std::move(*site));
            return;
        }
        for (int r = start; r <= n - (k - depth); ++r) {
            pick[size_t(depth)] = r;
            rec(r + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

SwitchPlan fourier_site_plan(const BHMatrix& h, const FourierSite& site, int block, int coeff) {
    const int n = h.order(), k = h.root_order();
    if (block < 0 || block >= int(site.col_blocks.size()))
        throw std::invalid_argument("fourier_site_plan: block index out of range");
    std::vector<char> in_rows(size_t(n), 0), in_cols(size_t(n), 0);
    for (int r : site.rows) in_rows[size_t(r)] = 1;
    for (int c : site.col_blocks[size_t(block)]) in_cols[size_t(c)] = 1;
    SwitchPlan plan;
    plan.row_parts.assign(2, {});
    plan.col_parts.assign(2, {});
    for (int r = 0; r < n; ++r) plan.row_parts[in_rows[size_t(r)] ? 1 : 0].push_back(r);
    for (int c = 0; c < n; ++c) plan.col_parts[in_cols[size_t(c)] ? 1 : 0].push_back(c);
    plan.coeffs = {{mod_k(coeff, k)}};
    return plan;
}

BHMatrix fourier_set_switch(const BHMatrix& h, const FourierSite& site, int block, int coeff) {
    if (mod_k(coeff, h.root_order()) == 0) return h;
    return apply_switch(h, fourier_site_plan(h, site, block, coeff));
}

GenHallForm check_genhall_form(const BHMatrix& h, int k) {
    const int N = h.order();
    if (k != h.root_order())
        throw condition_error("root-order", "check_genhall_form: k must equal the root order");
    if (k < 1 || N % k != 0 || N / k < 2)
        throw condition_error("order", "check_genhall_form: order must be k(n+1) with n >= 1");
    const int n = N / k - 1;

    GenHallForm form;
    form.k = k;
    form.n = n;
    form.s_exps.resize(size_t(k));
    for (int j = 0; j < k; ++j) form.s_exps[size_t(j)] = h.exp(0, j);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (h.exp(i, j) != form.s_exps[size_t(mod_k(j - i, k))])
                throw condition_error("circulant",
                                      "check_genhall_form: top-left block is not circulant");
    {
        std::vector<int> se(size_t(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) se[size_t(i) * k + j] = h.exp(i, j);
        if (!is_butson_hadamard(BHMatrix(k, k, std::move(se))))
            throw condition_error("circulant-hadamard",
                                  "check_genhall_form: circulant block is not Hadamard");
    }
    for (int i = 0; i < k; ++i)
        for (int b = 0; b < k; ++b)
            for (int t = 0; t < n; ++t)
                if (h.exp(i, k + b * n + t) != (i * b) % k)
                    throw condition_error("top-border",
                                          "check_genhall_form: top border is not F_k (x) j_n");
    for (int b = 0; b < k; ++b)
        for (int t = 0; t < n; ++t)
            for (int i = 0; i < k; ++i)
                if (h.exp(k + b * n + t, i) != mod_k(-b * i, k))
                    throw condition_error(
                        "left-border",
                        "check_genhall_form: left border is not F_k* (x) j_n^T");

    for (int m = 0; m < k; ++m) {
        Cyc lam(k);
        for (int j = 0; j < k; ++j) lam.coeff(mod_k(form.s_exps[size_t(j)] + j * m, k)) += 1;
        form.lambdas.push_back(std::move(lam));
    }

    for (int bi = 0; bi < k; ++bi)
        for (int bj = 0; bj < k; ++bj) {
            const Cyc want = (bi == bj) ? form.diag_sum(bi) : Cyc(k);
            for (int t = 0; t < n; ++t) {
                Cyc row_sum(k), col_sum(k);
                for (int u = 0; u < n; ++u) {
                    row_sum.coeff(h.exp(k + bi * n + t, k + bj * n + u)) += 1;
                    col_sum.coeff(h.exp(k + bi * n + u, k + bj * n + t)) += 1;
                }
                if (row_sum != want || col_sum != want)
                    throw condition_error("block-sum(" + std::to_string(bi) + "," +
                                              std::to_string(bj) + ")",
                                          "check_genhall_form: block sum conclusion violated");
            }
        }
    return form;
}

SwitchPlan genhall_plan(const BHMatrix& h, const GenHallForm& form, int m, int coeff) {
    const int N = h.order(), k = form.k, n = form.n;
    if (m < 0 || m >= k) throw std::invalid_argument("genhall_plan: block index out of range");
    if (mod_k(coeff, k) == 0) throw std::invalid_argument("genhall_plan: coefficient must be nonzero");
    std::vector<int> first_k, block_m, rest_rows;
    for (int i = 0; i < k; ++i) first_k.push_back(i);
    for (int t = 0; t < n; ++t) block_m.push_back(k + m * n + t);
    std::vector<char> used(size_t(N), 0);
    for (int r : first_k) used[size_t(r)] = 1;
    for (int r : block_m) used[size_t(r)] = 1;
    for (int r = 0; r < N; ++r)
        if (!used[size_t(r)]) rest_rows.push_back(r);

    SwitchPlan plan;
    plan.row_parts = {rest_rows, first_k, block_m};
    plan.col_parts = {rest_rows, first_k, block_m}; // same index sets on both sides
    const int c = mod_k(coeff, k);
    plan.coeffs = {{0, c}, {mod_k(-c, k), 0}};
    return plan;
}

BHMatrix genhall_switch(const BHMatrix& h, const GenHallForm& form, int m, int coeff) {
    return apply_switch(h, genhall_plan(h, form, m, coeff));
}

BHMatrix genhall_switch_normalized(const BHMatrix& h, const GenHallForm& form, int m, int coeff) {
    BHMatrix switched = genhall_switch(h, form, m, coeff);
    const int N = h.order(), k = form.k, n = form.n;
    Monomial left = Monomial::identity(N), right = Monomial::identity(N);
    const int c = mod_k(coeff, k);
    for (int t = 0; t < n; ++t) {
        left.scales[size_t(k + m * n + t)] = c;  // block-m rows times zeta^c
        right.scales[size_t(k + m * n + t)] = c; // block-m columns times zeta^{-c}
    }
    return apply_monomial(switched, left, right);
}

bool check_rank1_conditions(const BHMatrix& h, const std::vector<int>& r1,
                            const std::vector<std::vector<int>>& col_cells) {
    const int n = h.order(), k = h.root_order();
    std::vector<int> cell_of(size_t(n), -1);
    for (size_t c = 0; c < col_cells.size(); ++c)
        for (int col : col_cells[c]) {
            if (col < 0 || col >= n || cell_of[size_t(col)] != -1)
                throw std::invalid_argument("check_rank1_conditions: cells are not a partition");
            cell_of[size_t(col)] = int(c);
        }
    for (int col = 0; col < n; ++col)
        if (cell_of[size_t(col)] == -1)
            throw std::invalid_argument("check_rank1_conditions: cells do not cover all columns");
    for (size_t ci = 0; ci < col_cells.size(); ++ci)
        for (size_t cj = ci + 1; cj < col_cells.size(); ++cj)
            for (int u : col_cells[ci])
                for (int v : col_cells[cj]) {
                    Cyc acc(k);
                    for (int r : r1) acc.coeff(mod_k(h.exp(r, u) - h.exp(r, v), k)) += 1;
                    if (!acc.is_zero()) return false;
                }
    return true;
}

Rank1Partition kron_rank1_partition(const BHMatrix& a, const BHMatrix& b) {
    Rank1Partition p;
    const int nb = b.order(), na = a.order();
    for (int i = 0; i < nb; ++i) p.r1.push_back(i);
    p.col_cells.resize(size_t(nb));
    for (int i = 0; i < nb; ++i)
        for (int c = 0; c < na; ++c) p.col_cells[size_t(i)].push_back(c * nb + i);
    return p;
}

SwitchPlan rank1_cell_plan(const BHMatrix& h, const Rank1Partition& p, int cell, int coeff) {
    const int n = h.order(), k = h.root_order();
    if (p.col_cells.size() < 2)
        throw std::invalid_argument("rank1_cell_plan: single-cell partition is degenerate");
    if (cell < 0 || cell >= int(p.col_cells.size()))
        throw std::invalid_argument("rank1_cell_plan: cell index out of range");
    std::vector<char> in_r1(size_t(n), 0), in_cell(size_t(n), 0);
    for (int r : p.r1) in_r1[size_t(r)] = 1;
    for (int c : p.col_cells[size_t(cell)]) in_cell[size_t(c)] = 1;
    SwitchPlan plan;
    plan.row_parts.assign(2, {});
    plan.col_parts.assign(2, {});
    for (int r = 0; r < n; ++r) plan.row_parts[in_r1[size_t(r)] ? 1 : 0].push_back(r);
    for (int c = 0; c < n; ++c) plan.col_parts[in_cell[size_t(c)] ? 1 : 0].push_back(c);
    plan.coeffs = {{mod_k(coeff, k)}};
    return plan;
}

std::vector<Rank1Partition> find_rank1_kron_layouts(const BHMatrix& h) {
    std::vector<Rank1Partition> out;
    const int n = h.order();
    for (int d = 2; d * 2 <= n; ++d) {
        if (n % d != 0) continue;
        Rank1Partition p;
        for (int i = 0; i < d; ++i) p.r1.push_back(i);
        p.col_cells.resize(size_t(d));
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < n / d; ++c) p.col_cells[size_t(i)].push_back(c * d + i);
        if (check_rank1_conditions(h, p.r1, p.col_cells)) out.push_back(std::move(p));
    }
    return out;
}

namespace {

BHMatrix transpose(const BHMatrix& h) {
    const int n = h.order();
    std::vector<int> e(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e[size_t(j) * n + i] = h.exp(i, j);
    return BHMatrix(n, h.root_order(), std::move(e));
}

void validate_parts(const Rank2Parts& parts, int n) {
    auto check = [n](std::initializer_list<const std::vector<int>*> groups, const char* side) {
        std::vector<char> seen(size_t(n), 0);
        size_t total = 0;
        for (const auto* g : groups) {
            for (int v : *g) {
                if (v < 0 || v >= n || seen[size_t(v)])
                    throw std::invalid_argument(std::string("check_rank2_conditions: ") + side +
                                                " parts are not a partition");
                seen[size_t(v)] = 1;
            }
            total += g->size();
        }
        if (total != size_t(n))
            throw std::invalid_argument(std::string("check_rank2_conditions: ") + side +
                                        " parts do not cover all indices");
    };
    check({&parts.r, &parts.r1, &parts.r2}, "row");
    check({&parts.c, &parts.c1, &parts.c2}, "column");
    if (parts.r1.empty() || parts.r2.empty() || parts.c1.empty() || parts.c2.empty())
        throw std::invalid_argument("check_rank2_conditions: R_1, R_2, C_1, C_2 must be nonempty");
}

Cyc column_sum(const BHMatrix& h, const std::vector<int>& rows, int col) {
    Cyc acc(h.root_order());
    for (int r : rows) acc.coeff(h.exp(r, col)) += 1;
    return acc;
}

} // namespace

Rank2Form check_rank2_conditions(const BHMatrix& h, const Rank2Parts& parts, Axis orientation) {
    if (orientation == Axis::rows) {
        // the transposed condition set
        Rank2Parts swapped;
        swapped.r = parts.c;
        swapped.r1 = parts.c1;
        swapped.r2 = parts.c2;
        swapped.c = parts.r;
        swapped.c1 = parts.r1;
        swapped.c2 = parts.r2;
        Rank2Form form = check_rank2_conditions(transpose(h), swapped, Axis::cols);
        form.parts = parts;
        form.orientation = Axis::rows;
        return form;
    }
    validate_parts(parts, h.order());
    const int k = h.root_order();

    Cyc s(k);
    bool have_s = false;
    for (int col : parts.c) {
        Cyc cs = column_sum(h, parts.r, col);
        if (!have_s) {
            s = cs;
            have_s = true;
        } else if (cs != s) {
            throw condition_error("1", "check_rank2_conditions: (R,C) column sums not constant");
        }
    }
    if (!have_s) s = Cyc(k); // empty C: s = 0

    const Cyc minus_conj_s = -s.conj();
    for (int col : parts.c1)
        if (column_sum(h, parts.r1, col) != minus_conj_s)
            throw condition_error("2",
                                  "check_rank2_conditions: (R_1,C_1) column sums differ from "
                                  "-conj(s)");
    for (int r : parts.r)
        for (int col : parts.c1)
            if (h.exp(r, col) != 0)
                throw condition_error("3", "check_rank2_conditions: (R,C_1) is not all-ones");
    for (int r : parts.r1)
        for (int col : parts.c)
            if (h.exp(r, col) != 0)
                throw condition_error("3", "check_rank2_conditions: (R_1,C) is not all-ones");
    for (int col : parts.c2) {
        if (!column_sum(h, parts.r, col).is_zero())
            throw condition_error("4", "check_rank2_conditions: (R,C_2) column sums not zero");
        if (!column_sum(h, parts.r1, col).is_zero())
            throw condition_error("4", "check_rank2_conditions: (R_1,C_2) column sums not zero");
    }

    Rank2Form form;
    form.parts = parts;
    form.s = s;
    form.orientation = Axis::cols;
    return form;
}

BHMatrix rank2_switch(const BHMatrix& h, const Rank2Form& form, int z_exp) {
    const int k = h.root_order();
    const int c = mod_k(z_exp, k);
    if (c == 0) return h;
    SwitchPlan plan;
    plan.row_parts = {form.parts.r, form.parts.r1, form.parts.r2};
    plan.col_parts = {form.parts.c, form.parts.c1, form.parts.c2};
    plan.coeffs = {{0, c}, {mod_k(-c, k), 0}};
    return apply_switch(h, plan);
}

UMatrix rank2_switch(const UMatrix& h, const Rank2Form& form, std::complex<double> z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw std::invalid_argument("rank2_switch: z must have unit modulus");
    UMatrix out = h;
    for (int r : form.parts.r1)
        for (int col : form.parts.c2) out.set(r, col, out.at(r, col) * z);
    for (int r : form.parts.r2)
        for (int col : form.parts.c1) out.set(r, col, out.at(r, col) * std::conj(z));
    if (!is_complex_hadamard_float(out, 1e-9))
        throw property_error("rank2_switch: float result failed the checker", -1, -1);
    return out;
}

std::vector<Rank2Site> rank2_sites_from_genhall(const BHMatrix& h, const GenHallForm& form) {
    const int N = h.order(), k = form.k, n = form.n;
    std::vector<Rank2Site> sites;
    for (int m = 0; m < k; ++m) {
        Rank2Site site;
        site.m = m;
        site.left = Monomial::identity(N);
        site.right = Monomial::identity(N);
        for (int i = 0; i < k; ++i) {
            site.left.scales[size_t(i)] = mod_k(-i * m, k);
            site.right.scales[size_t(i)] = mod_k(-i * m, k);
        }
        for (int t = 0; t < n; ++t) {
            site.parts.r.push_back(k + m * n + t);
            site.parts.c.push_back(k + m * n + t);
        }
        for (int i = 0; i < k; ++i) {
            site.parts.r1.push_back(i);
            site.parts.c1.push_back(i);
        }
        for (int b = 0; b < k; ++b) {
            if (b == m) continue;
            for (int t = 0; t < n; ++t) {
                site.parts.r2.push_back(k + b * n + t);
                site.parts.c2.push_back(k + b * n + t);
            }
        }
        sites.push_back(std::move(site));
    }
    return sites;
}

} // namespace butson
