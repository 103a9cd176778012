#include "butson/trades.hpp"

#include "butson/errors.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace butson {

int trade_min_row_intersection(const Trade& t) {
    std::map<int, int> per_row;
    for (const auto& [r, c] : t.cells) ++per_row[r];
    int b = INT_MAX;
    for (const auto& [r, cnt] : per_row) b = std::min(b, cnt);
    return per_row.empty() ? 0 : b;
}

BHMatrix apply_trade(const BHMatrix& h, const Trade& t) {
    if (t.cells.size() != t.repl.size())
        throw std::invalid_argument("apply_trade: cells/replacements size mismatch");
    BHMatrix out = h;
    bool any_change = false;
    for (size_t i = 0; i < t.cells.size(); ++i) {
        const auto& [r, c] = t.cells[i];
        if (r < 0 || r >= h.order() || c < 0 || c >= h.order())
            throw std::out_of_range("apply_trade: cell out of range");
        if (h.exp(r, c) != t.repl[i]) any_change = true;
        out.set_exp(r, c, t.repl[i]);
    }
    if (!any_change)
        throw std::invalid_argument("apply_trade: no replacement differs from the original");
    if (auto bad = first_nonorthogonal_rows(out))
        throw property_error("apply_trade: replaced matrix is not Hadamard", bad->first,
                             bad->second);
    return out;
}

namespace {

struct TradeSearch {
    const BHMatrix& h;
    int n, k;
    int target;           // exact subset size being swept
    long long budget;
    long long nodes = 0;
    bool exhausted = false;
    std::vector<std::pair<int, int>> cells;
    std::vector<int> row_count, col_count;
    std::optional<Trade> found;

    TradeSearch(const BHMatrix& h_in, long long budget_in)
        : h(h_in), n(h_in.order()), k(h_in.root_order()), target(0), budget(budget_in),
          row_count(size_t(h_in.order()), 0), col_count(size_t(h_in.order()), 0) {}

    bool tick() {
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        return true;
    }

    // A side with an unaffected line forces every affected line to hold at
    // least two cells; a trade may instead touch every line of a side (full
    // row/column scalings). Prune states that can reach neither option.
    bool feasible(int next_flat) const {
        const int remaining = target - int(cells.size());
        int ones_r = 0, touched_r = 0, ones_c = 0, touched_c = 0;
        for (int r = 0; r < n; ++r) {
            ones_r += (row_count[size_t(r)] == 1);
            touched_r += (row_count[size_t(r)] > 0);
        }
        for (int c = 0; c < n; ++c) {
            ones_c += (col_count[size_t(c)] == 1);
            touched_c += (col_count[size_t(c)] > 0);
        }
        if (remaining < ones_r && remaining < n - touched_r) return false;
        if (remaining < ones_c && remaining < n - touched_c) return false;
        if (target < n) {
            // below size n an untouched row and column always remain
            for (int r = 0; r < n; ++r)
                if (row_count[size_t(r)] == 1 && (r + 1) * n <= next_flat) return false;
            // Lemma cap: at most floor((n-1)/2) rows meet a trade below size n
            if (touched_r > (n - 1) / 2 || touched_c > (n - 1) / 2) return false;
        }
        return true;
    }

    // Sweep replacement assignments over the chosen cells.
    bool try_replacements(size_t idx, Trade& t, BHMatrix& work) {
        if (!tick()) return false;
        if (idx == cells.size()) {
            if (auto bad = first_nonorthogonal_rows(work); !bad) {
                found = t;
                return true;
            }
            return false;
        }
        const auto& [r, c] = cells[idx];
        const int orig = h.exp(r, c);
        for (int d = 1; d < k; ++d) {
            int v = orig + d;
            if (v >= k) v -= k;
            t.cells[idx] = cells[idx];
            t.repl[idx] = v;
            work.set_exp(r, c, v);
            if (try_replacements(idx + 1, t, work)) return true;
            if (exhausted) break;
        }
        work.set_exp(r, c, orig);
        return false;
    }

    bool complete_subset() {
        // structural reject: with an untouched line on a side, every touched
        // line of that side needs at least two cells
        int touched_r = 0, touched_c = 0;
        for (int r = 0; r < n; ++r) touched_r += (row_count[size_t(r)] > 0);
        for (int c = 0; c < n; ++c) touched_c += (col_count[size_t(c)] > 0);
        if (touched_r < n)
            for (int r = 0; r < n; ++r)
                if (row_count[size_t(r)] == 1) return false;
        if (touched_c < n)
            for (int c = 0; c < n; ++c)
                if (col_count[size_t(c)] == 1) return false;
        Trade t;
        t.cells.assign(cells.size(), {0, 0});
        t.repl.assign(cells.size(), 0);
        BHMatrix work = h;
        return try_replacements(0, t, work);
    }

    bool extend(int start_flat) {
        if (!tick()) return false;
        if (int(cells.size()) == target) return complete_subset();
        if (!feasible(start_flat)) return false;
        const int total = n * n;
        for (int f = start_flat; f <= total - (target - int(cells.size())); ++f) {
            const int r = f / n, c = f % n;
            cells.emplace_back(r, c);
            ++row_count[size_t(r)];
            ++col_count[size_t(c)];
            const bool ok = extend(f + 1);
            --row_count[size_t(r)];
            --col_count[size_t(c)];
            cells.pop_back();
            if (ok) return true;
            if (exhausted) return false;
        }
        return false;
    }
};

} // namespace

TradeSearchResult min_trade_size(const BHMatrix& h, int bound, long long node_budget) {
    const int n = h.order();
    TradeSearchResult res;
    if (bound < 1) throw std::invalid_argument("min_trade_size: bound must be >= 1");
    if (n == 1 && h.root_order() > 1 && bound > 1) {
        // order 1: replacing the single entry keeps the property
        res.status = TradeSearchStatus::found;
        res.size = 1;
        Trade t;
        t.cells = {{0, 0}};
        t.repl = {h.exp(0, 0) == 0 ? 1 : 0};
        res.witness = t;
        return res;
    }
    long long spent = 0;
    for (int target = 2; target < bound; ++target) {
        TradeSearch search(h, node_budget - spent);
        search.target = target;
        const bool ok = search.extend(0);
        spent += search.nodes;
        if (search.exhausted) {
            res.status = TradeSearchStatus::budget_exhausted;
            res.nodes = spent;
            return res;
        }
        if (ok) {
            res.status = TradeSearchStatus::found;
            res.size = target;
            res.witness = search.found;
            res.nodes = spent;
            return res;
        }
    }
    res.status = TradeSearchStatus::certified;
    res.size = bound;
    res.nodes = spent;
    return res;
}

int lincomb_nonzero_count(const BHMatrix& h, const std::vector<int>& cols,
                          const std::vector<Cyc>& coeffs) {
    if (cols.size() != coeffs.size())
        throw std::invalid_argument("lincomb_nonzero_count: cols/coeffs size mismatch");
    bool all_zero = true;
    for (const auto& c : coeffs)
        if (!c.is_zero()) {
            all_zero = false;
            break;
        }
    if (all_zero) throw std::invalid_argument("lincomb_nonzero_count: all coefficients are zero");
    const int n = h.order(), k = h.root_order();
    int nonzero = 0;
    for (int r = 0; r < n; ++r) {
        Cyc acc(k);
        for (size_t t = 0; t < cols.size(); ++t)
            acc += coeffs[t].mul_root(h.exp(r, cols[t]));
        if (!acc.is_zero()) ++nonzero;
    }
    return nonzero;
}

SparseCombination sparse_combination_from_trade(const BHMatrix& h, const Trade& t) {
    const int n = h.order(), k = h.root_order();
    // validity of the trade is part of the precondition; verify it
    BHMatrix switched = apply_trade(h, t);

    std::map<int, std::vector<size_t>> cells_by_row;
    for (size_t i = 0; i < t.cells.size(); ++i) cells_by_row[t.cells[i].first].push_back(i);
    const int b = trade_min_row_intersection(t);
    if (b <= 1)
        throw std::invalid_argument(
            "sparse_combination_from_trade: b = 1 trades are degenerate row scalings");
    int row = -1;
    for (const auto& [r, idxs] : cells_by_row)
        if (int(idxs.size()) == b) {
            row = r;
            break;
        }

    SparseCombination out;
    out.b = b;
    out.row = row;
    for (size_t i : cells_by_row[row]) {
        const int col = t.cells[i].second;
        out.cols.push_back(col);
        // conj(r_c) - conj(r_c')
        Cyc coeff = Cyc::root(k, -h.exp(row, col)) - Cyc::root(k, -t.repl[i]);
        out.coeffs.push_back(std::move(coeff));
    }
    const int nonzero = lincomb_nonzero_count(h, out.cols, out.coeffs);
    out.zero_count = n - nonzero;
    out.corollary_bound_met = out.zero_count >= n - (n - 1) / b;
    return out;
}

} // namespace butson
