#include "butson/switchplan.hpp"

#include "butson/equiv.hpp"
#include "butson/errors.hpp"

#include <stdexcept>

namespace butson {

int SwitchPlan::rank() const {
    int r = 0;
    for (const auto& row : coeffs)
        for (int c : row)
            if (c != 0) ++r;
    return r;
}

void SwitchPlan::validate(int n_rows, int n_cols, int k) const {
    const int s = cell_rows(), t = cell_cols();
    if (s < 1 || t < 1)
        throw std::invalid_argument("SwitchPlan: need at least one switching cell per side");
    auto check_partition = [](const std::vector<std::vector<int>>& parts, int n, const char* side) {
        std::vector<char> seen(size_t(n), 0);
        size_t total = 0;
        for (const auto& part : parts) {
            for (int v : part) {
                if (v < 0 || v >= n || seen[size_t(v)])
                    throw std::invalid_argument(std::string("SwitchPlan: ") + side +
                                                " parts are not a partition");
                seen[size_t(v)] = 1;
            }
            total += part.size();
        }
        if (total != size_t(n))
            throw std::invalid_argument(std::string("SwitchPlan: ") + side +
                                        " parts do not cover all indices");
    };
    check_partition(row_parts, n_rows, "row");
    check_partition(col_parts, n_cols, "column");
    for (size_t i = 1; i < row_parts.size(); ++i)
        if (row_parts[i].empty())
            throw std::invalid_argument("SwitchPlan: empty row switching cell");
    for (size_t j = 1; j < col_parts.size(); ++j)
        if (col_parts[j].empty())
            throw std::invalid_argument("SwitchPlan: empty column switching cell");
    if (int(coeffs.size()) != s)
        throw std::invalid_argument("SwitchPlan: coefficient array has wrong row count");
    for (const auto& row : coeffs) {
        if (int(row.size()) != t)
            throw std::invalid_argument("SwitchPlan: coefficient array has wrong column count");
        for (int c : row)
            if (c < 0 || c >= k)
                throw std::invalid_argument("SwitchPlan: coefficient exponent out of range");
    }
    // Non-triviality: no pair (column cell l, row cell m) may have all of
    // a_{il} and a_{mj} equal to the identity.
    for (int l = 0; l < t; ++l)
        for (int m = 0; m < s; ++m) {
            bool any = false;
            for (int i = 0; i < s && !any; ++i) any = coeffs[size_t(i)][size_t(l)] != 0;
            for (int j = 0; j < t && !any; ++j) any = coeffs[size_t(m)][size_t(j)] != 0;
            if (!any)
                throw std::invalid_argument("SwitchPlan: trivial cell pair violates the switching "
                                            "definition");
        }
}

namespace {

BHMatrix apply_cells(const BHMatrix& h, const SwitchPlan& plan,
                     const std::vector<std::vector<int>>& coeffs) {
    const int k = h.root_order();
    BHMatrix out = h;
    for (size_t i = 1; i < plan.row_parts.size(); ++i)
        for (size_t j = 1; j < plan.col_parts.size(); ++j) {
            const int c = coeffs[i - 1][j - 1];
            if (c == 0) continue;
            for (int r : plan.row_parts[i])
                for (int col : plan.col_parts[j]) {
                    int v = out.exp(r, col) + c;
                    if (v >= k) v -= k;
                    out.set_exp(r, col, v);
                }
        }
    return out;
}

} // namespace

BHMatrix apply_switch(const BHMatrix& h, const SwitchPlan& plan, bool allow_noop) {
    if (plan.trivial()) {
        if (allow_noop) return h;
        throw std::invalid_argument("apply_switch: all-identity coefficients are not a plan");
    }
    plan.validate(h.order(), h.order(), h.root_order());
    BHMatrix out = apply_cells(h, plan, plan.coeffs);
    if (auto bad = first_nonorthogonal_rows(out))
        throw property_error("apply_switch: result is not Hadamard (rows " +
                                 std::to_string(bad->first) + "," + std::to_string(bad->second) +
                                 ")",
                             bad->first, bad->second);
    return out;
}

PlanClass classify_plan(const BHMatrix& h, const SwitchPlan& plan) {
    BHMatrix switched = apply_switch(h, plan);
    PlanClass pc;
    pc.rank = plan.rank();
    if (pc.rank > 8)
        throw budget_error("classify_plan: rank above 8, reducibility sweep refused");

    // Positions of the non-identity coefficients.
    std::vector<std::pair<int, int>> live;
    for (size_t i = 0; i < plan.coeffs.size(); ++i)
        for (size_t j = 0; j < plan.coeffs[i].size(); ++j)
            if (plan.coeffs[i][j] != 0) live.emplace_back(int(i), int(j));

    // Reducible: some nonempty proper subset of the live coefficients can be
    // reset to identity with the result still Hadamard.
    pc.reducible = false;
    const unsigned limit = 1u << pc.rank;
    for (unsigned mask = 1; mask + 1 < limit && !pc.reducible; ++mask) {
        auto reduced = plan.coeffs;
        for (int b = 0; b < pc.rank; ++b)
            if (mask & (1u << b)) reduced[size_t(live[size_t(b)].first)][size_t(live[size_t(b)].second)] = 0;
        BHMatrix cand = apply_cells(h, plan, reduced);
        if (is_butson_hadamard(cand)) pc.reducible = true;
    }

    pc.degenerate = equivalent_monomial(h, switched).has_value();

    // Redundant partition: two row cells with identical coefficient rows, or
    // two column cells with identical coefficient columns, are mergeable.
    bool redundant = false;
    const int s = plan.cell_rows(), t = plan.cell_cols();
    for (int a = 0; a < s && !redundant; ++a)
        for (int b = a + 1; b < s && !redundant; ++b)
            if (plan.coeffs[size_t(a)] == plan.coeffs[size_t(b)]) redundant = true;
    for (int a = 0; a < t && !redundant; ++a)
        for (int b = a + 1; b < t && !redundant; ++b) {
            bool same = true;
            for (int i = 0; i < s && same; ++i)
                same = plan.coeffs[size_t(i)][size_t(a)] == plan.coeffs[size_t(i)][size_t(b)];
            if (same) redundant = true;
        }
    pc.minimal = !pc.reducible && !redundant;
    return pc;
}

} // namespace butson
