#pragma once

#include "butson/bmatrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace butson {

/// A set of cells with replacement exponents (Butson alphabet).
struct Trade {
    std::vector<std::pair<int, int>> cells;
    std::vector<int> repl;
};

/// b: the minimum, over rows meeting the trade, of cells per row.
int trade_min_row_intersection(const Trade& t);

/// Replaces the cells and verifies the result; throws property_error if the
/// replaced matrix is not Hadamard (then t is not a trade for h), or
/// invalid_argument when no replacement actually differs.
BHMatrix apply_trade(const BHMatrix& h, const Trade& t);

enum class TradeSearchStatus { found, certified, budget_exhausted };

struct TradeSearchResult {
    TradeSearchStatus status = TradeSearchStatus::certified;
    int size = 0;             // smallest trade size when found
    std::optional<Trade> witness;
    long long nodes = 0;
};

/// Smallest Butson-alphabet trade below `bound`, or certification that none
/// exists. Branch and bound over cell subsets: every affected row and column
/// needs at least two cells, and when the target size is below n the number
/// of affected rows is capped by floor((n-1)/2).
TradeSearchResult min_trade_size(const BHMatrix& h, int bound, long long node_budget);

/// Number of rows where the exact linear combination of the chosen columns
/// is nonzero. Throws on all-zero coefficients.
int lincomb_nonzero_count(const BHMatrix& h, const std::vector<int>& cols,
                          const std::vector<Cyc>& coeffs);

struct SparseCombination {
    std::vector<int> cols;
    std::vector<Cyc> coeffs;
    int zero_count = 0;
    int b = 0;
    int row = 0;              // the row the combination was read from
    bool corollary_bound_met = false; // zero_count >= n - floor((n-1)/b)
};

/// The sparse linear combination read off a trade: pick the first row r
/// meeting the trade in b cells; coefficient for column c is
/// conj(r_c) - conj(r_c'). The combination vanishes on every row not
/// meeting the trade. Throws when b = 1 (degenerate trade).
SparseCombination sparse_combination_from_trade(const BHMatrix& h, const Trade& t);

} // namespace butson
