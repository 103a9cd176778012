#pragma once

#include "butson/bmatrix.hpp"

#include <vector>

namespace butson {

/// A switch plan over ordered row/column partitions. Part 0 on each side is
/// the untouched set (may be empty); parts 1..s and 1..t are the switching
/// cells. coeffs[i-1][j-1] is the action on submatrix M_ij, encoded as an
/// exponent: root multiplication by zeta^c for the Hadamard instance, the
/// alphabet permutation (0 1)^c for the graph instance. 0 is the identity.
struct SwitchPlan {
    std::vector<std::vector<int>> row_parts;
    std::vector<std::vector<int>> col_parts;
    std::vector<std::vector<int>> coeffs;

    int cell_rows() const { return int(row_parts.size()) - 1; }
    int cell_cols() const { return int(col_parts.size()) - 1; }
    int rank() const;
    bool trivial() const { return rank() == 0; }

    /// Partition well-formedness plus the non-triviality condition of the
    /// universal definition: for every fixed column cell l and row cell m,
    /// at least one of the coefficients a_{il}, a_{mj} is non-identity.
    void validate(int n_rows, int n_cols, int k) const;
};

struct PlanClass {
    int rank = 0;
    bool reducible = false;
    bool degenerate = false;
    bool minimal = false;
};

/// Acts on the cells and verifies the result is still Butson Hadamard;
/// throws property_error naming a failing row pair otherwise. A trivial
/// (all-identity) plan is rejected unless allow_noop.
BHMatrix apply_switch(const BHMatrix& h, const SwitchPlan& plan, bool allow_noop = false);

/// Rank, reducibility (exhaustive over proper subsets of the non-identity
/// coefficients; rank <= 8 enforced), degeneracy (monomial equivalence to
/// the input), minimality (irreducible with no mergeable cells).
PlanClass classify_plan(const BHMatrix& h, const SwitchPlan& plan);

} // namespace butson
