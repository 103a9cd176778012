#pragma once

#include "butson/bmatrix.hpp"
#include "butson/switchplan.hpp"

#include <vector>

namespace butson {

/// A set of k rows that can be normalized (row/column scalings, column
/// grouping) to F_k (x) j_m. `left`/`right` are a full monomial pair doing
/// exactly that: the image's first k rows equal F_k (x) j_m.
struct FourierSite {
    std::vector<int> rows;
    std::vector<std::vector<int>> col_blocks; // k blocks of m columns
    int m = 0;
    Monomial left, right;
};

/// Scans k-subsets of rows (caps n <= 24, k <= 6; throws budget_error past
/// them). Empty when k does not divide n. Sites sorted by row set.
std::vector<FourierSite> find_fourier_sites(const BHMatrix& h);
/// Same detection restricted to one explicit row set; no caps.
std::vector<FourierSite> find_fourier_sites(const BHMatrix& h, const std::vector<int>& row_set);

/// Rank-1 plan multiplying the site's k x m block `block` by zeta^coeff.
SwitchPlan fourier_site_plan(const BHMatrix& h, const FourierSite& site, int block, int coeff);
BHMatrix fourier_set_switch(const BHMatrix& h, const FourierSite& site, int block, int coeff);

/// Verified circulant-bordered block form: S circulant Hadamard k x k,
/// borders F_k (x) j_n and its conjugate transpose, block sums zero off the
/// diagonal and -conj(lambda_m) on block (m,m).
struct GenHallForm {
    int k = 0;
    int n = 0;
    std::vector<int> s_exps;  // first row of the circulant block
    std::vector<Cyc> lambdas; // eigenvalues via (s_0..s_{k-1}) F_k
    Cyc diag_sum(int m) const { return -lambdas[size_t(m)].conj(); }
};

/// Verifies the displayed structure literally and every block-sum
/// conclusion; throws condition_error naming the first violated condition.
GenHallForm check_genhall_form(const BHMatrix& h, int k);

/// Rank-2 plan: border block (first k rows x block m columns) times
/// zeta^coeff, (block m rows x first k columns) times the conjugate.
SwitchPlan genhall_plan(const BHMatrix& h, const GenHallForm& form, int m, int coeff);
BHMatrix genhall_switch(const BHMatrix& h, const GenHallForm& form, int m, int coeff);
/// The switch composed with the block-m rescaling that restores the
/// bordered layout; output is equivalent to the raw switch and passes
/// check_genhall_form again. Used by orbit exploration.
BHMatrix genhall_switch_normalized(const BHMatrix& h, const GenHallForm& form, int m, int coeff);

/// Theorem "rank-1 blocks": true iff any two columns drawn from distinct
/// cells, restricted to the rows of r1, are orthogonal (exact).
bool check_rank1_conditions(const BHMatrix& h, const std::vector<int>& r1,
                            const std::vector<std::vector<int>>& col_cells);

/// The Kronecker-layout partition for A (x) B: R_1 = first B.n rows; cell i
/// collects the i-th column of every column-block copy.
struct Rank1Partition {
    std::vector<int> r1;
    std::vector<std::vector<int>> col_cells;
};
Rank1Partition kron_rank1_partition(const BHMatrix& a, const BHMatrix& b);

/// Rank-1 plan scaling cell `cell` by zeta^coeff. Single-cell partitions are
/// rejected: scaling every column of R_1 is a row scaling, degenerate by
/// construction.
SwitchPlan rank1_cell_plan(const BHMatrix& h, const Rank1Partition& p, int cell, int coeff);

/// Kronecker-layout candidates for every block size d dividing n, kept when
/// the exact orthogonality conditions hold.
std::vector<Rank1Partition> find_rank1_kron_layouts(const BHMatrix& h);

struct Rank2Parts {
    std::vector<int> r, r1, r2;
    std::vector<int> c, c1, c2;
};

/// Verified rank-2 switching form with the common sum s.
struct Rank2Form {
    Rank2Parts parts;
    Cyc s;
    Axis orientation = Axis::cols;
};

/// Conditions 1-4 of the rank-2 theorem, column orientation; the row
/// orientation checks the transposed condition set. Throws condition_error
/// naming the first violated condition.
Rank2Form check_rank2_conditions(const BHMatrix& h, const Rank2Parts& parts, Axis orientation);

/// (R_1,C_2) scaled by z, (R_2,C_1) by conj(z); Butson path takes a root
/// exponent, the float path any unit-modulus z.
BHMatrix rank2_switch(const BHMatrix& h, const Rank2Form& form, int z_exp);
UMatrix rank2_switch(const UMatrix& h, const Rank2Form& form, std::complex<double> z);

/// A rank-2 layout derived from a generalized Hall form: scale row i of the
/// circulant block by zeta^{-im} and column i by zeta^{im}; then R = block-m
/// rows, C = block-m columns, R_1/C_1 = the first k rows/columns, R_2/C_2
/// the rest. check_rank2_conditions accepts the normalized matrix.
struct Rank2Site {
    Monomial left, right;
    Rank2Parts parts;
    int m = 0;
};
std::vector<Rank2Site> rank2_sites_from_genhall(const BHMatrix& h, const GenHallForm& form);

} // namespace butson
