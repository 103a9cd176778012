#pragma once

#include "butson/bmatrix.hpp"

#include <vector>

namespace butson {

/// Fourier matrix F_n over the n-th roots: exps(i,j) = i*j mod n.
BHMatrix fourier(int n);

/// Reinterpret over a multiple of the current root order: exponents scale
/// by target_k / k, values are unchanged as complex numbers.
BHMatrix lift_root_order(const BHMatrix& h, int target_k);

/// Kronecker product. Inputs over different root orders are lifted to the
/// lcm of the two orders first.
BHMatrix kronecker(const BHMatrix& a, const BHMatrix& b);

/// Circulant BH(k,k): for odd k, first-row exponents j(j-1)/2 mod k
/// (j = 1..k); for k = 4, circ(1, i, -1, i). The result is checker-validated.
BHMatrix circulant_bh(int k);

/// Bush-type BH(n^2, k) from a Hadamard K of order n whose first row is
/// all-ones: block (u,v) is the rank-one row product built from row
/// (v - u) mod n of K, so every diagonal block is J. Validates the block
/// sums and the Hadamard property, throwing on any violation.
BHMatrix bush_type(const BHMatrix& k_seed);

struct BlockSums {
    std::vector<Cyc> row_sums;
    std::vector<Cyc> col_sums;
};

/// Per-block row/column sums for the m x m subdivision, plus the weak
/// Bush-type flag: J*H_ij = H_ij*J = delta_ij * m * J for all blocks.
struct WeakBushReport {
    int m = 0;
    bool bush = false;
    std::vector<std::vector<BlockSums>> blocks; // indexed [i][j]
};

WeakBushReport weak_bush_blocks(const BHMatrix& h, int m);

/// Order q+1 real Hadamard matrix from the quadratic-residue construction,
/// for q an odd prime power with q = 3 mod 4.
BHMatrix paley_seed(int q);

} // namespace butson
