#pragma once

#include "butson/bmatrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace butson {

/// Two-colored graph on 2nk vertices: (row,i,e) then (col,j,f); an edge joins
/// (row,i,e) and (col,j,f) iff f - e = exps(i,j) mod k.
struct ColoredGraph {
    int nv = 0;
    std::vector<int> color;            // 0 = row side, 1 = column side
    std::vector<std::vector<int>> adj; // sorted neighbour lists
};

ColoredGraph encode_graph(const BHMatrix& h);

/// Canonical digest of the colored graph. Equal for monomially equivalent
/// matrices; inequality proves inequivalence. Digest equality is a filter
/// only (transpose/Galois relabelings can collide) - the exact decision is
/// always equivalent_monomial.
struct Certificate {
    std::array<unsigned char, 32> digest{};
    std::vector<unsigned char> canonical_graph;
    std::vector<int> canonical_lab; // vertex at each canonical position

    std::string hex() const;
    bool operator==(const Certificate& o) const { return digest == o.digest; }
    bool operator!=(const Certificate& o) const { return !(*this == o); }
};

/// Canonical labeling by iterated color refinement with individualization
/// backtracking. Target cell: first smallest non-singleton; branch order:
/// cell order. Cost cap n*k <= 512.
Certificate certificate(const BHMatrix& h);

/// Exact monomial-equivalence decision. When equivalent, returns (left,
/// right) with apply_monomial(b, left, right) == a. Pruned by row-pair
/// invariants and certificate mismatch before the backtracking search.
std::optional<std::pair<Monomial, Monomial>> equivalent_monomial(const BHMatrix& a,
                                                                 const BHMatrix& b);

/// Same decision with certificates the caller already computed.
std::optional<std::pair<Monomial, Monomial>> equivalent_monomial(const BHMatrix& a,
                                                                 const BHMatrix& b,
                                                                 const Certificate& ca,
                                                                 const Certificate& cb);

} // namespace butson
