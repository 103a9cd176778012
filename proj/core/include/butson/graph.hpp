#pragma once

#include "butson/cyclo.hpp"
#include "butson/switchplan.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace butson {

/// Loop-free undirected graph, adjacency kept symmetric with zero diagonal.
class SimpleGraph {
public:
    explicit SimpleGraph(int n);

    int order() const { return n_; }
    bool adjacent(int u, int v) const { return a_[size_t(u) * n_ + v] != 0; }
    void add_edge(int u, int v);
    void set_edge(int u, int v, bool present);
    int degree(int v) const;

    bool operator==(const SimpleGraph& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    int n_;
    std::vector<std::uint8_t> a_;
};

/// Seidel switching about S: edges between S and its complement are
/// complemented. Realized internally as a rank-2 switch plan applying the
/// transposition (0 1) on the two off-diagonal cells.
SimpleGraph seidel_switch(const SimpleGraph& g, const std::vector<int>& s);

/// Godsil-McKay switching: `cells` lists the partition cells C_1..C_m; the
/// remaining vertices form D. Verifies the regularity conditions (constant
/// neighbour counts between cells; every D-vertex sees 0, half or all of
/// each cell) and throws condition_error naming the offender otherwise.
SimpleGraph gm_switch(const SimpleGraph& g, const std::vector<std::vector<int>>& cells);

/// Exact characteristic polynomial of an integer matrix, ascending
/// coefficients, monic of degree n. Faddeev-LeVerrier with the exact
/// integer trace divisions.
std::vector<Int> char_poly(const std::vector<std::vector<Int>>& m);

std::vector<std::vector<Int>> adjacency_matrix(const SimpleGraph& g);
/// J - I - 2A.
std::vector<std::vector<Int>> seidel_matrix(const SimpleGraph& g);

// GRAPH file format: line 1 "GRAPH <n>"; then one "u v" edge per line,
// 0-indexed; '#' starts a comment line.
SimpleGraph parse_graph(std::string_view text);
std::string emit_graph(const SimpleGraph& g);
SimpleGraph read_graph_file(const std::filesystem::path& p);

} // namespace butson
