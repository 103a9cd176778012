#include "butson/graph.hpp"

#include "butson/errors.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace butson {

SimpleGraph::SimpleGraph(int n) : n_(n), a_(size_t(n) * n, 0) {
    if (n < 1) throw std::invalid_argument("SimpleGraph: n must be >= 1");
}

void SimpleGraph::add_edge(int u, int v) { set_edge(u, v, true); }

void SimpleGraph::set_edge(int u, int v, bool present) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::out_of_range("SimpleGraph: vertex out of range");
    if (u == v) throw std::invalid_argument("SimpleGraph: loops are not allowed");
    a_[size_t(u) * n_ + v] = present ? 1 : 0;
    a_[size_t(v) * n_ + u] = present ? 1 : 0;
}

int SimpleGraph::degree(int v) const {
    int d = 0;
    for (int u = 0; u < n_; ++u) d += adjacent(v, u);
    return d;
}

SimpleGraph seidel_switch(const SimpleGraph& g, const std::vector<int>& s) {
    const int n = g.order();
    std::vector<char> in_s(size_t(n), 0);
    for (int v : s) {
        if (v < 0 || v >= n) throw std::out_of_range("seidel_switch: vertex out of range");
        in_s[size_t(v)] = 1;
    }
    std::vector<int> s1, s2;
    for (int v = 0; v < n; ++v) (in_s[size_t(v)] ? s1 : s2).push_back(v);
    if (s1.empty() || s2.empty()) return g;

    // Rank-2 plan: transposition (0 1) on cells (S, V\S) and (V\S, S).
    SwitchPlan plan;
    plan.row_parts = {{}, s1, s2};
    plan.col_parts = {{}, s1, s2};
    plan.coeffs = {{0, 1}, {1, 0}};
    plan.validate(n, n, 2);

    SimpleGraph out = g;
    for (size_t i = 1; i < plan.row_parts.size(); ++i)
        for (size_t j = 1; j < plan.col_parts.size(); ++j) {
            if (plan.coeffs[i - 1][j - 1] == 0) continue;
            for (int u : plan.row_parts[i])
                for (int v : plan.col_parts[j])
                    if (u < v) out.set_edge(u, v, !out.adjacent(u, v));
        }
    return out;
}

SimpleGraph gm_switch(const SimpleGraph& g, const std::vector<std::vector<int>>& cells) {
    const int n = g.order();
    std::vector<int> cell_of(size_t(n), -1);
    for (size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].empty()) throw std::invalid_argument("gm_switch: empty cell");
        for (int v : cells[c]) {
            if (v < 0 || v >= n) throw std::out_of_range("gm_switch: vertex out of range");
            if (cell_of[size_t(v)] != -1)
                throw std::invalid_argument("gm_switch: cells are not disjoint");
            cell_of[size_t(v)] = int(c);
        }
    }
    auto count_in = [&](int v, const std::vector<int>& cell) {
        int c = 0;
        for (int u : cell) c += g.adjacent(v, u);
        return c;
    };
    // Condition 1: every vertex of C_i has the same number of neighbours in C_j.
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = 0; j < cells.size(); ++j) {
            const int want = count_in(cells[i][0], cells[j]);
            for (int v : cells[i])
                if (count_in(v, cells[j]) != want)
                    throw condition_error(
                        "cell-regularity",
                        "gm_switch: vertex " + std::to_string(v) + " breaks regularity of cell " +
                            std::to_string(i) + " into cell " + std::to_string(j));
        }
    // Condition 2: every vertex of D sees 0, half or all of each cell.
    for (int v = 0; v < n; ++v) {
        if (cell_of[size_t(v)] != -1) continue;
        for (size_t j = 0; j < cells.size(); ++j) {
            const int c = count_in(v, cells[j]);
            const int sz = int(cells[j].size());
            if (c != 0 && c != sz && 2 * c != sz)
                throw condition_error("half-neighbours",
                                      "gm_switch: vertex " + std::to_string(v) + " has " +
                                          std::to_string(c) + " neighbours in cell " +
                                          std::to_string(j) + " of size " + std::to_string(sz));
        }
    }
    SimpleGraph out = g;
    for (int v = 0; v < n; ++v) {
        if (cell_of[size_t(v)] != -1) continue;
        for (const auto& cell : cells) {
            const int c = count_in(v, cell);
            if (c == 0 || c == int(cell.size())) continue;
            for (int u : cell) out.set_edge(v, u, !out.adjacent(v, u));
        }
    }
    return out;
}

std::vector<Int> char_poly(const std::vector<std::vector<Int>>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("char_poly: matrix must be square");
    if (n == 0) return {Int(1)};

    auto mat_mul = [n](const std::vector<std::vector<Int>>& a,
                       const std::vector<std::vector<Int>>& b) {
        std::vector<std::vector<Int>> r(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t t = 0; t < n; ++t) {
                if (a[i][t] == 0) continue;
                for (size_t j = 0; j < n; ++j) r[i][j] += a[i][t] * b[t][j];
            }
        return r;
    };

    std::vector<Int> coeffs(n + 1);
    coeffs[n] = 1;
    std::vector<std::vector<Int>> mk = m;
    for (size_t j = 1; j <= n; ++j) {
        Int tr = 0;
        for (size_t i = 0; i < n; ++i) tr += mk[i][i];
        Int c = -tr / Int(j); // exact by Newton's identities
        coeffs[n - j] = c;
        if (j == n) break;
        for (size_t i = 0; i < n; ++i) mk[i][i] += c;
        mk = mat_mul(m, mk);
    }
    return coeffs;
}

std::vector<std::vector<Int>> adjacency_matrix(const SimpleGraph& g) {
    const int n = g.order();
    std::vector<std::vector<Int>> a(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[size_t(i)][size_t(j)] = g.adjacent(i, j) ? 1 : 0;
    return a;
}

std::vector<std::vector<Int>> seidel_matrix(const SimpleGraph& g) {
    const int n = g.order();
    std::vector<std::vector<Int>> s(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s[size_t(i)][size_t(j)] = (i == j) ? 0 : (g.adjacent(i, j) ? -1 : 1);
    return s;
}

SimpleGraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int n = -1;
    SimpleGraph g(1);
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag)) continue;
            if (tag != "GRAPH" || !(ls >> n) || n < 1)
                throw parse_error("bad header: expected 'GRAPH <n>'");
            g = SimpleGraph(n);
            have_header = true;
            continue;
        }
        int u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw parse_error("edge line " + std::to_string(lineno) + ": expected 'u v'");
        if (u < 0 || u >= n || v < 0 || v >= n || u == v)
            throw parse_error("edge line " + std::to_string(lineno) + ": bad endpoints");
        g.add_edge(u, v);
    }
    if (!have_header) throw parse_error("empty GRAPH input");
    return g;
}

std::string emit_graph(const SimpleGraph& g) {
    std::ostringstream os;
    os << "GRAPH " << g.order() << '\n';
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (g.adjacent(u, v)) os << u << ' ' << v << '\n';
    return os.str();
}

SimpleGraph read_graph_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw parse_error("cannot open file: " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

} // namespace butson
