#include "butson/graph.hpp"

#include "butson/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

using namespace butson;

namespace {

SimpleGraph path3() {
    SimpleGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

SimpleGraph cycle(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

SimpleGraph random_graph(int n, std::mt19937& rng) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng() & 1) g.add_edge(u, v);
    return g;
}

// test-only oracle: characteristic polynomial by cofactor expansion of
// xI - A over polynomial entries
using Poly = std::vector<Int>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_add(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

Poly det_expansion(const std::vector<std::vector<Poly>>& m, std::vector<int> cols) {
    const size_t row = m.size() - cols.size();
    if (cols.empty()) return {Int(1)};
    Poly acc{Int(0)};
    for (size_t t = 0; t < cols.size(); ++t) {
        std::vector<int> rest;
        for (size_t u = 0; u < cols.size(); ++u)
            if (u != t) rest.push_back(cols[u]);
        Poly term = poly_mul(m[row][static_cast<size_t>(cols[t])], det_expansion(m, rest));
        if (t % 2 == 1)
            for (auto& c : term) c = -c;
        acc = poly_add(std::move(acc), term);
    }
    return acc;
}

Poly charpoly_oracle(const std::vector<std::vector<Int>>& a) {
    const size_t n = a.size();
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j)
                m[i][j] = Poly{-a[i][j], Int(1)};
            else
                m[i][j] = Poly{-a[i][j]};
        }
    std::vector<int> cols;
    for (size_t j = 0; j < n; ++j) cols.push_back(int(j));
    Poly p = det_expansion(m, cols);
    p.resize(n + 1);
    return p;
}

} // namespace

TEST_CASE("char_poly on known matrices") {
    // K_3 adjacency: x^3 - 3x - 2
    SimpleGraph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(0, 2);
    k3.add_edge(1, 2);
    CHECK(char_poly(adjacency_matrix(k3)) == std::vector<Int>{-2, -3, 0, 1});

    std::vector<std::vector<Int>> zero(4, std::vector<Int>(4, Int(0)));
    CHECK(char_poly(zero) == std::vector<Int>{0, 0, 0, 0, 1});
}

TEST_CASE("char_poly matches the cofactor-expansion oracle") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::vector<Int>> m(5, std::vector<Int>(5, Int(0)));
        for (auto& row : m)
            for (auto& v : row) v = d(rng);
        CHECK(char_poly(m) == charpoly_oracle(m));
    }
}

TEST_CASE("seidel switching") {
    SimpleGraph g = path3();
    CHECK(seidel_switch(g, {}) == g);
    CHECK(seidel_switch(g, {0, 1, 2}) == g);

    SimpleGraph s = seidel_switch(g, {1});
    CHECK(char_poly(seidel_matrix(s)) == char_poly(seidel_matrix(g)));
    CHECK_FALSE(s == g);
    CHECK(seidel_switch(s, {1}) == g); // involution
}

TEST_CASE("seidel switching preserves the seidel spectrum") {
    std::mt19937 rng(43);
    for (int t = 0; t < 60; ++t) {
        const int n = 4 + int(rng() % 7);
        SimpleGraph g = random_graph(n, rng);
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (rng() & 1) s.push_back(v);
        SimpleGraph g2 = seidel_switch(g, s);
        CHECK(char_poly(seidel_matrix(g2)) == char_poly(seidel_matrix(g)));
        CHECK(seidel_switch(g2, s) == g);
    }
}

TEST_CASE("godsil-mckay switching") {
    // trivial partition on a regular graph: nothing moves
    SimpleGraph c5 = cycle(5);
    CHECK(gm_switch(c5, {{0, 1, 2, 3, 4}}) == c5);

    // cell-regularity violation is reported
    SimpleGraph p3 = path3();
    CHECK_THROWS_AS(gm_switch(p3, {{0, 1, 2}}), condition_error);

    // half-neighbours violation
    SimpleGraph g(6);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    // vertex 0 sees 3 of the 4-cell {1,2,3,4}
    CHECK_THROWS_AS(gm_switch(g, {{1, 2, 3, 4}}), condition_error);
}

TEST_CASE("godsil-mckay switching preserves the adjacency spectrum") {
    // the smallest instance found by the order <= 7 search oracle
    SimpleGraph g(7);
    g.add_edge(0, 4);
    g.add_edge(0, 5);
    g.add_edge(1, 3);
    g.add_edge(1, 5);
    g.add_edge(2, 3);
    g.add_edge(2, 4);
    SimpleGraph g2 = gm_switch(g, {{0, 1, 2, 6}});
    CHECK_FALSE(g2 == g);
    CHECK(char_poly(adjacency_matrix(g2)) == char_poly(adjacency_matrix(g)));
    // the mate is non-isomorphic: degree sequences differ
    std::vector<int> d1, d2;
    for (int v = 0; v < 7; ++v) {
        d1.push_back(g.degree(v));
        d2.push_back(g2.degree(v));
    }
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    CHECK(d1 != d2);
}

TEST_CASE("graph file format") {
    SimpleGraph g = cycle(5);
    CHECK(parse_graph(emit_graph(g)) == g);
    CHECK_THROWS_AS(parse_graph("GRAPH 0\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("GRAPH 3\n0 3\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("NOPE 3\n"), parse_error);
}
