#include "butson/switchplan.hpp"

#include "butson/construct.hpp"
#include "butson/errors.hpp"
#include "butson/sites.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace butson;
using namespace butson::testing;

namespace {

SwitchPlan block_plan(int n, const std::vector<int>& rows, const std::vector<int>& cols,
                      int coeff) {
    SwitchPlan plan;
    std::vector<char> in_r(static_cast<size_t>(n), 0), in_c(static_cast<size_t>(n), 0);
    for (int r : rows) in_r[static_cast<size_t>(r)] = 1;
    for (int c : cols) in_c[static_cast<size_t>(c)] = 1;
    plan.row_parts.assign(2, {});
    plan.col_parts.assign(2, {});
    for (int i = 0; i < n; ++i) plan.row_parts[in_r[static_cast<size_t>(i)] ? 1 : 0].push_back(i);
    for (int i = 0; i < n; ++i) plan.col_parts[in_c[static_cast<size_t>(i)] ? 1 : 0].push_back(i);
    plan.coeffs = {{coeff}};
    return plan;
}

// order-8 real Hadamard arranged with a closed quadruple: four rows whose
// column blocks are constant
struct Quadruple {
    BHMatrix h;
    std::vector<int> rows{0, 1, 2, 3};
    std::vector<std::vector<int>> blocks{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
};

Quadruple make_quadruple() {
    // kron(F2 x F2, F2) puts the closed-quadruple rows at 0,2,4,6; permute
    // them to the top
    BHMatrix base = kronecker(kronecker(fourier(2), fourier(2)), fourier(2));
    Monomial left = Monomial::identity(8);
    left.perm = {0, 2, 4, 6, 1, 3, 5, 7};
    return Quadruple{apply_monomial(base, left, Monomial::identity(8))};
}

SwitchPlan quadruple_plan(const Quadruple& q, const std::vector<int>& blocks) {
    SwitchPlan plan;
    plan.row_parts = {{4, 5, 6, 7}, q.rows};
    plan.col_parts.assign(1, {});
    std::vector<char> used(8, 0);
    for (int b : blocks)
        for (int c : q.blocks[static_cast<size_t>(b)]) used[static_cast<size_t>(c)] = 1;
    for (int c = 0; c < 8; ++c)
        if (!used[static_cast<size_t>(c)]) plan.col_parts[0].push_back(c);
    std::vector<int> coeff_row;
    for (int b : blocks) {
        plan.col_parts.push_back(q.blocks[static_cast<size_t>(b)]);
        coeff_row.push_back(1);
    }
    plan.coeffs = {coeff_row};
    return plan;
}

} // namespace

TEST_CASE("trivial plans are rejected unless explicitly allowed") {
    BHMatrix h = fourier(4);
    SwitchPlan plan = block_plan(4, {0, 1}, {0, 1}, 0);
    CHECK_THROWS_AS(apply_switch(h, plan), std::invalid_argument);
    CHECK(apply_switch(h, plan, true) == h);
}

TEST_CASE("bush diagonal block switching") {
    BHMatrix b9 = bush_type(fourier(3));
    SwitchPlan plan = block_plan(9, {0, 1, 2}, {0, 1, 2}, 1);
    BHMatrix switched = apply_switch(b9, plan);
    CHECK(is_butson_hadamard(switched));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(switched.exp(i, j) == 1);
}

TEST_CASE("single-cell switches below the trade bound fail") {
    BHMatrix f3 = fourier(3);
    SwitchPlan plan = block_plan(3, {1}, {1}, 1);
    CHECK_THROWS_AS(apply_switch(f3, plan), property_error);
}

TEST_CASE("plan validation enforces the non-triviality condition") {
    BHMatrix b9 = bush_type(fourier(3));
    SwitchPlan plan;
    plan.row_parts = {{6, 7, 8}, {0, 1, 2}, {3, 4, 5}};
    plan.col_parts = {{6, 7, 8}, {0, 1, 2}, {3, 4, 5}};
    // column cell 2 and row cell 2 have only identity coefficients
    plan.coeffs = {{1, 0}, {0, 0}};
    CHECK_THROWS_AS(plan.validate(9, 9, 3), std::invalid_argument);
    CHECK(plan.rank() == 1);
}

TEST_CASE("closed quadruple taxonomy") {
    Quadruple q = make_quadruple();
    REQUIRE(is_butson_hadamard(q.h));

    PlanClass one = classify_plan(q.h, quadruple_plan(q, {0}));
    CHECK(one.rank == 1);
    CHECK_FALSE(one.reducible);

    PlanClass two = classify_plan(q.h, quadruple_plan(q, {0, 1}));
    CHECK(two.rank == 2);
    CHECK(two.reducible);

    PlanClass four = classify_plan(q.h, quadruple_plan(q, {0, 1, 2, 3}));
    CHECK(four.rank == 4);
    CHECK(four.degenerate); // negating all blocks negates the four rows
}

TEST_CASE("mergeable cells make a plan non-minimal") {
    Quadruple q = make_quadruple();
    // two column cells with the same coefficient column are mergeable
    PlanClass two = classify_plan(q.h, quadruple_plan(q, {0, 1}));
    CHECK_FALSE(two.minimal);
    PlanClass one = classify_plan(q.h, quadruple_plan(q, {0}));
    CHECK(one.minimal);
}

TEST_CASE("classification refuses rank above 8") {
    // scale all three row blocks and all three column blocks of a Bush-type
    // matrix by zeta: every block picks up zeta^2, a global scaling
    BHMatrix b9 = bush_type(fourier(3));
    SwitchPlan plan;
    plan.row_parts = {{}, {0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    plan.col_parts = {{}, {0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    plan.coeffs = {{2, 2, 2}, {2, 2, 2}, {2, 2, 2}};
    CHECK(plan.rank() == 9);
    CHECK(is_butson_hadamard(apply_switch(b9, plan)));
    CHECK_THROWS_AS(classify_plan(b9, plan), budget_error);
}

TEST_CASE("plans from site finders always apply") {
    BHMatrix f9 = read_bh_file(data_path("f9_rowperm.bh"));
    for (const auto& site : find_fourier_sites(f9))
        for (int block = 0; block < 3; ++block)
            for (int c = 1; c < 3; ++c)
                CHECK(is_butson_hadamard(apply_switch(f9, fourier_site_plan(f9, site, block, c))));

    BHMatrix h = read_bh_file(data_path("bh12_3.bh"));
    auto form = check_genhall_form(h, 3);
    for (int m = 0; m < 3; ++m)
        for (int c = 1; c < 3; ++c)
            CHECK(is_butson_hadamard(apply_switch(h, genhall_plan(h, form, m, c))));
}
