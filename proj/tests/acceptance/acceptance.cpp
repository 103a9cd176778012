// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Runs the library directly and drives the CLI binary for
// the criteria phrased in terms of it.
#include "butson/construct.hpp"
#include "butson/equiv.hpp"
#include "butson/errors.hpp"
#include "butson/explorer.hpp"
#include "butson/graph.hpp"
#include "butson/sites.hpp"
#include "butson/switchplan.hpp"
#include "butson/trades.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace butson;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_data = BUTSON_DATA_DIR;
std::string g_cli = BUTSON_CLI_PATH;
int g_failures = 0;

std::string data(const std::string& name) { return g_data + "/" + name; }

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const auto tmp = std::filesystem::temp_directory_path() / "butson_acceptance_cli.out";
    const std::string cmd = g_cli + " " + args + " > " + tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::ostringstream buf;
    buf << in.rdbuf();
    int code = -1;
    if (rc != -1) code = WEXITSTATUS(rc);
    return {code, buf.str()};
}

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << number << " (" << label << ")";
    if (!detail.empty()) line << ": " << detail;
    line << " [" << std::fixed;
    line.precision(2);
    line << secs << "s / " << budget_seconds << "s]";
    std::cout << line.str() << std::endl;
    if (!ok) ++g_failures;
}

Monomial random_monomial(int n, int k, std::mt19937& rng) {
    Monomial m = Monomial::identity(n);
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    for (int i = 0; i < n; ++i) m.scales[size_t(i)] = int(rng() % unsigned(k));
    return m;
}

BHMatrix scramble(const BHMatrix& h, std::mt19937& rng) {
    return apply_monomial(h, random_monomial(h.order(), h.root_order(), rng),
                          random_monomial(h.order(), h.root_order(), rng));
}

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    const int n = a.order();
    std::vector<int> da, db;
    for (int v = 0; v < n; ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u) {
            if (da[size_t(u)] != db[size_t(perm[size_t(u)])]) ok = false;
            for (int v = u + 1; v < n && ok; ++v)
                if (a.adjacent(u, v) != b.adjacent(perm[size_t(u)], perm[size_t(v)])) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--data") g_data = argv[i + 1];
        if (flag == "--cli") g_cli = argv[i + 1];
    }
    const std::vector<std::string> seed_files = {"bh6_3.bh", "f9_rowperm.bh", "bh12_3.bh",
                                                 "bh12_4.bh"};

    criterion(1, "shipped examples verify", 1.0, [&](std::string& detail) {
        auto r3 = run_cli("verify " + data("bh12_3.bh"));
        auto r4 = run_cli("verify " + data("bh12_4.bh"));
        detail = "exit codes " + std::to_string(r3.exit_code) + "," + std::to_string(r4.exit_code);
        return r3.exit_code == 0 && r4.exit_code == 0;
    });

    criterion(2, "eigenvalue and block-sum reproduction", 10.0, [&](std::string& detail) {
        BHMatrix h3 = read_bh_file(data("bh12_3.bh"));
        auto f3 = check_genhall_form(h3, 3);
        const Cyc lam0 = Cyc::integer(3, 2) + Cyc::root(3, 1); // 2 + zeta
        const Cyc a11 = Cyc(3, {Int(0), Int(2), Int(1)});      // 2*zeta + zeta^2
        bool ok = f3.lambdas[0] == lam0;
        ok = ok && f3.diag_sum(0) == a11 && a11 == -lam0.conj();
        ok = ok && f3.diag_sum(1) == -(lam0.conj().mul_root(1)); // -zeta*conj(lambda)
        ok = ok && f3.diag_sum(2) == -lam0.conj();

        BHMatrix h4 = read_bh_file(data("bh12_4.bh"));
        auto f4 = check_genhall_form(h4, 4);
        const Cyc two_i = Cyc(4, {Int(0), Int(2), Int(0), Int(0)});
        ok = ok && f4.s_exps == std::vector<int>{0, 1, 2, 1};
        ok = ok && f4.lambdas[0] == two_i && f4.diag_sum(0) == two_i;

        auto cli3 = run_cli("sites " + data("bh12_3.bh") + " --family genhall");
        ok = ok && cli3.output.find("lambda[0]=(2,1,0)") != std::string::npos;
        auto cli4 = run_cli("sites " + data("bh12_4.bh") + " --family genhall");
        ok = ok && cli4.output.find("S=0,1,2,1") != std::string::npos;
        if (!ok) detail = "a reported value disagrees";
        return ok;
    });

    criterion(3, "switch validity sweep", 5.0, [&](std::string& detail) {
        BHMatrix h3 = read_bh_file(data("bh12_3.bh"));
        auto f3 = check_genhall_form(h3, 3);
        int ok = 0;
        for (int m = 0; m < 3; ++m)
            for (int c = 1; c < 3; ++c)
                if (is_butson_hadamard(genhall_switch(h3, f3, m, c))) ++ok;
        BHMatrix h4 = read_bh_file(data("bh12_4.bh"));
        auto f4 = check_genhall_form(h4, 4);
        for (int m = 0; m < 4; ++m)
            for (int c = 1; c < 4; ++c)
                if (is_butson_hadamard(genhall_switch(h4, f4, m, c))) ++ok;
        detail = std::to_string(ok) + "/18 switches hadamard";
        return ok == 18;
    });

    criterion(4, "inequivalent switch of the BH(12,4) example", 30.0, [&](std::string& detail) {
        BHMatrix h4 = read_bh_file(data("bh12_4.bh"));
        auto f4 = check_genhall_form(h4, 4);
        const auto base = certificate(h4);
        for (int m = 0; m < 4; ++m)
            for (int c = 1; c < 4; ++c) {
                BHMatrix sw = genhall_switch(h4, f4, m, c);
                if (certificate(sw) == base) continue;
                const auto tmp = std::filesystem::temp_directory_path() / "acc_switched.bh";
                write_bh_file(tmp, sw);
                auto cli = run_cli("equiv " + data("bh12_4.bh") + " " + tmp.string());
                detail = "m=" + std::to_string(m) + " coeff=" + std::to_string(c) +
                         " differing digest, equiv exit " + std::to_string(cli.exit_code);
                return cli.exit_code == 1;
            }
        detail = "no switch with a differing certificate";
        return false;
    });

    criterion(5, "fourier obstruction", 10.0, [&](std::string& detail) {
        auto none = run_cli("sites " + data("bh6_3.bh") + " --family fourier");
        auto some = run_cli("sites " + data("f9_rowperm.bh") + " --family fourier");
        const bool no_sites = none.exit_code == 1 && none.output.empty();
        const bool has_sites =
            some.exit_code == 0 && some.output.find("fourier site=0") != std::string::npos;
        detail = "bh6_3 sites exit " + std::to_string(none.exit_code) + ", f9 exit " +
                 std::to_string(some.exit_code);
        return no_sites && has_sites;
    });

    criterion(6, "trade lower bound", 300.0, [&](std::string& detail) {
        struct Case {
            BHMatrix h;
            const char* name;
        };
        const std::vector<Case> cases = {{fourier(2), "F2"},
                                         {fourier(3), "F3"},
                                         {kronecker(fourier(2), fourier(2)), "F2xF2"}};
        std::ostringstream d;
        bool ok = true;
        for (const auto& c : cases) {
            const int n = c.h.order();
            const auto tmp = std::filesystem::temp_directory_path() /
                             (std::string("acc_trade_") + c.name + ".bh");
            write_bh_file(tmp, c.h);
            auto certify = run_cli("trade-min " + tmp.string() + " --bound " + std::to_string(n));
            auto find = run_cli("trade-min " + tmp.string() + " --bound " + std::to_string(n + 1));
            const bool certified = certify.exit_code == 1;
            const bool found =
                find.exit_code == 0 &&
                find.output.find("min " + std::to_string(n) + "\n") != std::string::npos;
            ok = ok && certified && found;
            d << c.name << (certified && found ? " ok " : " FAIL ");
        }
        detail = d.str();
        return ok;
    });

    criterion(7, "lemma audit and sparse combination", 120.0, [&](std::string& detail) {
        std::mt19937 rng(101);
        long violations = 0;
        std::vector<BHMatrix> seeds;
        for (const auto& f : seed_files) seeds.push_back(read_bh_file(data(f)));
        for (int t = 0; t < 10000; ++t) {
            const BHMatrix& h = seeds[size_t(t) % seeds.size()];
            const int n = h.order(), k = h.root_order();
            const int b = 1 + int(rng() % unsigned(n));
            std::vector<int> cols(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) cols[size_t(i)] = i;
            std::shuffle(cols.begin(), cols.end(), rng);
            cols.resize(size_t(b));
            std::vector<Cyc> coeffs;
            bool nonzero = false;
            for (int i = 0; i < b; ++i) {
                std::vector<Int> cf(static_cast<size_t>(k));
                for (auto& v : cf) v = int(rng() % 9) - 4;
                Cyc cy(k, std::move(cf));
                nonzero = nonzero || !cy.is_zero();
                coeffs.push_back(std::move(cy));
            }
            if (!nonzero) continue;
            if (lincomb_nonzero_count(h, cols, coeffs) < (n + b - 1) / b) ++violations;
        }

        // the 16-cell generalized-Hall trade of the BH(12,4) example
        BHMatrix h4 = read_bh_file(data("bh12_4.bh"));
        Trade trade;
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 2; ++c) {
                trade.cells.push_back({i, 4 + c});
                trade.repl.push_back((h4.exp(i, 4 + c) + 1) % 4);
            }
        for (int r = 0; r < 2; ++r)
            for (int j = 0; j < 4; ++j) {
                trade.cells.push_back({4 + r, j});
                trade.repl.push_back((h4.exp(4 + r, j) + 3) % 4);
            }
        auto sc = sparse_combination_from_trade(h4, trade);
        detail = "lemma violations " + std::to_string(violations) + "/10000; zero_count " +
                 std::to_string(sc.zero_count) + " (needs >= 7; the combination vanishes " +
                 "exactly on the " + std::to_string(12 - 6) + " rows avoiding the trade)";
        return violations == 0 && sc.zero_count >= 7;
    });

    criterion(8, "certificate invariance and soundness", 120.0, [&](std::string& detail) {
        std::mt19937 rng(103);
        long bad_digests = 0, bad_witnesses = 0;
        for (const auto& f : seed_files) {
            BHMatrix h = read_bh_file(data(f));
            const auto base = certificate(h);
            for (int t = 0; t < 1000; ++t)
                if (certificate(scramble(h, rng)) != base) ++bad_digests;
            for (int t = 0; t < 25; ++t) {
                BHMatrix a = scramble(h, rng), b = scramble(h, rng);
                auto w = equivalent_monomial(a, b);
                if (!w || apply_monomial(b, w->first, w->second) != a) ++bad_witnesses;
            }
        }
        detail = std::to_string(bad_digests) + " digest mismatches, " +
                 std::to_string(bad_witnesses) + " witness failures";
        return bad_digests == 0 && bad_witnesses == 0;
    });

    criterion(9, "switch plan taxonomy", 10.0, [&](std::string& detail) {
        BHMatrix base = kronecker(kronecker(fourier(2), fourier(2)), fourier(2));
        Monomial left = Monomial::identity(8);
        left.perm = {0, 2, 4, 6, 1, 3, 5, 7};
        BHMatrix h = apply_monomial(base, left, Monomial::identity(8));
        const std::vector<std::vector<int>> blocks = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
        auto plan_for = [&](const std::vector<int>& chosen) {
            SwitchPlan plan;
            plan.row_parts = {{4, 5, 6, 7}, {0, 1, 2, 3}};
            plan.col_parts.assign(1, {});
            std::vector<char> used(8, 0);
            for (int b : chosen)
                for (int c : blocks[size_t(b)]) used[size_t(c)] = 1;
            for (int c = 0; c < 8; ++c)
                if (!used[size_t(c)]) plan.col_parts[0].push_back(c);
            std::vector<int> row;
            for (int b : chosen) {
                plan.col_parts.push_back(blocks[size_t(b)]);
                row.push_back(1);
            }
            plan.coeffs = {row};
            return plan;
        };
        auto one = classify_plan(h, plan_for({0}));
        auto two = classify_plan(h, plan_for({0, 1}));
        auto four = classify_plan(h, plan_for({0, 1, 2, 3}));
        detail = "rank " + std::to_string(one.rank) + ", two-block reducible " +
                 std::to_string(two.reducible) + ", four-block degenerate " +
                 std::to_string(four.degenerate);
        return one.rank == 1 && two.reducible && four.degenerate;
    });

    criterion(10, "desk-scale class counts", 60.0, [&](std::string& detail) {
        namespace fs = std::filesystem;
        const auto dir1 = fs::temp_directory_path() / "acc_orbit4";
        const auto dir2 = fs::temp_directory_path() / "acc_orbit8";
        fs::remove_all(dir1);
        fs::remove_all(dir2);
        ClassStore s1(dir1), s2(dir2);
        OrbitConfig all;
        auto stats4 = orbit_bfs({kronecker(fourier(2), fourier(2))}, all, s1);
        OrbitConfig fourier_only;
        fourier_only.families = {SwitchFamily::fourier};
        auto stats8 = orbit_bfs({kronecker(kronecker(fourier(2), fourier(2)), fourier(2))},
                                fourier_only, s2);

        // order 16: property checks only
        const auto dir3 = fs::temp_directory_path() / "acc_orbit16";
        fs::remove_all(dir3);
        ClassStore s3(dir3);
        OrbitConfig capped;
        capped.families = {SwitchFamily::bush_diagonal, SwitchFamily::fourier};
        capped.max_classes = 4;
        capped.node_budget = 120;
        orbit_bfs({bush_type(kronecker(fourier(2), fourier(2)))}, capped, s3);
        auto recs = s3.records();
        bool big_ok = recs.size() >= 2;
        for (const auto& r : recs) big_ok = big_ok && is_butson_hadamard(r.rep);
        for (size_t i = 0; i < recs.size() && big_ok; ++i)
            for (size_t j = i + 1; j < recs.size() && big_ok; ++j)
                big_ok = !equivalent_monomial(recs[i].rep, recs[j].rep).has_value();

        detail = "order4 classes " + std::to_string(stats4.classes) + ", order8 classes " +
                 std::to_string(stats8.classes) + ", order16 store " +
                 std::to_string(recs.size()) + " pairwise inequivalent " +
                 std::to_string(big_ok);
        return stats4.classes == 1 && stats8.classes == 1 && big_ok;
    });

    criterion(11, "universality witness", 300.0, [&](std::string& detail) {
        std::mt19937 rng(107);
        long seidel_bad = 0;
        for (int t = 0; t < 500; ++t) {
            const int n = 4 + int(rng() % 7);
            SimpleGraph g(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() & 1) g.add_edge(u, v);
            std::vector<int> s;
            for (int v = 0; v < n; ++v)
                if (rng() & 1) s.push_back(v);
            if (char_poly(seidel_matrix(seidel_switch(g, s))) != char_poly(seidel_matrix(g)))
                ++seidel_bad;
        }

        // small-graph search oracle for godsil-mckay instances
        long gm_checked = 0, gm_bad = 0;
        bool mate_found = false;
        for (int n = 5; n <= 7 && !mate_found; ++n) {
            const int m = n * (n - 1) / 2;
            for (long code = 0; code < (1L << m) && !mate_found; ++code) {
                SimpleGraph g(n);
                int bit = 0;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v, ++bit)
                        if (code & (1L << bit)) g.add_edge(u, v);
                for (int a = 0; a < n && !mate_found; ++a)
                    for (int b = a + 1; b < n && !mate_found; ++b)
                        for (int c = b + 1; c < n && !mate_found; ++c)
                            for (int d = c + 1; d < n && !mate_found; ++d) {
                                SimpleGraph g2(1);
                                try {
                                    g2 = gm_switch(g, {{a, b, c, d}});
                                } catch (const condition_error&) {
                                    continue;
                                }
                                if (g2 == g) continue;
                                ++gm_checked;
                                if (char_poly(adjacency_matrix(g2)) !=
                                    char_poly(adjacency_matrix(g)))
                                    ++gm_bad;
                                else if (!graphs_isomorphic(g, g2))
                                    mate_found = true;
                            }
            }
        }
        detail = std::to_string(seidel_bad) + " seidel failures; gm instances " +
                 std::to_string(gm_checked) + ", charpoly failures " + std::to_string(gm_bad) +
                 ", non-isomorphic mate " + (mate_found ? "found" : "missing");
        return seidel_bad == 0 && gm_bad == 0 && mate_found;
    });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) + " CRITERIA FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
