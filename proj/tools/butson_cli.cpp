#include "butson/construct.hpp"
#include "butson/equiv.hpp"
#include "butson/errors.hpp"
#include "butson/explorer.hpp"
#include "butson/sites.hpp"
#include "butson/trades.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

using namespace butson;

namespace {

constexpr int exit_true = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

std::string join(const std::vector<int>& v, char sep = ',') {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i];
    }
    return os.str();
}

std::string join_cells(const std::vector<std::vector<int>>& cells) {
    std::ostringstream os;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << '|';
        os << join(cells[i]);
    }
    return os.str();
}

int cmd_verify(const std::string& file, bool use_float, double tol) {
    if (use_float) {
        UMatrix u = read_um_file(file);
        if (is_complex_hadamard_float(u, tol)) {
            std::cout << "hadamard (float, tol " << tol << ")\n";
            return exit_true;
        }
        std::cout << "not hadamard (float, tol " << tol << ")\n";
        return exit_false;
    }
    BHMatrix h = read_bh_file(file);
    if (auto bad = first_nonorthogonal_rows(h)) {
        std::cout << "not hadamard: rows " << bad->first << "," << bad->second
                  << " have nonzero inner product\n";
        return exit_false;
    }
    std::cout << "hadamard: BH(" << h.order() << "," << h.root_order() << ")\n";
    return exit_true;
}

int cmd_sites(const std::string& file, const std::string& family) {
    BHMatrix h = read_bh_file(file);
    if (family == "fourier") {
        auto sites = find_fourier_sites(h);
        for (size_t i = 0; i < sites.size(); ++i)
            std::cout << "fourier site=" << i << " rows=" << join(sites[i].rows)
                      << " m=" << sites[i].m << " blocks=" << join_cells(sites[i].col_blocks)
                      << "\n";
        return sites.empty() ? exit_false : exit_true;
    }
    if (family == "genhall") {
        GenHallForm form;
        try {
            form = check_genhall_form(h, h.root_order());
        } catch (const condition_error& e) {
            std::cout << "no genhall form: condition " << e.condition << " (" << e.what() << ")\n";
            return exit_false;
        }
        std::cout << "genhall k=" << form.k << " n=" << form.n << " S=" << join(form.s_exps)
                  << "\n";
        for (int m = 0; m < form.k; ++m)
            std::cout << "genhall lambda[" << m << "]=" << form.lambdas[size_t(m)].str()
                      << " diag_sum[" << m << "]=" << form.diag_sum(m).str() << "\n";
        return exit_true;
    }
    if (family == "rank1") {
        auto layouts = find_rank1_kron_layouts(h);
        for (size_t i = 0; i < layouts.size(); ++i)
            std::cout << "rank1 site=" << i << " d=" << layouts[i].r1.size()
                      << " r1=" << join(layouts[i].r1)
                      << " cells=" << join_cells(layouts[i].col_cells) << "\n";
        return layouts.empty() ? exit_false : exit_true;
    }
    if (family == "rank2") {
        GenHallForm form;
        try {
            form = check_genhall_form(h, h.root_order());
        } catch (const condition_error& e) {
            std::cout << "no rank2 layout: needs the genhall form (condition " << e.condition
                      << ")\n";
            return exit_false;
        }
        auto sites = rank2_sites_from_genhall(h, form);
        for (const auto& site : sites) {
            BHMatrix hn = apply_monomial(h, site.left, site.right);
            auto f = check_rank2_conditions(hn, site.parts, Axis::cols);
            std::cout << "rank2 site=" << site.m << " s=" << f.s.str()
                      << " R1=" << join(site.parts.r1) << " C1=" << join(site.parts.c1)
                      << " R=" << join(site.parts.r) << " C=" << join(site.parts.c)
                      << " R2=" << join(site.parts.r2) << " C2=" << join(site.parts.c2) << "\n";
        }
        return sites.empty() ? exit_false : exit_true;
    }
    std::cerr << "unknown family: " << family << "\n";
    return exit_usage;
}

int cmd_switch(const std::string& file, const std::string& family, int site, int block,
               int coeff) {
    BHMatrix h = read_bh_file(file);
    if (family == "fourier") {
        auto sites = find_fourier_sites(h);
        if (site < 0 || site >= int(sites.size())) {
            std::cerr << "no fourier site with index " << site << "\n";
            return exit_usage;
        }
        std::cout << emit_bh(fourier_set_switch(h, sites[size_t(site)], block, coeff));
        return exit_true;
    }
    if (family == "genhall") {
        auto form = check_genhall_form(h, h.root_order());
        std::cout << emit_bh(genhall_switch(h, form, block, coeff));
        return exit_true;
    }
    if (family == "rank1") {
        auto layouts = find_rank1_kron_layouts(h);
        if (site < 0 || site >= int(layouts.size())) {
            std::cerr << "no rank1 layout with index " << site << "\n";
            return exit_usage;
        }
        std::cout << emit_bh(apply_switch(h, rank1_cell_plan(h, layouts[size_t(site)], block, coeff)));
        return exit_true;
    }
    if (family == "rank2") {
        auto form = check_genhall_form(h, h.root_order());
        auto sites = rank2_sites_from_genhall(h, form);
        if (site < 0 || site >= int(sites.size())) {
            std::cerr << "no rank2 site with index " << site << "\n";
            return exit_usage;
        }
        const auto& s = sites[size_t(site)];
        BHMatrix hn = apply_monomial(h, s.left, s.right);
        auto f = check_rank2_conditions(hn, s.parts, Axis::cols);
        std::cout << emit_bh(rank2_switch(hn, f, coeff));
        return exit_true;
    }
    std::cerr << "unknown family: " << family << "\n";
    return exit_usage;
}

int cmd_orbit(const std::vector<std::string>& seed_files, const std::string& out_dir,
              const std::vector<std::string>& family_names, long long max_classes, int depth,
              long long budget, int workers) {
    std::vector<BHMatrix> seeds;
    for (const auto& f : seed_files) seeds.push_back(read_bh_file(f));
    OrbitConfig cfg;
    if (!family_names.empty()) {
        cfg.families.clear();
        for (const auto& name : family_names) {
            auto fam = family_from_name(name);
            if (!fam) {
                std::cerr << "unknown family: " << name << "\n";
                return exit_usage;
            }
            cfg.families.push_back(*fam);
        }
    }
    cfg.max_classes = max_classes;
    cfg.max_depth = depth;
    cfg.node_budget = budget;
    cfg.workers = workers;
    ClassStore store(out_dir);
    auto stats = orbit_bfs(seeds, cfg, store);
    std::cout << "classes " << stats.classes << "\n"
              << "expanded " << stats.expanded << "\n"
              << "switches " << stats.switches_applied << "\n"
              << "self_loops " << stats.self_loops << "\n"
              << "halted_by_limit " << (stats.halted_by_limit ? 1 : 0) << "\n";
    return stats.halted_by_limit ? exit_budget : exit_true;
}

int cmd_classify(const std::string& dir) {
    ClassStore store(dir);
    auto recs = store.records();
    std::map<int, int> hist;
    for (const auto& r : recs) ++hist[r.depth];
    std::cout << "classes " << recs.size() << "\n";
    for (const auto& [d, c] : hist) std::cout << "depth " << d << ": " << c << "\n";
    return exit_true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"butson: switching framework for Butson and complex Hadamard matrices"};
    app.require_subcommand(1);

    // verify
    std::string verify_file;
    bool verify_float = false;
    double verify_tol = 1e-9;
    auto* verify = app.add_subcommand("verify", "check the Hadamard property of a matrix file");
    verify->add_option("file", verify_file)->required();
    verify->add_flag("--float", verify_float, "treat input as a CH (unit-modulus complex) file");
    verify->add_option("--tol", verify_tol, "relative tolerance for the float checker");

    // construct
    auto* construct = app.add_subcommand("construct", "emit a constructed matrix in BH format");
    construct->require_subcommand(1);
    int fourier_n = 0;
    auto* c_fourier = construct->add_subcommand("fourier", "Fourier matrix F_n");
    c_fourier->add_option("n", fourier_n)->required();
    std::string kron_a, kron_b;
    auto* c_kron = construct->add_subcommand("kron", "Kronecker product of two BH files");
    c_kron->add_option("a", kron_a)->required();
    c_kron->add_option("b", kron_b)->required();
    int circ_k = 0;
    auto* c_circ = construct->add_subcommand("circulant", "circulant BH(k,k)");
    c_circ->add_option("k", circ_k)->required();
    std::string bush_seed;
    auto* c_bush = construct->add_subcommand("bush", "Bush-type matrix from a seed BH file");
    c_bush->add_option("seed", bush_seed)->required();
    int paley_q = 0;
    auto* c_paley = construct->add_subcommand("paley", "order q+1 Paley Hadamard matrix");
    c_paley->add_option("q", paley_q)->required();

    // sites
    std::string sites_file, sites_family;
    auto* sites = app.add_subcommand("sites", "emit switchable site records");
    sites->add_option("file", sites_file)->required();
    sites->add_option("--family", sites_family, "fourier|genhall|rank1|rank2")->required();

    // switch
    std::string sw_file, sw_family;
    int sw_site = 0, sw_block = 0, sw_coeff = 1;
    auto* sw = app.add_subcommand("switch", "apply a switching and emit the result");
    sw->add_option("file", sw_file)->required();
    sw->add_option("--family", sw_family, "fourier|genhall|rank1|rank2")->required();
    sw->add_option("--site", sw_site, "site index from the sites listing");
    sw->add_option("--block", sw_block, "block / cell index inside the site");
    sw->add_option("--coeff", sw_coeff, "root exponent of the switching coefficient");

    // cert
    std::string cert_file;
    auto* cert = app.add_subcommand("cert", "print the canonical certificate digest");
    cert->add_option("file", cert_file)->required();

    // equiv
    std::string eq_a, eq_b;
    auto* eq = app.add_subcommand("equiv", "decide monomial equivalence of two BH files");
    eq->add_option("a", eq_a)->required();
    eq->add_option("b", eq_b)->required();

    // orbit
    std::vector<std::string> orbit_seeds, orbit_families;
    std::string orbit_out;
    long long orbit_max_classes = 1000000, orbit_budget = 1000000000;
    int orbit_depth = INT32_MAX, orbit_workers = 1;
    auto* orbit = app.add_subcommand("orbit", "explore the switching orbit from seed matrices");
    orbit->add_option("--seed", orbit_seeds, "seed BH files")->required();
    orbit->add_option("--out", orbit_out, "store directory")->required();
    orbit->add_option("--families", orbit_families, "fourier genhall rank1 bush");
    orbit->add_option("--max-classes", orbit_max_classes);
    orbit->add_option("--depth", orbit_depth);
    orbit->add_option("--budget", orbit_budget, "switch-application budget");
    orbit->add_option("--workers", orbit_workers);

    // trade-min
    std::string trade_file;
    int trade_bound = 0;
    long long trade_budget = 20000000;
    auto* trade = app.add_subcommand("trade-min", "smallest trade search / certification");
    trade->add_option("file", trade_file)->required();
    trade->add_option("--bound", trade_bound, "certify no trade below this size (default n)");
    trade->add_option("--budget", trade_budget, "node budget");

    // classify
    std::string classify_dir;
    auto* classify = app.add_subcommand("classify", "summarize an orbit store");
    classify->add_option("dir", classify_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*verify) return cmd_verify(verify_file, verify_float, verify_tol);
        if (*construct) {
            if (*c_fourier) std::cout << emit_bh(fourier(fourier_n));
            if (*c_kron) std::cout << emit_bh(kronecker(read_bh_file(kron_a), read_bh_file(kron_b)));
            if (*c_circ) std::cout << emit_bh(circulant_bh(circ_k));
            if (*c_bush) std::cout << emit_bh(bush_type(read_bh_file(bush_seed)));
            if (*c_paley) std::cout << emit_bh(paley_seed(paley_q));
            return exit_true;
        }
        if (*sites) return cmd_sites(sites_file, sites_family);
        if (*sw) return cmd_switch(sw_file, sw_family, sw_site, sw_block, sw_coeff);
        if (*cert) {
            std::cout << certificate(read_bh_file(cert_file)).hex() << "\n";
            return exit_true;
        }
        if (*eq) {
            auto w = equivalent_monomial(read_bh_file(eq_a), read_bh_file(eq_b));
            std::cout << (w ? "equivalent" : "inequivalent") << "\n";
            return w ? exit_true : exit_false;
        }
        if (*orbit)
            return cmd_orbit(orbit_seeds, orbit_out, orbit_families, orbit_max_classes,
                             orbit_depth, orbit_budget, orbit_workers);
        if (*trade) {
            BHMatrix h = read_bh_file(trade_file);
            const int bound = trade_bound > 0 ? trade_bound : h.order();
            auto res = min_trade_size(h, bound, trade_budget);
            switch (res.status) {
            case TradeSearchStatus::found:
                std::cout << "min " << res.size << "\n";
                for (size_t i = 0; i < res.witness->cells.size(); ++i)
                    std::cout << "cell " << res.witness->cells[i].first << " "
                              << res.witness->cells[i].second << " -> " << res.witness->repl[i]
                              << "\n";
                return exit_true;
            case TradeSearchStatus::certified:
                std::cout << "certified: no trade of size < " << bound << "\n";
                return exit_false;
            case TradeSearchStatus::budget_exhausted:
                std::cout << "budget exhausted after " << res.nodes << " nodes\n";
                return exit_budget;
            }
        }
        if (*classify) return cmd_classify(classify_dir);
    } catch (const budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return exit_budget;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_false;
    }
    return exit_usage;
}
