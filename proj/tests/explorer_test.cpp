#include "butson/explorer.hpp"

#include "butson/construct.hpp"
#include "butson/equiv.hpp"
#include "butson/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>
#include <thread>

using namespace butson;
using namespace butson::testing;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("butson_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("store insert semantics") {
    ClassStore store(fresh_dir("insert"));
    BHMatrix f4 = kronecker(fourier(2), fourier(2));
    ClassRecord rec{certificate(f4).hex(), f4, "seed", 0};
    CHECK(store.insert_if_new(rec).outcome == ClassStore::InsertOutcome::inserted);
    ClassRecord again{certificate(f4).hex(), f4, "seed", 0};
    CHECK(store.insert_if_new(again).outcome == ClassStore::InsertOutcome::duplicate);

    // two scrambles of one matrix collapse to one record
    std::mt19937 rng(79);
    BHMatrix s = scramble(f4, rng);
    ClassRecord srec{certificate(s).hex(), s, "seed", 0};
    CHECK(store.insert_if_new(srec).outcome == ClassStore::InsertOutcome::duplicate);
    CHECK(store.size() == 1);
}

TEST_CASE("store rejects non-hadamard representatives") {
    ClassStore store(fresh_dir("reject"));
    BHMatrix bad = fourier(2);
    bad.set_exp(1, 1, 0);
    ClassRecord rec{"0000", bad, "seed", 0};
    CHECK_THROWS_AS(store.insert_if_new(rec), property_error);
}

TEST_CASE("concurrent duplicate insertion races have one winner") {
    ClassStore store(fresh_dir("race"));
    BHMatrix h = read_bh_file(data_path("bh6_3.bh"));
    const std::string digest = certificate(h).hex();
    std::atomic<int> wins{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < 8; ++w)
        pool.emplace_back([&] {
            std::mt19937 rng(1000 + unsigned(wins.load()));
            for (int t = 0; t < 5; ++t) {
                ClassRecord rec{digest, h, "seed", 0};
                if (store.insert_if_new(rec).outcome == ClassStore::InsertOutcome::inserted)
                    wins.fetch_add(1);
            }
        });
    for (auto& t : pool) t.join();
    CHECK(wins.load() == 1);
    CHECK(store.size() == 1);
}

TEST_CASE("orbit from the order-4 seed closes at one class") {
    ClassStore store(fresh_dir("orbit4"));
    OrbitConfig cfg;
    auto stats = orbit_bfs({kronecker(fourier(2), fourier(2))}, cfg, store);
    CHECK(stats.classes == 1);
    CHECK_FALSE(stats.halted_by_limit);
    CHECK(stats.self_loops > 0);
    for (const auto& rec : store.records()) CHECK(is_butson_hadamard(rec.rep));
}

TEST_CASE("max_classes halts immediately after seed insertion") {
    ClassStore store(fresh_dir("cap"));
    OrbitConfig cfg;
    cfg.max_classes = 1;
    auto stats = orbit_bfs({fourier(3)}, cfg, store);
    CHECK(stats.classes == 1);
    CHECK(stats.halted_by_limit);
    CHECK(stats.expanded == 0);
}

TEST_CASE("seeds must pass the checker") {
    ClassStore store(fresh_dir("badseed"));
    BHMatrix bad = fourier(2);
    bad.set_exp(1, 1, 0);
    CHECK_THROWS_AS(orbit_bfs({bad}, OrbitConfig{}, store), property_error);
}

TEST_CASE("single-worker runs are reproducible and resumable") {
    BHMatrix h = read_bh_file(data_path("bh12_3.bh"));
    OrbitConfig cfg;
    cfg.families = {SwitchFamily::genhall};
    cfg.max_classes = 4;

    auto run = [&](const std::filesystem::path& dir) {
        ClassStore store(dir);
        orbit_bfs({h}, cfg, store);
        std::vector<std::tuple<std::string, int, std::string>> out;
        for (const auto& rec : store.records())
            out.emplace_back(rec.digest, rec.depth, rec.provenance);
        return out;
    };
    auto a = run(fresh_dir("repro_a"));
    auto b = run(fresh_dir("repro_b"));
    CHECK(a == b);

    // resuming a finished store changes nothing
    auto dir = fresh_dir("resume");
    {
        ClassStore store(dir);
        orbit_bfs({h}, cfg, store);
    }
    {
        ClassStore store(dir);
        auto stats = orbit_bfs({h}, cfg, store);
        std::vector<std::tuple<std::string, int, std::string>> out;
        for (const auto& rec : store.records())
            out.emplace_back(rec.digest, rec.depth, rec.provenance);
        CHECK(out == a);
    }
}

TEST_CASE("stored classes are pairwise inequivalent") {
    auto dir = fresh_dir("audit");
    ClassStore store(dir);
    BHMatrix h = read_bh_file(data_path("bh12_4.bh"));
    OrbitConfig cfg;
    cfg.families = {SwitchFamily::genhall};
    cfg.max_classes = 4;
    orbit_bfs({h}, cfg, store);
    auto recs = store.records();
    REQUIRE(recs.size() >= 2);
    for (size_t i = 0; i < recs.size(); ++i)
        for (size_t j = i + 1; j < recs.size(); ++j)
            CHECK_FALSE(equivalent_monomial(recs[i].rep, recs[j].rep).has_value());
}

TEST_CASE("worker pools find the same class set") {
    BHMatrix h = read_bh_file(data_path("bh12_3.bh"));
    OrbitConfig cfg;
    cfg.families = {SwitchFamily::genhall};
    cfg.max_depth = 2;
    auto run = [&](int workers) {
        cfg.workers = workers;
        ClassStore store(fresh_dir("workers_" + std::to_string(workers)));
        orbit_bfs({h}, cfg, store);
        std::set<std::pair<std::string, int>> out;
        for (const auto& rec : store.records()) out.insert({rec.digest, rec.depth});
        return out;
    };
    CHECK(run(1) == run(4));
}

TEST_CASE("config limits must be positive") {
    ClassStore store(fresh_dir("limits"));
    OrbitConfig cfg;
    cfg.workers = 0;
    CHECK_THROWS_AS(orbit_bfs({fourier(2)}, cfg, store), std::invalid_argument);
}

TEST_CASE("family names round trip") {
    for (SwitchFamily f : {SwitchFamily::fourier, SwitchFamily::genhall, SwitchFamily::rank1_kron,
                           SwitchFamily::bush_diagonal})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_FALSE(family_from_name("nope").has_value());
}
