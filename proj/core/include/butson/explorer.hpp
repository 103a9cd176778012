#pragma once

#include "butson/bmatrix.hpp"
#include "butson/equiv.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace butson {

struct ClassRecord {
    std::string digest;     // store key: certificate hex, possibly "~i" suffixed
    BHMatrix rep;
    std::string provenance; // "seed" or "<parent-key> <descriptor>"
    int depth = 0;
};

/// Directory-backed class store: one text record per class, named by digest,
/// plus ".done" expansion markers and a self-loop edge log. Append-only and
/// resumable; insert_if_new is atomic (exclusive file creation under a lock).
class ClassStore {
public:
    explicit ClassStore(std::filesystem::path dir);

    enum class InsertOutcome { inserted, duplicate };

    struct InsertResult {
        InsertOutcome outcome;
        std::string key; // key inserted under, or the matching resident's key
    };

    /// rec.digest must hold the certificate hex of rec.rep (cert is the full
    /// certificate); on a digest collision with an inequivalent resident the
    /// record is inserted under a "~i" key. The key actually used is written
    /// back into rec.digest.
    InsertResult insert_if_new(ClassRecord& rec, const Certificate& cert);
    InsertResult insert_if_new(ClassRecord& rec);

    std::optional<ClassRecord> get(const std::string& key) const;
    std::vector<ClassRecord> records() const;
    size_t size() const;

    void mark_expanded(const std::string& key);
    bool is_expanded(const std::string& key) const;
    /// Unexpanded record keys, sorted by (depth, key).
    std::vector<std::string> unexpanded() const;

    void log_self_loop(const std::string& key, const std::string& descriptor);
    long long self_loop_count() const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    mutable std::mutex mtx_;
    std::map<std::string, ClassRecord> index_;
    std::map<std::string, Certificate> certs_; // lazily filled per key
    std::map<std::string, bool> expanded_;
    long long self_loops_ = 0;

    void load();
    void persist(const ClassRecord& rec);
    const Certificate& cert_for_locked(const std::string& key);
};

enum class SwitchFamily { fourier, genhall, rank1_kron, bush_diagonal };

std::string family_name(SwitchFamily f);
std::optional<SwitchFamily> family_from_name(const std::string& name);

struct OrbitConfig {
    std::vector<SwitchFamily> families = {SwitchFamily::fourier, SwitchFamily::genhall,
                                          SwitchFamily::rank1_kron, SwitchFamily::bush_diagonal};
    long long max_classes = 1000000;
    int max_depth = INT32_MAX;
    long long node_budget = 1000000000;
    int workers = 1;
};

struct OrbitStats {
    long long classes = 0;
    long long expanded = 0;
    long long switches_applied = 0;
    long long self_loops = 0;
    bool halted_by_limit = false;
};

/// BFS over the switching graph from the seeds: enumerate the enabled
/// families' sites per frontier representative, apply every coefficient,
/// deduplicate by certificate with exact backtracking on digest collisions.
/// Deterministic for workers = 1; resumable through the store.
OrbitStats orbit_bfs(const std::vector<BHMatrix>& seeds, const OrbitConfig& cfg, ClassStore& store);

} // namespace butson
