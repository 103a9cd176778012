#include "butson/explorer.hpp"

#include "butson/construct.hpp"
#include "butson/equiv.hpp"
#include "butson/errors.hpp"
#include "butson/sites.hpp"

#include <algorithm>
#include <atomic>
#include <fcntl.h>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace butson {

ClassStore::ClassStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    load();
}

void ClassStore::load() {
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        const auto name = entry.path().filename().string();
        if (entry.path().extension() == ".done") {
            expanded_[entry.path().stem().string()] = true;
            continue;
        }
        if (entry.path().extension() != ".bhc") continue;
        std::ifstream in(entry.path());
        if (!in) throw std::runtime_error("ClassStore: cannot read " + entry.path().string());
        std::string tag, key, prov;
        int depth = 0;
        std::string line;
        std::ostringstream matrix_text;
        ClassRecord rec{"", BHMatrix(1, 1), "", 0};
        bool in_matrix = false;
        while (std::getline(in, line)) {
            if (!in_matrix) {
                std::istringstream ls(line);
                ls >> tag;
                if (tag == "digest") {
                    ls >> key;
                } else if (tag == "depth") {
                    ls >> depth;
                } else if (tag == "provenance") {
                    prov = line.substr(line.find(' ') + 1);
                } else if (tag == "BH") {
                    in_matrix = true;
                    matrix_text << line << '\n';
                }
            } else {
                matrix_text << line << '\n';
            }
        }
        if (key.empty()) throw std::runtime_error("ClassStore: corrupt record " + name);
        rec.digest = key;
        rec.provenance = prov;
        rec.depth = depth;
        rec.rep = parse_bh(matrix_text.str());
        if (!is_butson_hadamard(rec.rep))
            throw std::runtime_error("ClassStore: stored representative fails the checker: " + name);
        index_.emplace(key, std::move(rec));
    }
}

void ClassStore::persist(const ClassRecord& rec) {
    const auto path = dir_ / (rec.digest + ".bhc");
    // exclusive create: exactly one concurrent writer can win
    int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) throw std::runtime_error("ClassStore: record already exists: " + rec.digest);
    std::ostringstream os;
    os << "digest " << rec.digest << '\n'
       << "depth " << rec.depth << '\n'
       << "provenance " << rec.provenance << '\n'
       << emit_bh(rec.rep);
    const std::string text = os.str();
    ssize_t written = ::write(fd, text.data(), text.size());
    ::close(fd);
    if (written != ssize_t(text.size()))
        throw std::runtime_error("ClassStore: short write for " + rec.digest);
}

const Certificate& ClassStore::cert_for_locked(const std::string& key) {
    auto it = certs_.find(key);
    if (it != certs_.end()) return it->second;
    auto rec = index_.find(key);
    if (rec == index_.end()) throw std::logic_error("ClassStore: no record for key " + key);
    return certs_.emplace(key, certificate(rec->second.rep)).first->second;
}

ClassStore::InsertResult ClassStore::insert_if_new(ClassRecord& rec, const Certificate& cert) {
    if (!is_butson_hadamard(rec.rep))
        throw property_error("ClassStore: representative fails the checker", -1, -1);
    std::lock_guard lock(mtx_);
    std::string key = rec.digest;
    int suffix = 0;
    while (true) {
        auto it = index_.find(key);
        if (it == index_.end()) break;
        // digest hit: decide exactly
        if (equivalent_monomial(it->second.rep, rec.rep, cert_for_locked(key), cert))
            return {InsertOutcome::duplicate, key};
        ++suffix;
        key = rec.digest + "~" + std::to_string(suffix);
    }
    rec.digest = key;
    persist(rec);
    index_.emplace(key, rec);
    certs_.emplace(key, cert);
    return {InsertOutcome::inserted, key};
}

ClassStore::InsertResult ClassStore::insert_if_new(ClassRecord& rec) {
    return insert_if_new(rec, certificate(rec.rep));
}

std::optional<ClassRecord> ClassStore::get(const std::string& key) const {
    std::lock_guard lock(mtx_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<ClassRecord> ClassStore::records() const {
    std::lock_guard lock(mtx_);
    std::vector<ClassRecord> out;
    out.reserve(index_.size());
    for (const auto& [k, rec] : index_) out.push_back(rec);
    return out;
}

size_t ClassStore::size() const {
    std::lock_guard lock(mtx_);
    return index_.size();
}

void ClassStore::mark_expanded(const std::string& key) {
    std::lock_guard lock(mtx_);
    if (expanded_[key]) return;
    expanded_[key] = true;
    std::ofstream out(dir_ / (key + ".done"));
}

bool ClassStore::is_expanded(const std::string& key) const {
    std::lock_guard lock(mtx_);
    auto it = expanded_.find(key);
    return it != expanded_.end() && it->second;
}

std::vector<std::string> ClassStore::unexpanded() const {
    std::lock_guard lock(mtx_);
    std::vector<std::pair<int, std::string>> keys;
    for (const auto& [k, rec] : index_) {
        auto it = expanded_.find(k);
        if (it == expanded_.end() || !it->second) keys.emplace_back(rec.depth, k);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<std::string> out;
    out.reserve(keys.size());
    for (auto& [d, k] : keys) out.push_back(std::move(k));
    return out;
}

void ClassStore::log_self_loop(const std::string& key, const std::string& descriptor) {
    std::lock_guard lock(mtx_);
    std::ofstream out(dir_ / "edges.log", std::ios::app);
    out << key << " self " << descriptor << '\n';
    ++self_loops_;
}

long long ClassStore::self_loop_count() const {
    std::lock_guard lock(mtx_);
    return self_loops_;
}

std::string family_name(SwitchFamily f) {
    switch (f) {
    case SwitchFamily::fourier: return "fourier";
    case SwitchFamily::genhall: return "genhall";
    case SwitchFamily::rank1_kron: return "rank1";
    case SwitchFamily::bush_diagonal: return "bush";
    }
    return "?";
}

std::optional<SwitchFamily> family_from_name(const std::string& name) {
    if (name == "fourier") return SwitchFamily::fourier;
    if (name == "genhall") return SwitchFamily::genhall;
    if (name == "rank1" || name == "rank1-kron") return SwitchFamily::rank1_kron;
    if (name == "bush" || name == "bush-diagonal") return SwitchFamily::bush_diagonal;
    return std::nullopt;
}

namespace {

struct Child {
    BHMatrix mat;
    std::string descriptor;
    Child(BHMatrix m, std::string d) : mat(std::move(m)), descriptor(std::move(d)) {}
};

std::vector<Child> expand_representative(const BHMatrix& h, const OrbitConfig& cfg) {
    std::vector<Child> children;
    const int k = h.root_order(), n = h.order();
    for (SwitchFamily fam : cfg.families) {
        switch (fam) {
        case SwitchFamily::fourier: {
            std::vector<FourierSite> sites;
            try {
                sites = find_fourier_sites(h);
            } catch (const budget_error&) {
                break; // beyond the scan cap: family inert for this matrix
            }
            for (size_t si = 0; si < sites.size(); ++si)
                for (int block = 0; block < k; ++block)
                    for (int c = 1; c < k; ++c) {
                        std::ostringstream d;
                        d << "fourier site=" << si << " block=" << block << " coeff=" << c;
                        children.emplace_back(fourier_set_switch(h, sites[si], block, c), d.str());
                    }
            break;
        }
        case SwitchFamily::genhall: {
            GenHallForm form;
            try {
                form = check_genhall_form(h, k);
            } catch (const condition_error&) {
                break;
            }
            for (int m = 0; m < k; ++m)
                for (int c = 1; c < k; ++c) {
                    std::ostringstream d;
                    d << "genhall m=" << m << " coeff=" << c << " renormalized";
                    children.emplace_back(genhall_switch_normalized(h, form, m, c), d.str());
                }
            break;
        }
        case SwitchFamily::rank1_kron: {
            for (const auto& p : find_rank1_kron_layouts(h)) {
                if (p.col_cells.size() < 2) continue;
                for (size_t cell = 0; cell < p.col_cells.size(); ++cell)
                    for (int c = 1; c < k; ++c) {
                        std::ostringstream d;
                        d << "rank1 d=" << p.r1.size() << " cell=" << cell << " coeff=" << c;
                        children.emplace_back(apply_switch(h, rank1_cell_plan(h, p, int(cell), c)),
                                              d.str());
                    }
            }
            break;
        }
        case SwitchFamily::bush_diagonal: {
            for (int m = 2; m < n; ++m) {
                if (n % m != 0) continue;
                auto rep = weak_bush_blocks(h, m);
                if (!rep.bush) continue;
                const int nb = n / m;
                for (int i = 0; i < nb; ++i)
                    for (int c = 1; c < k; ++c) {
                        SwitchPlan plan;
                        std::vector<int> blk, rest;
                        for (int t = 0; t < m; ++t) blk.push_back(i * m + t);
                        for (int t = 0; t < n; ++t)
                            if (t / m != i) rest.push_back(t);
                        plan.row_parts = {rest, blk};
                        plan.col_parts = {rest, blk};
                        plan.coeffs = {{c}};
                        std::ostringstream d;
                        d << "bush m=" << m << " block=" << i << " coeff=" << c;
                        children.emplace_back(apply_switch(h, plan), d.str());
                    }
            }
            break;
        }
        }
    }
    return children;
}

} // namespace

OrbitStats orbit_bfs(const std::vector<BHMatrix>& seeds, const OrbitConfig& cfg,
                     ClassStore& store) {
    if (cfg.max_classes < 1 || cfg.max_depth < 0 || cfg.node_budget < 0 || cfg.workers < 1)
        throw std::invalid_argument("orbit_bfs: limits must be positive");

    OrbitStats stats;
    std::atomic<long long> switches{0};
    std::atomic<long long> expanded{0};
    std::atomic<bool> halted{false};

    for (const auto& seed : seeds) {
        if (auto bad = first_nonorthogonal_rows(seed))
            throw property_error("orbit_bfs: seed fails the checker", bad->first, bad->second);
        ClassRecord rec{certificate(seed).hex(), seed, "seed", 0};
        store.insert_if_new(rec);
        if (static_cast<long long>(store.size()) >= cfg.max_classes) {
            stats.halted_by_limit = true;
            halted.store(true);
            break;
        }
    }

    while (!halted.load()) {
        auto frontier = store.unexpanded();
        if (frontier.empty()) break;
        // strict BFS: expand only the lowest depth present
        const int depth = store.get(frontier.front())->depth;
        std::vector<std::string> level;
        for (const auto& key : frontier)
            if (store.get(key)->depth == depth) level.push_back(key);
        if (depth >= cfg.max_depth) {
            stats.halted_by_limit = true;
            break;
        }

        std::atomic<size_t> next{0};
        auto worker = [&]() {
            while (!halted.load()) {
                const size_t idx = next.fetch_add(1);
                if (idx >= level.size()) return;
                const std::string key = level[idx];
                auto rec = store.get(key);
                if (!rec) continue;
                std::vector<Child> children = expand_representative(rec->rep, cfg);
                bool completed = true;
                for (auto& child : children) {
                    if (halted.load()) {
                        completed = false;
                        break;
                    }
                    if (switches.fetch_add(1) + 1 > cfg.node_budget) {
                        stats.halted_by_limit = true;
                        halted.store(true);
                        completed = false;
                        break;
                    }
                    const Certificate child_cert = certificate(child.mat);
                    ClassRecord crec{child_cert.hex(), child.mat, key + " " + child.descriptor,
                                     rec->depth + 1};
                    auto result = store.insert_if_new(crec, child_cert);
                    if (result.outcome == ClassStore::InsertOutcome::duplicate) {
                        // degenerate switch = output re-identified with its parent
                        if (result.key == key) store.log_self_loop(key, child.descriptor);
                    } else if (static_cast<long long>(store.size()) >= cfg.max_classes) {
                        stats.halted_by_limit = true;
                        halted.store(true);
                    }
                }
                if (completed) {
                    store.mark_expanded(key);
                    expanded.fetch_add(1);
                }
            }
        };

        const int nworkers = std::max(1, cfg.workers);
        if (nworkers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
    }

    stats.classes = static_cast<long long>(store.size());
    stats.expanded = expanded.load();
    stats.switches_applied = switches.load();
    stats.self_loops = store.self_loop_count();
    return stats;
}

} // namespace butson
