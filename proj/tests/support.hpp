#pragma once

#include "butson/bmatrix.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace butson::testing {

inline std::string data_path(const std::string& name) {
    return std::string(BUTSON_DATA_DIR) + "/" + name;
}

inline Monomial random_monomial(int n, int k, std::mt19937& rng) {
    Monomial m = Monomial::identity(n);
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    for (int i = 0; i < n; ++i) m.scales[static_cast<size_t>(i)] = int(rng() % unsigned(k));
    return m;
}

inline BHMatrix scramble(const BHMatrix& h, std::mt19937& rng) {
    return apply_monomial(h, random_monomial(h.order(), h.root_order(), rng),
                          random_monomial(h.order(), h.root_order(), rng));
}

} // namespace butson::testing
