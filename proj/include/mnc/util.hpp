#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace mnc {

inline uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::string join_ints(const std::vector<int>& v, const char* sep = ", ") {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s + "}";
}

// k-subsets of {0..n-1} in lexicographic order: init with first_combination,
// advance with next_combination until it returns false. k == 0 yields one
// empty subset.
inline void first_combination(std::vector<int>& c, int k) {
    c.resize(k);
    for (int i = 0; i < k; ++i) c[i] = i;
}

inline bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

}  // namespace mnc
