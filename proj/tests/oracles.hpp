#pragma once

// Independent brute-force oracles for the derived expected values. These stay
// deliberately naive and share no code with the implementation paths they
// check.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "test_helpers.hpp"

namespace amt::oracle {

// minimum set cover by exhaustive subset enumeration (popcount order)
inline int brute_min_cover(const std::vector<std::set<int>>& sets, int universe) {
    std::set<int> all;
    for (int e = 0; e < universe; ++e) all.insert(e);
    std::size_t m = sets.size();
    for (int size = 0; size <= static_cast<int>(m); ++size) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            if (__builtin_popcountll(mask) != size) continue;
            std::set<int> covered;
            for (std::size_t s = 0; s < m; ++s)
                if (mask & (std::size_t{1} << s)) covered.insert(sets[s].begin(), sets[s].end());
            if (std::includes(covered.begin(), covered.end(), all.begin(), all.end()))
                return size;
        }
    }
    return -1; // not coverable
}

inline std::set<std::vector<long long>> as_coord_set(const FiniteSubset& F) {
    std::set<std::vector<long long>> out;
    for (const auto& e : F.elements) out.insert(e.coords);
    return out;
}

inline double brute_defect(const GroupSpec& spec, const FiniteSubset& F, const FiniteSubset& B) {
    std::set<std::vector<long long>> bf;
    for (const auto& b : B.elements)
        for (const auto& f : F.elements) bf.insert(elem_add(spec, b, f).coords);
    auto fs = as_coord_set(F);
    int diff = 0;
    for (const auto& x : bf)
        if (!fs.count(x)) ++diff;
    for (const auto& x : fs)
        if (!bf.count(x)) ++diff;
    return static_cast<double>(diff) / static_cast<double>(fs.size());
}

inline std::set<std::vector<long long>> brute_core(const GroupSpec& spec, const FiniteSubset& F,
                                                   const FiniteSubset& B) {
    auto fs = as_coord_set(F);
    std::set<std::vector<long long>> out;
    for (const auto& g : F.elements) {
        bool ok = true;
        for (const auto& b : B.elements)
            if (!fs.count(elem_add(spec, b, g).coords)) ok = false;
        if (ok) out.insert(g.coords);
    }
    return out;
}

// entropy rate of a stationary Markov chain: sum_i pi_i (-sum_j M_ij log M_ij)
inline double markov_entropy_rate(const MeasureSpec& mu) {
    double h = 0.0;
    for (std::size_t i = 0; i < mu.stationary.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < mu.transition[i].size(); ++j) {
            double p = to_double(mu.transition[i][j]);
            if (p > 0.0) row -= p * std::log(p);
        }
        h += to_double(mu.stationary[i]) * row;
    }
    return h;
}

// Fibonacci-style count of admissible words of the golden-mean shift
inline long long golden_mean_words(int n) {
    long long a = 1, b = 2; // lengths 0 and 1
    for (int i = 0; i < n; ++i) {
        long long next = a + b;
        a = b;
        b = next;
    }
    return a;
}

} // namespace amt::oracle
