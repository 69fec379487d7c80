// support.hpp - small generators and comparisons shared by the unit tests

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testing {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

}  // namespace testing
