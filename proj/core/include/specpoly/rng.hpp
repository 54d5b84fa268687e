#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace specpoly {

/// Deterministic random source. Uniform and Gaussian draws are generated by
/// hand (shift + Box-Muller) so that streams are identical across standard
/// library implementations for a given seed.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform() { // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    std::vector<double> gaussian_vec(int n) {
        std::vector<double> v(n);
        for (double& x : v) x = gaussian();
        return v;
    }

    std::vector<double> unit_vec(int n) {
        std::vector<double> v = gaussian_vec(n);
        double s = 0.0;
        for (double x : v) s += x * x;
        s = std::sqrt(s);
        if (s == 0.0) {
            v.assign(n, 0.0);
            if (n > 0) v[0] = 1.0;
            return v;
        }
        for (double& x : v) x /= s;
        return v;
    }

    uint64_t next_seed() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace specpoly
