#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace conelat {

// Deterministic random source. Wraps a 64-bit SplitMix/xoshiro-style
// generator with hand-rolled distributions so that results do not depend
// on the standard library's implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
        // warm up so that small seeds diverge quickly
        next();
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (no cached spare, keeps state simple)
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Eigen::VectorXd gaussianVector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    // uniform direction on the unit sphere
    Eigen::VectorXd unitVector(int n) {
        Eigen::VectorXd v = gaussianVector(n);
        double nv = v.norm();
        while (nv < 1e-12) {
            v = gaussianVector(n);
            nv = v.norm();
        }
        return v / nv;
    }

    int uniformInt(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

}  // namespace conelat
