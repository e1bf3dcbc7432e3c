#pragma once

#include <mik/mik.hpp>

#include <random>

namespace mik_test {

using namespace mik;

// deterministic random block generators, parameters kept in ranges the
// spectral oracle resolves comfortably
struct BlockGen {
    std::mt19937_64 rng;
    explicit BlockGen(uint64_t seed) : rng(seed) {}

    double uni(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    long long uint(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng);
    }
    bool flip() { return uint(0, 1) == 1; }

    Angle random_angle(bool allow_rational = true) {
        if (allow_rational && flip()) {
            long long q = uint(2, 12);
            long long p = uint(1, 2 * q - 1);
            if (p == q) p = q + 1;  // avoid pi
            return Angle::rational_pi(p, q);
        }
        double v = uni(0.05, 6.2);
        if (std::abs(v - 3.141592653589793) < 0.05) v += 0.1;
        return Angle::irrational(real_t(v));
    }

    NormalFormBlock random_n1(int lambda = 0) {
        int lam = lambda ? lambda : (flip() ? 1 : -1);
        double b = uni(0.2, 2.5) * (flip() ? 1 : -1);
        if (uint(0, 9) == 0) b = 0;
        return NormalFormBlock::n1(lam, real_t(b));
    }
    NormalFormBlock random_d() {
        double l = uni(1.2, 4.0) * (flip() ? 1 : -1);
        return NormalFormBlock::d(real_t(l));
    }
    NormalFormBlock random_r(bool allow_rational = true) {
        return NormalFormBlock::r(random_angle(allow_rational));
    }
    NormalFormBlock random_n2(bool allow_rational = true) {
        Angle th = random_angle(allow_rational);
        real_t y0 = real_t(uni(0.2, 2.0) * (flip() ? 1 : -1));
        real_t y3 = real_t(uni(-0.8, 0.8));
        real_t y1 = real_t(uni(-0.8, 0.8));
        return NormalFormBlock::n2(th, n2_b_from_generator(th, y0, y3, y1));
    }
    NormalFormBlock random_block(bool allow_rational = true) {
        switch (uint(0, 3)) {
            case 0: return random_n1();
            case 1: return random_d();
            case 2: return random_r(allow_rational);
            default: return random_n2(allow_rational);
        }
    }

    // a random orbit-like decomposition: one N1(1,b>0) plus filler blocks
    NormalFormDecomposition random_decomposition(int n, bool allow_rational = true) {
        std::vector<NormalFormBlock> blocks;
        blocks.push_back(NormalFormBlock::n1(1, real_t(uni(0.3, 2.0))));
        int remaining = n - 1;
        while (remaining > 0) {
            if (remaining >= 2 && uint(0, 3) == 0) {
                blocks.push_back(random_n2(allow_rational));
                remaining -= 2;
            } else {
                switch (uint(0, 2)) {
                    case 0: blocks.push_back(random_d()); break;
                    case 1: blocks.push_back(random_r(allow_rational)); break;
                    default: blocks.push_back(random_n1()); break;
                }
                remaining -= 1;
            }
        }
        return NormalFormDecomposition(std::move(blocks), n);
    }

    OrbitRecord random_record(int n, bool allow_rational = true) {
        auto d = random_decomposition(n, allow_rational);
        long long i1 = uint(-3, 8);
        return OrbitRecord("r", n, i1, std::move(d));
    }
};

}  // namespace mik_test
