#pragma once

// Index iteration: i(gamma,m), mean index, iterate nullities, the Viterbo
// grading shift, and the effective iterate bound mbar. Ceiling terms are
// exact for rational angles and guarded (with one 4x precision escalation)
// for irrational ones.

#include "mik/splitting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mik {

namespace detail {

// ceil(num/den) for non-negative num, positive den, in 128-bit intermediates
inline long long ceil_frac(long long m, long long p, long long den2) {
    __int128 num = static_cast<__int128>(m) * p;
    __int128 q = num / den2;
    if (num % den2 != 0) ++q;
    return static_cast<long long>(q);
}

}  // namespace detail

struct OrbitRecord {
    std::string label;
    int n = 0;                      // half-dimension
    long long i1 = 0;               // Maslov-type index of the first iterate
    NormalFormDecomposition decomp;
    std::map<std::string, std::string> metadata;

    // derived cache
    CircleData circle;
    long long s_plus_one = 0;  // S^+_M(1)
    long long c = 0;           // C(M)
    real_t mean;               // \hat i(gamma,1)

    OrbitRecord(std::string lbl, int half_dim, long long index1, NormalFormDecomposition d,
                std::map<std::string, std::string> meta = {})
        : label(std::move(lbl)), n(half_dim), i1(index1), decomp(std::move(d)),
          metadata(std::move(meta)), circle(circle_data(decomp)) {
        if (decomp.half_dim() != n)
            throw domain_error("OrbitRecord '" + label + "': decomposition half-dimension " +
                               std::to_string(decomp.half_dim()) + " != n = " + std::to_string(n));
        s_plus_one = circle.at_one.s_plus;
        c = circle.collision();
        mean = compute_mean();
    }

private:
    real_t compute_mean() const {
        // i1 + S^+(1) - C + sum over the circle spectrum of (theta/pi) S^-(e^{i theta})
        real_t acc = real_t(i1) + real_t(s_plus_one) - real_t(c);
        acc += real_t(circle.at_minus_one.s_minus);  // theta = pi contributes weight 1
        for (const auto& e : circle.pairs) {
            real_t ratio = e.theta.ratio();  // theta/pi in (0,2)
            acc += ratio * e.s_minus_up + (2 - ratio) * e.s_minus_down;
        }
        return acc;
    }
};

namespace detail {

// E(m*theta/2pi) and E(m*(2pi-theta)/2pi) for one angle, exactly or guarded
struct CeilPair {
    long long up;
    long long down;
};

inline CeilPair ceil_pair(const Angle& theta, long long m) {
    if (theta.is_rational()) {
        long long p = theta.num(), q = theta.den();
        return {ceil_frac(m, p, 2 * q), ceil_frac(m, 2 * q - p, 2 * q)};
    }
    const real_t& th = theta.value();
    real_t x = real_t(m) * th / two_pi();
    auto gf = guarded_floor(x, [&] { return wide_t(m) * wide_t(th) / (2 * pi_wide()); });
    // theta irrational: m*theta/2pi is never an integer, so E(x) = floor(x)+1
    // and E(m - x) = m - floor(x).
    return {gf.floor_value + 1, m - gf.floor_value};
}

}  // namespace detail

// Maslov-type index of the m-th iterate:
// m (i1 + S^+(1) - C) + 2 sum_theta E(m theta/2pi) S^-(e^{i theta}) - (S^+(1) + C)
inline long long index_at(const OrbitRecord& r, long long m) {
    if (m < 1) throw domain_error("index_at: m must be >= 1");
    const CircleData& cd = r.circle;
    __int128 acc = static_cast<__int128>(m) * (r.i1 + r.s_plus_one - r.c);
    __int128 esum = 0;
    if (cd.at_minus_one.s_minus != 0)
        esum += static_cast<__int128>(detail::ceil_frac(m, 1, 2)) * cd.at_minus_one.s_minus;
    for (const auto& e : cd.pairs) {
        if (e.s_minus_up == 0 && e.s_minus_down == 0) continue;
        auto cp = detail::ceil_pair(e.theta, m);
        esum += static_cast<__int128>(cp.up) * e.s_minus_up;
        esum += static_cast<__int128>(cp.down) * e.s_minus_down;
    }
    acc += 2 * esum - (r.s_plus_one + r.c);
    return static_cast<long long>(acc);
}

inline const real_t& mean_index(const OrbitRecord& r) { return r.mean; }

// nullity of the m-th iterate: total nu_omega over m-th roots of unity
inline long long nullity_at(const OrbitRecord& r, long long m) {
    if (m < 1) throw domain_error("nullity_at: m must be >= 1");
    long long nu = r.circle.nu_one;
    if (m % 2 == 0) nu += r.circle.nu_minus_one;
    for (const auto& e : r.circle.pairs) {
        if (!e.theta.is_rational()) continue;  // irrational angles never hit roots of unity
        long long p = e.theta.num(), q2 = 2 * e.theta.den();
        long long g = gcd_ll(p, q2);
        long long order = q2 / g;  // e^{i m theta} = 1 iff order | m
        if (m % order == 0) nu += e.nu_up + e.nu_down;
    }
    return nu;
}

// Viterbo grading: i(y^m) = i(y,m) - n; nullities coincide
inline long long viterbo_at(const OrbitRecord& r, long long m) { return index_at(r, m) - r.n; }

// executable non-degeneracy: nu(gamma,m) = 1 for all m
inline bool is_nondegenerate(const OrbitRecord& r) {
    int shears = 0;
    for (const auto& blk : r.decomp.blocks()) {
        if (blk.is_n1()) {
            const auto& b = blk.as_n1();
            if (b.lambda != 1 || b.b == 0) return false;
            ++shears;
        } else if (blk.is_r()) {
            if (blk.as_r().theta.is_rational()) return false;
        } else if (blk.is_n2()) {
            if (blk.as_n2().theta.is_rational()) return false;
        }
    }
    return shears == 1;
}

// true when all iterate indices share one parity (no rational angles, no
// eigenvalue -1, and even m-coefficient in the iteration formula)
inline bool has_constant_index_parity(const OrbitRecord& r) {
    if (r.circle.nu_minus_one != 0) return false;
    for (const auto& e : r.circle.pairs)
        if (e.theta.is_rational()) return false;
    return (r.i1 + r.s_plus_one - r.c) % 2 == 0;
}

// least mbar with i(gamma, m+l) >= i(gamma, l) + n + shift for all l >= 1,
// m >= mbar, over all records (the certificate uses shift = 1)
inline long long mbar(const std::vector<OrbitRecord>& records, int n, long long shift = 1) {
    long long result = 1;
    for (const auto& r : records) {
        if (!(r.mean > 0)) throw hypothesis_error("mbar: record '" + r.label +
                                                  "' has non-positive mean index");
        // safe bound: deviation |i(gamma,m) - m*mean| <= S^+ + C gives
        // i(m+l) - i(l) >= m*mean - 2C, so m0 = ceil((n + shift + 2C)/mean) works
        real_t need = real_t(n) + real_t(shift) + 2 * real_t(r.c);
        real_t q = need / r.mean;
        long long m0 = static_cast<long long>(ceil(q));
        if (m0 < 1) m0 = 1;
        long long lmax = 10 * m0;
        auto holds = [&](long long m) {
            for (long long l = 1; l <= lmax; ++l)
                if (index_at(r, m + l) < index_at(r, l) + n + shift) return false;
            return true;
        };
        long long mk = m0;
        for (long long m = m0 - 1; m >= 1; --m) {
            if (holds(m)) mk = m;
            else break;
        }
        if (mk > result) result = mk;
    }
    return result;
}

}  // namespace mik
