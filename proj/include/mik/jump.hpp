#pragma once

// Common index jump tuples: scan for (N, m_1..m_q, chi_1..chi_q, M, eps)
// witnesses, verify the four iterate identities exactly, compute the
// Delta/Q offsets, and locate conjugate tuples with Delta + Delta' = C.

#include "mik/iteration.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>

namespace mik {

struct JumpTuple {
    long long N = 0;
    std::vector<long long> m;    // m_k, one per record
    std::vector<int> chi;        // 0 or 1
    long long M_common = 1;
    real_t eps;                  // tolerance the tuple was accepted at
    std::vector<long long> delta;  // Delta_k (fractional-window values)
};

// least M with M * theta/pi integral for every rational angle; 1 when none
inline long long common_multiple(const std::vector<OrbitRecord>& records) {
    integer_t m = 1;
    for (const auto& r : records)
        for (const auto& e : r.circle.pairs)
            if (e.theta.is_rational()) {
                long long q = e.theta.den();
                m = boost::multiprecision::lcm(m, integer_t(q));
            }
    // eigenvalue -1 needs M * 1 integral: automatic
    if (m > 1'000'000'000'000LL)
        throw domain_error("common_multiple: lcm of angle denominators exceeds 1e12");
    return checked_ll(m, "common_multiple");
}

namespace detail {

inline const real_t& delta_window_default() {
    static const real_t d("1e-3");
    return d;
}
inline const real_t& delta_window_fine() {
    static const real_t d("1e-6");
    return d;
}

// {m * theta/pi} for one angle, exact or guarded
inline real_t frac_m_theta_over_pi(const Angle& theta, long long mk) {
    if (theta.is_rational()) {
        long long p = theta.num(), q = theta.den();
        __int128 num = static_cast<__int128>(mk) * p;
        long long rem = static_cast<long long>(num % q);
        return real_t(rem) / q;
    }
    real_t x = real_t(mk) * theta.value() / pi();
    auto gf = guarded_floor(x, [&] { return wide_t(mk) * wide_t(theta.value()) / pi_wide(); });
    return gf.frac;
}

inline long long delta_window_sum(const OrbitRecord& r, long long mk, const real_t& window) {
    long long total = 0;
    for (const auto& e : r.circle.pairs) {
        if (e.s_minus_up == 0 && e.s_minus_down == 0) continue;
        real_t f = frac_m_theta_over_pi(e.theta, mk);
        // point e^{i theta}: fractional part f; point e^{-i theta}: 1 - f (or 0)
        if (f > 0 && f < window) total += e.s_minus_up;
        if (f > 0) {
            real_t g = 1 - f;
            if (g > 0 && g < window) total += e.s_minus_down;
        }
    }
    // theta = pi: {mk * 1} = 0, never in the open window
    return total;
}

// Delta by vertex side: each fractional part {m_k theta/pi} of a tuple
// rounds to 0 or 1; the near-zero side contributes S^-. Equivalent to the
// fractional window at delta = 1/2, and validated against the index
// identity at 2 m_k wherever it is used.
inline long long delta_side_sum(const OrbitRecord& r, long long mk) {
    static const real_t half = real_t(1) / 2;
    return delta_window_sum(r, mk, half);
}

}  // namespace detail

struct Offsets {
    long long delta = 0;           // vertex-side sum, used in the 2 m_k identity
    long long delta_window = 0;    // fractional window at delta = 1e-3
    long long delta_fine = 0;      // fractional window at delta = 1e-6
    bool window_stable = false;    // all three agree (parts sit hard against the vertex)
    std::optional<long long> delta_from_identity;  // (i(2mk) - 2N + S+ + C)/2
    bool identity_consistent = true;
};

// Q_k(m): rational-angle terms with {mk*theta/pi} = {m*theta/2pi} = 0,
// plus the eigenvalue -1 term when m is even
inline long long q_offset(const OrbitRecord& r, long long mk, long long m) {
    long long total = 0;
    if (m % 2 == 0 && mk >= 1) total += r.circle.at_minus_one.s_minus;
    for (const auto& e : r.circle.pairs) {
        if (!e.theta.is_rational()) continue;
        long long p = e.theta.num(), q = e.theta.den();
        if ((static_cast<__int128>(mk) * p) % q != 0) continue;
        long long q2 = 2 * q;
        if ((static_cast<__int128>(m) * p) % q2 != 0) continue;
        total += e.s_minus_up + e.s_minus_down;
    }
    return total;
}

namespace detail {

inline Offsets offsets_of(const OrbitRecord& r, long long mk) {
    Offsets o;
    o.delta = delta_side_sum(r, mk);
    o.delta_window = delta_window_sum(r, mk, delta_window_default());
    o.delta_fine = delta_window_sum(r, mk, delta_window_fine());
    o.window_stable = o.delta == o.delta_window && o.delta == o.delta_fine;
    return o;
}

}  // namespace detail

inline Offsets compute_offsets(const OrbitRecord& r, long long mk,
                               std::optional<long long> N = std::nullopt) {
    if (mk < 1) throw domain_error("compute_offsets: m_k must be >= 1");
    Offsets o = detail::offsets_of(r, mk);
    if (N) {
        long long num = index_at(r, 2 * mk) - 2 * *N + r.s_plus_one + r.c;
        if (num % 2 != 0) {
            o.identity_consistent = false;
        } else {
            o.delta_from_identity = num / 2;
            o.identity_consistent = (*o.delta_from_identity == o.delta);
        }
        if (!o.identity_consistent)
            throw consistency_error("compute_offsets: Delta disagrees with the "
                                    "index identity (delta or precision problem)");
    }
    return o;
}

struct IdentityCheck {
    int k;
    long long m;          // 0 for the m-independent identity
    const char* identity;  // "nu-", "nu+", "i+", "i-", "i2mk"
    long long lhs, rhs;
};

struct VerifyReport {
    bool pass = true;
    std::vector<IdentityCheck> failures;
    std::vector<Offsets> offsets;  // per record
    long long m_checked = 0;
};

// exact check of the four identities for all k and 1 <= m <= min(mbar, 2mk-1)
inline VerifyReport verify_tuple(const std::vector<OrbitRecord>& records, const JumpTuple& t,
                                 long long mbar) {
    if (t.m.size() != records.size())
        throw domain_error("verify_tuple: tuple arity does not match record count");
    VerifyReport rep;
    for (size_t k = 0; k < records.size(); ++k) {
        const OrbitRecord& r = records[k];
        long long mk = t.m[k];
        if (mk < 1) throw domain_error("verify_tuple: m_k must be >= 1");
        Offsets off = detail::offsets_of(r, mk);
        long long i2mk = index_at(r, 2 * mk);
        long long rhs16 = 2 * t.N - (r.s_plus_one + r.c - 2 * off.delta);
        if (i2mk != rhs16) {
            rep.pass = false;
            rep.failures.push_back({static_cast<int>(k), 0, "i2mk", i2mk, rhs16});
        }
        long long num = i2mk - 2 * t.N + r.s_plus_one + r.c;
        off.delta_from_identity = (num % 2 == 0) ? std::optional<long long>(num / 2) : std::nullopt;
        off.identity_consistent = off.delta_from_identity && *off.delta_from_identity == off.delta;
        rep.offsets.push_back(off);

        long long m_hi = std::min(mbar, 2 * mk - 1);
        rep.m_checked = std::max(rep.m_checked, m_hi);
        for (long long m = 1; m <= m_hi; ++m) {
            long long nu_m = nullity_at(r, m);
            long long nu_p = nullity_at(r, 2 * mk + m);
            long long nu_mi = nullity_at(r, 2 * mk - m);
            if (nu_p != nu_m) {
                rep.pass = false;
                rep.failures.push_back({static_cast<int>(k), m, "nu+", nu_p, nu_m});
            }
            if (nu_mi != nu_m) {
                rep.pass = false;
                rep.failures.push_back({static_cast<int>(k), m, "nu-", nu_mi, nu_m});
            }
            long long i_m = index_at(r, m);
            long long i_p = index_at(r, 2 * mk + m);
            if (i_p != 2 * t.N + i_m) {
                rep.pass = false;
                rep.failures.push_back({static_cast<int>(k), m, "i+", i_p, 2 * t.N + i_m});
            }
            long long i_mi = index_at(r, 2 * mk - m);
            long long rhs = 2 * t.N - i_m - 2 * (r.s_plus_one + q_offset(r, mk, m));
            if (i_mi != rhs) {
                rep.pass = false;
                rep.failures.push_back({static_cast<int>(k), m, "i-", i_mi, rhs});
            }
        }
    }
    return rep;
}

struct ScanOutcome {
    std::vector<JumpTuple> tuples;
    bool exhausted = false;
    long long scanned_to = 0;
    double best_near_miss = 1.0;   // smallest max_k fractional defect seen
    long long best_near_miss_N = 0;
};

namespace detail {

struct ScanContext {
    const std::vector<OrbitRecord>* records;
    long long mbar;
    real_t eps;
    long long M;
    std::vector<real_t> inv;      // 1/(M * mean_k)
    std::vector<double> inv_d;
    double eps_d;
    // optional post-verification filter (conjugate search)
    std::function<bool(const JumpTuple&, const VerifyReport&)> accept_extra;
};

inline std::optional<JumpTuple> try_candidate(const ScanContext& cx, long long N) {
    const auto& records = *cx.records;
    size_t q = records.size();
    JumpTuple t;
    t.N = N;
    t.M_common = cx.M;
    t.eps = cx.eps;
    t.m.resize(q);
    t.chi.resize(q);
    for (size_t k = 0; k < q; ++k) {
        real_t x = N * cx.inv[k];
        real_t fl = floor(x);
        real_t f = x - fl;
        int chi = f >= real_t(0.5) ? 1 : 0;
        real_t defect = chi ? 1 - f : f;
        if (!(defect < cx.eps)) return std::nullopt;
        long long mk = (static_cast<long long>(fl) + chi) * cx.M;
        if (mk < 1) return std::nullopt;
        if (2 * mk < cx.mbar + 2) return std::nullopt;  // window gate: 2 m_k >= mbar + 2
        t.m[k] = mk;
        t.chi[k] = chi;
    }
    VerifyReport rep = verify_tuple(records, t, cx.mbar);
    if (!rep.pass) return std::nullopt;
    if (cx.accept_extra && !cx.accept_extra(t, rep)) return std::nullopt;
    t.delta.resize(q);
    for (size_t k = 0; k < q; ++k) t.delta[k] = rep.offsets[k].delta;
    return t;
}

inline double double_defect(const ScanContext& cx, long long N) {
    double worst = 0;
    for (size_t k = 0; k < cx.inv_d.size(); ++k) {
        double x = static_cast<double>(N) * cx.inv_d[k];
        double f = x - std::floor(x);
        double d = std::min(f, 1.0 - f);
        if (d > worst) worst = d;
    }
    return worst;
}

inline ScanOutcome scan_core(const ScanContext& cx, long long n_max, long long want, int threads) {
    ScanOutcome out;
    const double margin = 1e-6;
    auto scan_range = [&](long long lo, long long hi, std::vector<JumpTuple>& acc,
                          double& near, long long& nearN, long long cap) {
        for (long long N = lo; N <= hi; ++N) {
            double d = double_defect(cx, N);
            if (d < near) { near = d; nearN = N; }
            if (d >= cx.eps_d + margin) continue;
            auto t = try_candidate(cx, N);
            if (t) {
                acc.push_back(std::move(*t));
                if (static_cast<long long>(acc.size()) >= cap) return;
            }
        }
    };

    if (threads <= 1) {
        out.best_near_miss = 1.0;
        scan_range(1, n_max, out.tuples, out.best_near_miss, out.best_near_miss_N, want);
        out.scanned_to = n_max;
    } else {
        const long long chunk = 1'000'000;
        long long n_chunks = (n_max + chunk - 1) / chunk;
        std::atomic<long long> next{0};
        std::atomic<bool> enough{false};
        std::mutex mu;
        std::map<long long, std::pair<std::vector<JumpTuple>, std::pair<double, long long>>> results;
        auto worker = [&] {
            for (;;) {
                long long c = next.fetch_add(1);
                if (c >= n_chunks || enough.load()) return;
                long long lo = c * chunk + 1, hi = std::min(n_max, (c + 1) * chunk);
                std::vector<JumpTuple> acc;
                double near = 1.0;
                long long nearN = 0;
                scan_range(lo, hi, acc, near, nearN, want);
                std::lock_guard<std::mutex> g(mu);
                results[c] = {std::move(acc), {near, nearN}};
                // accepted count over the contiguous prefix of finished chunks
                long long cnt = 0;
                for (long long i = 0;; ++i) {
                    auto it = results.find(i);
                    if (it == results.end()) break;
                    cnt += static_cast<long long>(it->second.first.size());
                }
                if (cnt >= want) enough.store(true);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        long long covered = 0;
        for (long long i = 0; i < n_chunks; ++i) {
            auto it = results.find(i);
            if (it == results.end()) break;
            for (auto& t : it->second.first) {
                if (static_cast<long long>(out.tuples.size()) < want)
                    out.tuples.push_back(std::move(t));
            }
            if (it->second.second.first < out.best_near_miss) {
                out.best_near_miss = it->second.second.first;
                out.best_near_miss_N = it->second.second.second;
            }
            covered = std::min(n_max, (i + 1) * chunk);
            if (static_cast<long long>(out.tuples.size()) >= want) break;
        }
        out.scanned_to = covered;
    }
    if (static_cast<long long>(out.tuples.size()) > want) out.tuples.resize(want);
    out.exhausted = static_cast<long long>(out.tuples.size()) < want;
    return out;
}

inline ScanContext make_context(const std::vector<OrbitRecord>& records, long long mbar,
                                const real_t& eps) {
    if (records.empty()) throw domain_error("scan_tuples: no records");
    if (!(eps > 0) || !(eps < real_t(0.5)))
        throw domain_error("scan_tuples: eps must lie in (0, 1/2)");
    ScanContext cx;
    cx.records = &records;
    cx.mbar = mbar;
    cx.eps = eps;
    cx.M = common_multiple(records);
    for (const auto& r : records) {
        if (!(r.mean > 0))
            throw hypothesis_error("scan_tuples: record '" + r.label +
                                   "' has non-positive mean index");
        real_t inv = 1 / (cx.M * r.mean);
        cx.inv.push_back(inv);
        cx.inv_d.push_back(static_cast<double>(inv));
    }
    cx.eps_d = static_cast<double>(eps);
    return cx;
}

}  // namespace detail

inline ScanOutcome scan_tuples(const std::vector<OrbitRecord>& records, long long mbar,
                               const real_t& eps, long long n_max, long long want,
                               int threads = 1) {
    auto cx = detail::make_context(records, mbar, eps);
    return detail::scan_core(cx, n_max, want, threads);
}

struct ConjugateOutcome {
    std::optional<JumpTuple> partner;
    ScanOutcome scan;
};

// second verified tuple with Delta'_k + Delta_k = C(M_k) for all k
inline ConjugateOutcome conjugate_pair(const std::vector<OrbitRecord>& records, const JumpTuple& t,
                                       long long mbar, const real_t& eps, long long n_max,
                                       int threads = 1) {
    auto cx = detail::make_context(records, mbar, eps);
    cx.accept_extra = [&records, &t](const JumpTuple& cand, const VerifyReport& rep) {
        if (cand.N == t.N) return false;
        for (size_t k = 0; k < records.size(); ++k)
            if (rep.offsets[k].delta + t.delta[k] != records[k].c) return false;
        return true;
    };
    ConjugateOutcome out;
    out.scan = detail::scan_core(cx, n_max, 1, threads);
    if (!out.scan.tuples.empty()) out.partner = out.scan.tuples.front();
    return out;
}

// scan eps default that keeps the weight identity in force: min(0.05, 1/(1 + 2 M sum|chi_hat|))
inline real_t weight_identity_eps(long long M_common, const rational_t& abs_chi_sum) {
    rational_t bound = rational_t(1) / (1 + 2 * M_common * abs_chi_sum);
    real_t b(bound);
    real_t cap("0.05");
    return b < cap ? b : cap;
}

}  // namespace mik
