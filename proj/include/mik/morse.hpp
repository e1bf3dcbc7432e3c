#pragma once

// Morse-theoretic bookkeeping: average Euler characteristics, the mean index
// identity, Morse-type numbers from the critical-module dimension rule, Betti
// coefficients of 1/(1-t^2), and truncated Morse inequalities. All grading is
// Viterbo (i(y^m) = i(y,m) - n).

#include "mik/iteration.hpp"

#include <map>

namespace mik {

// chi_hat for a non-degenerate orbit from the first two Viterbo indices
inline rational_t euler_hat_pair(long long i_y, long long i_y2) {
    rational_t sign = (i_y % 2 == 0) ? 1 : -1;
    if ((i_y2 - i_y) % 2 == 0) return sign;
    return sign / 2;
}

inline rational_t euler_hat(const OrbitRecord& r) {
    if (!is_nondegenerate(r))
        throw hypothesis_error("euler_hat: record '" + r.label +
                               "' is degenerate; the averaged form is out of scope");
    return euler_hat_pair(viterbo_at(r, 1), viterbo_at(r, 2));
}

// sum chi_hat / mean - 1/2 over records with positive mean index
inline real_t identity_residual(const std::vector<OrbitRecord>& records) {
    real_t acc(0);
    for (const auto& r : records) {
        if (!(r.mean > 0))
            throw hypothesis_error("identity_residual: record '" + r.label +
                                   "' has non-positive mean index");
        acc += real_t(euler_hat(r)) / r.mean;
    }
    return acc - real_t(1) / 2;
}

inline long long betti(long long p) { return (p >= 0 && p % 2 == 0) ? 1 : 0; }

// sum_{p=0}^{P} b_p
inline long long betti_partial_sum(long long P) { return P < 0 ? 0 : P / 2 + 1; }

// sum_{p<=P} (-1)^p b_p
inline long long betti_alternating_sum(long long P) {
    return P < 0 ? 0 : P / 2 + 1;  // only even p contribute, each +1
}

namespace detail {

// largest iterate whose Viterbo index can still be <= p_hi
inline long long iterate_bound(const OrbitRecord& r, long long p_hi) {
    real_t top = real_t(p_hi) + r.n + 2 * (real_t(r.s_plus_one) + real_t(r.c));
    real_t q = top / r.mean;
    if (q < 0) return 0;
    if (q > real_t(200'000'000))
        throw domain_error("morse enumeration: window too large for record '" + r.label + "'");
    return static_cast<long long>(ceil(q)) + 1;
}

}  // namespace detail

// visit every iterate (k, m) with viterbo index <= p_hi; f(k, m, p, beta_even)
template <typename F>
void for_each_iterate_upto(const std::vector<OrbitRecord>& records, long long p_hi, F&& f) {
    for (size_t k = 0; k < records.size(); ++k) {
        const OrbitRecord& r = records[k];
        if (!(r.mean > 0))
            throw hypothesis_error("morse enumeration: record '" + r.label +
                                   "' has non-positive mean index");
        long long v1 = viterbo_at(r, 1);
        long long mmax = detail::iterate_bound(r, p_hi);
        for (long long m = 1; m <= mmax; ++m) {
            long long p = viterbo_at(r, m);
            if (p > p_hi) continue;
            bool beta_even = ((p - v1) % 2) == 0;
            f(k, m, p, beta_even);
        }
    }
}

struct MorseLedger {
    long long p_lo = 0, p_hi = 0;
    long long floor_p = 0;  // no iterate of any record lies below this degree
    std::map<long long, long long> morse;  // p -> M_p (zero entries omitted)
    std::map<std::string, rational_t> chi_hat;

    long long morse_at(long long p) const {
        auto it = morse.find(p);
        return it == morse.end() ? 0 : it->second;
    }
};

// M_p = #{(k,m) : i(y_k^m) = p and beta(x^m) = 1}, for p in [p_lo, p_hi]
inline MorseLedger morse_numbers(const std::vector<OrbitRecord>& records, long long p_lo,
                                 long long p_hi) {
    MorseLedger led;
    led.p_lo = p_lo;
    led.p_hi = p_hi;
    long long floor_p = 0;
    bool have_floor = false;
    for (const auto& r : records) {
        if (!is_nondegenerate(r))
            throw hypothesis_error("morse_numbers: record '" + r.label + "' is degenerate");
        led.chi_hat[r.label] = euler_hat(r);
    }
    for_each_iterate_upto(records, p_hi, [&](size_t, long long, long long p, bool beta_even) {
        if (!have_floor || p < floor_p) { floor_p = p; have_floor = true; }
        if (beta_even && p >= p_lo) ++led.morse[p];
    });
    led.floor_p = have_floor ? floor_p : 0;
    return led;
}

struct MorseInequality {
    integer_t u;      // u_P = (-1)^P sum_{p<=P} (-1)^p (M_p - b_p)
    bool nonnegative;
};

// requires the ledger window to reach the global index floor
inline MorseInequality morse_inequality(const MorseLedger& led, long long P) {
    if (P > led.p_hi)
        throw domain_error("morse_inequality: P exceeds the ledger window");
    if (led.p_lo > led.floor_p && led.p_lo > 0)
        throw domain_error("morse_inequality: ledger window does not reach the index floor");
    integer_t acc = 0;
    long long start = std::min<long long>(led.floor_p, 0);
    for (long long p = start; p <= P; ++p) {
        integer_t term = integer_t(led.morse_at(p)) - betti(p);
        acc += (p % 2 == 0 ? term : -term);
    }
    integer_t u = (P % 2 == 0 ? acc : -acc);
    return {u, u >= 0};
}

// streaming alternating sum: sum_{p <= P} (-1)^p M_p without materializing M_p
inline integer_t alternating_morse_sum(const std::vector<OrbitRecord>& records, long long P) {
    integer_t acc = 0;
    for_each_iterate_upto(records, P, [&](size_t, long long, long long p, bool beta_even) {
        if (!beta_even) return;
        acc += (p % 2 == 0) ? 1 : -1;
    });
    return acc;
}

// M_p at one degree, with the contributing orbit labels
inline std::pair<long long, std::vector<std::string>> morse_count_at(
    const std::vector<OrbitRecord>& records, long long p) {
    long long count = 0;
    std::vector<std::string> labels;
    for_each_iterate_upto(records, p, [&](size_t k, long long, long long pp, bool beta_even) {
        if (pp != p || !beta_even) return;
        ++count;
        const std::string& lbl = records[k].label;
        if (labels.empty() || labels.back() != lbl) labels.push_back(lbl);
    });
    return {count, labels};
}

}  // namespace mik
