#pragma once

// Certificate engine: hypothesis validation, parity-set counting, the
// truncated Morse inequality chains, and the final multiplicity/stability
// verdict on a proposed orbit census. Three outcomes: CERTIFIED (all checks
// pass), NON_REALIZABLE (an identity that holds for genuine hypersurfaces
// fails), INCONCLUSIVE (search budget exhausted).

#include "mik/jump.hpp"
#include "mik/morse.hpp"

#include <sstream>

namespace mik {

enum class OrbitClass { elliptic, hyperbolic, mixed };

inline const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::elliptic: return "elliptic";
        case OrbitClass::hyperbolic: return "hyperbolic";
        default: return "nonhyperbolic-mixed";
    }
}

inline OrbitClass classify_orbit(const OrbitRecord& r) {
    bool has_d = false, non_forced_all_d = true;
    for (const auto& blk : r.decomp.blocks()) {
        if (blk.is_d()) has_d = true;
        else if (!(blk.is_n1() && blk.as_n1().lambda == 1)) non_forced_all_d = false;
    }
    if (!has_d) return OrbitClass::elliptic;
    if (non_forced_all_d) return OrbitClass::hyperbolic;
    return OrbitClass::mixed;
}

struct HypothesisOrbit {
    std::string label;
    bool mean_positive = false;
    bool nondegenerate = false;
    bool index_exclusion = false;
    std::optional<long long> offending_m;
    long long offending_index = 0;
};

struct HypothesisReport {
    bool pass = false;
    bool n_even = false;
    std::vector<HypothesisOrbit> orbits;
};

// per orbit: positive mean index, structural non-degeneracy, and the
// finite-scan index exclusion (i(y,m) != -1 for n even; not in {-2,-1,0}
// for n odd). Beyond the scan bound mean-index growth puts i(y,m) > 0.
inline HypothesisReport validate_hypotheses(const std::vector<OrbitRecord>& records, int n) {
    HypothesisReport rep;
    rep.n_even = n % 2 == 0;
    rep.pass = true;
    for (const auto& r : records) {
        HypothesisOrbit h;
        h.label = r.label;
        h.mean_positive = r.mean > 0;
        h.nondegenerate = is_nondegenerate(r);
        h.index_exclusion = true;
        if (h.mean_positive) {
            real_t bound = (real_t(r.s_plus_one) + real_t(r.c)) / r.mean;
            if (bound > real_t(10'000'000))
                throw domain_error("validate_hypotheses: record '" + r.label +
                                   "' has a mean index too small to scan the exclusions");
            long long m_scan = static_cast<long long>(ceil(bound)) + 1;
            for (long long m = 1; m <= m_scan; ++m) {
                long long i = index_at(r, m);
                bool bad = rep.n_even ? (i == -1) : (i >= -2 && i <= 0);
                if (bad) {
                    h.index_exclusion = false;
                    h.offending_m = m;
                    h.offending_index = i;
                    break;
                }
            }
        } else {
            h.index_exclusion = false;
        }
        rep.pass = rep.pass && h.mean_positive && h.nondegenerate && h.index_exclusion;
        rep.orbits.push_back(std::move(h));
    }
    return rep;
}

enum class Verdict { certified, non_realizable, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "CERTIFIED";
        case Verdict::non_realizable: return "NON-REALIZABLE";
        default: return "INCONCLUSIVE";
    }
}

struct ParityCounts {
    long long plus_even = 0, plus_odd = 0, minus_even = 0, minus_odd = 0;
};

struct CertificateOptions {
    long long n_max = 100'000'000;
    std::optional<real_t> eps;  // default: weight-identity-safe bound capped at 0.05
    int threads = 1;
};

struct WitnessEntry {
    std::string label;
    long long viterbo_2mk = 0;
    OrbitClass cls = OrbitClass::mixed;
    bool parity_constant = false;
};

struct CertificateReport {
    Verdict verdict = Verdict::inconclusive;
    std::string parity_case;   // "n-even" | "n-odd"
    std::string reason;
    int n = 0;
    long long q = 0;
    HypothesisReport hypotheses;
    real_t residual;
    bool residual_ok = false;
    long long mbar_used = 0;
    long long M_common = 1;
    real_t eps_used;
    std::optional<JumpTuple> tuple;
    std::optional<JumpTuple> conjugate;
    bool weight_identity_ok = false;
    integer_t weight_identity_sum;
    bool m_set_symmetry_ok = false;   // deep-negative set symmetry across +/- shifts
    bool swap_ok = false;             // conjugate tuple swaps the +/- parity sets
    bool window_bounds_ok = false;    // iterate window bound spot checks
    ParityCounts counts;              // N^{e,o}_pm or H^{e,o}_pm
    ParityCounts conj_counts;
    integer_t alternating_sum;        // sum_{p<=P}(-1)^p M_p at the case window
    integer_t alternating_bound;      // matching Betti alternating sum
    bool alternating_equality_ok = false;  // equals N + (plus_odd - plus_even)
    bool inequality_ok = false;            // alternating_sum <= bound (u_P >= 0)
    bool conj_inequality_ok = false;
    std::vector<WitnessEntry> nonhyperbolic_witnesses;
    std::vector<std::string> middle_degree_witnesses;
    long long middle_degree_count = 0;
    long long required_witnesses = 0;
    bool bound_met = false;
    std::map<std::string, std::string> classifications;
};

namespace detail {

struct TupleSets {
    ParityCounts counts;
    std::vector<size_t> plus_even_idx, minus_even_idx;
    bool m_symmetry_ok = true;
    bool window_bounds_ok = true;
};

// parity-set counting at thresholds 2N-n / 2N-n-2 (or the odd-case variant
// 2N-n+1 / 2N-n-3), plus the deep-negative M-set symmetry and the iterate
// window spot checks
inline TupleSets tuple_sets(const std::vector<OrbitRecord>& records, const JumpTuple& t,
                            long long mbar, int n, bool h_variant) {
    TupleSets out;
    long long hi = h_variant ? 2 * t.N - n + 1 : 2 * t.N - n;
    long long lo = h_variant ? 2 * t.N - n - 3 : 2 * t.N - n - 2;
    long long deep = h_variant ? -n - 3 : -n - 2;
    for (size_t k = 0; k < records.size(); ++k) {
        const OrbitRecord& r = records[k];
        long long mk = t.m[k];
        long long v1 = viterbo_at(r, 1);
        long long v2mk = viterbo_at(r, 2 * mk);
        bool even_diff = (v2mk - v1) % 2 == 0;
        bool base_even = ((v1 % 2) + 2) % 2 == 0;
        if (even_diff) {
            if (v2mk >= hi) {
                (base_even ? out.counts.plus_even : out.counts.plus_odd)++;
                if (base_even) out.plus_even_idx.push_back(k);
            } else if (v2mk <= lo) {
                (base_even ? out.counts.minus_even : out.counts.minus_odd)++;
                if (base_even) out.minus_even_idx.push_back(k);
            }
        }
        // deep-negative window counts must agree across the +/- shifts
        long long me_p = 0, mo_p = 0, me_m = 0, mo_m = 0;
        for (long long m = 1; m <= mbar; ++m) {
            if (viterbo_at(r, m) > deep) continue;
            bool vp = (viterbo_at(r, 2 * mk + m) - v1) % 2 == 0;
            bool vm = (viterbo_at(r, 2 * mk - m) - v1) % 2 == 0;
            if (vp) (base_even ? me_p : mo_p)++;
            if (vm) (base_even ? me_m : mo_m)++;
        }
        if (me_p != me_m || mo_p != mo_m) out.m_symmetry_ok = false;
        // window bound spot checks on a sample beyond mbar
        long long lo_bound = 2 * t.N - n - 3, hi_bound = 2 * t.N - n + 1;
        long long sample_hi = std::min(mbar + 50, 2 * mk - 1);
        for (long long m = mbar + 1; m <= sample_hi; ++m) {
            if (viterbo_at(r, 2 * mk - m) > lo_bound) out.window_bounds_ok = false;
            if (viterbo_at(r, 2 * mk + m) < hi_bound) out.window_bounds_ok = false;
        }
        if (2 * mk - 1 > mbar && viterbo_at(r, 1) > lo_bound) out.window_bounds_ok = false;
    }
    return out;
}

}  // namespace detail

inline CertificateReport certify(const std::vector<OrbitRecord>& records, int n,
                                 const CertificateOptions& opt = {}) {
    CertificateReport rep;
    rep.n = n;
    rep.q = static_cast<long long>(records.size());
    bool even_case = n % 2 == 0;
    rep.parity_case = even_case ? "n-even" : "n-odd";
    rep.required_witnesses = even_case ? n : n - 1;

    for (const auto& r : records) rep.classifications[r.label] = to_string(classify_orbit(r));

    rep.hypotheses = validate_hypotheses(records, n);
    if (!rep.hypotheses.pass) {
        // not index perfect / non-degenerate: no such hypersurface exists
        rep.verdict = Verdict::non_realizable;
        rep.reason = "hypotheses fail: the census is not index perfect and non-degenerate";
        return rep;
    }

    // mean index identity: necessary for any realizable census
    rep.residual = identity_residual(records);
    rep.residual_ok = abs(rep.residual) <= real_t("1e-9");
    if (!rep.residual_ok) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = "mean index identity fails: sum chi_hat/mean != 1/2";
        return rep;
    }

    rep.M_common = common_multiple(records);
    rep.mbar_used = mbar(records, n);

    rational_t abs_chi(0);
    for (const auto& r : records) abs_chi += boost::multiprecision::abs(euler_hat(r));
    real_t eps = opt.eps ? *opt.eps : weight_identity_eps(rep.M_common, abs_chi);

    for (int attempt = 0; attempt < 2; ++attempt) {
        rep.eps_used = eps;
        // batch scan, then pair tuples whose Delta vectors complement to C
        const long long batch = 16;
        ScanOutcome scan = scan_tuples(records, rep.mbar_used, eps, opt.n_max, batch,
                                       opt.threads);
        if (scan.tuples.empty()) {
            rep.verdict = Verdict::inconclusive;
            std::ostringstream os;
            os << "tuple search exhausted at N <= " << opt.n_max
               << " (best near-miss defect " << scan.best_near_miss << " at N = "
               << scan.best_near_miss_N << ")";
            rep.reason = os.str();
            return rep;
        }
        rep.tuple.reset();
        rep.conjugate.reset();
        for (size_t i = 0; i < scan.tuples.size() && !rep.conjugate; ++i)
            for (size_t j = 0; j < scan.tuples.size() && !rep.conjugate; ++j) {
                if (i == j) continue;
                bool complement = true;
                for (size_t k = 0; k < records.size() && complement; ++k)
                    complement = scan.tuples[i].delta[k] + scan.tuples[j].delta[k] ==
                                 records[k].c;
                if (complement) {
                    rep.tuple = scan.tuples[i];
                    rep.conjugate = scan.tuples[j];
                }
            }
        if (!rep.conjugate) {
            // hunt the exact complement of the first tuple beyond the batch
            ConjugateOutcome conj = conjugate_pair(records, scan.tuples.front(), rep.mbar_used,
                                                   eps, opt.n_max, opt.threads);
            if (!conj.partner) {
                rep.verdict = Verdict::inconclusive;
                rep.reason = "conjugate tuple search exhausted";
                return rep;
            }
            rep.tuple = scan.tuples.front();
            rep.conjugate = conj.partner;
        }

        // weight identity: sum 2 m_k chi_hat = N exactly, for both tuples
        auto weight_sum = [&](const JumpTuple& t) {
            rational_t s(0);
            for (size_t k = 0; k < records.size(); ++k)
                s += rational_t(2 * t.m[k]) * euler_hat(records[k]);
            return s;
        };
        rational_t s1 = weight_sum(*rep.tuple), s2 = weight_sum(*rep.conjugate);
        rep.weight_identity_sum = boost::multiprecision::numerator(s1);
        rep.weight_identity_ok = (s1 == rational_t(rep.tuple->N)) && (s2 == rational_t(rep.conjugate->N));
        if (rep.weight_identity_ok) break;
        eps = eps / 10;  // auto-tighten once
    }
    if (!rep.weight_identity_ok) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = "weight identity fails after eps tightening: sum 2 m_k chi_hat != N";
        return rep;
    }

    bool h_variant = !even_case;
    auto sets = detail::tuple_sets(records, *rep.tuple, rep.mbar_used, n, h_variant);
    auto sets2 = detail::tuple_sets(records, *rep.conjugate, rep.mbar_used, n, h_variant);
    rep.counts = sets.counts;
    rep.conj_counts = sets2.counts;
    rep.m_set_symmetry_ok = sets.m_symmetry_ok && sets2.m_symmetry_ok;
    rep.window_bounds_ok = sets.window_bounds_ok && sets2.window_bounds_ok;
    rep.swap_ok = rep.counts.plus_even == rep.conj_counts.minus_even &&
                  rep.counts.minus_even == rep.conj_counts.plus_even &&
                  rep.counts.plus_odd == rep.conj_counts.minus_odd &&
                  rep.counts.minus_odd == rep.conj_counts.plus_odd;
    if (!rep.m_set_symmetry_ok || !rep.window_bounds_ok || !rep.swap_ok) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = !rep.swap_ok ? "conjugate tuple does not swap the parity sets"
                                  : "iterate window bounds fail";
        return rep;
    }

    // truncated Morse chain at P = 2N-n-1 (even case) / 2N-n (odd case)
    auto chain = [&](const JumpTuple& t, const ParityCounts& c, integer_t& s_m, integer_t& s_b,
                     bool& equal_ok, bool& ineq_ok) {
        long long P = even_case ? 2 * t.N - n - 1 : 2 * t.N - n;
        s_m = alternating_morse_sum(records, P);
        s_b = betti_alternating_sum(P);
        equal_ok = s_m == integer_t(t.N) + c.plus_odd - c.plus_even;
        ineq_ok = s_m <= s_b;  // u_P >= 0 at odd P
    };
    integer_t sb, sm2, sb2;
    bool eq2, ineq2;
    chain(*rep.tuple, rep.counts, rep.alternating_sum, sb, rep.alternating_equality_ok,
          rep.inequality_ok);
    rep.alternating_bound = sb;
    chain(*rep.conjugate, rep.conj_counts, sm2, sb2, eq2, ineq2);
    rep.conj_inequality_ok = ineq2;
    if (!rep.alternating_equality_ok || !eq2) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = "alternating Morse sum does not match the parity-set identity";
        return rep;
    }
    if (!rep.inequality_ok || !rep.conj_inequality_ok) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = "truncated Morse inequality fails (alternating sum exceeds Betti sum)";
        return rep;
    }

    // the two inequality chains force plus_even >= n/2 (resp. (n-1)/2) on each side
    long long half = even_case ? n / 2 : (n - 1) / 2;
    if (rep.counts.plus_even < half || rep.counts.minus_even < half) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = "parity-set sizes fall short of the bound implied by the Morse chain";
        return rep;
    }

    // witnesses: members of the two even sets; all must be non-hyperbolic
    auto add_witnesses = [&](const std::vector<size_t>& idx) {
        for (size_t k : idx) {
            const OrbitRecord& r = records[k];
            WitnessEntry w;
            w.label = r.label;
            w.viterbo_2mk = viterbo_at(r, 2 * rep.tuple->m[k]);
            w.cls = classify_orbit(r);
            w.parity_constant = has_constant_index_parity(r);
            rep.nonhyperbolic_witnesses.push_back(std::move(w));
        }
    };
    add_witnesses(sets.plus_even_idx);
    add_witnesses(sets.minus_even_idx);
    for (const auto& w : rep.nonhyperbolic_witnesses) {
        if (w.cls == OrbitClass::hyperbolic) {
            rep.verdict = Verdict::non_realizable;
            rep.reason = "orbit '" + w.label + "' counted non-hyperbolic but classifies hyperbolic";
            return rep;
        }
        if ((w.viterbo_2mk % 2 + 2) % 2 != 0) {
            rep.verdict = Verdict::non_realizable;
            rep.reason = "witness '" + w.label + "' has odd Viterbo index at 2 m_k";
            return rep;
        }
    }

    if (!even_case) {
        // odd case: M_{2N-n-1} >= b_{2N-n-1} = 1 supplies one more orbit at the
        // middle degree, distinct from the parity-set witnesses (those never
        // hit 2N-n-1)
        long long mid = 2 * rep.tuple->N - n - 1;
        auto [cnt, labels] = morse_count_at(records, mid);
        rep.middle_degree_count = cnt;
        rep.middle_degree_witnesses = labels;
        if (cnt < 1) {
            rep.verdict = Verdict::non_realizable;
            rep.reason = "middle-degree witness missing: no iterate hits 2N-n-1 "
                         "with even index difference (consistency)";
            return rep;
        }
    }

    long long found = static_cast<long long>(rep.nonhyperbolic_witnesses.size());
    rep.bound_met = found >= rep.required_witnesses;
    if (!rep.bound_met) {
        rep.verdict = Verdict::non_realizable;
        rep.reason = "witness count below the certified bound (consistency)";
        return rep;
    }
    rep.verdict = Verdict::certified;
    std::ostringstream os;
    if (even_case)
        os << "at least " << n << " non-hyperbolic closed characteristics with even "
           << "Maslov-type indices";
    else
        os << "at least " << n << " closed characteristics with odd Maslov-type indices, "
           << "at least " << n - 1 << " of them non-hyperbolic";
    rep.reason = os.str();
    return rep;
}

}  // namespace mik
