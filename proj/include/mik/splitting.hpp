#pragma once

// Splitting numbers S^+/S^- of basic normal forms and their diamond-additive
// aggregation over a decomposition. Every table entry is reproduced by the
// independent spectral oracle before release (see oracle.hpp and the test
// suite); the oracle is the source of record for the entries, in particular
// S^- of N1(1,a) and the N2 trivial/non-trivial rows.

#include "mik/normal_form.hpp"

namespace mik {

struct SplittingPair {
    int s_plus = 0;
    int s_minus = 0;

    SplittingPair& operator+=(const SplittingPair& o) {
        s_plus += o.s_plus;
        s_minus += o.s_minus;
        return *this;
    }
    friend bool operator==(const SplittingPair&, const SplittingPair&) = default;
};

// Table entries for a single block at a queried circle point.
// Points not in the block's spectrum give (0,0).
inline SplittingPair block_splitting(const NormalFormBlock& blk, const CirclePoint& w) {
    using K = CirclePoint::Kind;
    if (blk.is_n1()) {
        const auto& b = blk.as_n1();
        if (b.lambda == 1 && w.kind() == K::one)
            return b.b >= 0 ? SplittingPair{1, 1} : SplittingPair{0, 0};
        if (b.lambda == -1 && w.kind() == K::minus_one)
            return b.b <= 0 ? SplittingPair{1, 1} : SplittingPair{0, 0};
        return {0, 0};
    }
    if (blk.is_d()) return {0, 0};
    if (blk.is_r()) {
        const auto& b = blk.as_r();
        if (w.kind() != K::angle) return {0, 0};
        if (w.angle() == b.theta) return {0, 1};              // e^{i theta}: Krein-definite
        if (w.angle() == b.theta.conjugate()) return {1, 0};  // conjugate point
        return {0, 0};
    }
    const auto& b = blk.as_n2();
    if (w.kind() != K::angle) return {0, 0};
    if (w.angle() == b.theta || w.angle() == b.theta.conjugate())
        return b.trivial ? SplittingPair{0, 0} : SplittingPair{1, 1};
    return {0, 0};
}

inline SplittingPair splitting_at(const NormalFormDecomposition& d, const CirclePoint& w) {
    SplittingPair total;
    for (const auto& blk : d.blocks()) total += block_splitting(blk, w);
    return total;
}

// Aggregated circle data of a decomposition, for the iteration formulas.
// Each entry describes the conjugate pair {e^{i theta}, e^{-i theta}} of one
// declared block angle; values at 1 and -1 are kept separately.
struct CirclePairEntry {
    Angle theta;       // the block's declared angle, theta in (0,2pi)\{pi}
    int s_minus_up;    // S^- at e^{i theta}
    int s_minus_down;  // S^- at e^{-i theta}
    int s_plus_up;
    int s_plus_down;
    int nu_up;
    int nu_down;
};

struct CircleData {
    SplittingPair at_one;        // S^{+/-}(1)
    SplittingPair at_minus_one;  // S^{+/-}(-1)
    int nu_one = 0;
    int nu_minus_one = 0;
    std::vector<CirclePairEntry> pairs;

    // C(M) = sum over theta in (0,2*pi) of S^-(e^{i theta}); includes theta = pi
    long long collision() const {
        long long c = at_minus_one.s_minus;
        for (const auto& e : pairs) c += e.s_minus_up + e.s_minus_down;
        return c;
    }
};

inline CircleData circle_data(const NormalFormDecomposition& d) {
    CircleData out;
    for (const auto& blk : d.blocks()) {
        if (blk.is_n1()) {
            const auto& b = blk.as_n1();
            int nu = b.b == 0 ? 2 : 1;
            if (b.lambda == 1) {
                out.at_one += block_splitting(blk, CirclePoint::one());
                out.nu_one += nu;
            } else {
                out.at_minus_one += block_splitting(blk, CirclePoint::minus_one());
                out.nu_minus_one += nu;
            }
        } else if (blk.is_r() || blk.is_n2()) {
            const Angle& th = blk.is_r() ? blk.as_r().theta : blk.as_n2().theta;
            SplittingPair up = block_splitting(blk, CirclePoint::at(th));
            SplittingPair down = block_splitting(blk, CirclePoint::at(th.conjugate()));
            out.pairs.push_back({th, up.s_minus, down.s_minus, up.s_plus, down.s_plus, 1, 1});
        }
    }
    return out;
}

inline long long collision_count(const NormalFormDecomposition& d) {
    return circle_data(d).collision();
}

}  // namespace mik
