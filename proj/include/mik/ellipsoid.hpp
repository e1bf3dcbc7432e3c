#pragma once

// Known-answer corpus: weakly non-resonant ellipsoids. The k-th planar orbit
// has monodromy N1(1,1) diamond R(2 pi r_k^2/r_j^2 mod 2 pi) over j != k,
// period 2 pi r_k^2, and first index computed by the path oracle on the
// linearized flow (never asserted by hand).

#include "mik/certificate.hpp"
#include "mik/oracle.hpp"

namespace mik {

struct RadiusSq {
    bool exact_rational = false;
    rational_t rat;      // valid when exact_rational
    real_t value;        // always set
    std::string display;

    static RadiusSq rational(const rational_t& v, std::string disp = {}) {
        if (!(v > 0)) throw domain_error("RadiusSq: must be positive");
        RadiusSq r;
        r.exact_rational = true;
        r.rat = v;
        r.value = real_t(boost::multiprecision::numerator(v)) /
                  real_t(boost::multiprecision::denominator(v));
        r.display = disp.empty() ? v.str() : std::move(disp);
        return r;
    }
    static RadiusSq irrational(const real_t& v, std::string disp = {}) {
        if (!(v > 0)) throw domain_error("RadiusSq: must be positive");
        RadiusSq r;
        r.exact_rational = false;
        r.value = v;
        r.display = disp.empty() ? v.str() : std::move(disp);
        return r;
    }
    // sqrt(p), the default irrational family
    static RadiusSq sqrt_of(long long p) {
        return irrational(sqrt(real_t(p)), "sqrt" + std::to_string(p));
    }
};

struct EllipsoidSpec {
    int n = 0;
    std::vector<RadiusSq> squared_radii;
};

inline std::vector<OrbitRecord> ellipsoid_system(const EllipsoidSpec& spec) {
    if (spec.n < 1 || static_cast<int>(spec.squared_radii.size()) != spec.n)
        throw domain_error("ellipsoid_system: need n positive squared radii");
    const auto& sq = spec.squared_radii;
    // weak non-resonance: pairwise ratios irrational (declared; a pair of
    // exact rationals always has a rational ratio and is rejected)
    for (int k = 0; k < spec.n; ++k)
        for (int j = k + 1; j < spec.n; ++j)
            if (sq[k].exact_rational && sq[j].exact_rational)
                throw domain_error("ellipsoid_system: resonant spec, ratio r_" +
                                   std::to_string(k + 1) + "^2/r_" + std::to_string(j + 1) +
                                   "^2 is rational");

    std::vector<OrbitRecord> out;
    for (int k = 0; k < spec.n; ++k) {
        std::vector<NormalFormBlock> blocks;
        blocks.push_back(NormalFormBlock::n1(1, real_t(1)));
        std::vector<oracle::TrigPath> paths;
        paths.push_back(oracle::planar_orbit_path());
        for (int j = 0; j < spec.n; ++j) {
            if (j == k) continue;
            real_t rho = sq[k].value / sq[j].value;
            real_t frac = rho - floor(rho);
            static const real_t guard("1e-30");
            if (frac < guard || frac > 1 - guard || abs(frac - real_t(1) / 2) < guard)
                throw domain_error("ellipsoid_system: ratio r_" + std::to_string(k + 1) +
                                   "^2/r_" + std::to_string(j + 1) +
                                   "^2 is numerically resonant");
            blocks.push_back(NormalFormBlock::r(Angle::irrational(two_pi() * frac)));
            // linearized flow rotates plane j by the full angle 2 pi rho
            paths.push_back(oracle::rotation_path(static_cast<oracle::ld>(two_pi() * rho)));
        }
        long long i1 = 0;
        for (const auto& p : paths) i1 += oracle::iterate_index(p, 1).index;
        std::map<std::string, std::string> meta;
        meta["period"] = (two_pi() * sq[k].value).str();
        meta["sq_radius"] = sq[k].display;
        out.emplace_back("y" + std::to_string(k + 1), spec.n, i1,
                         NormalFormDecomposition(std::move(blocks), spec.n), std::move(meta));
    }
    return out;
}

// model path of a whole ellipsoid orbit, for oracle cross-validation
inline oracle::TrigPath ellipsoid_orbit_path(const EllipsoidSpec& spec, int k) {
    std::vector<oracle::TrigPath> paths;
    paths.push_back(oracle::planar_orbit_path());
    for (int j = 0; j < spec.n; ++j) {
        if (j == k) continue;
        real_t rho = spec.squared_radii[k].value / spec.squared_radii[j].value;
        paths.push_back(oracle::rotation_path(static_cast<oracle::ld>(two_pi() * rho)));
    }
    return oracle::diamond_paths(paths);
}

}  // namespace mik
