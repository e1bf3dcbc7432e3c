#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mik;

namespace {

OrbitRecord hyperbolic_record(long long i1, int n = 2, const std::string& label = "h") {
    std::vector<NormalFormBlock> blocks{NormalFormBlock::n1(1, real_t(1))};
    for (int i = 1; i < n; ++i) blocks.push_back(NormalFormBlock::d(real_t(2)));
    return OrbitRecord(label, n, i1, NormalFormDecomposition(std::move(blocks), n));
}

std::vector<OrbitRecord> ellipsoid(int n) {
    std::vector<RadiusSq> radii;
    long long primes[] = {2, 3, 5, 7};
    for (int i = 0; i < n; ++i) radii.push_back(RadiusSq::sqrt_of(primes[i]));
    return ellipsoid_system({n, radii});
}

}  // namespace

TEST_CASE("orbit classification") {
    NormalFormDecomposition hyp({NormalFormBlock::n1(1, real_t(1)), NormalFormBlock::d(real_t(2)),
                                 NormalFormBlock::d(real_t(-2))}, 3);
    CHECK(classify_orbit(OrbitRecord("a", 3, 1, hyp)) == OrbitClass::hyperbolic);

    Angle t1 = Angle::irrational(real_t("1.1"));
    Angle t2 = Angle::irrational(real_t("2.3"));
    NormalFormDecomposition ell({NormalFormBlock::n1(1, real_t(1)), NormalFormBlock::r(t1),
                                 NormalFormBlock::r(t2)}, 3);
    CHECK(classify_orbit(OrbitRecord("b", 3, 1, ell)) == OrbitClass::elliptic);

    NormalFormDecomposition mix({NormalFormBlock::n1(1, real_t(1)), NormalFormBlock::r(t1),
                                 NormalFormBlock::d(real_t(2))}, 3);
    CHECK(classify_orbit(OrbitRecord("c", 3, 1, mix)) == OrbitClass::mixed);
}

TEST_CASE("hypothesis validation") {
    auto sys = ellipsoid(2);
    auto rep = validate_hypotheses(sys, 2);
    CHECK(rep.pass);
    for (const auto& h : rep.orbits) {
        CHECK(h.mean_positive);
        CHECK(h.nondegenerate);
        CHECK(h.index_exclusion);
    }

    // negative mean index
    auto neg = hyperbolic_record(-3);
    auto rneg = validate_hypotheses({neg}, 2);
    CHECK_FALSE(rneg.pass);
    CHECK_FALSE(rneg.orbits[0].mean_positive);

    // planted forbidden index: i1 = -1 with positive mean (rotation-heavy)
    Angle th = Angle::irrational(real_t(4));  // theta/pi > 1 keeps the mean positive
    OrbitRecord planted("p", 2, -1,
                        NormalFormDecomposition({NormalFormBlock::n1(1, real_t(1)),
                                                 NormalFormBlock::r(th)}, 2));
    REQUIRE(planted.mean > 0);
    auto rp = validate_hypotheses({planted}, 2);
    CHECK_FALSE(rp.pass);
    REQUIRE(rp.orbits[0].offending_m.has_value());
    CHECK(*rp.orbits[0].offending_m == 1);
    CHECK(rp.orbits[0].offending_index == -1);
    // the same record passes the n-odd exclusion set only if not in {-2,-1,0}
    auto rodd = validate_hypotheses({planted}, 3);
    CHECK_FALSE(rodd.pass);

    // degenerate record
    OrbitRecord deg("d", 2, 1,
                    NormalFormDecomposition({NormalFormBlock::n1(1, real_t(1)),
                                             NormalFormBlock::r(Angle::rational_pi(1, 2))}, 2));
    CHECK_FALSE(validate_hypotheses({deg}, 2).pass);
}

TEST_CASE("certify flags hypothesis-failing input as non-realizable") {
    auto neg = hyperbolic_record(-3);
    auto rep = certify({neg}, 2);
    CHECK(rep.verdict == Verdict::non_realizable);
    CHECK(rep.reason.find("hypotheses") != std::string::npos);
    CHECK_FALSE(rep.hypotheses.pass);
}

TEST_CASE("ellipsoid n=2 certifies with two even non-hyperbolic witnesses") {
    auto sys = ellipsoid(2);
    CertificateOptions opt;
    opt.n_max = 2'000'000;
    auto rep = certify(sys, 2, opt);
    INFO(rep.reason);
    REQUIRE(rep.verdict == Verdict::certified);
    CHECK(rep.weight_identity_ok);
    CHECK(rep.swap_ok);
    CHECK(rep.m_set_symmetry_ok);
    CHECK(rep.window_bounds_ok);
    CHECK(rep.alternating_equality_ok);
    CHECK(rep.inequality_ok);
    CHECK(rep.counts.plus_even >= 1);
    CHECK(rep.counts.minus_even >= 1);
    REQUIRE(rep.nonhyperbolic_witnesses.size() >= 2);
    for (const auto& w : rep.nonhyperbolic_witnesses) {
        CHECK(w.cls == OrbitClass::elliptic);
        CHECK(w.viterbo_2mk % 2 == 0);
        CHECK(w.parity_constant);
    }
    // conjugate deltas complement: Delta + Delta' = C = 1
    REQUIRE(rep.tuple);
    REQUIRE(rep.conjugate);
    for (size_t k = 0; k < sys.size(); ++k)
        CHECK(rep.tuple->delta[k] + rep.conjugate->delta[k] == sys[k].c);
}

TEST_CASE("ellipsoid n=3 certifies with the extra odd-parity witness") {
    auto sys = ellipsoid(3);
    CertificateOptions opt;
    opt.n_max = 20'000'000;
    auto rep = certify(sys, 3, opt);
    INFO(rep.reason);
    REQUIRE(rep.verdict == Verdict::certified);
    CHECK(rep.required_witnesses == 2);
    CHECK(rep.nonhyperbolic_witnesses.size() >= 2);
    CHECK(rep.middle_degree_count >= 1);
    REQUIRE(!rep.middle_degree_witnesses.empty());
    // claim-3 witness is distinct from the H-set witnesses
    for (const auto& w : rep.nonhyperbolic_witnesses)
        for (const auto& c3 : rep.middle_degree_witnesses) CHECK(w.label != c3);
    // odd Maslov parity: even Viterbo + odd n
    for (const auto& w : rep.nonhyperbolic_witnesses) CHECK(w.viterbo_2mk % 2 == 0);
}

TEST_CASE("all-hyperbolic system passing the residual is flagged by the inequality") {
    // single hyperbolic orbit with i(m) = m - 1: chi_hat = 1/2, mean = 1,
    // residual 0; but C = 0 forces odd i(y^{2m_k}), emptying the even sets
    auto sys = std::vector<OrbitRecord>{hyperbolic_record(0, 2, "fake")};
    REQUIRE(abs(identity_residual(sys)) < real_t("1e-12"));
    auto rep = certify(sys, 2);
    REQUIRE(rep.verdict == Verdict::non_realizable);
    CHECK(rep.counts.plus_even == 0);
    CHECK(rep.counts.minus_even == 0);
    CHECK_FALSE(rep.inequality_ok);
}

TEST_CASE("all-hyperbolic pair fails the mean index identity") {
    std::vector<OrbitRecord> sys{hyperbolic_record(0, 2, "f1"), hyperbolic_record(0, 2, "f2")};
    auto rep = certify(sys, 2);
    REQUIRE(rep.verdict == Verdict::non_realizable);
    CHECK_FALSE(rep.residual_ok);
}

TEST_CASE("one-orbit toy with chi_hat = -1 is caught at the residual stage") {
    // i(m) = 2m-1: chi_hat = -1, mean = 2: residual -1/2 - 1/2 = -1
    std::vector<OrbitRecord> sys{hyperbolic_record(1, 2, "toy")};
    CHECK(euler_hat(sys[0]) == rational_t(-1));
    CHECK(abs(identity_residual(sys) + 1) < real_t("1e-30"));
    auto rep = certify(sys, 2);
    REQUIRE(rep.verdict == Verdict::non_realizable);
    CHECK_FALSE(rep.residual_ok);
    CHECK(rep.reason.find("mean index identity") != std::string::npos);
}

TEST_CASE("odd-dimension all-hyperbolic system is non-realizable") {
    // i(m) = 2m-1 avoids {-2,-1,0}; chi_hat = 1, mean = 2: residual closes
    std::vector<OrbitRecord> sys{hyperbolic_record(1, 3, "f")};
    REQUIRE(validate_hypotheses(sys, 3).pass);
    REQUIRE(abs(identity_residual(sys)) < real_t("1e-12"));
    auto rep = certify(sys, 3);
    REQUIRE(rep.verdict == Verdict::non_realizable);
}

TEST_CASE("mixed N2 census passing the residual is flagged by the Morse chain") {
    // two orbits with non-trivial N2 blocks: means 4 each, chi_hat = +1, so
    // the residual closes (1/4 + 1/4 = 1/2); but every jump tuple parks the
    // double iterate at the middle degree, leaving the parity sets short
    auto make = [](double th, const std::string& lbl) {
        Angle a = Angle::irrational(real_t(th));
        std::vector<NormalFormBlock> blocks{
            NormalFormBlock::n1(1, real_t(1)),
            NormalFormBlock::n2(a, n2_b_from_generator(a, real_t(1), real_t("0.2"),
                                                       real_t("-0.1")))};
        return OrbitRecord(lbl, 3, 3, NormalFormDecomposition(std::move(blocks), 3));
    };
    std::vector<OrbitRecord> sys{make(1.234, "a"), make(2.345, "b")};
    REQUIRE(sys[0].c == 2);
    REQUIRE(mean_index(sys[0]) == real_t(4));
    REQUIRE(euler_hat(sys[0]) == rational_t(1));
    REQUIRE(validate_hypotheses(sys, 3).pass);
    REQUIRE(abs(identity_residual(sys)) < real_t("1e-30"));
    CHECK(classify_orbit(sys[0]) == OrbitClass::elliptic);

    auto rep = certify(sys, 3);
    REQUIRE(rep.verdict == Verdict::non_realizable);
    CHECK(rep.residual_ok);
    CHECK(rep.weight_identity_ok);
    CHECK_FALSE(rep.inequality_ok);
}

TEST_CASE("inconclusive when the search budget is too small") {
    auto sys = ellipsoid(2);
    CertificateOptions opt;
    opt.n_max = 3;
    auto rep = certify(sys, 2, opt);
    CHECK(rep.verdict == Verdict::inconclusive);
    CHECK(rep.reason.find("exhausted") != std::string::npos);
}

TEST_CASE("certificate is deterministic") {
    auto sys = ellipsoid(2);
    CertificateOptions opt;
    opt.n_max = 2'000'000;
    auto a = certify(sys, 2, opt);
    opt.threads = 4;
    auto b = certify(sys, 2, opt);
    REQUIRE(a.verdict == b.verdict);
    REQUIRE(a.tuple->N == b.tuple->N);
    REQUIRE(a.conjugate->N == b.conjugate->N);
}
