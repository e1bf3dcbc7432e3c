#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mik;
using mik_test::BlockGen;

namespace {

std::vector<CirclePoint> probe_points(const NormalFormDecomposition& d, BlockGen& gen) {
    std::vector<CirclePoint> pts{CirclePoint::one(), CirclePoint::minus_one(),
                                 CirclePoint::at(gen.random_angle())};
    for (const auto& blk : d.blocks()) {
        if (blk.is_r()) {
            pts.push_back(CirclePoint::at(blk.as_r().theta));
            pts.push_back(CirclePoint::at(blk.as_r().theta.conjugate()));
        } else if (blk.is_n2()) {
            pts.push_back(CirclePoint::at(blk.as_n2().theta));
            pts.push_back(CirclePoint::at(blk.as_n2().theta.conjugate()));
        }
    }
    return pts;
}

}  // namespace

TEST_CASE("pinned splitting cases") {
    NormalFormDecomposition shear({NormalFormBlock::n1(1, real_t(1))}, 1);
    CHECK(splitting_at(shear, CirclePoint::one()) == SplittingPair{1, 1});

    NormalFormDecomposition hyp({NormalFormBlock::d(real_t(2))}, 1);
    for (double th : {0.5, 1.5, 3.0, 5.0})
        CHECK(splitting_at(hyp, CirclePoint::at(Angle::irrational(real_t(th)))) ==
              SplittingPair{0, 0});
    CHECK(splitting_at(hyp, CirclePoint::one()) == SplittingPair{0, 0});

    Angle th = Angle::irrational(real_t("1.9"));
    NormalFormDecomposition rr({NormalFormBlock::r(th), NormalFormBlock::r(th)}, 2);
    NormalFormDecomposition r1({NormalFormBlock::r(th)}, 1);
    auto single = splitting_at(r1, CirclePoint::at(th));
    auto twice = splitting_at(rr, CirclePoint::at(th));
    CHECK(twice.s_plus == 2 * single.s_plus);
    CHECK(twice.s_minus == 2 * single.s_minus);
    CHECK(single == SplittingPair{0, 1});
}

TEST_CASE("off-spectrum points give zero") {
    BlockGen gen(5);
    for (int i = 0; i < 100; ++i) {
        auto d = gen.random_decomposition(gen.uint(1, 4));
        auto spec = spectrum_on_circle(d);
        CirclePoint w = CirclePoint::at(gen.random_angle());
        if (spec.count(w)) continue;
        CHECK(splitting_at(d, w) == SplittingPair{0, 0});
    }
}

TEST_CASE("diamond additivity of splitting numbers") {
    BlockGen gen(17);
    for (int i = 0; i < 1000; ++i) {
        auto a = gen.random_block();
        auto b = gen.random_block();
        NormalFormDecomposition da({a}, a.dim() / 2);
        NormalFormDecomposition db({b}, b.dim() / 2);
        NormalFormDecomposition dab({a, b}, (a.dim() + b.dim()) / 2);
        auto pts = probe_points(dab, gen);
        for (const auto& w : pts) {
            auto lhs = splitting_at(dab, w);
            auto ra = splitting_at(da, w);
            auto rb = splitting_at(db, w);
            REQUIRE(lhs.s_plus == ra.s_plus + rb.s_plus);
            REQUIRE(lhs.s_minus == ra.s_minus + rb.s_minus);
        }
    }
}

TEST_CASE("conjugate symmetry: s_plus at omega equals s_minus at conj(omega)") {
    BlockGen gen(23);
    for (int i = 0; i < 300; ++i) {
        auto d = gen.random_decomposition(gen.uint(1, 4));
        for (const auto& w : probe_points(d, gen)) {
            auto at = splitting_at(d, w);
            auto conj = splitting_at(d, w.conjugate());
            REQUIRE(at.s_plus == conj.s_minus);
            REQUIRE(at.s_minus == conj.s_plus);
        }
    }
}

TEST_CASE("per-point bound: splitting numbers never exceed the nullity") {
    BlockGen gen(29);
    for (int i = 0; i < 300; ++i) {
        auto d = gen.random_decomposition(gen.uint(1, 4));
        auto spec = spectrum_on_circle(d);
        for (const auto& w : probe_points(d, gen)) {
            auto s = splitting_at(d, w);
            int nu = spec.count(w) ? spec.at(w) : 0;
            REQUIRE(s.s_plus <= nu);
            REQUIRE(s.s_minus <= nu);
        }
    }
}

TEST_CASE("collision counts") {
    // hyperbolic: C = 0
    NormalFormDecomposition hyp(
        {NormalFormBlock::n1(1, real_t(1)), NormalFormBlock::d(real_t(2)),
         NormalFormBlock::d(real_t(-2))}, 3);
    CHECK(collision_count(hyp) == 0);

    // one rotation block: C = 1 regardless of the angle side
    for (double th : {0.9, 4.2}) {
        NormalFormDecomposition d(
            {NormalFormBlock::n1(1, real_t(1)), NormalFormBlock::r(Angle::irrational(real_t(th)))},
            2);
        CHECK(collision_count(d) == 1);
    }

    // additivity: C(A diamond B) = C(A) + C(B)
    BlockGen gen(31);
    for (int i = 0; i < 200; ++i) {
        auto a = gen.random_block();
        auto b = gen.random_block();
        NormalFormDecomposition da({a}, a.dim() / 2);
        NormalFormDecomposition db({b}, b.dim() / 2);
        NormalFormDecomposition dab({a, b}, (a.dim() + b.dim()) / 2);
        REQUIRE(collision_count(dab) == collision_count(da) + collision_count(db));
    }

    // block values behind C: R contributes 1, non-trivial N2 contributes 2,
    // trivial N2 none, N1(-1, b<=0) one through the angle pi
    Angle th = Angle::irrational(real_t("2.6"));
    NormalFormDecomposition n2nt(
        {NormalFormBlock::n2(th, n2_b_from_generator(th, real_t(1), real_t(0), real_t(0)))}, 2);
    CHECK(collision_count(n2nt) == 2);
    NormalFormDecomposition n2t(
        {NormalFormBlock::n2(th, n2_b_from_generator(th, real_t(-1), real_t(0), real_t(0)))}, 2);
    CHECK(collision_count(n2t) == 0);
    NormalFormDecomposition m1({NormalFormBlock::n1(-1, real_t(-1))}, 1);
    CHECK(collision_count(m1) == 1);
    NormalFormDecomposition m1p({NormalFormBlock::n1(-1, real_t(1))}, 1);
    CHECK(collision_count(m1p) == 0);
}

TEST_CASE("circle data matches splitting_at and the spectrum") {
    BlockGen gen(37);
    for (int i = 0; i < 200; ++i) {
        auto d = gen.random_decomposition(gen.uint(1, 4));
        auto cd = circle_data(d);
        auto one = splitting_at(d, CirclePoint::one());
        CHECK(cd.at_one == one);
        auto mone = splitting_at(d, CirclePoint::minus_one());
        CHECK(cd.at_minus_one == mone);
        long long c = cd.at_minus_one.s_minus;
        for (const auto& e : cd.pairs) c += e.s_minus_up + e.s_minus_down;
        CHECK(c == collision_count(d));
    }
}
