#include <catch2/catch_amalgamated.hpp>

#include "exalg/tate.hpp"

using namespace exalg;

namespace {
ModuleShape cyclic_shape(long n) {
    ModuleShape s;
    s.torsion.push_back(n);
    return s;
}
}  // namespace

TEST_CASE("GT: C_3 with trivial Z coefficients on [-4,4]") {
    CyclicGroup g(3);
    auto table = tate_gt(g, GModule::trivial_z(), -4, 4);
    for (long i = -4; i <= 4; ++i) {
        if (i % 2 == 0)
            CHECK(table[i] == cyclic_shape(3));
        else
            CHECK(table[i].is_zero());
    }
}

TEST_CASE("GT: induced modules have vanishing Tate cohomology") {
    for (long n : {2L, 3L, 4L}) {
        CyclicGroup g(n);
        auto table = tate_gt(g, GModule::group_ring(n), -3, 3);
        for (long i = -3; i <= 3; ++i) CHECK(table[i].is_zero());
    }
}

TEST_CASE("GT: C_2 with sign action on [-3,3]") {
    CyclicGroup g(2);
    auto table = tate_gt(g, GModule::sign_z(), -3, 3);
    for (long i = -3; i <= 3; ++i) {
        if (((i % 2) + 2) % 2 == 1)
            CHECK(table[i] == cyclic_shape(2));
        else
            CHECK(table[i].is_zero());
    }
}

TEST_CASE("GT: 2-periodicity for cyclic groups") {
    CyclicGroup g(4);
    GModule x = GModule::tensor(GModule::trivial_cyclic(2), GModule::trivial_z());
    auto table = tate_gt(g, x, -4, 4);
    for (long i = -4; i <= 2; ++i) CHECK(table[i] == table[i + 2]);
}

TEST_CASE("GT complex has d^2 = 0") {
    CyclicGroup g(3);
    CyclicResolution res(3, ResolutionKind::Minimal);
    PresentedComplex c = tate_gt_complex(g, GModule::trivial_z(), res, -3, 3);
    for (long i = -2; i <= 3; ++i) CHECK(c.check_differential(i));
}

TEST_CASE("bar resolution is a resolution") {
    for (long n : {2L, 3L}) {
        CyclicResolution res(n, ResolutionKind::Bar);
        for (long k = 1; k <= 3; ++k) {
            ZMat dd = res.diff(k) * res.diff(k + 1);
            CHECK(dd.is_zero());
        }
        CHECK((res.augmentation() * res.diff(1)).is_zero());
        // exactness in low degrees: rank(d_k) + rank(d_{k+1}) = zrank(k)
        for (long k = 1; k <= 2; ++k) {
            long rk = rank_q(res.diff(k));
            long rk1 = rank_q(res.diff(k + 1));
            CHECK(rk + rk1 == res.zrank(k));
        }
        // equivariance of the differential
        for (long k = 1; k <= 3; ++k) CHECK(res.diff(k) * res.action(k) == res.action(k - 1) * res.diff(k));
    }
}

TEST_CASE("GT with the bar resolution matches the minimal resolution") {
    CyclicGroup g(3);
    auto minimal = tate_gt(g, GModule::trivial_z(), -2, 2, ResolutionKind::Minimal);
    auto bar = tate_gt(g, GModule::trivial_z(), -2, 2, ResolutionKind::Bar);
    for (long i = -2; i <= 2; ++i) CHECK(minimal[i] == bar[i]);
}

TEST_CASE("HMT: C_3 trivial Z matches GT") {
    CyclicGroup g(3);
    auto gt = tate_gt(g, GModule::trivial_z(), -3, 3);
    auto hmt = tate_hmt(g, GModule::trivial_z(), -3, 3);
    for (long i = -3; i <= 3; ++i) {
        CHECK(hmt[i].certified);
        CHECK(hmt[i].shape == gt[i]);
    }
}

TEST_CASE("HMT: C_2 with Z/2 coefficients is Z/2 in every degree") {
    CyclicGroup g(2);
    auto hmt = tate_hmt(g, GModule::trivial_cyclic(2), -3, 3);
    for (long i = -3; i <= 3; ++i) {
        CHECK(hmt[i].certified);
        CHECK(hmt[i].shape == cyclic_shape(2));
    }
}

TEST_CASE("HMT: zero module") {
    CyclicGroup g(3);
    auto hmt = tate_hmt(g, GModule::zero(), -2, 2);
    for (long i = -2; i <= 2; ++i) CHECK(hmt[i].shape.is_zero());
}

TEST_CASE("HMT with bar resolution on a small window") {
    CyclicGroup g(2);
    auto gt = tate_gt(g, GModule::trivial_z(), -2, 2, ResolutionKind::Bar);
    auto hmt = tate_hmt(g, GModule::trivial_z(), -2, 2, ResolutionKind::Bar);
    for (long i = -2; i <= 2; ++i) CHECK(hmt[i].shape == gt[i]);
}

TEST_CASE("GModule validation rejects wrong order") {
    GModule bad{1, ZMat(1, 0), ZMat(1, 1)};
    bad.action.at(0, 0) = 2;  // multiplication by 2 has infinite order on Z
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
}
