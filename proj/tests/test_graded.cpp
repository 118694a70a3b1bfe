#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "exalg/graded.hpp"
#include "exalg/resolution.hpp"

using namespace exalg;

TEST_CASE("degreewise rank of k[t]") {
    GradedRing kt = GradedRing::thh_of_field(RingSpec::prime_field(5));
    auto m = GradedModulePresentation::ring_module(kt);
    auto table = degreewise_rank(m, degree_window(0, 5));
    for (int d = 0; d <= 5; ++d) {
        CHECK(table[Deg(d)].free_rank == ((d % 2 == 0) ? 1 : 0));
        CHECK(table[Deg(d)].torsion.empty());
    }
}

TEST_CASE("degreewise rank of W[v,v^-1]/p") {
    GradedRing w = GradedRing::tp_of_field(3, 4);
    RingElt p = RingElt::monomial(w, {0}, 3);
    auto m = GradedModulePresentation::cyclic(w, p);
    auto table = degreewise_rank(m, degree_window(-2, 2));
    for (int d = -2; d <= 2; ++d) {
        if (d % 2 == 0) {
            CHECK(table[Deg(d)].free_rank == 0);
            CHECK(table[Deg(d)].torsion == std::vector<Int>{3});
        } else {
            CHECK(table[Deg(d)].is_zero());
        }
    }
}

TEST_CASE("degreewise rank of the HM ring, total exponent cap 1") {
    GradedRing hm = GradedRing::hm_circle(1);
    auto m = GradedModulePresentation::ring_module(hm);
    auto table = degreewise_rank(m, bidegree_window(-2, 2, -1, 0));
    CHECK(table[Deg(2, 0)].free_rank == 1);
    CHECK(table[Deg(2, -1)].free_rank == 1);
    CHECK(table[Deg(-2, 0)].free_rank == 1);
    CHECK(table[Deg(0, 0)].free_rank == 1);
    CHECK(table[Deg(1, 0)].free_rank == 0);
    CHECK(table[Deg(0, -1)].free_rank == 1);  // y z
    CHECK(table[Deg(-1, 0)].free_rank == 0);
}

TEST_CASE("eta ring components carry 2-torsion") {
    GradedRing lam = GradedRing::eta_ring(4);
    auto m = GradedModulePresentation::ring_module(lam);
    auto table = degreewise_rank(m, degree_window(0, 5));
    CHECK(table[Deg(0)].free_rank == 1);
    for (int d = 1; d <= 4; ++d) {
        CHECK(table[Deg(d)].free_rank == 0);
        CHECK(table[Deg(d)].torsion == std::vector<Int>{2});
    }
    CHECK(table[Deg(5)].is_zero());  // truncated above degree 4
}

TEST_CASE("non-homogeneous relation rejected") {
    GradedRing kt = GradedRing::thh_of_field(RingSpec::prime_field(5));
    auto m = GradedModulePresentation::ring_module(kt);
    RingElt bad = RingElt::unit(kt).plus(kt, RingElt::monomial(kt, {1}));
    m.rels.push_back({bad});
    CHECK_THROWS_AS(degreewise_rank(m, degree_window(0, 2)), std::invalid_argument);
}

TEST_CASE("free resolution of k over k[t]") {
    GradedRing kt = GradedRing::thh_of_field(RingSpec::prime_field(5));
    auto k = GradedModulePresentation::cyclic(kt, RingElt::monomial(kt, {1}));
    FreeResolution res = free_resolution(k, 4, degree_window(0, 10));
    // 0 -> k[t](-2) --t--> k[t] -> k -> 0
    REQUIRE(res.levels.size() == 2);
    CHECK(res.levels[1].size() == 1);
    CHECK(res.levels[1][0].deg == Deg(2));
    CHECK_FALSE(res.truncated);
}

TEST_CASE("free module has resolution of length 0") {
    GradedRing kt = GradedRing::thh_of_field(RingSpec::prime_field(5));
    auto f = GradedModulePresentation::ring_module(kt);
    FreeResolution res = free_resolution(f, 4, degree_window(0, 8));
    CHECK(res.levels.size() == 1);
    CHECK_FALSE(res.truncated);
}

TEST_CASE("Tor^{k[t]}(k,k): bar oracle agreement frozen") {
    GradedRing kt = GradedRing::thh_of_field(RingSpec::prime_field(5));
    auto k = GradedModulePresentation::cyclic(kt, RingElt::monomial(kt, {1}));
    TorTable t = tor(k, k, 3, degree_window(0, 6));
    CHECK(t.at(0, Deg(0)).free_rank == 1);
    CHECK(t.at(1, Deg(2)).free_rank == 1);
    // nothing else in the window
    for (const auto& [key, sh] : t.entries) {
        if (key.i == 0 && key.deg == Deg(0)) continue;
        if (key.i == 1 && key.deg == Deg(2)) continue;
        CHECK(sh.is_zero());
    }
}

TEST_CASE("Tor over k[t]/(t^2): infinite resolution, bar agreement on window") {
    GradedRing r = GradedRing::polynomial(RingSpec::prime_field(3), "t", Deg(2), 1);
    auto k = GradedModulePresentation::cyclic(r, RingElt::monomial(r, {1}));
    TorTable t = tor(k, k, 3, degree_window(0, 8), 24);
    // Tor_i^{k[t]/t^2}(k,k) = k in internal degree 2i
    for (int i = 0; i <= 3; ++i) CHECK(t.at(i, Deg(2 * i)).free_rank == 1);
    CHECK(t.at(2, Deg(2)).is_zero());
}

TEST_CASE("Tor over the graded field k[v,v^-1] vanishes in positive degrees") {
    GradedRing kv = GradedRing::laurent(RingSpec::prime_field(5));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        GradedModulePresentation m = GradedModulePresentation::free_module(
            kv, {{"a", Deg(static_cast<int>(rng() % 5) - 2)}, {"b", Deg(static_cast<int>(rng() % 5) - 2)}});
        auto t = tor(m, m, 2, degree_window(-4, 4));
        CHECK(t.vanishes_above(0));
    }
}

TEST_CASE("Tor^{W[v,v^-1]}(W/p^2, W/p) with p=3, N=4") {
    GradedRing w = GradedRing::tp_of_field(3, 4);
    auto m = GradedModulePresentation::cyclic(w, RingElt::monomial(w, {0}, 9));
    auto n = GradedModulePresentation::cyclic(w, RingElt::monomial(w, {0}, 3));
    TorTable t = tor(m, n, 3, degree_window(-4, 4));
    for (int d = -4; d <= 4; ++d) {
        if (d % 2 == 0) {
            CHECK(t.at(0, Deg(d)).torsion == std::vector<Int>{3});
            CHECK(t.at(1, Deg(d)).torsion == std::vector<Int>{3});
        } else {
            CHECK(t.at(0, Deg(d)).is_zero());
            CHECK(t.at(1, Deg(d)).is_zero());
        }
        CHECK(t.at(2, Deg(d)).is_zero());
        CHECK(t.at(3, Deg(d)).is_zero());
    }
}

TEST_CASE("Tor is symmetric") {
    GradedRing w = GradedRing::tp_of_field(5, 3);
    auto m = GradedModulePresentation::cyclic(w, RingElt::monomial(w, {0}, 25));
    GradedModulePresentation n = GradedModulePresentation::free_module(w, {{"a", Deg(0)}, {"b", Deg(1)}});
    n.rels.push_back({RingElt::monomial(w, {0}, 5), RingElt::zero()});
    TorTable ab = tor(m, n, 2, degree_window(-3, 3));
    TorTable ba = tor(n, m, 2, degree_window(-3, 3));
    for (const auto& [k, sh] : ab.entries) CHECK(ba.at(k.i, k.deg) == sh);
}

TEST_CASE("graded PID classification over W[v,v^-1]") {
    // random f.g. modules decompose into shifts of the ring and ring/p^n
    GradedRing w = GradedRing::tp_of_field(3, 4);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        GradedModulePresentation m = GradedModulePresentation::free_module(
            w, {{"a", Deg(0)}, {"b", Deg(2 * static_cast<int>(rng() % 3))}});
        std::vector<RingElt> col(2, RingElt::zero());
        long tgt = static_cast<long>(rng() % 2);
        int pw = static_cast<int>(rng() % 4);
        Int coef = 1;
        for (int q = 0; q < pw; ++q) coef *= 3;
        int vshift = static_cast<int>((m.gens[static_cast<size_t>(tgt)].deg.total()) / -2);
        col[static_cast<size_t>(tgt)] = RingElt::monomial(w, {vshift}, coef);
        m.rels.push_back(col);
        // decomposition via the stripped SNF: every invariant is a power of p
        auto table = degreewise_rank(m, degree_window(0, 1));
        for (const auto& [d, sh] : table)
            for (const auto& t : sh.torsion) {
                Int tt = t;
                while (tt % 3 == 0) tt /= 3;
                CHECK(tt == 1);
            }
    }
}
