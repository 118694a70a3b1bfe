#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "exalg/module.hpp"

using namespace exalg;

namespace {
ZMat make(long r, long c, std::vector<long> vals) {
    ZMat m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m.at(i, j) = vals[static_cast<size_t>(i * c + j)];
    return m;
}
}  // namespace

TEST_CASE("coker shapes over Z") {
    RingSpec z = RingSpec::integers();
    // Z^2 / (2e1, 3e2) = Z/2 + Z/3 = Z/6 in invariant form
    ModuleShape s = coker_shape(z, 2, make(2, 2, {2, 0, 0, 3}));
    CHECK(s.free_rank == 0);
    CHECK(s.torsion == std::vector<Int>{6});

    ModuleShape f = coker_shape(z, 3, ZMat(3, 0));
    CHECK(f.free_rank == 3);
    CHECK(f.str() == "free^3");
}

TEST_CASE("coker shapes over W_N follow the Z_p convention") {
    RingSpec w = RingSpec::trunc_witt(3, 4);
    // W / p^2 = Z/9
    ModuleShape s = coker_shape(w, 1, make(1, 1, {9}));
    CHECK(s.free_rank == 0);
    CHECK(s.torsion == std::vector<Int>{9});
    // a relation divisible by p^N is the zero relation: free
    ModuleShape fr = coker_shape(w, 1, make(1, 1, {81}));
    CHECK(fr.free_rank == 1);
    CHECK(fr.torsion.empty());
}

TEST_CASE("subquotient shape: homology of an elementary complex") {
    // Z --2--> Z --0--> Z: homology in the middle is ker(0)/im(2) = Z/2
    RingSpec z = RingSpec::integers();
    ZMat ambient_rels(1, 0);
    ZMat cycles = ZMat::identity(1);
    ZMat boundaries = make(1, 1, {2});
    ModuleShape h = subquotient_shape(z, cycles, boundaries, ambient_rels);
    CHECK(h.free_rank == 0);
    CHECK(h.torsion == std::vector<Int>{2});
}

TEST_CASE("subquotient basis representatives and membership") {
    RingSpec z = RingSpec::integers();
    // ambient Z^2, S = all, T = (2,0) and (0,3): quotient Z/2 + Z/3
    ZMat s = ZMat::identity(2);
    ZMat t = make(2, 2, {2, 0, 0, 3});
    ZMat rels(2, 0);
    SubquotientBasis b = subquotient_basis(z, s, t, rels);
    CHECK(b.shape.torsion == std::vector<Int>{6});
    REQUIRE(b.reps.cols == 1);
    CHECK(b.annihilator[0] == 6);
    // the representative generates: rep, 2*rep, ..., 6*rep = 0
    std::vector<Int> rep = {b.reps.at(0, 0), b.reps.at(1, 0)};
    std::vector<Int> six = {6 * rep[0], 6 * rep[1]};
    CHECK(in_span(z, t, rels, six));
    CHECK_FALSE(in_span(z, t, rels, rep));
    CHECK(same_class(z, t, rels, six, {0, 0}));
}

TEST_CASE("subquotient over prime field") {
    RingSpec f2 = RingSpec::prime_field(2);
    ZMat s = ZMat::identity(3);
    ZMat t = make(3, 1, {1, 1, 0});
    ZMat rels(3, 0);
    ModuleShape h = subquotient_shape(f2, s, t, rels);
    CHECK(h.free_rank == 2);
    CHECK(h.torsion.empty());
}

TEST_CASE("subquotient over rationals") {
    RingSpec q = RingSpec::rationals();
    ZMat s = make(3, 2, {1, 0, 0, 2, 0, 0});
    ZMat t = make(3, 1, {2, 0, 0});
    ZMat rels(3, 0);
    ModuleShape h = subquotient_shape(q, s, t, rels);
    CHECK(h.free_rank == 1);
    SubquotientBasis b = subquotient_basis(q, s, t, rels);
    CHECK(b.reps.cols == 1);
}

TEST_CASE("random consistency: shape of S/T equals shape computed from reps") {
    std::mt19937_64 rng(11);
    RingSpec z = RingSpec::integers();
    for (int trial = 0; trial < 40; ++trial) {
        long n = 2 + static_cast<long>(rng() % 3);
        ZMat s = ZMat::identity(n);
        long tcols = static_cast<long>(rng() % 3);
        ZMat t(n, tcols);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < tcols; ++j) t.at(i, j) = static_cast<long>(rng() % 7) - 3;
        ZMat rels(n, 0);
        SubquotientBasis b = subquotient_basis(z, s, t, rels);
        // each representative's annihilator is exact
        for (long c = 0; c < b.reps.cols; ++c) {
            std::vector<Int> rep(static_cast<size_t>(n));
            for (long i = 0; i < n; ++i) rep[i] = b.reps.at(i, c);
            if (b.annihilator[c] == 0) {
                CHECK_FALSE(in_span(z, t, rels, rep));
            } else {
                std::vector<Int> scaled(static_cast<size_t>(n));
                for (long i = 0; i < n; ++i) scaled[i] = rep[i] * b.annihilator[c];
                CHECK(in_span(z, t, rels, scaled));
            }
        }
    }
}
