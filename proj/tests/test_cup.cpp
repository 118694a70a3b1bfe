#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "exalg/tate_cup.hpp"

using namespace exalg;

namespace {

bool chains_equal(const HmtChain& a, const HmtChain& b) {
    auto norm = [](const HmtChain& c) {
        std::map<std::pair<long, long>, std::vector<Int>> m;
        for (const auto& [k, v] : c.parts) {
            bool nz = false;
            for (const auto& x : v)
                if (x != 0) nz = true;
            if (nz) m[k] = v;
        }
        return m;
    };
    return norm(a) == norm(b);
}

HmtChain chain_minus(const HmtChain& a, const HmtChain& b) {
    HmtChain out = a;
    for (const auto& [k, v] : b.parts) {
        auto& tgt = out.parts[k];
        if (tgt.empty()) tgt.assign(v.size(), Int(0));
        for (size_t i = 0; i < v.size(); ++i) tgt[i] -= v[i];
    }
    return out;
}

HmtChain scale_chain(const HmtChain& a, const Int& c) {
    HmtChain out = a;
    for (auto& [k, v] : out.parts)
        for (auto& x : v) x *= c;
    return out;
}

HmtChain random_chain(const HmtContext& ctx, long degree, long max_b, std::mt19937_64& rng) {
    HmtChain c;
    c.degree = degree;
    for (long b = std::max<long>(0, -degree); b <= max_b; ++b) {
        long a = b + degree;
        long dim = ctx.amb_dim(a, b);
        const auto& f = ctx.component(a, b);
        if (f.fix.cols == 0) continue;
        std::vector<Int> v(static_cast<size_t>(dim), Int(0));
        for (long k = 0; k < f.fix.cols; ++k) {
            long coef = static_cast<long>(rng() % 5) - 2;
            if (coef == 0) continue;
            for (long i = 0; i < dim; ++i) v[static_cast<size_t>(i)] += coef * f.fix.at(i, k);
        }
        c.parts[{a, b}] = std::move(v);
    }
    return c;
}

}  // namespace

TEST_CASE("cup product satisfies the Leibniz rule (C_2, F_2 and C_3, Z)") {
    std::mt19937_64 rng(23);
    for (long n : {2L, 3L}) {
        GModule x = (n == 2) ? GModule::trivial_cyclic(2) : GModule::trivial_z();
        HmtContext ctx(CyclicGroup(n), x, ResolutionKind::Bar);
        HmtContext ctx2(CyclicGroup(n), GModule::tensor(x, x), ResolutionKind::Bar);
        PtMultiplication mult(&ctx2);
        long maxb = (n == 2) ? 3 : 1;
        for (int trial = 0; trial < 6; ++trial) {
            long d1 = static_cast<long>(rng() % 3) - 1, d2 = static_cast<long>(rng() % 3) - 1;
            HmtChain u = random_chain(ctx, d1, maxb, rng);
            HmtChain w = random_chain(ctx, d2, maxb, rng);
            HmtChain lhs = hmt_d(ctx2, hmt_product(ctx, ctx, ctx2, mult, u, w));
            HmtChain r1 = hmt_product(ctx, ctx, ctx2, mult, hmt_d(ctx, u), w);
            HmtChain r2 = hmt_product(ctx, ctx, ctx2, mult, u, hmt_d(ctx, w));
            HmtChain rhs = chain_minus(r1, scale_chain(r2, (d1 % 2 == 0) ? -1 : 1));
            // lhs = r1 + (-1)^{d1} r2
            CHECK(chains_equal(lhs, rhs));
        }
    }
}

TEST_CASE("unit class is a strict unit") {
    HmtContext ctx(CyclicGroup(2), GModule::trivial_cyclic(2), ResolutionKind::Bar);
    HmtContext ctx2(CyclicGroup(2), GModule::tensor(ctx.coefficients(), ctx.coefficients()), ResolutionKind::Bar);
    PtMultiplication mult(&ctx2);
    HmtChain unit = hmt_unit(ctx, {Int(1)});
    CHECK(hmt_d(ctx, unit).is_zero());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        HmtChain c = random_chain(ctx, static_cast<long>(rng() % 5) - 2, 2, rng);
        HmtChain prod = hmt_product(ctx, ctx, ctx2, mult, unit, c);
        // X (x) X = Z/2 (x) Z/2 has the diagonal basis index 0
        CHECK(chains_equal(prod, c));
    }
}

TEST_CASE("Tate cohomology ring of C_2 with F_2 coefficients is F_2[u, u^{-1}]") {
    GModule f2 = GModule::trivial_cyclic(2);
    HmtContext ctx(CyclicGroup(2), f2, ResolutionKind::Bar);
    GModule f2f2 = GModule::tensor(f2, f2);
    HmtContext ctx2(CyclicGroup(2), f2f2, ResolutionKind::Bar);
    PtMultiplication mult(&ctx2);

    // generator u in table degree -1 (i.e. Hhat^1), small support rep
    HmtDegreeData dm1 = hmt_degree_data(ctx, -1, 2);
    REQUIRE(dm1.classes.shape.torsion == std::vector<Int>{2});
    HmtChain u = hmt_chain_from_fixed(ctx, -1, dm1.blocks,
                                      [&] {
                                          std::vector<Int> c(static_cast<size_t>(dm1.blocks.total), Int(0));
                                          for (long i = 0; i < dm1.blocks.total; ++i) c[static_cast<size_t>(i)] = dm1.classes.reps.at(i, 0);
                                          return c;
                                      }());
    CHECK(hmt_is_cycle(ctx, u));

    // u . u is the nonzero class in table degree -2
    HmtChain uu = hmt_product(ctx, ctx, ctx2, mult, u, u);
    CHECK(hmt_is_cycle(ctx2, uu));
    HmtDegreeData dm2 = hmt_degree_data(ctx2, -2, 8);
    REQUIRE(dm2.classes.shape.torsion == std::vector<Int>{2});
    HmtChain zero;
    zero.degree = -2;
    CHECK_FALSE(hmt_same_class(ctx2, dm2, uu, zero));

    // representative independence: perturb u by coboundaries
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        HmtChain pert = random_chain(ctx, 0, 2, rng);
        HmtChain u2 = chain_minus(u, scale_chain(hmt_d(ctx, pert), -1));
        HmtChain uu2 = hmt_product(ctx, ctx, ctx2, mult, u2, u2);
        CHECK(hmt_same_class(ctx2, dm2, uu2, uu));
    }
}

TEST_CASE("C_3 pairing: degree -2 and degree 2 generators multiply to the unit of Hhat^0") {
    GModule z = GModule::trivial_z();
    HmtContext ctx(CyclicGroup(3), z, ResolutionKind::Bar);
    HmtContext ctx2(CyclicGroup(3), GModule::tensor(z, z), ResolutionKind::Bar);
    PtMultiplication mult(&ctx2);

    // table degree -2 = Hhat^2 and table degree +2 = Hhat^{-2}
    HmtDegreeData d_neg = hmt_degree_data(ctx, -2, 2);
    HmtDegreeData d_pos = hmt_degree_data(ctx, 2, 1);
    REQUIRE(d_neg.classes.shape.torsion == std::vector<Int>{3});
    REQUIRE(d_pos.classes.shape.torsion == std::vector<Int>{3});
    auto rep_chain = [&](const HmtContext& c, long deg, const HmtDegreeData& d) {
        std::vector<Int> coords(static_cast<size_t>(d.blocks.total), Int(0));
        for (long i = 0; i < d.blocks.total; ++i) coords[static_cast<size_t>(i)] = d.classes.reps.at(i, 0);
        return hmt_chain_from_fixed(c, deg, d.blocks, coords);
    };
    HmtChain cneg = rep_chain(ctx, -2, d_neg);
    HmtChain cpos = rep_chain(ctx, 2, d_pos);
    CHECK(hmt_is_cycle(ctx, cneg));
    CHECK(hmt_is_cycle(ctx, cpos));

    HmtChain prod = hmt_product(ctx, ctx, ctx2, mult, cpos, cneg);
    CHECK(hmt_is_cycle(ctx2, prod));
    HmtDegreeData d0 = hmt_degree_data(ctx2, 0, 3);
    REQUIRE(d0.classes.shape.torsion == std::vector<Int>{3});
    HmtChain unit = hmt_unit(ctx2, {Int(1)});
    // the pairing is perfect: the product is a generator, i.e. +-unit
    bool plus = hmt_same_class(ctx2, d0, prod, unit);
    bool minus = hmt_same_class(ctx2, d0, prod, scale_chain(unit, -1));
    CHECK((plus || minus));
}
