#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "exalg/intmatrix.hpp"
#include "exalg/linalg.hpp"

using namespace exalg;

namespace {

ZMat make(long r, long c, std::vector<long> vals) {
    ZMat m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m.at(i, j) = vals[static_cast<size_t>(i * c + j)];
    return m;
}

Int det(const ZMat& m) {
    REQUIRE(m.rows == m.cols);
    if (m.rows == 1) return m.at(0, 0);
    Int d = 0;
    // expansion along first row (matrices here are small)
    for (long j = 0; j < m.cols; ++j) {
        if (m.at(0, j) == 0) continue;
        ZMat minor(m.rows - 1, m.cols - 1);
        for (long i = 1; i < m.rows; ++i) {
            long cc = 0;
            for (long k = 0; k < m.cols; ++k) {
                if (k == j) continue;
                minor.at(i - 1, cc++) = m.at(i, k);
            }
        }
        Int term = m.at(0, j) * det(minor);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

// Independent oracle for Smith invariants: determinantal divisors.
// d_k = gcd of all k x k minors of the matrix; invariant_k = d_k / d_{k-1}.
std::vector<Int> determinantal_invariants(const ZMat& m) {
    long nmin = std::min(m.rows, m.cols);
    std::vector<Int> gcds(static_cast<size_t>(nmin) + 1, Int(0));
    gcds[0] = 1;
    for (long k = 1; k <= nmin; ++k) {
        Int g = 0;
        std::vector<long> ri(static_cast<size_t>(k)), ci(static_cast<size_t>(k));
        std::function<void(long, long)> rows = [&](long pos, long start) {
            if (pos == k) {
                std::function<void(long, long)> cols = [&](long cpos, long cstart) {
                    if (cpos == k) {
                        ZMat sub(k, k);
                        for (long a = 0; a < k; ++a)
                            for (long b = 0; b < k; ++b) sub.at(a, b) = m.at(ri[a], ci[b]);
                        g = gcd(g, det(sub));
                        return;
                    }
                    for (long c = cstart; c < m.cols; ++c) {
                        ci[cpos] = c;
                        cols(cpos + 1, c + 1);
                    }
                };
                cols(0, 0);
                return;
            }
            for (long r = start; r < m.rows; ++r) {
                ri[pos] = r;
                rows(pos + 1, r + 1);
            }
        };
        rows(0, 0);
        gcds[static_cast<size_t>(k)] = abs(g);
    }
    std::vector<Int> inv;
    for (long k = 1; k <= nmin; ++k) {
        if (gcds[static_cast<size_t>(k)] == 0) {
            inv.push_back(0);
            gcds[static_cast<size_t>(k)] = gcds[static_cast<size_t>(k - 1)];  // keep later quotients defined
        } else {
            inv.push_back(gcds[static_cast<size_t>(k)] / gcds[static_cast<size_t>(k - 1)]);
        }
    }
    return inv;
}

}  // namespace

TEST_CASE("smith normal form of [[2,0],[0,3]] is [1,6]") {
    ZMat m = make(2, 2, {2, 0, 0, 3});
    SmithForm s = smith_normal_form_z(m);
    CHECK(s.diag == std::vector<Int>{1, 6});
    CHECK(determinantal_invariants(m) == std::vector<Int>{1, 6});
    CHECK((s.left * m * s.right) == s.d);
    CHECK(abs(det(s.left)) == 1);
    CHECK(abs(det(s.right)) == 1);
}

TEST_CASE("smith normal form identity") {
    ZMat m = ZMat::identity(3);
    SmithForm s = smith_normal_form_z(m);
    CHECK(s.diag == std::vector<Int>{1, 1, 1});
}

TEST_CASE("smith normal form matches determinantal divisors on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        long r = 1 + static_cast<long>(rng() % 4), c = 1 + static_cast<long>(rng() % 4);
        ZMat m(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) m.at(i, j) = static_cast<long>(rng() % 19) - 9;
        SmithForm s = smith_normal_form_z(m);
        CHECK((s.left * m * s.right) == s.d);
        CHECK(s.diag == determinantal_invariants(m));
        for (size_t k = 0; k + 1 < s.diag.size(); ++k)
            if (s.diag[k + 1] != 0 || s.diag[k] == 0) CHECK((s.diag[k] == 0 ? s.diag[k + 1] == 0 : s.diag[k + 1] % s.diag[k] == 0));
        if (r == c) {
            // product of invariants equals |det| on square input
            Int prod = 1;
            for (const auto& d : s.diag) prod *= d;
            CHECK(prod == abs(det(m)));
        }
    }
}

TEST_CASE("kernel over Z") {
    // x + 2y + 3z = 0 has kernel of rank 2 and d * ker = 0
    ZMat m = make(1, 3, {1, 2, 3});
    ZMat k = kernel_z(m);
    CHECK(k.cols == 2);
    CHECK((m * k).is_zero());
}

TEST_CASE("solve over Z") {
    ZMat m = make(2, 2, {2, 0, 0, 3});
    SmithForm s = smith_normal_form_z(m);
    auto x = solve_z(s, 2, 2, {4, 9});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solve_z(s, 2, 2, {1, 1}).has_value());
}

TEST_CASE("chain smith over Z/p^N") {
    // [[p]] over TruncWitt(p,3) is already diagonal with diag [p]
    ZMat m = make(1, 1, {3});
    ChainSmith s = smith_normal_form_chain(m, 3, 3);
    CHECK(s.d.at(0, 0) == 3);
    CHECK(s.val == std::vector<int>{1});

    // mixed valuations get sorted nondecreasing
    ZMat m2 = make(2, 2, {9, 3, 3, 1});
    ChainSmith s2 = smith_normal_form_chain(m2, 3, 4);
    CHECK(s2.val[0] == 0);
    const Int pn = 81;
    CHECK(((s2.left * m2 * s2.right).mod(pn)) == s2.d.mod(pn));
}

TEST_CASE("kernel over Z/p^N includes scaled torsion generators") {
    // ker(p : W_2 -> W_2) is generated by p^{N-1}
    ZMat m = make(1, 1, {5});
    ZMat k = kernel_chain(m, 5, 2);
    REQUIRE(k.cols == 1);
    CHECK(k.at(0, 0) == 5);
}

TEST_CASE("kernel and rank over Q") {
    ZMat m = make(2, 3, {1, 2, 3, 2, 4, 6});
    CHECK(rank_q(m) == 1);
    ZMat k = kernel_q(m);
    CHECK(k.cols == 2);
    CHECK((m * k).is_zero());
    auto sol = solve_q(make(2, 2, {2, 0, 0, 4}), {1, 1});
    REQUIRE(sol.has_value());
    // x = (1/2, 1/4): common denominator 4, numerators (2, 1)
    CHECK(sol->second == 4);
    CHECK(sol->first == std::vector<Int>{2, 1});
}

TEST_CASE("scalar matrix smith dispatch") {
    RingSpec w = RingSpec::trunc_witt(3, 3);
    ScalarMatrix m(w, 1, 1);
    m.set(0, 0, Int(3));
    SmithResult s = smith_normal_form(m);
    REQUIRE(s.diag.size() == 1);
    CHECK(s.diag[0].num() == 3);

    RingSpec f = RingSpec::prime_field(5);
    ScalarMatrix mf(f, 2, 2);
    mf.set(0, 0, Int(2));
    mf.set(1, 1, Int(3));
    SmithResult sf = smith_normal_form(mf);
    CHECK(sf.diag[0].num() == 1);  // fields: rank factorization, diagonal of ones
    CHECK(sf.diag[1].num() == 1);
}
