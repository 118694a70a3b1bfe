#pragma once

// Chain complexes of finitely presented modules over one coefficient ring,
// with homology (shapes and chosen representatives) via the subquotient
// calculus.  Degrees are indexed by long; missing components are zero.

#include <map>
#include <vector>

#include "exalg/module.hpp"

namespace exalg {

/// One component of a complex: a presented module.
struct PresentedComponent {
    long ngens = 0;
    ZMat rels;  // ngens x k

    PresentedComponent() : rels(0, 0) {}
    PresentedComponent(long n, ZMat r) : ngens(n), rels(std::move(r)) {}
    static PresentedComponent free_of(long n) { return PresentedComponent(n, ZMat(n, 0)); }
};

/// Bounded chain complex: components per degree, differential d_k: C_k -> C_{k-1}.
struct PresentedComplex {
    RingSpec ring;
    std::map<long, PresentedComponent> comp;
    std::map<long, ZMat> diff;  // key k: matrix C_k -> C_{k-1}

    const PresentedComponent& at(long k) const {
        static const PresentedComponent empty{};
        auto it = comp.find(k);
        return (it == comp.end()) ? empty : it->second;
    }
    ZMat diff_at(long k) const {
        auto it = diff.find(k);
        if (it != diff.end()) return it->second;
        return ZMat(at(k - 1).ngens, at(k).ngens);
    }

    /// d_{k} after d_{k+1} must vanish into the relations of C_{k-1}.
    bool check_differential(long k) const {
        ZMat dd = diff_at(k) * diff_at(k + 1);
        if (dd.is_zero()) return true;
        const PresentedComponent& tgt = at(k - 1);
        for (long j = 0; j < dd.cols; ++j) {
            std::vector<Int> col(static_cast<size_t>(dd.rows));
            for (long i = 0; i < dd.rows; ++i) col[static_cast<size_t>(i)] = dd.at(i, j);
            if (!in_span(ring, tgt.rels, ZMat(tgt.ngens, 0), col)) return false;
        }
        return true;
    }

    ModuleShape homology_shape(long k) const {
        const PresentedComponent& ck = at(k);
        if (ck.ngens == 0) return ModuleShape{};
        ZMat cycles = map_kernel_gens(ring, diff_at(k), at(k - 1).rels);
        return subquotient_shape(ring, cycles, diff_at(k + 1), ck.rels);
    }

    SubquotientBasis homology_basis(long k) const {
        const PresentedComponent& ck = at(k);
        if (ck.ngens == 0) return SubquotientBasis{ModuleShape{}, ZMat(0, 0), {}};
        ZMat cycles = map_kernel_gens(ring, diff_at(k), at(k - 1).rels);
        return subquotient_basis(ring, cycles, diff_at(k + 1), ck.rels);
    }

    /// Class equality of two cycles in degree k.
    bool same_homology_class(long k, const std::vector<Int>& z1, const std::vector<Int>& z2) const {
        return same_class(ring, diff_at(k + 1), at(k).rels, z1, z2);
    }
};

/// Kronecker product (row-major blocks of a times b).
inline ZMat kron(const ZMat& a, const ZMat& b) {
    ZMat out(a.rows * b.rows, a.cols * b.cols);
    for (long i = 0; i < a.rows; ++i)
        for (long j = 0; j < a.cols; ++j) {
            if (a.at(i, j) == 0) continue;
            for (long k = 0; k < b.rows; ++k)
                for (long l = 0; l < b.cols; ++l)
                    if (b.at(k, l) != 0) out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

}  // namespace exalg
