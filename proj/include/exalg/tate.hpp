#pragma once

// Tate cohomology of finite cyclic groups, computed from two chain-level
// constructions spliced out of a projective resolution P_* of Z over Z[G]:
//
//  (GT)   ... <- Q^1 (x) X <- Q^0 (x) X <- P_0 (x) X <- P_1 (x) X <- ...
//         homology of the G-fixed points, Q^b = Hom(P_b, Z) contragredient,
//         Q^0 in homological degree 0, P_b in degree b+1;
//
//  (HMT)  the direct-sum total complex of Hom(P_*, X) (x) Ptilde_*, where
//         Ptilde is the augmented resolution re-indexed so Z sits in degree 0
//         (Ptilde_a = P_{a-1} for a >= 1, differential ending in the
//         augmentation).
//
// Degree-i chains of (HMT) are infinite direct sums over the Hom-degree b.
// They are computed with a support bound B: cycles are honest cycles of the
// full complex supported in b <= B, and boundaries come from chains in
// b <= B whose differential does not leak past the bound.  A stabilization
// certificate (B versus B+2 agreement) is recorded with the output.
//
// The table convention is i -> H^{-i}_G(X): for cyclic groups with trivial Z
// coefficients this gives Z/n in even degrees and 0 in odd degrees.

#include <map>
#include <stdexcept>
#include <vector>

#include "exalg/complex.hpp"

namespace exalg {

struct CyclicGroup {
    long order;
    explicit CyclicGroup(long n) : order(n) {
        if (n < 2) throw std::invalid_argument("CyclicGroup: order must be >= 2");
    }
};

/// Finitely generated abelian group with an action of the generator of C_n.
struct GModule {
    long ngens = 0;
    ZMat rels;    // ngens x k, invariant-factor style relations
    ZMat action;  // ngens x ngens, matrix of g

    static GModule trivial_z() { return {1, ZMat(1, 0), ZMat::identity(1)}; }
    static GModule trivial_cyclic(const Int& m) {
        GModule x{1, ZMat(1, 1), ZMat::identity(1)};
        x.rels.at(0, 0) = m;
        return x;
    }
    static GModule sign_z() {
        GModule x{1, ZMat(1, 0), ZMat(1, 1)};
        x.action.at(0, 0) = -1;
        return x;
    }
    static GModule zero() { return {0, ZMat(0, 0), ZMat(0, 0)}; }
    /// Z[G] with the left regular action (basis g^0..g^{n-1}).
    static GModule group_ring(long n) {
        GModule x{n, ZMat(n, 0), ZMat(n, n)};
        for (long j = 0; j < n; ++j) x.action.at((j + 1) % n, j) = 1;
        return x;
    }
    /// Z[G] (x) A with the diagonal action.
    static GModule induced(long n, const GModule& a) { return tensor(group_ring(n), a); }
    static GModule tensor(const GModule& a, const GModule& b) {
        GModule x;
        x.ngens = a.ngens * b.ngens;
        x.action = kron(a.action, b.action);
        ZMat ra = kron(a.rels, ZMat::identity(b.ngens));
        ZMat rb = kron(ZMat::identity(a.ngens), b.rels);
        x.rels = ra.hcat(rb);
        return x;
    }

    void validate(long n) const {
        ZMat pw = ZMat::identity(ngens);
        for (long i = 0; i < n; ++i) pw = action * pw;
        RingSpec z = RingSpec::integers();
        ZMat diffm = pw - ZMat::identity(ngens);
        for (long j = 0; j < ngens; ++j) {
            std::vector<Int> col(static_cast<size_t>(ngens));
            for (long i = 0; i < ngens; ++i) col[static_cast<size_t>(i)] = diffm.at(i, j);
            if (!in_span(z, rels, ZMat(ngens, 0), col))
                throw std::invalid_argument("GModule: action order does not divide group order");
        }
    }
};

enum class ResolutionKind { Minimal, Bar };

/// Projective resolution of Z over Z[C_n]: either the minimal resolution
/// (rank one over Z[G], differentials alternating g-1 and the norm) or the
/// cellular chains of the standard bar construction model of EG
/// (normalized: bracket entries != e, so P_k has Z-rank n(n-1)^k).
class CyclicResolution {
  public:
    CyclicResolution(long n, ResolutionKind kind) : n_(n), kind_(kind) {}

    long order() const { return n_; }
    ResolutionKind kind() const { return kind_; }

    long zrank(long k) const {
        if (k < 0) return 0;
        if (kind_ == ResolutionKind::Minimal) return n_;
        long r = n_;
        for (long i = 0; i < k; ++i) r *= (n_ - 1);
        return r;
    }

    /// Matrix of g on the Z-basis of P_k (left translation of g0).
    ZMat action(long k) const {
        long r = zrank(k);
        ZMat a(r, r);
        if (kind_ == ResolutionKind::Minimal) {
            for (long j = 0; j < n_; ++j) a.at((j + 1) % n_, j) = 1;
            return a;
        }
        long tail = r / n_;
        for (long g0 = 0; g0 < n_; ++g0)
            for (long t = 0; t < tail; ++t) a.at(((g0 + 1) % n_) * tail + t, g0 * tail + t) = 1;
        return a;
    }

    /// Differential P_k -> P_{k-1} on Z-bases, k >= 1.
    ZMat diff(long k) const {
        if (k < 1) throw std::invalid_argument("CyclicResolution::diff: k >= 1");
        ZMat d(zrank(k - 1), zrank(k));
        if (kind_ == ResolutionKind::Minimal) {
            if (k % 2 == 1) {
                for (long j = 0; j < n_; ++j) {
                    d.at((j + 1) % n_, j) += 1;  // g - 1
                    d.at(j, j) -= 1;
                }
            } else {
                for (long j = 0; j < n_; ++j)
                    for (long i = 0; i < n_; ++i) d.at(i, j) += 1;  // norm
            }
            return d;
        }
        for (long idx = 0; idx < zrank(k); ++idx) {
            std::vector<long> tup = decode(k, idx);
            // face 0 merges g0 g1; interior faces merge bracket entries and
            // die when the product is e (normalization); the last face drops
            // the final entry (augmented coordinate).
            {
                std::vector<long> f(tup);
                f[1] = (f[0] + f[1]) % n_;
                f.erase(f.begin());
                if (face_ok(f)) d.at(encode(k - 1, f), idx) += 1;
            }
            for (long i = 1; i < k; ++i) {
                std::vector<long> f(tup);
                f[static_cast<size_t>(i)] = (f[static_cast<size_t>(i)] + f[static_cast<size_t>(i + 1)]) % n_;
                f.erase(f.begin() + i + 1);
                if (face_ok(f)) d.at(encode(k - 1, f), idx) += (i % 2 == 0) ? 1 : -1;
            }
            {
                std::vector<long> f(tup);
                f.pop_back();
                if (face_ok(f)) d.at(encode(k - 1, f), idx) += (k % 2 == 0) ? 1 : -1;
            }
        }
        return d;
    }

    /// Augmentation P_0 -> Z as a row of ones.
    ZMat augmentation() const {
        ZMat a(1, zrank(0));
        for (long j = 0; j < zrank(0); ++j) a.at(0, j) = 1;
        return a;
    }

    std::vector<long> decode(long k, long idx) const {
        std::vector<long> tup(static_cast<size_t>(k) + 1, 0);
        for (long i = k; i >= 1; --i) {
            tup[static_cast<size_t>(i)] = idx % (n_ - 1) + 1;
            idx /= (n_ - 1);
        }
        tup[0] = idx;
        return tup;
    }
    long encode(long k, const std::vector<long>& tup) const {
        long idx = tup[0];
        for (long i = 1; i <= k; ++i) idx = idx * (n_ - 1) + (tup[static_cast<size_t>(i)] - 1);
        return idx;
    }

  private:
    static bool face_ok(const std::vector<long>& f) {
        for (size_t i = 1; i < f.size(); ++i)
            if (f[i] == 0) return false;
        return true;
    }

    long n_;
    ResolutionKind kind_;
};

namespace detail {

/// Ambient component with a G-action, its fixed submodule, and the abstract
/// presentation of the fixed submodule on its chosen generators.
struct FixedComponent {
    long amb = 0;
    ZMat amb_rels;
    ZMat fix;        // ambient x ngens, generators of the fixed submodule
    PresentedComponent abstract_comp;
};

inline FixedComponent fixed_component(long amb, const ZMat& rels, const ZMat& act) {
    FixedComponent f;
    f.amb = amb;
    f.amb_rels = rels;
    RingSpec z = RingSpec::integers();
    ZMat am1 = act - ZMat::identity(amb);
    f.fix = map_kernel_gens(z, am1, rels);
    f.abstract_comp = PresentedComponent(f.fix.cols, span_relations(z, f.fix, rels));
    return f;
}

/// Express (map * fix_src) columns in terms of fix_tgt modulo tgt relations.
inline ZMat induced_on_fixed(const ZMat& map, const FixedComponent& src, const FixedComponent& tgt) {
    RingSpec z = RingSpec::integers();
    ZMat img = map * src.fix;
    ZMat out(tgt.fix.cols, src.fix.cols);
    for (long j = 0; j < img.cols; ++j) {
        std::vector<Int> col(static_cast<size_t>(img.rows));
        for (long i = 0; i < img.rows; ++i) col[static_cast<size_t>(i)] = img.at(i, j);
        auto sol = express_in_span(z, tgt.fix, tgt.amb_rels, col);
        if (!sol) throw std::logic_error("induced_on_fixed: image not in fixed submodule");
        for (long i = 0; i < tgt.fix.cols; ++i) out.at(i, j) = sol->first[static_cast<size_t>(i)];
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The (GT) pipeline.
// ---------------------------------------------------------------------------

/// The spliced fixed-point complex of (GT) on homological degrees
/// [lo-1, hi+1], as a complex of abstract fixed modules.
inline PresentedComplex tate_gt_complex(const CyclicGroup& g, const GModule& x, const CyclicResolution& res, int lo,
                                        int hi) {
    x.validate(g.order);
    PresentedComplex out;
    out.ring = RingSpec::integers();

    std::map<long, detail::FixedComponent> fc;
    auto ambient = [&](long i) {
        // i <= 0: Q^{-i} (x) X ; i >= 1: P_{i-1} (x) X
        long k = (i <= 0) ? -i : i - 1;
        long pr = res.zrank(k);
        ZMat rels = kron(ZMat::identity(pr), x.rels);
        ZMat act = kron(res.action(k), x.action);  // permutation: contragredient matches
        return std::make_pair(rels, act);
    };
    for (long i = lo - 1; i <= hi + 1; ++i) {
        auto [rels, act] = ambient(i);
        long k = (i <= 0) ? -i : i - 1;
        fc[i] = detail::fixed_component(res.zrank(k) * x.ngens, rels, act);
        out.comp[i] = fc[i].abstract_comp;
    }
    for (long i = lo; i <= hi + 1; ++i) {
        long dim_x = x.ngens;
        ZMat amb_map;
        if (i <= 0) {
            // Q^{-i} -> Q^{-i+1}: transpose of diff(-i+1)
            amb_map = kron(res.diff(-i + 1).transpose(), ZMat::identity(dim_x));
        } else if (i == 1) {
            // splice P_0 -> Q^0 through the augmentation and its dual
            ZMat aug = res.augmentation();            // 1 x r0
            ZMat dual = aug.transpose();              // r0 x 1 (the functional eps in Q^0)
            amb_map = kron(dual * aug, ZMat::identity(dim_x));
        } else {
            amb_map = kron(res.diff(i - 1), ZMat::identity(dim_x));
        }
        out.diff[i] = detail::induced_on_fixed(amb_map, fc[i], fc[i - 1]);
    }
    return out;
}

/// Table i -> H^{-i}_G(X) over the window, via the (GT) complex.
inline std::map<long, ModuleShape> tate_gt(const CyclicGroup& g, const GModule& x, int lo, int hi,
                                           ResolutionKind kind = ResolutionKind::Minimal) {
    CyclicResolution res(g.order, kind);
    PresentedComplex c = tate_gt_complex(g, x, res, lo, hi);
    std::map<long, ModuleShape> out;
    for (long i = lo; i <= hi; ++i) out[i] = c.homology_shape(i);
    return out;
}

// ---------------------------------------------------------------------------
// The (HMT) pipeline.
// ---------------------------------------------------------------------------

/// Shared context for the Hesselholt-Madsen total complex: components
/// K_{a,b} = (Hom(P_b, X) (x) Ptilde_a)^G with the two differentials
/// d_hom: (a,b) -> (a,b+1) (precompose with the resolution differential) and
/// d_pt: (a,b) -> (a-1,b) (Ptilde differential), total D = d_hom + (-1)^b d_pt.
class HmtContext {
  public:
    HmtContext(const CyclicGroup& g, GModule x, ResolutionKind kind)
        : group_(g), x_(std::move(x)), res_(g.order, kind) {
        x_.validate(g.order);
    }

    const CyclicResolution& resolution() const { return res_; }
    const GModule& coefficients() const { return x_; }

    long pt_rank(long a) const { return a == 0 ? 1 : res_.zrank(a - 1); }
    ZMat pt_action(long a) const { return a == 0 ? ZMat::identity(1) : res_.action(a - 1); }
    /// Ptilde_a -> Ptilde_{a-1}: augmentation at a = 1, resolution diff above.
    ZMat pt_diff(long a) const {
        if (a < 1) throw std::invalid_argument("pt_diff: a >= 1");
        if (a == 1) return res_.augmentation();
        return res_.diff(a - 1);
    }

    long amb_dim(long a, long b) const { return res_.zrank(b) * x_.ngens * pt_rank(a); }

    const detail::FixedComponent& component(long a, long b) const {
        auto key = std::make_pair(a, b);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        long hom_dim = res_.zrank(b) * x_.ngens;
        ZMat hom_act = kron(res_.action(b), x_.action);  // contragredient of a permutation
        ZMat hom_rels = kron(ZMat::identity(res_.zrank(b)), x_.rels);
        ZMat act = kron(hom_act, pt_action(a));
        ZMat rels = kron(hom_rels, ZMat::identity(pt_rank(a)));
        auto [pos, ok] = cache_.emplace(key, detail::fixed_component(hom_dim * pt_rank(a), rels, act));
        return pos->second;
    }

    /// Coefficient relations of the ambient component K_{a,b}.
    ZMat amb_rels(long a, long b) const {
        return kron(kron(ZMat::identity(res_.zrank(b)), x_.rels), ZMat::identity(pt_rank(a)));
    }

    /// Ambient d_hom: K_{a,b} -> K_{a,b+1}.
    ZMat amb_dhom(long a, long b) const {
        return kron(kron(res_.diff(b + 1).transpose(), ZMat::identity(x_.ngens)), ZMat::identity(pt_rank(a)));
    }
    /// Ambient d_pt: K_{a,b} -> K_{a-1,b}.
    ZMat amb_dpt(long a, long b) const {
        return kron(ZMat::identity(res_.zrank(b) * x_.ngens), pt_diff(a));
    }

  private:
    CyclicGroup group_;
    GModule x_;
    CyclicResolution res_;
    mutable std::map<std::pair<long, long>, detail::FixedComponent> cache_;
};

namespace detail {

/// Block layout of degree-i chains with Hom-support b <= bound.
struct HmtBlocks {
    std::vector<long> bs;          // participating b values
    std::vector<long> offset;      // prefix offsets into the concatenated space
    long total = 0;
    PresentedComponent comp;       // concatenated presentation
};

inline HmtBlocks hmt_blocks(const HmtContext& ctx, long i, long bound) {
    HmtBlocks out;
    std::vector<ZMat> rels;
    long nrels = 0;
    for (long b = std::max<long>(0, -i); b <= bound; ++b) {
        const auto& f = ctx.component(b + i, b);
        out.bs.push_back(b);
        out.offset.push_back(out.total);
        out.total += f.abstract_comp.ngens;
        rels.push_back(f.abstract_comp.rels);
        nrels += f.abstract_comp.rels.cols;
    }
    ZMat big(out.total, nrels);
    long coff = 0;
    for (size_t q = 0; q < rels.size(); ++q) {
        for (long i2 = 0; i2 < rels[q].rows; ++i2)
            for (long j2 = 0; j2 < rels[q].cols; ++j2) big.at(out.offset[q] + i2, coff + j2) = rels[q].at(i2, j2);
        coff += rels[q].cols;
    }
    out.comp = PresentedComponent(out.total, big);
    return out;
}

/// Total differential from degree-i blocks (support <= bound) into degree
/// i-1 blocks (support <= bound+1), on fixed coordinates.
inline ZMat hmt_total_diff(const HmtContext& ctx, long i, const HmtBlocks& src, const HmtBlocks& tgt) {
    ZMat d(tgt.total, src.total);
    for (size_t q = 0; q < src.bs.size(); ++q) {
        long b = src.bs[q];
        long a = b + i;
        const auto& fs = ctx.component(a, b);
        // d_hom into block b+1 of degree i-1
        {
            auto it = std::find(tgt.bs.begin(), tgt.bs.end(), b + 1);
            if (it != tgt.bs.end()) {
                size_t tq = static_cast<size_t>(it - tgt.bs.begin());
                const auto& ft = ctx.component(a, b + 1);
                ZMat m = induced_on_fixed(ctx.amb_dhom(a, b), fs, ft);
                for (long r = 0; r < m.rows; ++r)
                    for (long c = 0; c < m.cols; ++c) d.at(tgt.offset[tq] + r, src.offset[q] + c) += m.at(r, c);
            }
        }
        // (-1)^b d_pt into block b of degree i-1
        if (a >= 1) {
            auto it = std::find(tgt.bs.begin(), tgt.bs.end(), b);
            if (it != tgt.bs.end()) {
                size_t tq = static_cast<size_t>(it - tgt.bs.begin());
                const auto& ft = ctx.component(a - 1, b);
                ZMat m = induced_on_fixed(ctx.amb_dpt(a, b), fs, ft);
                int sign = (b % 2 == 0) ? 1 : -1;
                for (long r = 0; r < m.rows; ++r)
                    for (long c = 0; c < m.cols; ++c) d.at(tgt.offset[tq] + r, src.offset[q] + c) += sign * m.at(r, c);
            }
        }
    }
    return d;
}

}  // namespace detail

struct HmtHomology {
    ModuleShape shape;
    bool certified = false;  // support bound B and B+2 agree
};

/// Homology of the (HMT) total complex in degree i at support bound B:
/// cycles supported in b <= B, boundaries from b <= B chains that do not
/// leak past the bound.
inline ModuleShape hmt_homology_at_bound(const HmtContext& ctx, long i, long bound) {
    detail::HmtBlocks ci = detail::hmt_blocks(ctx, i, bound);
    if (ci.total == 0) return ModuleShape{};
    detail::HmtBlocks cim1 = detail::hmt_blocks(ctx, i - 1, bound + 1);
    detail::HmtBlocks cip1 = detail::hmt_blocks(ctx, i + 1, bound);

    RingSpec z = RingSpec::integers();
    ZMat dmat = detail::hmt_total_diff(ctx, i, ci, cim1);
    ZMat cycles = map_kernel_gens(z, dmat, cim1.comp.rels);

    // boundary sources: chains above whose image has no b = bound+1 block
    ZMat dup = detail::hmt_total_diff(ctx, i + 1, cip1, detail::hmt_blocks(ctx, i, bound + 1));
    // rows of the b = bound+1 block in the extended target
    detail::HmtBlocks ext = detail::hmt_blocks(ctx, i, bound + 1);
    long cut = ci.total;  // extended layout prefixes the b <= bound blocks
    ZMat leak(ext.total - cut, dup.cols);
    for (long r = cut; r < ext.total; ++r)
        for (long c = 0; c < dup.cols; ++c) leak.at(r - cut, c) = dup.at(r, c);
    const auto& top = ctx.component(bound + 1 + i, bound + 1);
    ZMat w = map_kernel_gens(z, leak, top.abstract_comp.rels);
    ZMat bnd_full = dup * w;
    ZMat bnd(cut, bnd_full.cols);
    for (long r = 0; r < cut; ++r)
        for (long c = 0; c < bnd_full.cols; ++c) bnd.at(r, c) = bnd_full.at(r, c);

    return subquotient_shape(z, cycles, bnd, ci.comp.rels);
}

/// Table i -> H^{-i}_G(X) for the HMT pipeline, with certificates.
inline std::map<long, HmtHomology> tate_hmt(const CyclicGroup& g, const GModule& x, int lo, int hi,
                                            ResolutionKind kind = ResolutionKind::Minimal, long bound = -1) {
    HmtContext ctx(g, x, kind);
    if (bound < 0) bound = std::max<long>(0, -lo) + 4;
    std::map<long, HmtHomology> out;
    for (long i = lo; i <= hi; ++i) {
        HmtHomology h;
        h.shape = hmt_homology_at_bound(ctx, i, bound);
        h.certified = (hmt_homology_at_bound(ctx, i, bound + 2) == h.shape);
        out[i] = h;
    }
    return out;
}

}  // namespace exalg
