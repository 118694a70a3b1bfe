#pragma once

// Cup products on Tate cohomology via the (HMT) complex over the bar
// resolution.  The coalgebra structure on P_* is the Alexander-Whitney
// diagonal; the algebra structure on Ptilde is an equivariant chain map
// Ptilde (x) Ptilde -> Ptilde, unital on Ptilde_0, constructed by lifting
// against the exact augmented complex (unique up to chain homotopy, and
// representative independence is what the tests check).

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exalg/tate.hpp"

namespace exalg {

/// Chain in the (HMT) total complex, ambient coordinates per (a, b) block;
/// basis of a block is (Q^b basis) x (X generator) x (Ptilde_a basis).
struct HmtChain {
    long degree = 0;
    std::map<std::pair<long, long>, std::vector<Int>> parts;

    bool is_zero() const {
        for (const auto& [k, v] : parts)
            for (const auto& c : v)
                if (c != 0) return false;
        return true;
    }
    void add(long a, long b, long idx, const Int& c, long dim) {
        auto& v = parts[{a, b}];
        if (v.empty()) v.assign(static_cast<size_t>(dim), Int(0));
        v[static_cast<size_t>(idx)] += c;
    }
};

/// Alexander-Whitney component P_{r+s} -> P_r (x) P_s for the bar resolution:
/// front face tensor translated back face.
inline ZMat aw_component(const CyclicResolution& res, long r, long s) {
    if (res.kind() != ResolutionKind::Bar) throw std::invalid_argument("aw_component: bar resolution only");
    long n = res.order();
    ZMat m(res.zrank(r) * res.zrank(s), res.zrank(r + s));
    for (long idx = 0; idx < res.zrank(r + s); ++idx) {
        std::vector<long> tup = res.decode(r + s, idx);
        std::vector<long> front(tup.begin(), tup.begin() + r + 1);
        long lead = tup[0];
        for (long i = 1; i <= r; ++i) lead = (lead + tup[static_cast<size_t>(i)]) % n;
        std::vector<long> back;
        back.push_back(lead);
        for (long i = r + 1; i <= r + s; ++i) back.push_back(tup[static_cast<size_t>(i)]);
        long fi = res.encode(r, front), bi = res.encode(s, back);
        m.at(fi * res.zrank(s) + bi, idx) = 1;
    }
    return m;
}

/// Multiplication on Ptilde constructed by equivariant lifting, cached per
/// bidegree.  mu(a,a'): Ptilde_a (x) Ptilde_{a'} -> Ptilde_{a+a'}.
class PtMultiplication {
  public:
    explicit PtMultiplication(const HmtContext* ctx) : ctx_(ctx) {}

    const ZMat& mu(long a, long b) const {
        auto key = std::make_pair(a, b);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        ZMat m = build(a, b);
        return cache_.emplace(key, std::move(m)).first->second;
    }

  private:
    ZMat build(long a, long b) const {
        const CyclicResolution& res = ctx_->resolution();
        long ra = ctx_->pt_rank(a), rb = ctx_->pt_rank(b), rt = ctx_->pt_rank(a + b);
        ZMat m(rt, ra * rb);
        if (a == 0) {  // Z (x) Ptilde_b = Ptilde_b
            for (long j = 0; j < rb; ++j) m.at(j, j) = 1;
            return m;
        }
        if (b == 0) {
            for (long i = 0; i < ra; ++i) m.at(i, i) = 1;
            return m;
        }
        // rhs of the chain-map condition via lower mu's
        ZMat da = ctx_->pt_diff(a), db = ctx_->pt_diff(b);
        const ZMat& mlow1 = mu(a - 1, b);
        const ZMat& mlow2 = mu(a, b - 1);
        ZMat rhs(ctx_->pt_rank(a + b - 1), ra * rb);
        // mu((da u) (x) v) + (-1)^a mu(u (x) db v)
        for (long u = 0; u < ra; ++u)
            for (long v = 0; v < rb; ++v) {
                long col = u * rb + v;
                for (long w = 0; w < da.rows; ++w) {
                    if (da.at(w, u) == 0) continue;
                    long lowra = ctx_->pt_rank(a - 1);
                    (void)lowra;
                    for (long t = 0; t < rhs.rows; ++t)
                        if (mlow1.at(t, w * rb + v) != 0) rhs.at(t, col) += da.at(w, u) * mlow1.at(t, w * rb + v);
                }
                int sign = (a % 2 == 0) ? 1 : -1;
                for (long w = 0; w < db.rows; ++w) {
                    if (db.at(w, v) == 0) continue;
                    for (long t = 0; t < rhs.rows; ++t)
                        if (mlow2.at(t, u * db.rows + w) != 0)
                            rhs.at(t, col) += sign * db.at(w, v) * mlow2.at(t, u * db.rows + w);
                }
            }
        // solve d(a+b) x = rhs on diagonal-orbit representatives, extend
        // equivariantly; the leading group element indexes the orbit.
        const SmithForm& sf = diff_smith(a + b);
        ZMat act_t = ctx_->pt_action(a + b);
        ZMat act_a = ctx_->pt_action(a);
        ZMat act_b = ctx_->pt_action(b);
        long n = res.order();
        // leading group element of a Ptilde_a basis index (a >= 1)
        auto lead = [&](long aa, long i) -> long {
            if (aa == 0) return 0;
            long tail = ctx_->pt_rank(aa) / n;
            return i / tail;
        };
        auto clear_lead = [&](long aa, long i) -> long {
            long tail = ctx_->pt_rank(aa) / n;
            return i % tail;
        };
        // inverse action permutations
        auto perm_pow = [&](const ZMat& act, long k) {
            ZMat p = ZMat::identity(act.rows);
            for (long q = 0; q < ((k % n) + n) % n; ++q) p = act * p;
            return p;
        };
        std::map<long, ZMat> act_b_pow, act_t_pow;
        for (long k = 0; k < n; ++k) {
            act_b_pow[k] = perm_pow(act_b, k);
            act_t_pow[k] = perm_pow(act_t, k);
        }
        (void)act_a;
        for (long u = 0; u < ra; ++u) {
            if (lead(a, u) != 0) continue;  // orbit representatives only
            for (long v = 0; v < rb; ++v) {
                long col = u * rb + v;
                std::vector<Int> c(static_cast<size_t>(rhs.rows));
                for (long t = 0; t < rhs.rows; ++t) c[static_cast<size_t>(t)] = rhs.at(t, col);
                auto x = solve_z(sf, ctx_->pt_rank(a + b - 1), rt, c);
                if (!x) throw std::logic_error("PtMultiplication: lifting failed (complex not exact?)");
                for (long t = 0; t < rt; ++t) m.at(t, col) = (*x)[static_cast<size_t>(t)];
            }
        }
        // extend: mu(g^k u0 (x) v) = g^k mu(u0 (x) g^{-k} v)
        for (long u = 0; u < ra; ++u) {
            long k = lead(a, u);
            if (k == 0) continue;
            long tail_a = ra / n;
            long u0 = clear_lead(a, u);
            for (long v = 0; v < rb; ++v) {
                long col = u * rb + v;
                // v = g^k v', so v' = g^{-k} v
                const ZMat& back = act_b_pow[(n - k) % n];
                long vprime = -1;
                for (long w = 0; w < rb; ++w)
                    if (back.at(w, v) != 0) {
                        vprime = w;
                        break;
                    }
                long col0 = u0 * rb + vprime;
                const ZMat& fwd = act_t_pow[k];
                for (long t = 0; t < rt; ++t) {
                    if (m.at(t, col) != 0) continue;
                    Int acc = 0;
                    for (long s = 0; s < rt; ++s)
                        if (fwd.at(t, s) != 0 && m.at(s, col0) != 0) acc += fwd.at(t, s) * m.at(s, col0);
                    m.at(t, col) = acc;
                }
                (void)tail_a;
            }
        }
        return m;
    }

    const SmithForm& diff_smith(long t) const {
        auto it = smith_cache_.find(t);
        if (it != smith_cache_.end()) return it->second;
        SmithForm s = smith_normal_form_z(ctx_->pt_diff(t));
        return smith_cache_.emplace(t, std::move(s)).first->second;
    }

    const HmtContext* ctx_;
    mutable std::map<std::pair<long, long>, ZMat> cache_;
    mutable std::map<long, SmithForm> smith_cache_;
};

/// Total differential of an ambient chain: d_hom + (-1)^b d_pt per part.
/// Applied factorwise (the Kronecker shapes get large on bar resolutions).
inline HmtChain hmt_d(const HmtContext& ctx, const HmtChain& c) {
    const CyclicResolution& res = ctx.resolution();
    long ng = ctx.coefficients().ngens;
    HmtChain out;
    out.degree = c.degree - 1;
    for (const auto& [ab, vec] : c.parts) {
        auto [a, b] = ab;
        long pt = ctx.pt_rank(a);
        // d_hom: index (q, x, t) -> (q2, x, t) weighted by diff(b+1)(q, q2)
        ZMat dres = res.diff(b + 1);  // zrank(b) x zrank(b+1)
        long dim_h = res.zrank(b + 1) * ng * pt;
        for (long j = 0; j < static_cast<long>(vec.size()); ++j) {
            const Int& cj = vec[static_cast<size_t>(j)];
            if (cj == 0) continue;
            long q = j / (ng * pt), rest = j % (ng * pt);
            for (long q2 = 0; q2 < dres.cols; ++q2)
                if (dres.at(q, q2) != 0) out.add(a, b + 1, q2 * ng * pt + rest, dres.at(q, q2) * cj, dim_h);
        }
        if (a >= 1) {
            ZMat dp = ctx.pt_diff(a);  // pt_rank(a-1) x pt_rank(a)
            int sign = (b % 2 == 0) ? 1 : -1;
            long pt1 = ctx.pt_rank(a - 1);
            long dim_p = res.zrank(b) * ng * pt1;
            for (long j = 0; j < static_cast<long>(vec.size()); ++j) {
                const Int& cj = vec[static_cast<size_t>(j)];
                if (cj == 0) continue;
                long head = j / pt, t = j % pt;
                for (long t2 = 0; t2 < dp.rows; ++t2)
                    if (dp.at(t2, t) != 0) out.add(a - 1, b, head * pt1 + t2, sign * dp.at(t2, t) * cj, dim_p);
            }
        }
    }
    // drop zero parts
    for (auto it = out.parts.begin(); it != out.parts.end();) {
        bool zero = true;
        for (const auto& v : it->second)
            if (v != 0) zero = false;
        it = zero ? out.parts.erase(it) : ++it;
    }
    return out;
}

/// Cup product of chains over X and Y with values in X (x) Y.  Requires all
/// three contexts to share the group and the bar resolution.
inline HmtChain hmt_product(const HmtContext& cx, const HmtContext& cy, const HmtContext& cxy,
                            const PtMultiplication& mult, const HmtChain& u, const HmtChain& w) {
    const CyclicResolution& res = cx.resolution();
    long ngx = cx.coefficients().ngens, ngy = cy.coefficients().ngens;
    HmtChain out;
    out.degree = u.degree + w.degree;
    for (const auto& [ab1, v1] : u.parts)
        for (const auto& [ab2, v2] : w.parts) {
            auto [a1, b1] = ab1;
            auto [a2, b2] = ab2;
            long a = a1 + a2, b = b1 + b2;
            int sign = ((a1 * b2) % 2 == 0) ? 1 : -1;
            ZMat aw = aw_component(res, b1, b2);  // P_b -> P_{b1} (x) P_{b2}
            const ZMat& mu = mult.mu(a1, a2);
            long rb1 = res.zrank(b1), rb2 = res.zrank(b2), rbt = res.zrank(b);
            long p1 = cx.pt_rank(a1), p2 = cy.pt_rank(a2), pt = cxy.pt_rank(a);
            long dim_out = rbt * ngx * ngy * pt;
            for (long i1 = 0; i1 < rb1 * ngx * p1; ++i1) {
                Int c1 = v1[static_cast<size_t>(i1)];
                if (c1 == 0) continue;
                long q1 = i1 / (ngx * p1), x1 = (i1 / p1) % ngx, t1 = i1 % p1;
                for (long i2 = 0; i2 < rb2 * ngy * p2; ++i2) {
                    Int c2 = v2[static_cast<size_t>(i2)];
                    if (c2 == 0) continue;
                    long q2 = i2 / (ngy * p2), x2 = (i2 / p2) % ngy, t2 = i2 % p2;
                    Int coef = sign * c1 * c2;
                    // cup of dual-basis functionals: rows of AW select pairs
                    for (long pcol = 0; pcol < rbt; ++pcol) {
                        if (aw.at(q1 * rb2 + q2, pcol) == 0) continue;
                        Int cc = coef * aw.at(q1 * rb2 + q2, pcol);
                        for (long tt = 0; tt < pt; ++tt) {
                            if (mu.at(tt, t1 * p2 + t2) == 0) continue;
                            long idx = ((pcol * ngx + x1) * ngy + x2) * pt + tt;
                            out.add(a, b, idx, cc * mu.at(tt, t1 * p2 + t2), dim_out);
                        }
                    }
                }
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Degree data: cycles, boundaries and classes at a support bound.
// ---------------------------------------------------------------------------

struct HmtDegreeData {
    detail::HmtBlocks blocks;
    ZMat cycles;
    ZMat boundaries;
    SubquotientBasis classes;
};

inline HmtDegreeData hmt_degree_data(const HmtContext& ctx, long i, long bound) {
    HmtDegreeData out;
    out.blocks = detail::hmt_blocks(ctx, i, bound);
    RingSpec z = RingSpec::integers();
    detail::HmtBlocks cim1 = detail::hmt_blocks(ctx, i - 1, bound + 1);
    detail::HmtBlocks cip1 = detail::hmt_blocks(ctx, i + 1, bound);
    detail::HmtBlocks ext = detail::hmt_blocks(ctx, i, bound + 1);
    ZMat dmat = detail::hmt_total_diff(ctx, i, out.blocks, cim1);
    out.cycles = map_kernel_gens(z, dmat, cim1.comp.rels);
    ZMat dup = detail::hmt_total_diff(ctx, i + 1, cip1, ext);
    long cut = out.blocks.total;
    ZMat leak(ext.total - cut, dup.cols);
    for (long r = cut; r < ext.total; ++r)
        for (long c = 0; c < dup.cols; ++c) leak.at(r - cut, c) = dup.at(r, c);
    const auto& top = ctx.component(bound + 1 + i, bound + 1);
    ZMat w = map_kernel_gens(z, leak, top.abstract_comp.rels);
    ZMat bnd_full = dup * w;
    out.boundaries = ZMat(cut, bnd_full.cols);
    for (long r = 0; r < cut; ++r)
        for (long c = 0; c < bnd_full.cols; ++c) out.boundaries.at(r, c) = bnd_full.at(r, c);
    out.classes = subquotient_basis(z, out.cycles, out.boundaries, out.blocks.comp.rels);
    return out;
}

/// Fixed block coordinates of an ambient chain (throws if not invariant).
inline std::vector<Int> hmt_fixed_coords(const HmtContext& ctx, const detail::HmtBlocks& blocks, const HmtChain& c) {
    RingSpec z = RingSpec::integers();
    std::vector<Int> out(static_cast<size_t>(blocks.total), Int(0));
    for (const auto& [ab, vec] : c.parts) {
        auto [a, b] = ab;
        if (a != b + c.degree) throw std::invalid_argument("hmt_fixed_coords: part off the degree diagonal");
        auto it = std::find(blocks.bs.begin(), blocks.bs.end(), b);
        if (it == blocks.bs.end()) throw std::invalid_argument("hmt_fixed_coords: support exceeds bound");
        size_t q = static_cast<size_t>(it - blocks.bs.begin());
        const auto& f = ctx.component(a, b);
        auto sol = express_in_span(z, f.fix, f.amb_rels, vec);
        if (!sol) throw std::invalid_argument("hmt_fixed_coords: chain is not G-invariant");
        for (long k = 0; k < f.fix.cols; ++k) out[static_cast<size_t>(blocks.offset[q] + k)] = sol->first[static_cast<size_t>(k)];
    }
    return out;
}

/// Ambient chain from fixed block coordinates.
inline HmtChain hmt_chain_from_fixed(const HmtContext& ctx, long degree, const detail::HmtBlocks& blocks,
                                     const std::vector<Int>& coords) {
    HmtChain c;
    c.degree = degree;
    for (size_t q = 0; q < blocks.bs.size(); ++q) {
        long b = blocks.bs[q];
        const auto& f = ctx.component(b + degree, b);
        std::vector<Int> amb(static_cast<size_t>(f.amb), Int(0));
        bool nz = false;
        for (long k = 0; k < f.fix.cols; ++k) {
            const Int& x = coords[static_cast<size_t>(blocks.offset[q] + k)];
            if (x == 0) continue;
            nz = true;
            for (long i = 0; i < f.amb; ++i) amb[static_cast<size_t>(i)] += f.fix.at(i, k) * x;
        }
        if (nz) c.parts[{b + degree, b}] = std::move(amb);
    }
    return c;
}

/// A chain vanishes when every part lies in the span of the coefficient
/// relations of its component.
inline bool hmt_chain_vanishes(const HmtContext& ctx, const HmtChain& c) {
    RingSpec z = RingSpec::integers();
    for (const auto& [ab, vec] : c.parts) {
        auto [a, b] = ab;
        bool nz = false;
        for (const auto& v : vec)
            if (v != 0) nz = true;
        if (!nz) continue;
        ZMat rels = ctx.amb_rels(a, b);
        if (rels.cols == 0) return false;
        if (!in_span(z, rels, ZMat(rels.rows, 0), vec)) return false;
    }
    return true;
}

/// Cycle test: the total differential vanishes modulo coefficient relations.
inline bool hmt_is_cycle(const HmtContext& ctx, const HmtChain& c) { return hmt_chain_vanishes(ctx, hmt_d(ctx, c)); }

/// Class equality of two cycles within the support bound of `data`.
inline bool hmt_same_class(const HmtContext& ctx, const HmtDegreeData& data, const HmtChain& z1, const HmtChain& z2) {
    std::vector<Int> c1 = hmt_fixed_coords(ctx, data.blocks, z1);
    std::vector<Int> c2 = hmt_fixed_coords(ctx, data.blocks, z2);
    return same_class(RingSpec::integers(), data.boundaries, data.blocks.comp.rels, c1, c2);
}

/// The unit class: the augmentation functional in Hom(P_0, Z) (x) Ptilde_0,
/// tensored with the module generator coordinates of x0.
inline HmtChain hmt_unit(const HmtContext& ctx, const std::vector<Int>& x0) {
    const CyclicResolution& res = ctx.resolution();
    long r0 = res.zrank(0), ng = ctx.coefficients().ngens;
    HmtChain c;
    c.degree = 0;
    std::vector<Int> v(static_cast<size_t>(r0 * ng), Int(0));
    for (long q = 0; q < r0; ++q)
        for (long x = 0; x < ng; ++x) v[static_cast<size_t>(q * ng + x)] = x0[static_cast<size_t>(x)];
    c.parts[{0, 0}] = std::move(v);
    return c;
}

}  // namespace exalg
