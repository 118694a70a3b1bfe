#pragma once

// Finitely presented modules over Z, Q, F_p and W_N = Z/p^N, and the
// subquotient calculus (kernels, images, homology, chosen bases with
// representatives) used by every homological computation in the library.
//
// A module is coker(rels) on a free module R^gens.  Submodules are given by
// generator matrices in ambient coordinates.  The shape of a subquotient
// (S + rels)/(T + rels) is coker(proj_S ker[S | T | rels]), which reduces
// everything to kernels and Smith normal forms over the coefficient ring.
//
// Convention for TruncWitt(p,N): the ring is the precision-N shadow of the
// p-adic integers Z_p.  A relation divisible by p^N is the zero relation, and
// "free rank" means rank over Z_p.  Inputs whose pivots reach valuation N are
// therefore treated as free directions.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exalg/linalg.hpp"
#include "exalg/scalar.hpp"

namespace exalg {

/// Isomorphism class of a f.g. module: free rank plus invariant factors
/// (divisibility chain, entries > 1).
struct ModuleShape {
    long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const ModuleShape& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    bool operator!=(const ModuleShape& o) const { return !(*this == o); }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank > 0) {
            os << "free^" << free_rank;
            first = false;
        }
        for (const auto& t : torsion) {
            if (!first) os << " + ";
            os << "Z/" << t.str();
            first = false;
        }
        return os.str();
    }

    /// Semicolon-joined invariant factors, 0 denoting a free summand (CSV form).
    std::string invariant_csv() const {
        std::ostringstream os;
        bool first = true;
        for (long i = 0; i < free_rank; ++i) {
            if (!first) os << ";";
            os << "0";
            first = false;
        }
        for (const auto& t : torsion) {
            if (!first) os << ";";
            os << t.str();
            first = false;
        }
        return os.str();
    }
};

/// Kernel generators of A as a map of free modules over the given ring.
inline ZMat kernel_mat(const RingSpec& ring, const ZMat& a) {
    switch (ring.kind) {
        case RingKind::Integer: return kernel_z(a);
        case RingKind::Rational: return kernel_q(a);
        case RingKind::PrimeField: return kernel_chain(a, ring.p, 1);
        case RingKind::TruncWitt: return kernel_chain(a, ring.p, ring.n);
    }
    throw std::logic_error("kernel_mat: bad ring");
}

/// Particular solution of A x = den * b with den = 1 except over Q.
inline std::optional<std::pair<std::vector<Int>, Int>> solve_mat(const RingSpec& ring, const ZMat& a,
                                                                 const std::vector<Int>& b) {
    switch (ring.kind) {
        case RingKind::Integer: {
            SmithForm s = smith_normal_form_z(a);
            auto x = solve_z(s, a.rows, a.cols, b);
            if (!x) return std::nullopt;
            return std::make_pair(*x, Int(1));
        }
        case RingKind::Rational: return solve_q(a, b);
        case RingKind::PrimeField:
        case RingKind::TruncWitt: {
            int prec = (ring.kind == RingKind::PrimeField) ? 1 : ring.n;
            ChainSmith s = smith_normal_form_chain(a, ring.p, prec);
            auto x = solve_chain(s, a.rows, a.cols, ring.p, prec, b);
            if (!x) return std::nullopt;
            return std::make_pair(*x, Int(1));
        }
    }
    throw std::logic_error("solve_mat: bad ring");
}

/// Shape of coker(rels) on R^gens.
inline ModuleShape coker_shape(const RingSpec& ring, long gens, const ZMat& rels) {
    ModuleShape sh;
    if (gens == 0) return sh;
    if (rels.cols == 0 || rels.is_zero()) {
        sh.free_rank = gens;
        return sh;
    }
    switch (ring.kind) {
        case RingKind::Integer: {
            SmithForm s = smith_normal_form_z(rels);
            sh.free_rank = gens - s.rank;
            for (const auto& d : s.diag)
                if (d > 1) sh.torsion.push_back(d);
            return sh;
        }
        case RingKind::Rational: {
            sh.free_rank = gens - rank_q(rels);
            return sh;
        }
        case RingKind::PrimeField: {
            ChainSmith s = smith_normal_form_chain(rels, ring.p, 1);
            sh.free_rank = gens - s.rank;
            return sh;
        }
        case RingKind::TruncWitt: {
            ChainSmith s = smith_normal_form_chain(rels, ring.p, ring.n);
            sh.free_rank = gens;
            for (int v : s.val) {
                if (v >= ring.n) continue;  // vanishing relation: free direction
                --sh.free_rank;
                if (v > 0) {
                    Int t = 1;
                    for (int i = 0; i < v; ++i) t *= ring.p;
                    sh.torsion.push_back(t);
                }
            }
            std::sort(sh.torsion.begin(), sh.torsion.end());
            return sh;
        }
    }
    throw std::logic_error("coker_shape: bad ring");
}

/// Rows [0, count) of the kernel of [S | extras...]: the relations a set of
/// submodule generators S satisfies inside the ambient coker.
inline ZMat span_relations(const RingSpec& ring, const ZMat& s, const ZMat& context) {
    ZMat combined = (context.cols > 0) ? s.hcat(context) : s;
    ZMat k = kernel_mat(ring, combined);
    ZMat top(s.cols, k.cols);
    for (long i = 0; i < s.cols; ++i)
        for (long j = 0; j < k.cols; ++j) top.at(i, j) = k.at(i, j);
    return top;
}

/// Kernel generators of the induced map between presented components:
/// all x with (matrix) x inside the span of the target relations.
inline ZMat map_kernel_gens(const RingSpec& ring, const ZMat& matrix, const ZMat& target_rels) {
    return span_relations(ring, matrix, target_rels);
}

/// Shape of (span S + rels)/(span T + rels) inside the free ambient module.
inline ModuleShape subquotient_shape(const RingSpec& ring, const ZMat& s, const ZMat& t, const ZMat& rels) {
    ZMat context = t.cols > 0 ? t.hcat(rels) : rels;
    return coker_shape(ring, s.cols, span_relations(ring, s, context));
}

/// Membership of v in span(S) + span(rels).
inline bool in_span(const RingSpec& ring, const ZMat& s, const ZMat& rels, const std::vector<Int>& v) {
    ZMat combined = (rels.cols > 0) ? s.hcat(rels) : s;
    return solve_mat(ring, combined, v).has_value();
}

/// Express v as S y (mod rels); returns the y-part if possible.
inline std::optional<std::pair<std::vector<Int>, Int>> express_in_span(const RingSpec& ring, const ZMat& s,
                                                                       const ZMat& rels, const std::vector<Int>& v) {
    ZMat combined = (rels.cols > 0) ? s.hcat(rels) : s;
    auto sol = solve_mat(ring, combined, v);
    if (!sol) return std::nullopt;
    std::vector<Int> y(sol->first.begin(), sol->first.begin() + s.cols);
    return std::make_pair(y, sol->second);
}

/// A subquotient with a chosen decomposition: representatives in ambient
/// coordinates, one per cyclic/free summand, with annihilators (0 = free).
struct SubquotientBasis {
    ModuleShape shape;
    ZMat reps;                // ambient_dim x k
    std::vector<Int> annihilator;  // per column, 0 for free summands
};

/// Decompose (span S + rels)/(span T + rels) with representatives.
inline SubquotientBasis subquotient_basis(const RingSpec& ring, const ZMat& s, const ZMat& t, const ZMat& rels) {
    SubquotientBasis out;
    ZMat context = (t.cols > 0) ? t.hcat(rels) : rels;
    ZMat rel_s = span_relations(ring, s, context);
    out.shape = coker_shape(ring, s.cols, rel_s);
    long amb = s.rows;
    if (s.cols == 0) {
        out.reps = ZMat(amb, 0);
        return out;
    }

    // Column operations on generators: coker(rel_s) with L rel_s R diagonal
    // means new generators S L^{-1} e_i carry the diagonal annihilators.
    std::vector<std::pair<std::vector<Int>, Int>> picked;  // (gen coords, annihilator)
    if (ring.kind == RingKind::Integer || ring.kind == RingKind::PrimeField || ring.kind == RingKind::TruncWitt) {
        int prec = ring.kind == RingKind::TruncWitt ? ring.n : 1;
        bool chain = ring.kind != RingKind::Integer;
        ZMat linv;
        std::vector<Int> diag;
        if (chain) {
            ChainSmith cs = smith_normal_form_chain(rel_s, ring.p, prec);
            // invert left transform mod p^prec
            linv = ZMat::identity(rel_s.rows);
            const Int pn = RingSpec::trunc_witt(ring.p, prec).modulus();
            // Solve cs.left * X = I columnwise.
            ChainSmith ls = smith_normal_form_chain(cs.left, ring.p, prec);
            for (long j = 0; j < rel_s.rows; ++j) {
                std::vector<Int> e(static_cast<size_t>(rel_s.rows), Int(0));
                e[j] = 1;
                auto x = solve_chain(ls, rel_s.rows, rel_s.rows, ring.p, prec, e);
                for (long i = 0; i < rel_s.rows; ++i) linv.at(i, j) = mod_reduce((*x)[i], pn);
            }
            for (long i = 0; i < std::min(rel_s.rows, rel_s.cols); ++i) diag.push_back(cs.d.at(i, i));
        } else {
            SmithForm sf = smith_normal_form_z(rel_s);
            linv = ZMat::identity(rel_s.rows);
            SmithForm ls = smith_normal_form_z(sf.left);
            for (long j = 0; j < rel_s.rows; ++j) {
                std::vector<Int> e(static_cast<size_t>(rel_s.rows), Int(0));
                e[j] = 1;
                auto x = solve_z(ls, rel_s.rows, rel_s.rows, e);
                for (long i = 0; i < rel_s.rows; ++i) linv.at(i, j) = (*x)[i];
            }
            diag = sf.diag;
        }
        for (long i = 0; i < s.cols; ++i) {
            Int d = (i < static_cast<long>(diag.size())) ? diag[i] : Int(0);
            bool unit_killed;
            Int ann;
            if (ring.kind == RingKind::Integer) {
                unit_killed = (d == 1);
                ann = d;
            } else if (ring.kind == RingKind::PrimeField) {
                unit_killed = (d != 0);
                ann = 0;
            } else {  // TruncWitt: diag p^v, v >= n means free (Z_p shadow)
                int v = (d == 0) ? ring.n : p_valuation(d, ring.p, ring.n);
                unit_killed = (v == 0);
                if (v >= ring.n)
                    ann = 0;
                else {
                    ann = 1;
                    for (int q = 0; q < v; ++q) ann *= ring.p;
                }
            }
            if (unit_killed) continue;
            std::vector<Int> gen(static_cast<size_t>(s.cols), Int(0));
            for (long k = 0; k < s.cols; ++k) gen[k] = linv.at(k, i);
            picked.emplace_back(gen, ann);
        }
        // order: torsion summands (ann > 1) after free, matching ModuleShape
        std::stable_sort(picked.begin(), picked.end(),
                         [](const auto& a, const auto& b) { return (a.second == 0) && (b.second != 0); });
    } else {
        // Rational: free summands only; pick generator coordinates spanning the quotient.
        QEchelon e = rref_q(QMat::from(rel_s.transpose()));
        std::vector<bool> pivot(static_cast<size_t>(s.cols), false);
        for (long pc : e.pivot_col) pivot[static_cast<size_t>(pc)] = true;
        long need = out.shape.free_rank;
        // Generators not pivotal in the row space of relations stay independent.
        // Greedy: take standard generators whose classes remain independent.
        ZMat chosen(s.cols, 0);
        for (long g = 0; g < s.cols && chosen.cols < need; ++g) {
            ZMat cand(s.cols, chosen.cols + 1);
            for (long i = 0; i < s.cols; ++i)
                for (long j = 0; j < chosen.cols; ++j) cand.at(i, j) = chosen.at(i, j);
            cand.at(g, chosen.cols) = 1;
            ZMat test = cand.hcat(rel_s);
            if (rank_q(test) == cand.cols + rank_q(rel_s)) chosen = cand;
        }
        for (long j = 0; j < chosen.cols; ++j) {
            std::vector<Int> gen(static_cast<size_t>(s.cols), Int(0));
            for (long i = 0; i < s.cols; ++i) gen[i] = chosen.at(i, j);
            picked.emplace_back(gen, Int(0));
        }
    }

    out.reps = ZMat(amb, static_cast<long>(picked.size()));
    out.annihilator.clear();
    for (size_t c = 0; c < picked.size(); ++c) {
        for (long i = 0; i < amb; ++i) {
            Int acc = 0;
            for (long k = 0; k < s.cols; ++k)
                if (picked[c].first[k] != 0) acc += s.at(i, k) * picked[c].first[k];
            out.reps.at(i, static_cast<long>(c)) = acc;
        }
        out.annihilator.push_back(picked[c].second);
    }
    return out;
}

/// Classes of z1 and z2 agree in (span S + rels)/(span T + rels)?
inline bool same_class(const RingSpec& ring, const ZMat& t, const ZMat& rels, const std::vector<Int>& z1,
                       const std::vector<Int>& z2) {
    std::vector<Int> diff(z1.size());
    for (size_t i = 0; i < z1.size(); ++i) diff[i] = z1[i] - z2[i];
    ZMat context = (t.cols > 0) ? t.hcat(rels) : rels;
    if (context.cols == 0) {
        for (const auto& d : diff)
            if (d != 0) return false;
        return true;
    }
    return solve_mat(ring, context, diff).has_value();
}

}  // namespace exalg
