#pragma once

// Graded and bigraded rings presented by generators with exponent caps,
// invertible (Laurent) generators and coefficient torsion, together with
// finitely presented graded modules and their degreewise expansions.
//
// Built-in instances: k[t] with |t| = 2; k[v,v^{-1}] and W[v,v^{-1}] with
// |v| = -2; k[vbar^{+-1}, t] and k[vbar^{+-1}, t, b]/b^2 with bidegrees
// vbar:(-2,0), t:(0,2), b:(1,0); Z[x,y,z]/y^2 with x:(2,0), y:(2,-1),
// z:(-2,0) under a total exponent cap; Z[eta]/(2 eta) with |eta| = 1
// truncated above a configurable degree.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exalg/module.hpp"

namespace exalg {

/// Degree with up to three components; unused components stay 0.
/// Total degree (the Koszul parity) is the component sum.
struct Deg {
    std::array<int, 3> c{0, 0, 0};

    Deg() = default;
    Deg(int a) : c{a, 0, 0} {}
    Deg(int a, int b) : c{a, b, 0} {}
    Deg(int a, int b, int d) : c{a, b, d} {}

    int total() const { return c[0] + c[1] + c[2]; }
    Deg operator+(const Deg& o) const { return Deg(c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]); }
    Deg operator-(const Deg& o) const { return Deg(c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]); }
    Deg operator*(int k) const { return Deg(c[0] * k, c[1] * k, c[2] * k); }
    bool operator==(const Deg& o) const { return c == o.c; }
    bool operator!=(const Deg& o) const { return c != o.c; }
    bool operator<(const Deg& o) const { return c < o.c; }

    std::string str(int ncomp = 1) const {
        if (ncomp <= 1) return std::to_string(c[0]);
        std::string s = "(" + std::to_string(c[0]) + "," + std::to_string(c[1]);
        if (ncomp > 2) s += "," + std::to_string(c[2]);
        return s + ")";
    }
};

struct RingGen {
    std::string sym;
    Deg deg;
    int cap = -1;        // max exponent, -1 = unbounded
    bool invertible = false;
    Int coeff_torsion = 0;      // c > 0: c * gen * (anything) = 0
    bool counts_total = false;  // exponent counts against the ring total_cap
};

using Expo = std::vector<int>;  // one exponent per ring generator

struct GradedRing {
    RingSpec coeff = RingSpec::integers();
    std::string name;
    int ncomp = 1;      // graded (1), bigraded (2), trigraded (3)
    int total_cap = -1; // bound on the sum of non-negative exponents, -1 = none
    std::vector<RingGen> gens;

    long ngen() const { return static_cast<long>(gens.size()); }

    Deg mono_degree(const Expo& e) const {
        Deg d;
        for (size_t i = 0; i < gens.size(); ++i) d = d + gens[i].deg * e[i];
        return d;
    }

    /// Zero if the exponents violate a cap; otherwise the coefficient torsion
    /// annihilator the monomial picks up (0 = none).
    std::optional<Int> mono_torsion(const Expo& e) const {
        long tot = 0;
        Int tor = 0;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (e[i] == 0) continue;
            if (e[i] < 0 && !gens[i].invertible) return std::nullopt;
            if (gens[i].cap >= 0 && e[i] > gens[i].cap) return std::nullopt;
            if (e[i] > 0 && gens[i].counts_total) tot += e[i];
            if (gens[i].coeff_torsion > 0) tor = (tor == 0) ? gens[i].coeff_torsion : gcd(tor, gens[i].coeff_torsion);
        }
        if (total_cap >= 0 && tot > total_cap) return std::nullopt;
        return tor;
    }

    /// Koszul sign for multiplying monomial e1 by e2 in generator order.
    int mul_sign(const Expo& e1, const Expo& e2) const {
        long cnt = 0;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].deg.total() % 2 == 0 || e2[i] % 2 == 0) continue;
            for (size_t j = i + 1; j < gens.size(); ++j)
                if (gens[j].deg.total() % 2 != 0 && e1[j] % 2 != 0) ++cnt;
        }
        return (cnt % 2 == 0) ? 1 : -1;
    }

    // -- built-in instances ---------------------------------------------

    static GradedRing polynomial(RingSpec k, const std::string& sym, Deg deg, int cap = -1) {
        GradedRing r;
        r.coeff = k;
        r.name = k.tag() + "[" + sym + "]";
        r.ncomp = 1;
        r.gens.push_back({sym, deg, cap, false, 0});
        return r;
    }
    static GradedRing thh_of_field(RingSpec k) { return polynomial(k, "t", Deg(2)); }  // k[t], |t| = 2

    static GradedRing laurent(RingSpec k, const std::string& sym = "v", Deg deg = Deg(-2)) {
        GradedRing r;
        r.coeff = k;
        r.name = k.tag() + "[" + sym + "^{+-1}]";
        r.ncomp = 1;
        r.gens.push_back({sym, deg, -1, true, 0});
        return r;
    }
    static GradedRing tp_of_field(const Int& p, int prec) { return laurent(RingSpec::trunc_witt(p, prec)); }

    static GradedRing tate_circle_e2(const Int& p) {
        GradedRing r;
        r.coeff = RingSpec::prime_field(p);
        r.name = "Fp[vbar^{+-1},t]";
        r.ncomp = 2;
        r.gens.push_back({"vbar", Deg(-2, 0), -1, true, 0});
        r.gens.push_back({"t", Deg(0, 2), -1, false, 0});
        return r;
    }
    static GradedRing tate_finite_e2(const Int& p) {
        GradedRing r = tate_circle_e2(p);
        r.name = "Fp[vbar^{+-1},t,b]/b^2";
        r.gens.push_back({"b", Deg(1, 0), 1, false, 0});
        return r;
    }

    /// HM ring Z[x,y,z]/y^2 with x:(2,0), y:(2,-1), z:(-2,0); the total
    /// exponent cap keeps bidegree components finitely generated.
    static GradedRing hm_circle(int exponent_cap, RingSpec coeff = RingSpec::integers()) {
        GradedRing r;
        r.coeff = coeff;
        r.name = "HM";
        r.ncomp = 2;
        r.total_cap = exponent_cap;
        r.gens.push_back({"x", Deg(2, 0), -1, false, 0, true});
        r.gens.push_back({"y", Deg(2, -1), 1, false, 0, false});
        r.gens.push_back({"z", Deg(-2, 0), -1, false, 0, true});
        return r;
    }

    /// Z[eta]/(2 eta) truncated above the given degree.
    static GradedRing eta_ring(int truncation = 4) {
        GradedRing r;
        r.name = "Z[eta]/(2eta)";
        r.ncomp = 1;
        r.gens.push_back({"eta", Deg(1), truncation, false, Int(2)});
        return r;
    }
};

/// Sparse homogeneous-by-construction ring element: monomial -> coefficient.
struct RingElt {
    std::map<Expo, Int> terms;

    static RingElt zero() { return {}; }
    static RingElt monomial(const GradedRing& r, const Expo& e, Int coef = 1) {
        RingElt x;
        x.add_term(r, e, std::move(coef));
        return x;
    }
    static RingElt unit(const GradedRing& r) { return monomial(r, Expo(static_cast<size_t>(r.ngen()), 0)); }

    bool is_zero() const { return terms.empty(); }

    void add_term(const GradedRing& r, const Expo& e, Int coef) {
        auto tor = r.mono_torsion(e);
        if (!tor) return;  // killed by a cap
        if (*tor > 0) coef = mod_reduce(coef, *tor);
        Int m = r.coeff.modulus();
        if (m > 0) coef = mod_reduce(coef, m);
        if (coef == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, std::move(coef));
        } else {
            it->second += coef;
            if (*tor > 0) it->second = mod_reduce(it->second, *tor);
            if (m > 0) it->second = mod_reduce(it->second, m);
            if (it->second == 0) terms.erase(it);
        }
    }

    RingElt plus(const GradedRing& r, const RingElt& o) const {
        RingElt out = *this;
        for (const auto& [e, c] : o.terms) out.add_term(r, e, c);
        return out;
    }

    RingElt times(const GradedRing& r, const RingElt& o) const {
        RingElt out;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                Expo e(e1.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                out.add_term(r, e, c1 * c2 * r.mul_sign(e1, e2));
            }
        return out;
    }

    RingElt scaled(const GradedRing& r, const Int& c) const {
        RingElt out;
        for (const auto& [e, v] : terms) out.add_term(r, e, v * c);
        return out;
    }

    /// Degree if homogeneous (all terms share one degree).
    std::optional<Deg> degree(const GradedRing& r) const {
        std::optional<Deg> d;
        for (const auto& [e, c] : terms) {
            Deg de = r.mono_degree(e);
            if (!d)
                d = de;
            else if (*d != de)
                return std::nullopt;
        }
        return d;
    }

    std::string str(const GradedRing& r) const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << c.str();
            for (long i = 0; i < r.ngen(); ++i)
                if (e[static_cast<size_t>(i)] != 0) os << "*" << r.gens[static_cast<size_t>(i)].sym << "^" << e[static_cast<size_t>(i)];
        }
        return os.str();
    }
};

/// All monomials of the given degree with exponents within the supplied
/// bound (caps and invertibility respected).  For the built-in rings the
/// result is exact once the bound covers the requested degree window.
inline std::vector<Expo> monomials_in_degree(const GradedRing& r, const Deg& target, int exp_bound) {
    std::vector<Expo> out;
    Expo cur(static_cast<size_t>(r.ngen()), 0);
    std::function<void(long)> rec = [&](long idx) {
        if (idx == r.ngen()) {
            if (r.mono_degree(cur) == target && r.mono_torsion(cur).has_value()) out.push_back(cur);
            return;
        }
        const RingGen& g = r.gens[static_cast<size_t>(idx)];
        int lo = g.invertible ? -exp_bound : 0;
        int hi = g.invertible ? exp_bound : (g.cap >= 0 ? std::min(g.cap, exp_bound) : exp_bound);
        if (!g.invertible && g.counts_total && r.total_cap >= 0) hi = std::min(hi, r.total_cap);
        for (int e = lo; e <= hi; ++e) {
            cur[static_cast<size_t>(idx)] = e;
            rec(idx + 1);
        }
        cur[static_cast<size_t>(idx)] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Graded module presentations.
// ---------------------------------------------------------------------------

struct ModGen {
    std::string sym;
    Deg deg;
};

/// Finitely generated graded module over a GradedRing: free cover on gens,
/// quotient by the column span of a homogeneous relation matrix.
struct GradedModulePresentation {
    GradedRing ring;
    std::vector<ModGen> gens;
    // rels[j][i]: coefficient of generator i in relation j.
    std::vector<std::vector<RingElt>> rels;

    long ngen() const { return static_cast<long>(gens.size()); }

    static GradedModulePresentation free_module(const GradedRing& r, std::vector<ModGen> gs) {
        return {r, std::move(gs), {}};
    }
    /// The ring as a module over itself.
    static GradedModulePresentation ring_module(const GradedRing& r) { return free_module(r, {{"1", Deg()}}); }

    /// Quotient of the ring by one homogeneous ring element.
    static GradedModulePresentation cyclic(const GradedRing& r, const RingElt& x) {
        GradedModulePresentation m = ring_module(r);
        m.rels.push_back({x});
        return m;
    }

    /// Degree of relation column j; throws if the column is not homogeneous.
    Deg relation_degree(long j) const {
        std::optional<Deg> d;
        const auto& col = rels[static_cast<size_t>(j)];
        for (long i = 0; i < ngen(); ++i) {
            const RingElt& c = col[static_cast<size_t>(i)];
            if (c.is_zero()) continue;
            auto cd = c.degree(ring);
            if (!cd) throw std::invalid_argument("presentation error: non-homogeneous relation entry");
            Deg total = *cd + gens[static_cast<size_t>(i)].deg;
            if (!d)
                d = total;
            else if (*d != total)
                throw std::invalid_argument("presentation error: non-homogeneous relation");
        }
        return d.value_or(Deg());
    }

    void validate() const {
        for (const auto& col : rels)
            if (static_cast<long>(col.size()) != ngen())
                throw std::invalid_argument("presentation error: relation column length mismatch");
        for (long j = 0; j < static_cast<long>(rels.size()); ++j) relation_degree(j);
    }
};

/// One degreewise component of a module: labelled basis plus expanded
/// relation matrix over the coefficient ring.
struct DegComponent {
    struct BasisElt {
        long gen;
        Expo mono;
        bool operator<(const BasisElt& o) const { return std::tie(gen, mono) < std::tie(o.gen, o.mono); }
        bool operator==(const BasisElt& o) const { return gen == o.gen && mono == o.mono; }
    };
    std::vector<BasisElt> basis;
    ZMat rels;  // basis.size() x nrels

    long dim() const { return static_cast<long>(basis.size()); }
    long index_of(const BasisElt& b) const {
        auto it = std::lower_bound(basis.begin(), basis.end(), b);
        if (it == basis.end() || !(*it == b)) return -1;
        return static_cast<long>(it - basis.begin());
    }
};

/// Expand the module in one degree: basis (monomial, generator) pairs and
/// relation rows (ring multiples of the presentation relations), for the
/// coefficient-ring linear algebra.
inline DegComponent expand_component(const GradedModulePresentation& m, const Deg& d, int exp_bound) {
    DegComponent out;
    for (long g = 0; g < m.ngen(); ++g) {
        Deg need = d - m.gens[static_cast<size_t>(g)].deg;
        for (const auto& e : monomials_in_degree(m.ring, need, exp_bound)) out.basis.push_back({g, e});
    }
    std::sort(out.basis.begin(), out.basis.end());

    // expanded relations: r * rel_j for ring monomials r of complementary degree,
    // plus coefficient-torsion rows tor * basis element where applicable
    std::vector<std::vector<Int>> cols;
    for (long j = 0; j < static_cast<long>(m.rels.size()); ++j) {
        Deg dj = m.relation_degree(j);
        for (const auto& r : monomials_in_degree(m.ring, d - dj, exp_bound)) {
            std::vector<Int> col(static_cast<size_t>(out.dim()), Int(0));
            bool nonzero = false;
            RingElt rm = RingElt::monomial(m.ring, r);
            for (long g = 0; g < m.ngen(); ++g) {
                RingElt prod = rm.times(m.ring, m.rels[static_cast<size_t>(j)][static_cast<size_t>(g)]);
                for (const auto& [e, c] : prod.terms) {
                    long idx = out.index_of({g, e});
                    if (idx < 0) continue;  // outside the cap window
                    col[static_cast<size_t>(idx)] += c;
                    nonzero = true;
                }
            }
            if (nonzero) cols.push_back(std::move(col));
        }
    }
    for (long b = 0; b < out.dim(); ++b) {
        auto tor = m.ring.mono_torsion(out.basis[static_cast<size_t>(b)].mono);
        if (tor && *tor > 0) {
            std::vector<Int> col(static_cast<size_t>(out.dim()), Int(0));
            col[static_cast<size_t>(b)] = *tor;
            cols.push_back(std::move(col));
        }
    }

    out.rels = ZMat(out.dim(), static_cast<long>(cols.size()));
    for (long j = 0; j < static_cast<long>(cols.size()); ++j)
        for (long i = 0; i < out.dim(); ++i) out.rels.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return out;
}

/// Table degree -> (free rank, torsion invariants) over a degree window.
inline std::map<Deg, ModuleShape> degreewise_rank(const GradedModulePresentation& m, const std::vector<Deg>& window,
                                                  int exp_bound = 24) {
    m.validate();
    std::map<Deg, ModuleShape> out;
    for (const auto& d : window) {
        DegComponent c = expand_component(m, d, exp_bound);
        out[d] = coker_shape(m.ring.coeff, c.dim(), c.rels);
    }
    return out;
}

/// Integer degree window [lo, hi] as a list of Deg (first component).
inline std::vector<Deg> degree_window(int lo, int hi) {
    std::vector<Deg> w;
    for (int d = lo; d <= hi; ++d) w.push_back(Deg(d));
    return w;
}

/// Rectangular bidegree window.
inline std::vector<Deg> bidegree_window(int lo1, int hi1, int lo2, int hi2) {
    std::vector<Deg> w;
    for (int a = lo1; a <= hi1; ++a)
        for (int b = lo2; b <= hi2; ++b) w.push_back(Deg(a, b));
    return w;
}

}  // namespace exalg
