#pragma once

// User-facing exact matrices: a rectangular matrix of scalars sharing one
// coefficient ring, with Smith normal form over Z and W_N and rank
// factorization over the field variants.

#include <stdexcept>
#include <vector>

#include "exalg/linalg.hpp"
#include "exalg/module.hpp"
#include "exalg/scalar.hpp"

namespace exalg {

class ScalarMatrix {
  public:
    ScalarMatrix(RingSpec ring, long rows, long cols) : ring_(ring), m_(rows, cols) {}
    ScalarMatrix(RingSpec ring, ZMat m) : ring_(ring), m_(std::move(m)) { normalize(); }

    long rows() const { return m_.rows; }
    long cols() const { return m_.cols; }
    const RingSpec& ring() const { return ring_; }
    const ZMat& raw() const { return m_; }

    Scalar get(long i, long j) const { return Scalar(ring_, m_.at(i, j)); }
    void set(long i, long j, const Scalar& v) {
        if (v.ring() != ring_) throw std::invalid_argument("ScalarMatrix: entry from a different ring");
        if (v.den() != 1) throw std::invalid_argument("ScalarMatrix: rational entries must be cleared first");
        m_.at(i, j) = v.num();
        normalize_entry(i, j);
    }
    void set(long i, long j, Int v) {
        m_.at(i, j) = std::move(v);
        normalize_entry(i, j);
    }

    ScalarMatrix operator*(const ScalarMatrix& o) const {
        if (ring_ != o.ring_) throw std::invalid_argument("ScalarMatrix: cross-variant product");
        return ScalarMatrix(ring_, m_ * o.m_);
    }

    bool operator==(const ScalarMatrix& o) const { return ring_ == o.ring_ && m_ == o.m_; }

  private:
    void normalize() {
        Int mod = ring_.modulus();
        if (mod > 0)
            for (auto& x : m_.a) x = mod_reduce(x, mod);
    }
    void normalize_entry(long i, long j) {
        Int mod = ring_.modulus();
        if (mod > 0) m_.at(i, j) = mod_reduce(m_.at(i, j), mod);
    }

    RingSpec ring_;
    ZMat m_;
};

struct SmithResult {
    std::vector<Scalar> diag;
    ScalarMatrix left;
    ScalarMatrix right;
};

/// Smith normal form over Integer and TruncWitt; over the field variants a
/// plain rank factorization (diagonal of ones) is returned instead.
/// Postcondition: left * m * right is diagonal with successive divisibility,
/// transforms invertible over the ring.
inline SmithResult smith_normal_form(const ScalarMatrix& m) {
    const RingSpec& r = m.ring();
    switch (r.kind) {
        case RingKind::Integer: {
            SmithForm s = smith_normal_form_z(m.raw());
            SmithResult out{{}, ScalarMatrix(r, s.left), ScalarMatrix(r, s.right)};
            for (const auto& d : s.diag) out.diag.emplace_back(r, d);
            return out;
        }
        case RingKind::TruncWitt:
        case RingKind::PrimeField: {
            int prec = (r.kind == RingKind::PrimeField) ? 1 : r.n;
            ChainSmith s = smith_normal_form_chain(m.raw(), r.p, prec);
            SmithResult out{{}, ScalarMatrix(r, s.left), ScalarMatrix(r, s.right)};
            long nmin = std::min(m.rows(), m.cols());
            for (long i = 0; i < nmin; ++i) out.diag.emplace_back(r, s.d.at(i, i));
            return out;
        }
        case RingKind::Rational: {
            // Gauss-Jordan with both transforms; diagonal of ones.
            long nr = m.rows(), nc = m.cols();
            QMat a = QMat::from(m.raw());
            QMat l(nr, nr), rt(nc, nc);
            for (long i = 0; i < nr; ++i) l.at(i, i) = 1;
            for (long i = 0; i < nc; ++i) rt.at(i, i) = 1;
            long s = 0;
            for (; s < std::min(nr, nc); ++s) {
                long pi = -1, pj = -1;
                for (long i = s; i < nr && pi < 0; ++i)
                    for (long j = s; j < nc; ++j)
                        if (a.at(i, j) != 0) {
                            pi = i;
                            pj = j;
                            break;
                        }
                if (pi < 0) break;
                for (long k = 0; k < nc; ++k) std::swap(a.at(s, k), a.at(pi, k));
                for (long k = 0; k < nr; ++k) std::swap(l.at(s, k), l.at(pi, k));
                for (long k = 0; k < nr; ++k) std::swap(a.at(k, s), a.at(k, pj));
                for (long k = 0; k < nc; ++k) std::swap(rt.at(k, s), rt.at(k, pj));
                Rat piv = a.at(s, s);
                for (long k = 0; k < nc; ++k) a.at(s, k) /= piv;
                for (long k = 0; k < nr; ++k) l.at(s, k) /= piv;
                for (long i = 0; i < nr; ++i) {
                    if (i == s || a.at(i, s) == 0) continue;
                    Rat f = a.at(i, s);
                    for (long k = 0; k < nc; ++k) a.at(i, k) -= f * a.at(s, k);
                    for (long k = 0; k < nr; ++k) l.at(i, k) -= f * l.at(s, k);
                }
                for (long j = 0; j < nc; ++j) {
                    if (j == s || a.at(s, j) == 0) continue;
                    Rat f = a.at(s, j);
                    for (long k = 0; k < nr; ++k) a.at(k, j) -= f * a.at(k, s);
                    for (long k = 0; k < nc; ++k) rt.at(k, j) -= f * rt.at(k, s);
                }
            }
            // The rank factorization of a rational matrix has integral diag;
            // transforms may be rational, returned with cleared denominators is
            // not possible in general, so we keep them as numerator matrices
            // over a common denominator folded into the diagonal being ones.
            ZMat lz(nr, nr), rz(nc, nc), dz(nr, nc);
            Int lden = 1, rden = 1;
            for (const auto& x : l.a) lden = lcm(lden, denominator(x));
            for (const auto& x : rt.a) rden = lcm(rden, denominator(x));
            // Fold denominators: (lden L) m (rden R) = lden rden D, still diagonal.
            for (long i = 0; i < nr; ++i)
                for (long j = 0; j < nr; ++j) lz.at(i, j) = numerator(l.at(i, j) * Rat(lden));
            for (long i = 0; i < nc; ++i)
                for (long j = 0; j < nc; ++j) rz.at(i, j) = numerator(rt.at(i, j) * Rat(rden));
            SmithResult out{{}, ScalarMatrix(r, lz), ScalarMatrix(r, rz)};
            for (long i = 0; i < std::min(nr, nc); ++i) {
                Rat d = a.at(i, i) * Rat(lden) * Rat(rden);
                out.diag.emplace_back(r, numerator(d), denominator(d));
            }
            return out;
        }
    }
    throw std::logic_error("smith_normal_form: bad ring");
}

}  // namespace exalg
