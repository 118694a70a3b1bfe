#pragma once

// Dense exact linear algebra over Z, Z/p^N and Q.  Smith normal form over Z
// and over the chain rings Z/p^N (which covers F_p as N = 1) is the engine
// behind every homology, kernel and subquotient computation in the library.

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exalg/scalar.hpp"

namespace exalg {

/// Dense matrix of big integers, row major.
struct ZMat {
    long rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

    Int& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static ZMat identity(long n) {
        ZMat m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static ZMat zero(long r, long c) { return ZMat(r, c); }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }

    ZMat transpose() const {
        ZMat t(cols, rows);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    ZMat operator*(const ZMat& o) const {
        if (cols != o.rows) throw std::invalid_argument("ZMat: size mismatch in product");
        ZMat r(rows, o.cols);
        for (long i = 0; i < rows; ++i)
            for (long k = 0; k < cols; ++k) {
                const Int& x = at(i, k);
                if (x == 0) continue;
                for (long j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    ZMat operator-(const ZMat& o) const {
        ZMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    ZMat operator+(const ZMat& o) const {
        ZMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }

    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    ZMat col(long j) const {
        ZMat c(rows, 1);
        for (long i = 0; i < rows; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    /// Columns of this followed by columns of o.
    ZMat hcat(const ZMat& o) const {
        if (rows != o.rows) throw std::invalid_argument("ZMat: hcat row mismatch");
        ZMat r(rows, cols + o.cols);
        for (long i = 0; i < rows; ++i) {
            for (long j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
            for (long j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
        }
        return r;
    }

    ZMat submatrix_cols(long from, long count) const {
        ZMat r(rows, count);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < count; ++j) r.at(i, j) = at(i, from + j);
        return r;
    }

    ZMat mod(const Int& m) const {
        ZMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = mod_reduce(a[i], m);
        return r;
    }
};

inline std::vector<Int> mat_vec(const ZMat& m, const std::vector<Int>& v) {
    std::vector<Int> r(static_cast<size_t>(m.rows), Int(0));
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) r[i] += m.at(i, j) * v[j];
    return r;
}

// ---------------------------------------------------------------------------
// Smith normal form over Z.
// ---------------------------------------------------------------------------

struct SmithForm {
    ZMat d;           // diagonal, rows x cols
    ZMat left;        // rows x rows, unimodular
    ZMat right;       // cols x cols, unimodular
    std::vector<Int> diag;  // nonnegative, successive divisibility
    long rank = 0;          // number of nonzero diagonal entries
};

/// Smith normal form: left * m * right = d with d diagonal, d_i | d_{i+1},
/// transforms unimodular.  Deterministic pivoting (least absolute value,
/// first occurrence).
inline SmithForm smith_normal_form_z(ZMat m) {
    const long r = m.rows, c = m.cols;
    SmithForm out;
    out.left = ZMat::identity(r);
    out.right = ZMat::identity(c);
    const long nmin = std::min(r, c);

    auto swap_rows = [&](long i, long j) {
        if (i == j) return;
        for (long k = 0; k < c; ++k) std::swap(m.at(i, k), m.at(j, k));
        for (long k = 0; k < r; ++k) std::swap(out.left.at(i, k), out.left.at(j, k));
    };
    auto swap_cols = [&](long i, long j) {
        if (i == j) return;
        for (long k = 0; k < r; ++k) std::swap(m.at(k, i), m.at(k, j));
        for (long k = 0; k < c; ++k) std::swap(out.right.at(k, i), out.right.at(k, j));
    };
    auto add_row = [&](long dst, long src, const Int& f) {  // row dst += f * row src
        for (long k = 0; k < c; ++k) m.at(dst, k) += f * m.at(src, k);
        for (long k = 0; k < r; ++k) out.left.at(dst, k) += f * out.left.at(src, k);
    };
    auto add_col = [&](long dst, long src, const Int& f) {
        for (long k = 0; k < r; ++k) m.at(k, dst) += f * m.at(k, src);
        for (long k = 0; k < c; ++k) out.right.at(k, dst) += f * out.right.at(k, src);
    };
    auto negate_row = [&](long i) {
        for (long k = 0; k < c; ++k) m.at(i, k) = -m.at(i, k);
        for (long k = 0; k < r; ++k) out.left.at(i, k) = -out.left.at(i, k);
    };

    for (long s = 0; s < nmin; ++s) {
        for (;;) {
            // least nonzero |entry| in the trailing block
            long pi = -1, pj = -1;
            Int best = 0;
            for (long i = s; i < r; ++i)
                for (long j = s; j < c; ++j) {
                    const Int v = abs(m.at(i, j));
                    if (v != 0 && (pi < 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;  // trailing block zero
            swap_rows(s, pi);
            swap_cols(s, pj);

            bool clean = true;
            for (long i = s + 1; i < r; ++i) {
                if (m.at(i, s) == 0) continue;
                Int q = m.at(i, s) / m.at(s, s);
                if (q != 0) add_row(i, s, -q);
                if (m.at(i, s) != 0) clean = false;
            }
            for (long j = s + 1; j < c; ++j) {
                if (m.at(s, j) == 0) continue;
                Int q = m.at(s, j) / m.at(s, s);
                if (q != 0) add_col(j, s, -q);
                if (m.at(s, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot divides the rest of the block, or pull a witness row up
            long wi = -1, wj = -1;
            for (long i = s + 1; i < r && wi < 0; ++i)
                for (long j = s + 1; j < c; ++j)
                    if (m.at(i, j) % m.at(s, s) != 0) {
                        wi = i;
                        wj = j;
                        break;
                    }
            if (wi < 0) break;
            add_row(s, wi, 1);
        }
        if (m.at(s, s) < 0) negate_row(s);
    }

    out.d = m;
    for (long s = 0; s < nmin; ++s) {
        out.diag.push_back(m.at(s, s));
        if (m.at(s, s) != 0) ++out.rank;
    }
    return out;
}

/// Kernel of an integer matrix as a lattice basis (columns).
inline ZMat kernel_z(const ZMat& m) {
    SmithForm s = smith_normal_form_z(m);
    long nfree = m.cols - s.rank;
    ZMat k(m.cols, nfree);
    long col = 0;
    for (long j = s.rank; j < m.cols; ++j, ++col)
        for (long i = 0; i < m.cols; ++i) k.at(i, col) = s.right.at(i, j);
    return k;
}

/// One solution of m x = b over Z, if any.
inline std::optional<std::vector<Int>> solve_z(const SmithForm& s, long rows, long cols, const std::vector<Int>& b) {
    std::vector<Int> lb(static_cast<size_t>(rows), Int(0));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < rows; ++j)
            if (s.left.at(i, j) != 0) lb[i] += s.left.at(i, j) * b[j];
    std::vector<Int> y(static_cast<size_t>(cols), Int(0));
    const long nmin = std::min(rows, cols);
    for (long i = 0; i < rows; ++i) {
        Int di = (i < nmin) ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (lb[i] != 0) return std::nullopt;
        } else {
            if (lb[i] % di != 0) return std::nullopt;
            if (i < cols) y[i] = lb[i] / di;
        }
    }
    std::vector<Int> x(static_cast<size_t>(cols), Int(0));
    for (long i = 0; i < cols; ++i)
        for (long j = 0; j < cols; ++j)
            if (s.right.at(i, j) != 0) x[i] += s.right.at(i, j) * y[j];
    return x;
}

// ---------------------------------------------------------------------------
// Smith normal form over the chain rings Z/p^N (N = 1 gives F_p).
// ---------------------------------------------------------------------------

struct ChainSmith {
    ZMat d;             // diagonal mod p^N, entries p^{v} with v nondecreasing
    ZMat left, right;   // invertible mod p^N
    std::vector<int> val;  // valuations of the diagonal, capped at N
    long rank = 0;         // entries with valuation < N
};

/// SNF over Z/p^N: pivots chosen by least p-valuation and normalized to
/// powers of p by unit row scalings.
inline ChainSmith smith_normal_form_chain(ZMat m, const Int& p, int prec) {
    const Int pn = RingSpec::trunc_witt(p, prec).modulus();
    m = m.mod(pn);
    const long r = m.rows, c = m.cols;
    ChainSmith out;
    out.left = ZMat::identity(r);
    out.right = ZMat::identity(c);
    const long nmin = std::min(r, c);

    auto swap_rows = [&](long i, long j) {
        if (i == j) return;
        for (long k = 0; k < c; ++k) std::swap(m.at(i, k), m.at(j, k));
        for (long k = 0; k < r; ++k) std::swap(out.left.at(i, k), out.left.at(j, k));
    };
    auto swap_cols = [&](long i, long j) {
        if (i == j) return;
        for (long k = 0; k < r; ++k) std::swap(m.at(k, i), m.at(k, j));
        for (long k = 0; k < c; ++k) std::swap(out.right.at(k, i), out.right.at(k, j));
    };
    auto scale_row = [&](long i, const Int& u) {
        for (long k = 0; k < c; ++k) m.at(i, k) = mod_reduce(m.at(i, k) * u, pn);
        for (long k = 0; k < r; ++k) out.left.at(i, k) = mod_reduce(out.left.at(i, k) * u, pn);
    };
    auto add_row = [&](long dst, long src, const Int& f) {
        for (long k = 0; k < c; ++k) m.at(dst, k) = mod_reduce(m.at(dst, k) + f * m.at(src, k), pn);
        for (long k = 0; k < r; ++k) out.left.at(dst, k) = mod_reduce(out.left.at(dst, k) + f * out.left.at(src, k), pn);
    };
    auto add_col = [&](long dst, long src, const Int& f) {
        for (long k = 0; k < r; ++k) m.at(k, dst) = mod_reduce(m.at(k, dst) + f * m.at(k, src), pn);
        for (long k = 0; k < c; ++k) out.right.at(k, dst) = mod_reduce(out.right.at(k, dst) + f * out.right.at(k, src), pn);
    };

    for (long s = 0; s < nmin; ++s) {
        long pi = -1, pj = -1;
        int bestv = prec;
        for (long i = s; i < r; ++i)
            for (long j = s; j < c; ++j) {
                if (m.at(i, j) == 0) continue;
                int v = p_valuation(m.at(i, j), p, prec);
                if (v < bestv) {
                    bestv = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swap_rows(s, pi);
        swap_cols(s, pj);

        // normalize pivot to p^v
        Int pv = 1;
        for (int t = 0; t < bestv; ++t) pv *= p;
        Int unit = m.at(s, s) / pv;  // invertible mod p^{prec-v}, lift an inverse
        Int uinv = inv_mod(unit, pn);
        scale_row(s, uinv);
        m.at(s, s) = pv;  // clean up the (s,s) entry exactly

        for (long i = s + 1; i < r; ++i) {
            if (m.at(i, s) == 0) continue;
            add_row(i, s, pn - m.at(i, s) / pv);  // entries below have valuation >= v
        }
        for (long j = s + 1; j < c; ++j) {
            if (m.at(s, j) == 0) continue;
            add_col(j, s, pn - m.at(s, j) / pv);
        }
    }

    out.d = m;
    for (long s = 0; s < nmin; ++s) {
        int v = (m.at(s, s) == 0) ? prec : p_valuation(m.at(s, s), p, prec);
        out.val.push_back(v);
        if (v < prec) ++out.rank;
    }
    return out;
}

/// Kernel generators over Z/p^N: for diagonal p^v the kernel of that entry
/// is generated by p^{N-v}; free columns contribute full generators.
inline ZMat kernel_chain(const ZMat& m, const Int& p, int prec) {
    ChainSmith s = smith_normal_form_chain(m, p, prec);
    const Int pn = RingSpec::trunc_witt(p, prec).modulus();
    std::vector<std::pair<long, Int>> gens;  // (column of right, scale)
    const long nmin = std::min(m.rows, m.cols);
    for (long j = 0; j < m.cols; ++j) {
        if (j >= nmin || s.val[j] >= prec) {
            gens.emplace_back(j, Int(1));
        } else if (s.val[j] > 0) {
            Int scale = 1;
            for (int t = 0; t < prec - s.val[j]; ++t) scale *= p;
            gens.emplace_back(j, scale);
        }
    }
    ZMat k(m.cols, static_cast<long>(gens.size()));
    for (size_t g = 0; g < gens.size(); ++g)
        for (long i = 0; i < m.cols; ++i)
            k.at(i, static_cast<long>(g)) = mod_reduce(s.right.at(i, gens[g].first) * gens[g].second, pn);
    return k;
}

inline std::optional<std::vector<Int>> solve_chain(const ChainSmith& s, long rows, long cols, const Int& p, int prec,
                                                   const std::vector<Int>& b) {
    const Int pn = RingSpec::trunc_witt(p, prec).modulus();
    std::vector<Int> lb(static_cast<size_t>(rows), Int(0));
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < rows; ++j)
            if (s.left.at(i, j) != 0) lb[i] += s.left.at(i, j) * b[j];
        lb[i] = mod_reduce(lb[i], pn);
    }
    std::vector<Int> y(static_cast<size_t>(cols), Int(0));
    const long nmin = std::min(rows, cols);
    for (long i = 0; i < rows; ++i) {
        Int di = (i < nmin) ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (lb[i] != 0) return std::nullopt;
        } else {
            if (lb[i] % di != 0) return std::nullopt;
            if (i < cols) y[i] = lb[i] / di;
        }
    }
    std::vector<Int> x(static_cast<size_t>(cols), Int(0));
    for (long i = 0; i < cols; ++i) {
        for (long j = 0; j < cols; ++j)
            if (s.right.at(i, j) != 0) x[i] += s.right.at(i, j) * y[j];
        x[i] = mod_reduce(x[i], pn);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Gaussian elimination over Q.
// ---------------------------------------------------------------------------

struct QMat {
    long rows = 0, cols = 0;
    std::vector<Rat> a;
    QMat() = default;
    QMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Rat& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static QMat from(const ZMat& m) {
        QMat q(m.rows, m.cols);
        for (long i = 0; i < m.rows; ++i)
            for (long j = 0; j < m.cols; ++j) q.at(i, j) = Rat(m.at(i, j));
        return q;
    }
};

struct QEchelon {
    QMat r;                       // reduced row echelon form
    std::vector<long> pivot_col;  // one per pivot row
    long rank = 0;
};

inline QEchelon rref_q(QMat m) {
    QEchelon out;
    long lead = 0;
    for (long row = 0; row < m.rows && lead < m.cols; ++row) {
        long i = row;
        while (i < m.rows && m.at(i, lead) == 0) ++i;
        if (i == m.rows) {
            --row;
            ++lead;
            continue;
        }
        for (long j = 0; j < m.cols; ++j) std::swap(m.at(i, j), m.at(row, j));
        Rat piv = m.at(row, lead);
        for (long j = 0; j < m.cols; ++j) m.at(row, j) /= piv;
        for (long k = 0; k < m.rows; ++k) {
            if (k == row || m.at(k, lead) == 0) continue;
            Rat f = m.at(k, lead);
            for (long j = 0; j < m.cols; ++j) m.at(k, j) -= f * m.at(row, j);
        }
        out.pivot_col.push_back(lead);
        ++lead;
    }
    out.rank = static_cast<long>(out.pivot_col.size());
    out.r = std::move(m);
    return out;
}

inline long rank_q(const ZMat& m) { return rref_q(QMat::from(m)).rank; }

/// Kernel basis over Q, scaled to integer columns.
inline ZMat kernel_q(const ZMat& m) {
    QEchelon e = rref_q(QMat::from(m));
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (long pc : e.pivot_col) is_pivot[static_cast<size_t>(pc)] = true;
    std::vector<long> free_cols;
    for (long j = 0; j < m.cols; ++j)
        if (!is_pivot[static_cast<size_t>(j)]) free_cols.push_back(j);
    ZMat k(m.cols, static_cast<long>(free_cols.size()));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        long fc = free_cols[f];
        std::vector<Rat> v(static_cast<size_t>(m.cols));
        v[static_cast<size_t>(fc)] = 1;
        for (long prow = 0; prow < e.rank; ++prow) v[static_cast<size_t>(e.pivot_col[prow])] = -e.r.at(prow, fc);
        Int den = 1;
        for (const auto& x : v) den = lcm(den, denominator(x));
        for (long i = 0; i < m.cols; ++i) {
            Rat scaled = v[static_cast<size_t>(i)] * Rat(den);
            k.at(i, static_cast<long>(f)) = numerator(scaled);
        }
    }
    return k;
}

/// One rational solution of m x = b, returned as (numerators, common denominator).
inline std::optional<std::pair<std::vector<Int>, Int>> solve_q(const ZMat& m, const std::vector<Int>& b) {
    QMat aug(m.rows, m.cols + 1);
    for (long i = 0; i < m.rows; ++i) {
        for (long j = 0; j < m.cols; ++j) aug.at(i, j) = Rat(m.at(i, j));
        aug.at(i, m.cols) = Rat(b[i]);
    }
    QEchelon e = rref_q(std::move(aug));
    for (long prow = 0; prow < e.rank; ++prow)
        if (e.pivot_col[prow] == m.cols) return std::nullopt;
    std::vector<Rat> x(static_cast<size_t>(m.cols));
    for (long prow = 0; prow < e.rank; ++prow) x[static_cast<size_t>(e.pivot_col[prow])] = e.r.at(prow, m.cols);
    Int den = 1;
    for (const auto& v : x) den = lcm(den, denominator(v));
    std::vector<Int> num(static_cast<size_t>(m.cols));
    for (long i = 0; i < m.cols; ++i) num[i] = numerator(x[static_cast<size_t>(i)] * Rat(den));
    return std::make_pair(num, den);
}

}  // namespace exalg
