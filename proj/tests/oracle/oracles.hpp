#pragma once

// Slow reference implementations used only by tests. They share no code
// with the library beyond the data types, the cochain evaluator and the
// structure-constant tables.

#include <pcoh/algebra.hpp>
#include <pcoh/cochain.hpp>
#include <pcoh/complexes.hpp>
#include <pcoh/deformation.hpp>

#include <random>
#include <vector>

namespace oracle {

using pcoh::Index;
using pcoh::Rational;
using pcoh::Vector;

// Dense Gaussian elimination over the rationals.
inline std::size_t dense_rank(std::vector<Vector> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Dense d x d x d tables.
struct Dense3 {
    std::size_t d = 0, out = 0;
    std::vector<Vector> v;  // v[a * d + b]
    Dense3(std::size_t d_, std::size_t out_, const pcoh::StructureConstants& c)
        : d(d_), out(out_), v(d_ * d_, pcoh::zero_vector(out_))
    {
        for (const auto& e : c) v[e.i * d + e.j][e.k] += e.value;
    }
    Vector operator()(const Vector& x, const Vector& y) const
    {
        Vector r = pcoh::zero_vector(out);
        for (std::size_t a = 0; a < d; ++a) {
            if (x[a] == 0) continue;
            for (std::size_t b = 0; b < d; ++b) {
                if (y[b] == 0) continue;
                for (std::size_t k = 0; k < out; ++k) r[k] += x[a] * y[b] * v[a * d + b][k];
            }
        }
        return r;
    }
};

inline Vector e(std::size_t d, std::size_t i)
{
    Vector v = pcoh::zero_vector(d);
    v[i] = 1;
    return v;
}

inline Vector add(Vector a, const Vector& b, const Rational& c = 1)
{
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += c * b[k];
    return a;
}

// Brute-force Poisson algebra axioms over basis tuples.
inline bool is_poisson_algebra(const pcoh::AlgebraSpec& s)
{
    const std::size_t d = s.dim;
    Dense3 m(d, d, s.mult), l(d, d, s.bracket);
    for (std::size_t a = 0; a < d; ++a) {
        if (m(s.unit, e(d, a)) != e(d, a) || m(e(d, a), s.unit) != e(d, a)) return false;
        for (std::size_t b = 0; b < d; ++b) {
            if (add(l(e(d, a), e(d, b)), l(e(d, b), e(d, a))) != pcoh::zero_vector(d)) return false;
            for (std::size_t c = 0; c < d; ++c) {
                Vector A = e(d, a), B = e(d, b), C = e(d, c);
                if (m(m(A, B), C) != m(A, m(B, C))) return false;
                Vector jac = add(add(l(A, l(B, C)), l(B, l(C, A))), l(C, l(A, B)));
                if (!pcoh::is_zero(jac)) return false;
                if (l(m(A, B), C) != add(m(A, l(B, C)), m(l(A, C), B))) return false;
            }
        }
    }
    return true;
}

// Total differential evaluated straight from the cochain formulas.
//
//   Hochschild  (df)(a0..ai; w) = a0 f(a1..ai; w) + sum_k (-1)^{k+1} f(..a_k a_{k+1}..; w)
//                                 + (-1)^{i+1} f(a0..a_{i-1}; w) a_i
//   horizontal  (df)(a; x0..xj) = sum_l (-1)^l [{x_l, f(a; ^x_l)} - sum_t f(..{x_l,a_t}..; ^x_l)]
//                                 + sum_{p<q} (-1)^{p+q} f(a; [x_p,x_q], ^x_p ^x_q)
//   vertical    (df)(a, b; w)   = a f(b w) - f(ab w) + f(a w) b
class Differential {
public:
    Differential(const pcoh::AlgebraSpec& alg, const pcoh::ModuleSpec& mod)
        : d_(alg.dim), m_(mod.dim), mult_(alg.dim, alg.dim, alg.mult), br_(alg.dim, alg.dim, alg.bracket),
          left_(alg.dim, mod.dim, {}), right_(alg.dim, mod.dim, {}), lie_(alg.dim, mod.dim, {})
    {
        auto fill = [&](Dense3& t, const pcoh::StructureConstants& c) {
            t.v.assign(d_ * m_, pcoh::zero_vector(m_));
            for (const auto& x : c) t.v[x.i * m_ + x.j][x.k] += x.value;
        };
        fill(left_, mod.left);
        fill(right_, mod.right);
        fill(lie_, mod.lie);
    }

    pcoh::Cochain apply(const pcoh::ComplexSlice& slice, const pcoh::Cochain& f) const
    {
        const bool twist = slice.convention == pcoh::SignConvention::horizontal_twist;
        pcoh::CochainEvaluator F(f);
        return pcoh::encode(slice.target, [&](const pcoh::Component& c, std::span<const Index> t,
                                              std::span<const Index> w) {
            Vector out = pcoh::zero_vector(m_);
            std::vector<Index> tv(t.begin(), t.end()), wv(w.begin(), w.end());
            if (c.j >= 1 && f.space.find(c.i, c.j - 1)) {
                Rational s = (twist && c.i % 2 == 1) ? -1 : 1;
                out = add(out, horizontal(F, tv, wv), s);
            }
            if (c.i >= 1 && f.space.find(c.i - 1, c.j)) out = add(out, hochschild(F, c.i - 1, tv, wv));
            if (slice.theory == pcoh::Theory::poisson && c.i == 2 && f.space.find(0, c.j + 1))
                out = add(out, vertical(F, tv, wv));
            return out;
        });
    }

private:
    Vector act(const Dense3& t, std::size_t a, const Vector& u) const
    {
        Vector r = pcoh::zero_vector(m_);
        for (std::size_t k = 0; k < m_; ++k)
            if (u[k] != 0) r = add(r, t.v[a * m_ + k], u[k]);
        return r;
    }
    Vector act_right(std::size_t a, const Vector& u) const { return act(right_, a, u); }

    // f with tensor slot `slot` replaced by the vector x
    Vector eval_t(const pcoh::CochainEvaluator& F, int i, int j, std::vector<Index> t, std::size_t slot,
                  const Vector& x, const std::vector<Index>& w) const
    {
        Vector r = pcoh::zero_vector(m_);
        for (std::size_t k = 0; k < d_; ++k) {
            if (x[k] == 0) continue;
            t[slot] = static_cast<Index>(k);
            r = add(r, F(i, j, t, w), x[k]);
        }
        return r;
    }
    Vector eval_w(const pcoh::CochainEvaluator& F, int i, int j, const std::vector<Index>& t, std::vector<Index> w,
                  std::size_t slot, const Vector& x) const
    {
        Vector r = pcoh::zero_vector(m_);
        for (std::size_t k = 0; k < d_; ++k) {
            if (x[k] == 0) continue;
            w[slot] = static_cast<Index>(k);
            r = add(r, F(i, j, t, w), x[k]);
        }
        return r;
    }

    Vector hochschild(const pcoh::CochainEvaluator& F, int i, const std::vector<Index>& a,
                      const std::vector<Index>& w) const
    {
        const int j = static_cast<int>(w.size());
        Vector out = act(left_, a[0], F(i, j, std::vector<Index>(a.begin() + 1, a.end()), w));
        for (int k = 0; k < i; ++k) {
            std::vector<Index> t;
            for (int s = 0; s < k; ++s) t.push_back(a[s]);
            t.push_back(0);
            for (int s = k + 2; s <= i; ++s) t.push_back(a[s]);
            Vector prod = mult_(e(d_, a[k]), e(d_, a[k + 1]));
            out = add(out, eval_t(F, i, j, t, static_cast<std::size_t>(k), prod, w), (k % 2 == 0) ? -1 : 1);
        }
        Vector last = F(i, j, std::vector<Index>(a.begin(), a.end() - 1), w);
        out = add(out, act_right(a[i], last), (i % 2 == 0) ? -1 : 1);
        return out;
    }

    Vector horizontal(const pcoh::CochainEvaluator& F, const std::vector<Index>& a, const std::vector<Index>& x) const
    {
        const int i = static_cast<int>(a.size()), jj = static_cast<int>(x.size()) - 1;
        Vector out = pcoh::zero_vector(m_);
        for (int l = 0; l <= jj; ++l) {
            std::vector<Index> rest;
            for (int s = 0; s <= jj; ++s)
                if (s != l) rest.push_back(x[s]);
            const Rational sign = (l % 2 == 0) ? 1 : -1;
            out = add(out, act(lie_, x[l], F(i, jj, a, rest)), sign);
            for (int t = 0; t < i; ++t)
                out = add(out, eval_t(F, i, jj, a, static_cast<std::size_t>(t), br_(e(d_, x[l]), e(d_, a[t])), rest),
                          -sign);
        }
        for (int p = 0; p <= jj; ++p)
            for (int q = p + 1; q <= jj; ++q) {
                std::vector<Index> rest{0};
                for (int s = 0; s <= jj; ++s)
                    if (s != p && s != q) rest.push_back(x[s]);
                const Rational sign = ((p + q) % 2 == 0) ? 1 : -1;
                out = add(out, eval_w(F, i, jj, a, rest, 0, br_(e(d_, x[p]), e(d_, x[q]))), sign);
            }
        return out;
    }

    Vector vertical(const pcoh::CochainEvaluator& F, const std::vector<Index>& ab, const std::vector<Index>& w) const
    {
        const int j = static_cast<int>(w.size()) + 1;
        std::vector<Index> bw{ab[1]}, aw{ab[0]}, pw{0};
        for (Index x : w) {
            bw.push_back(x);
            aw.push_back(x);
            pw.push_back(x);
        }
        Vector out = act(left_, ab[0], F(0, j, {}, bw));
        out = add(out, eval_w(F, 0, j, {}, pw, 0, mult_(e(d_, ab[0]), e(d_, ab[1]))), -1);
        out = add(out, act_right(ab[1], F(0, j, {}, aw)));
        return out;
    }

    std::size_t d_, m_;
    Dense3 mult_, br_;
    Dense3 left_, right_, lie_;
};

// The three deformation equations at order n written out by hand, with
// m(a,{c,b}) in the second one. Returns LHS - RHS for each equation over
// all basis triples; all-zero iff the equation holds.
struct DnResidual {
    bool eq1 = true, eq2 = true, eq3 = true;
};

inline DnResidual deformation_equations(const pcoh::DeformationSeries& s, int n)
{
    const std::size_t d = s.alg.dim;
    auto M = [&](int k) { return Dense3(d, d, s.m(k).to_constants()); };
    auto L = [&](int k) { return Dense3(d, d, s.l(k).to_constants()); };
    std::vector<Dense3> m, l;
    for (int k = 0; k <= n; ++k) {
        m.push_back(M(k));
        l.push_back(L(k));
    }
    DnResidual r;
    for (std::size_t ai = 0; ai < d; ++ai)
        for (std::size_t bi = 0; bi < d; ++bi)
            for (std::size_t ci = 0; ci < d; ++ci) {
                Vector a = e(d, ai), b = e(d, bi), c = e(d, ci);
                Vector z = pcoh::zero_vector(d);
                Vector lhs1 = z, lhs2 = z, lhs3 = z;
                for (int p = 1; p < n; ++p) {
                    const int q = n - p;
                    lhs1 = add(add(lhs1, m[p](m[q](a, b), c)), m[p](a, m[q](b, c)), -1);
                    lhs2 = add(lhs2, l[q](m[p](a, b), c));
                    lhs2 = add(lhs2, m[p](a, l[q](b, c)), -1);
                    lhs2 = add(lhs2, m[p](l[q](a, c), b), -1);
                    lhs3 = add(add(add(lhs3, l[q](l[p](a, b), c)), l[q](l[p](b, c), a)), l[q](l[p](c, a), b));
                }
                const Dense3 &m0 = m[0], &l0 = l[0], &mn = m[n], &ln = l[n];
                Vector rhs1 = add(add(add(m0(a, mn(b, c)), mn(m0(a, b), c), -1), mn(a, m0(b, c))), m0(mn(a, b), c), -1);
                Vector rhs2 = add(add(m0(a, ln(b, c)), ln(m0(a, b), c), -1), m0(ln(a, c), b));
                rhs2 = add(add(add(rhs2, l0(c, mn(a, b))), mn(a, l0(c, b)), -1), mn(l0(c, a), b), -1);
                Vector rhs3 = add(add(ln(a, l0(b, c)), ln(b, l0(c, a))), ln(c, l0(a, b)));
                rhs3 = add(add(add(rhs3, l0(ln(a, b), c), -1), l0(ln(b, c), a), -1), l0(ln(c, a), b), -1);
                if (lhs1 != rhs1) r.eq1 = false;
                if (lhs2 != rhs2) r.eq2 = false;
                if (lhs3 != rhs3) r.eq3 = false;
            }
    return r;
}

// Small random rationals for property tests.
class Random {
public:
    explicit Random(unsigned seed) : gen_(seed) {}
    Rational value(int bound = 3)
    {
        std::uniform_int_distribution<int> num(-bound, bound), den(1, 2);
        Rational r(num(gen_), den(gen_));
        r.canonicalize();
        return r;
    }
    Vector vector(std::size_t n, int bound = 3)
    {
        Vector v(n);
        for (auto& x : v) x = value(bound);
        return v;
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    Vector combination(const std::vector<Vector>& basis, std::size_t n)
    {
        Vector v = pcoh::zero_vector(n);
        for (const auto& b : basis) v = add(v, b, value());
        return v;
    }

private:
    std::mt19937 gen_;
};

}  // namespace oracle
