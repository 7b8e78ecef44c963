#include <pcoh/algebra.hpp>
#include <pcoh/errors.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace pcoh {

namespace {

Vector basis_vector(std::size_t n, std::size_t i)
{
    Vector v = zero_vector(n);
    v[i] = 1;
    return v;
}

Vector subtract(Vector a, const Vector& b)
{
    axpy(a, Rational(-1), b);
    return a;
}

void check_constants(const StructureConstants& constants, std::size_t di, std::size_t dj, std::size_t dk,
                     const std::string& what)
{
    for (const auto& c : constants)
        if (c.i >= di || c.j >= dj || c.k >= dk)
            throw StructureError(what + " constant (" + std::to_string(c.i) + "," + std::to_string(c.j) + "," +
                                 std::to_string(c.k) + ") has an index out of range");
}

}  // namespace

bool ValidationReport::violates(const std::string& axiom) const
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; });
}

// ---------------------------------------------------------------------------

BilinearTable::BilinearTable(std::size_t left_dim, std::size_t right_dim, std::size_t out_dim,
                             const StructureConstants& constants)
    : right_dim_(right_dim), out_dim_(out_dim), table_(left_dim * right_dim)
{
    std::map<std::pair<std::size_t, Index>, Rational> acc;
    for (const auto& c : constants) acc[{c.i * right_dim + c.j, c.k}] += c.value;
    for (const auto& [key, value] : acc)
        if (sgn(value) != 0) table_[key.first].push_back({key.second, value});
}

Vector BilinearTable::apply(const Vector& x, const Vector& y) const
{
    Vector out = zero_vector(out_dim_);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (sgn(x[a]) == 0) continue;
        for (std::size_t b = 0; b < y.size(); ++b) {
            if (sgn(y[b]) == 0) continue;
            Rational coef = x[a] * y[b];
            for (const auto& [k, v] : table_[a * right_dim_ + b]) out[k] += coef * v;
        }
    }
    return out;
}

bool BilinearTable::is_zero() const
{
    return std::all_of(table_.begin(), table_.end(), [](const Combination& c) { return c.empty(); });
}

AlgebraTables::AlgebraTables(const AlgebraSpec& spec)
    : dim(spec.dim),
      unit(spec.unit),
      mult(spec.dim, spec.dim, spec.dim, spec.mult),
      bracket(spec.dim, spec.dim, spec.dim, spec.bracket)
{
    check_structure(spec);
}

ModuleTables::ModuleTables(const AlgebraSpec& alg, const ModuleSpec& mod)
    : dim(mod.dim),
      left(alg.dim, mod.dim, mod.dim, mod.left),
      right(alg.dim, mod.dim, mod.dim, mod.right),
      lie(alg.dim, mod.dim, mod.dim, mod.lie)
{
    check_structure(alg, mod);
}

// ---------------------------------------------------------------------------

void check_structure(const AlgebraSpec& spec)
{
    if (spec.dim == 0) throw StructureError("algebra '" + spec.name + "' has dimension 0");
    if (spec.basis_names.size() != spec.dim) throw StructureError("algebra '" + spec.name + "': basis name count != dim");
    if (spec.unit.size() != spec.dim) throw StructureError("algebra '" + spec.name + "': unit vector length != dim");
    check_constants(spec.mult, spec.dim, spec.dim, spec.dim, "mult");
    check_constants(spec.bracket, spec.dim, spec.dim, spec.dim, "bracket");
}

void check_structure(const AlgebraSpec& alg, const ModuleSpec& mod)
{
    check_structure(alg);
    if (mod.dim == 0) throw StructureError("module '" + mod.name + "' has dimension 0");
    if (!mod.basis_names.empty() && mod.basis_names.size() != mod.dim)
        throw StructureError("module '" + mod.name + "': basis name count != dim");
    check_constants(mod.left, alg.dim, mod.dim, mod.dim, "left action");
    check_constants(mod.right, alg.dim, mod.dim, mod.dim, "right action");
    check_constants(mod.lie, alg.dim, mod.dim, mod.dim, "lie action");
}

ValidationReport validate_algebra(const AlgebraSpec& spec)
{
    AlgebraTables t(spec);
    const std::size_t d = spec.dim;
    ValidationReport report;
    auto record = [&](const char* axiom, std::vector<Index> idx, Vector residual) {
        if (!is_zero(residual)) report.violations.push_back({axiom, std::move(idx), std::move(residual)});
    };
    auto e = [&](std::size_t i) { return basis_vector(d, i); };
    auto mul = [&](const Vector& x, const Vector& y) { return t.mult.apply(x, y); };
    auto br = [&](const Vector& x, const Vector& y) { return t.bracket.apply(x, y); };

    for (Index i = 0; i < d; ++i) {
        record("unit", {i}, subtract(mul(t.unit, e(i)), e(i)));
        record("unit", {i}, subtract(mul(e(i), t.unit), e(i)));
    }
    for (Index i = 0; i < d; ++i)
        for (Index j = i; j < d; ++j) {
            Vector r = br(e(i), e(j));
            axpy(r, Rational(1), br(e(j), e(i)));
            record("skew-symmetry", {i, j}, std::move(r));
        }
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (Index c = 0; c < d; ++c) {
                record("associativity", {a, b, c}, subtract(mul(mul(e(a), e(b)), e(c)), mul(e(a), mul(e(b), e(c)))));

                Vector jac = br(br(e(a), e(b)), e(c));
                axpy(jac, Rational(1), br(br(e(b), e(c)), e(a)));
                axpy(jac, Rational(1), br(br(e(c), e(a)), e(b)));
                record("jacobi", {a, b, c}, std::move(jac));

                Vector leib = br(mul(e(a), e(b)), e(c));
                axpy(leib, Rational(-1), mul(e(a), br(e(b), e(c))));
                axpy(leib, Rational(-1), mul(br(e(a), e(c)), e(b)));
                record("leibniz", {a, b, c}, std::move(leib));
            }
    return report;
}

ValidationReport validate_module(const AlgebraSpec& alg, const ModuleSpec& mod)
{
    AlgebraTables at(alg);
    ModuleTables mt(alg, mod);
    const std::size_t d = alg.dim;
    const std::size_t m = mod.dim;
    ValidationReport report;
    auto record = [&](const char* axiom, std::vector<Index> idx, Vector residual) {
        if (!is_zero(residual)) report.violations.push_back({axiom, std::move(idx), std::move(residual)});
    };
    auto ea = [&](std::size_t i) { return basis_vector(d, i); };
    auto em = [&](std::size_t i) { return basis_vector(m, i); };
    auto mul = [&](const Vector& x, const Vector& y) { return at.mult.apply(x, y); };
    auto br = [&](const Vector& x, const Vector& y) { return at.bracket.apply(x, y); };
    auto L = [&](const Vector& a, const Vector& u) { return mt.left.apply(a, u); };
    auto R = [&](const Vector& u, const Vector& a) { return mt.right.apply(a, u); };
    auto lie = [&](const Vector& a, const Vector& u) { return mt.lie.apply(a, u); };

    for (Index u = 0; u < m; ++u) {
        record("unit", {u}, subtract(L(at.unit, em(u)), em(u)));
        record("unit", {u}, subtract(R(em(u), at.unit), em(u)));
    }
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (Index u = 0; u < m; ++u) {
                auto A = ea(a), B = ea(b), U = em(u);
                record("left-associativity", {a, b, u}, subtract(L(mul(A, B), U), L(A, L(B, U))));
                record("right-associativity", {a, b, u}, subtract(R(U, mul(A, B)), R(R(U, A), B)));
                record("bimodule", {a, b, u}, subtract(R(L(A, U), B), L(A, R(U, B))));

                Vector liemod = lie(br(A, B), U);
                axpy(liemod, Rational(-1), lie(A, lie(B, U)));
                axpy(liemod, Rational(1), lie(B, lie(A, U)));
                record("lie-module", {a, b, u}, std::move(liemod));

                Vector ql = lie(A, L(B, U));
                axpy(ql, Rational(-1), L(br(A, B), U));
                axpy(ql, Rational(-1), L(B, lie(A, U)));
                record("{a,bm}_*={a,b}m+b{a,m}_*", {a, b, u}, std::move(ql));

                Vector qr = lie(A, R(U, B));
                axpy(qr, Rational(-1), R(U, br(A, B)));
                axpy(qr, Rational(-1), R(lie(A, U), B));
                record("{a,mb}_*=m{a,b}+{a,m}_*b", {a, b, u}, std::move(qr));

                if (mod.flavor == ModuleFlavor::poisson) {
                    Vector p = lie(mul(A, B), U);
                    axpy(p, Rational(-1), L(A, lie(B, U)));
                    axpy(p, Rational(-1), R(lie(A, U), B));
                    record("{ab,m}_*=a{b,m}_*+{a,m}_*b", {a, b, u}, std::move(p));
                }
            }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

AlgebraSpec checked_associative(std::string name, std::vector<std::string> basis_names, Vector unit,
                                StructureConstants mult)
{
    AlgebraSpec spec;
    spec.name = std::move(name);
    spec.dim = basis_names.size();
    spec.basis_names = std::move(basis_names);
    spec.unit = std::move(unit);
    spec.mult = std::move(mult);
    auto report = validate_algebra(spec);
    if (report.violates("associativity")) throw DomainError("product of '" + spec.name + "' is not associative");
    if (report.violates("unit")) throw DomainError("unit of '" + spec.name + "' is not a two-sided identity");
    return spec;
}

}  // namespace

AlgebraSpec standard_poisson(std::string name, std::vector<std::string> basis_names, Vector unit,
                             StructureConstants mult)
{
    AlgebraSpec spec = checked_associative(std::move(name), std::move(basis_names), std::move(unit), std::move(mult));
    BilinearTable t(spec.dim, spec.dim, spec.dim, spec.mult);
    for (Index i = 0; i < spec.dim; ++i)
        for (Index j = 0; j < spec.dim; ++j) {
            std::map<Index, Rational> acc;
            for (const auto& [k, v] : t(i, j)) acc[k] += v;
            for (const auto& [k, v] : t(j, i)) acc[k] -= v;
            for (const auto& [k, v] : acc)
                if (sgn(v) != 0) spec.bracket.push_back({i, j, k, v});
        }
    return spec;
}

AlgebraSpec trivial_bracket(std::string name, std::vector<std::string> basis_names, Vector unit,
                            StructureConstants mult)
{
    return checked_associative(std::move(name), std::move(basis_names), std::move(unit), std::move(mult));
}

StructureConstants matrix_structure_constants(const std::vector<std::vector<Vector>>& matrices)
{
    const std::size_t d = matrices.size();
    if (d == 0) throw StructureError("empty matrix basis");
    const std::size_t n = matrices[0].size();
    auto flatten = [n](const std::vector<Vector>& mat) {
        Vector v;
        v.reserve(n * n);
        for (const auto& row : mat) v.insert(v.end(), row.begin(), row.end());
        return v;
    };
    // Columns are the flattened basis matrices.
    std::vector<Vector> cols;
    for (const auto& mat : matrices) cols.push_back(flatten(mat));
    std::vector<Vector> rows(n * n, zero_vector(d));
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < n * n; ++r) rows[r][c] = cols[c][r];
    SparseMatrix basis = SparseMatrix::from_dense(rows, d);
    if (rank(basis) != d) throw DomainError("matrix basis is linearly dependent");

    StructureConstants out;
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            std::vector<Vector> prod(n, zero_vector(n));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t k = 0; k < n; ++k) prod[r][c] += matrices[i][r][k] * matrices[j][k][c];
            auto x = solve(basis, flatten(prod));
            if (!x) throw DomainError("matrix span is not closed under multiplication");
            for (Index k = 0; k < d; ++k)
                if (sgn((*x)[k]) != 0) out.push_back({i, j, k, (*x)[k]});
        }
    return out;
}

ModuleSpec regular_module(const AlgebraSpec& spec)
{
    check_structure(spec);
    ModuleSpec mod;
    mod.name = spec.name;
    mod.dim = spec.dim;
    mod.basis_names = spec.basis_names;
    mod.left = spec.mult;
    // right action u.a has constants indexed (a, u): swap the product's factors
    for (const auto& c : spec.mult) mod.right.push_back({c.j, c.i, c.k, c.value});
    mod.lie = spec.bracket;
    mod.flavor = ModuleFlavor::poisson;
    return mod;
}

bool is_commutative(const AlgebraSpec& spec)
{
    BilinearTable t(spec.dim, spec.dim, spec.dim, spec.mult);
    for (Index i = 0; i < spec.dim; ++i)
        for (Index j = i + 1; j < spec.dim; ++j)
            if (t(i, j) != t(j, i)) return false;
    return true;
}

bool has_zero_bracket(const AlgebraSpec& spec)
{
    return BilinearTable(spec.dim, spec.dim, spec.dim, spec.bracket).is_zero();
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

using Matrix = std::vector<Vector>;

Matrix mat2(int a, int b, int c, int d)
{
    return {{Rational(a), Rational(b)}, {Rational(c), Rational(d)}};
}

Vector unit_vector(std::size_t d, std::size_t i)
{
    return basis_vector(d, i);
}

AlgebraSpec make_m2()
{
    std::vector<Matrix> basis{mat2(1, 0, 0, 1), mat2(0, 1, 0, 0), mat2(0, 0, 1, 0), mat2(1, 0, 0, -1)};
    return standard_poisson("m2", {"1", "e", "f", "h"}, unit_vector(4, 0), matrix_structure_constants(basis));
}

AlgebraSpec make_ut2()
{
    std::vector<Matrix> basis{mat2(1, 0, 0, 0), mat2(0, 1, 0, 0), mat2(0, 0, 0, 1)};
    Vector unit{Rational(1), Rational(0), Rational(1)};
    return standard_poisson("ut2", {"e1", "a", "e2"}, unit, matrix_structure_constants(basis));
}

AlgebraSpec make_trivial2()
{
    StructureConstants mult{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}};
    return trivial_bracket("trivial2", {"1", "x"}, unit_vector(2, 0), mult);
}

AlgebraSpec make_dual3()
{
    StructureConstants mult;
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
            if (i + j < 3) mult.push_back({i, j, i + j, 1});
    return trivial_bracket("dual3", {"1", "x", "x2"}, unit_vector(3, 0), mult);
}

AlgebraSpec make_kk()
{
    StructureConstants mult{{0, 0, 0, 1}, {1, 1, 1, 1}};
    return trivial_bracket("kk", {"e1", "e2"}, Vector{Rational(1), Rational(1)}, mult);
}

AlgebraSpec make_k()
{
    return trivial_bracket("k", {"1"}, unit_vector(1, 0), {{0, 0, 0, 1}});
}

AlgebraSpec make_sl2std()
{
    // K.1 + sl2 with sl2 . sl2 = 0 and the sl2 bracket [e,f]=h, [h,e]=2e, [h,f]=-2f.
    StructureConstants mult{{0, 0, 0, 1}};
    for (Index i = 1; i < 4; ++i) {
        mult.push_back({0, i, i, 1});
        mult.push_back({i, 0, i, 1});
    }
    AlgebraSpec spec = trivial_bracket("sl2std", {"1", "e", "f", "h"}, unit_vector(4, 0), mult);
    spec.bracket = {{1, 2, 3, 1},  {2, 1, 3, -1}, {3, 1, 1, 2},
                    {1, 3, 1, -2}, {3, 2, 2, -2}, {2, 3, 2, 2}};
    return spec;
}

AlgebraSpec make_kxy()
{
    // K[x,y]/(x,y)^2 with {x,y} = x.
    StructureConstants mult{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1}};
    AlgebraSpec spec = trivial_bracket("kxy", {"1", "x", "y"}, unit_vector(3, 0), mult);
    spec.bracket = {{1, 2, 1, 1}, {2, 1, 1, -1}};
    return spec;
}

struct Entry {
    BuiltinInfo info;
    std::function<AlgebraSpec()> make;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries{
        {{"m2", 4, "standard Poisson algebra of 2x2 matrices, basis (1,e,f,h)"}, make_m2},
        {{"ut2", 3, "standard Poisson algebra of upper triangular 2x2 matrices (path algebra of A2), basis (e1,a,e2)"},
         make_ut2},
        {{"trivial2", 2, "dual numbers K[x]/(x^2) with zero bracket"}, make_trivial2},
        {{"dual3", 3, "K[x]/(x^3) with zero bracket"}, make_dual3},
        {{"kk", 2, "semisimple commutative K x K with zero bracket"}, make_kk},
        {{"k", 1, "the ground field with zero bracket"}, make_k},
        {{"sl2std", 4, "K.1 + sl2 with square-zero product on sl2 and the standard sl2 bracket (commutative)"},
         make_sl2std},
        {{"kxy", 3, "K[x,y]/(x,y)^2 with {x,y} = x (commutative)"}, make_kxy},
    };
    return entries;
}

}  // namespace

AlgebraSpec builtin(const std::string& name)
{
    for (const auto& e : registry())
        if (e.info.name == name) return e.make();
    throw DomainError("unknown builtin algebra '" + name + "'");
}

std::vector<BuiltinInfo> builtin_registry()
{
    std::vector<BuiltinInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
}

}  // namespace pcoh
