#include <pcoh/cochain.hpp>
#include <pcoh/errors.hpp>

#include <algorithm>

namespace pcoh {

std::string to_string(Theory theory)
{
    switch (theory) {
    case Theory::poisson: return "hp";
    case Theory::quasi: return "quasi";
    case Theory::omega: return "omega";
    case Theory::hochschild: return "hh";
    case Theory::ce: return "ce";
    }
    return "?";
}

Theory parse_theory(const std::string& text)
{
    if (text == "hp" || text == "poisson") return Theory::poisson;
    if (text == "quasi") return Theory::quasi;
    if (text == "omega") return Theory::omega;
    if (text == "hh" || text == "hochschild") return Theory::hochschild;
    if (text == "ce" || text == "hl") return Theory::ce;
    throw DomainError("unknown theory '" + text + "'");
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

WedgeSign wedge_normalize(std::span<const Index> tuple)
{
    WedgeSign out;
    out.sorted.assign(tuple.begin(), tuple.end());
    int sign = 1;
    // insertion sort counting transpositions
    for (std::size_t a = 1; a < out.sorted.size(); ++a)
        for (std::size_t b = a; b > 0 && out.sorted[b - 1] > out.sorted[b]; --b) {
            std::swap(out.sorted[b - 1], out.sorted[b]);
            sign = -sign;
        }
    for (std::size_t a = 1; a < out.sorted.size(); ++a)
        if (out.sorted[a - 1] == out.sorted[a]) {
            out.sign = 0;
            return out;
        }
    out.sign = sign;
    return out;
}

// ---------------------------------------------------------------------------

std::size_t IndexCodec::tensor_rank(std::span<const Index> tuple) const
{
    std::size_t r = 0;
    for (Index x : tuple) r = r * d_ + x;
    return r;
}

std::vector<Index> IndexCodec::tensor_unrank(std::size_t rank, std::size_t length) const
{
    std::vector<Index> out(length);
    for (std::size_t k = length; k-- > 0;) {
        out[k] = static_cast<Index>(rank % d_);
        rank /= d_;
    }
    return out;
}

std::size_t IndexCodec::wedge_rank(std::span<const Index> sorted) const
{
    std::size_t r = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) r += binomial(sorted[k], k + 1);
    return r;
}

std::vector<Index> IndexCodec::wedge_unrank(std::size_t rank, std::size_t length) const
{
    std::vector<Index> out(length);
    for (std::size_t k = length; k-- > 0;) {
        Index c = static_cast<Index>(k);
        while (binomial(c + 1, k + 1) <= rank) ++c;
        out[k] = c;
        rank -= binomial(c, k + 1);
    }
    return out;
}

std::vector<std::vector<Index>> all_tensor_tuples(std::size_t d, std::size_t length)
{
    IndexCodec codec(d);
    std::size_t count = 1;
    for (std::size_t k = 0; k < length; ++k) count *= d;
    std::vector<std::vector<Index>> out;
    out.reserve(count);
    for (std::size_t r = 0; r < count; ++r) out.push_back(codec.tensor_unrank(r, length));
    return out;
}

std::vector<std::vector<Index>> all_wedge_tuples(std::size_t d, std::size_t length)
{
    IndexCodec codec(d);
    std::size_t count = binomial(d, length);
    std::vector<std::vector<Index>> out;
    out.reserve(count);
    for (std::size_t r = 0; r < count; ++r) out.push_back(codec.wedge_unrank(r, length));
    return out;
}

// ---------------------------------------------------------------------------

const Component* CochainSpace::find(int i, int j) const
{
    for (const auto& c : components)
        if (c.i == i && c.j == j) return &c;
    return nullptr;
}

CochainSpace space_layout(Theory theory, int degree, std::size_t d, std::size_t m)
{
    if (degree < 0) throw DomainError("negative cochain degree");
    if (d == 0 || m == 0) throw StructureError("cochain space over a zero-dimensional algebra or module");
    CochainSpace space;
    space.theory = theory;
    space.degree = degree;
    space.d = d;
    space.m = m;

    std::vector<std::pair<int, int>> pieces;
    switch (theory) {
    case Theory::poisson:
        for (int i = 0; i <= degree; ++i)
            if (i != 1) pieces.push_back({i, degree - i});
        break;
    case Theory::quasi:
        for (int i = 0; i <= degree; ++i) pieces.push_back({i, degree - i});
        break;
    case Theory::omega:
        for (int i = 2; i <= degree + 2; ++i) pieces.push_back({i, degree + 2 - i});
        break;
    case Theory::hochschild: pieces.push_back({degree, 0}); break;
    case Theory::ce: pieces.push_back({0, degree}); break;
    }

    std::size_t offset = 0;
    for (auto [i, j] : pieces) {
        Component c;
        c.i = i;
        c.j = j;
        c.tensor_count = 1;
        for (int k = 0; k < i; ++k) c.tensor_count *= d;
        c.wedge_count = binomial(d, static_cast<std::size_t>(j));
        c.dim = m * c.tensor_count * c.wedge_count;
        c.offset = offset;
        offset += c.dim;
        space.components.push_back(c);
    }
    space.total = offset;
    return space;
}

Cochain encode(const CochainSpace& space, const CochainFunction& f)
{
    Cochain out{space, zero_vector(space.total)};
    for (const auto& comp : space.components) {
        auto tensors = all_tensor_tuples(space.d, comp.i);
        auto wedges = all_wedge_tuples(space.d, comp.j);
        for (std::size_t t = 0; t < tensors.size(); ++t)
            for (std::size_t w = 0; w < wedges.size(); ++w) {
                Vector value = f(comp, tensors[t], wedges[w]);
                if (value.size() != space.m) throw StructureError("cochain value has wrong length");
                for (std::size_t o = 0; o < space.m; ++o) out.coords[comp.index(t, w, space.m, o)] = value[o];
            }
    }
    return out;
}

CochainEvaluator::CochainEvaluator(const Cochain& cochain) : cochain_(cochain), codec_(cochain.space.d)
{
    if (cochain.coords.size() != cochain.space.total) throw StructureError("cochain length does not match its space");
}

Vector CochainEvaluator::operator()(int i, int j, std::span<const Index> tensor, std::span<const Index> wedge) const
{
    const auto& space = cochain_.space;
    const Component* comp = space.find(i, j);
    if (!comp) throw StructureError("cochain space has no component (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (tensor.size() != static_cast<std::size_t>(i) || wedge.size() != static_cast<std::size_t>(j))
        throw StructureError("argument shape does not match component");
    Vector out = zero_vector(space.m);
    WedgeSign ws = wedge_normalize(wedge);
    if (ws.sign == 0) return out;
    std::size_t t = codec_.tensor_rank(tensor);
    std::size_t w = codec_.wedge_rank(ws.sorted);
    for (std::size_t o = 0; o < space.m; ++o) {
        out[o] = cochain_.coords[comp->index(t, w, space.m, o)];
        if (ws.sign < 0) out[o] = -out[o];
    }
    return out;
}

// ---------------------------------------------------------------------------

BilinearMap BilinearMap::zero(std::size_t in_dim, std::size_t out_dim)
{
    return BilinearMap{in_dim, out_dim, std::vector<Vector>(in_dim * in_dim, zero_vector(out_dim))};
}

BilinearMap BilinearMap::from_constants(std::size_t in_dim, std::size_t out_dim, const StructureConstants& constants)
{
    BilinearMap out = zero(in_dim, out_dim);
    for (const auto& c : constants) {
        if (c.i >= in_dim || c.j >= in_dim || c.k >= out_dim) throw StructureError("bilinear constant out of range");
        out.at(c.i, c.j)[c.k] += c.value;
    }
    return out;
}

StructureConstants BilinearMap::to_constants() const
{
    StructureConstants out;
    for (Index a = 0; a < in_dim; ++a)
        for (Index b = 0; b < in_dim; ++b)
            for (Index k = 0; k < out_dim; ++k)
                if (sgn((*this)(a, b)[k]) != 0) out.push_back({a, b, k, (*this)(a, b)[k]});
    return out;
}

Vector BilinearMap::apply(const Vector& x, const Vector& y) const
{
    Vector out = zero_vector(out_dim);
    for (std::size_t a = 0; a < in_dim; ++a) {
        if (sgn(x[a]) == 0) continue;
        for (std::size_t b = 0; b < in_dim; ++b)
            if (sgn(y[b]) != 0) axpy(out, x[a] * y[b], values[a * in_dim + b]);
    }
    return out;
}

bool BilinearMap::is_skew() const
{
    for (Index a = 0; a < in_dim; ++a)
        for (Index b = a; b < in_dim; ++b) {
            Vector s = (*this)(a, b);
            axpy(s, Rational(1), (*this)(b, a));
            if (!pcoh::is_zero(s)) return false;
        }
    return true;
}

bool BilinearMap::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const Vector& v) { return pcoh::is_zero(v); });
}

BilinearMap BilinearMap::scaled(const Rational& c) const
{
    BilinearMap out = *this;
    for (auto& v : out.values)
        for (auto& x : v) x *= c;
    return out;
}

Cochain encode_degree2(std::size_t d, std::size_t m, const BilinearMap& product_part, const BilinearMap& bracket_part)
{
    if (product_part.in_dim != d || bracket_part.in_dim != d || product_part.out_dim != m || bracket_part.out_dim != m)
        throw StructureError("bilinear map shape does not match degree-2 cochain space");
    if (!bracket_part.is_skew()) throw DomainError("bracket part of a degree-2 cochain must be skew-symmetric");
    return encode(space_layout(Theory::poisson, 2, d, m),
                  [&](const Component& c, std::span<const Index> t, std::span<const Index> w) {
                      return c.i == 2 ? product_part(t[0], t[1]) : bracket_part(w[0], w[1]);
                  });
}

std::pair<BilinearMap, BilinearMap> decode_degree2(const Cochain& cochain)
{
    const auto& s = cochain.space;
    if (s.theory != Theory::poisson || s.degree != 2) throw StructureError("not a degree-2 Poisson cochain");
    CochainEvaluator ev(cochain);
    BilinearMap prod = BilinearMap::zero(s.d, s.m);
    BilinearMap brk = BilinearMap::zero(s.d, s.m);
    for (Index a = 0; a < s.d; ++a)
        for (Index b = 0; b < s.d; ++b) {
            const Index t[2] = {a, b};
            prod.at(a, b) = ev(2, 0, t, {});
            brk.at(a, b) = ev(0, 2, {}, t);
        }
    return {prod, brk};
}

}  // namespace pcoh
