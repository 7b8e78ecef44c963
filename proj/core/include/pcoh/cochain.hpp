#pragma once

#include <pcoh/algebra.hpp>
#include <pcoh/linalg.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pcoh {

/// Which complex a cochain space belongs to.
///   poisson:    components (i,j) with i+j = n, i != 1
///   quasi:      components (i,j) with i+j = n
///   omega:      components (i,j) with i+j = n+2, i >= 2
///   hochschild: the single component (n,0)
///   ce:         the single component (0,n)
enum class Theory { poisson, quasi, omega, hochschild, ce };

std::string to_string(Theory theory);
/// Accepts hp|poisson, quasi, omega, hh|hochschild, ce|hl. Throws DomainError.
Theory parse_theory(const std::string& text);

std::size_t binomial(std::size_t n, std::size_t k);

struct WedgeSign {
    int sign = 0;  // +1 / -1 permutation parity, 0 for a repeated index
    std::vector<Index> sorted;
};

WedgeSign wedge_normalize(std::span<const Index> tuple);

/// Rank/unrank of i-tuples in [0,d)^i (base-d, first factor most
/// significant) and of strictly increasing j-tuples (combinatorial number
/// system, colex order).
class IndexCodec {
public:
    explicit IndexCodec(std::size_t d) : d_(d) {}

    std::size_t tensor_rank(std::span<const Index> tuple) const;
    std::vector<Index> tensor_unrank(std::size_t rank, std::size_t length) const;
    std::size_t wedge_rank(std::span<const Index> sorted) const;
    std::vector<Index> wedge_unrank(std::size_t rank, std::size_t length) const;
    std::size_t dim() const { return d_; }

private:
    std::size_t d_;
};

/// One graded piece Hom(A^i (x) Lambda^j, M) inside a cochain space.
/// Coordinate of f(tensor, wedge) at output o:
///   offset + (tensor_rank * wedge_count + wedge_rank) * m + o
struct Component {
    int i = 0;
    int j = 0;
    std::size_t tensor_count = 0;  // d^i
    std::size_t wedge_count = 0;   // C(d, j)
    std::size_t dim = 0;           // m * d^i * C(d, j)
    std::size_t offset = 0;

    std::size_t index(std::size_t tensor_rank, std::size_t wedge_rank, std::size_t m, std::size_t out) const
    {
        return offset + (tensor_rank * wedge_count + wedge_rank) * m + out;
    }
};

struct CochainSpace {
    Theory theory = Theory::poisson;
    int degree = 0;
    std::size_t d = 0;
    std::size_t m = 0;
    std::vector<Component> components;  // ascending i
    std::size_t total = 0;

    const Component* find(int i, int j) const;
};

CochainSpace space_layout(Theory theory, int degree, std::size_t d, std::size_t m);

struct Cochain {
    CochainSpace space;
    Vector coords;
};

/// f evaluated on a basis tuple of a component; must return a vector of
/// length m. The wedge tuple is strictly increasing.
using CochainFunction =
    std::function<Vector(const Component&, std::span<const Index> tensor, std::span<const Index> wedge)>;

Cochain encode(const CochainSpace& space, const CochainFunction& f);

/// Evaluates a cochain on basis tuples. Wedge arguments may come in any
/// order; the antisymmetry sign is applied (and repeated entries give 0).
class CochainEvaluator {
public:
    explicit CochainEvaluator(const Cochain& cochain);

    Vector operator()(int i, int j, std::span<const Index> tensor, std::span<const Index> wedge) const;

private:
    const Cochain& cochain_;
    IndexCodec codec_;
};

/// Bilinear map A x A -> V stored as a dense table of output vectors.
struct BilinearMap {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<Vector> values;  // values[a * in_dim + b]

    static BilinearMap zero(std::size_t in_dim, std::size_t out_dim);
    static BilinearMap from_constants(std::size_t in_dim, std::size_t out_dim, const StructureConstants& constants);
    StructureConstants to_constants() const;

    const Vector& operator()(Index a, Index b) const { return values[a * in_dim + b]; }
    Vector& at(Index a, Index b) { return values[a * in_dim + b]; }
    Vector apply(const Vector& x, const Vector& y) const;
    bool is_skew() const;
    bool is_zero() const;
    BilinearMap scaled(const Rational& c) const;

    friend bool operator==(const BilinearMap&, const BilinearMap&) = default;
};

/// Degree-2 Poisson cochain with the product part in (2,0) and the skew
/// bracket part in (0,2). Throws DomainError if bracket_part is not skew.
Cochain encode_degree2(std::size_t d, std::size_t m, const BilinearMap& product_part, const BilinearMap& bracket_part);
/// Inverse of encode_degree2.
std::pair<BilinearMap, BilinearMap> decode_degree2(const Cochain& cochain);

/// Tensor and wedge tuples of a component in coordinate order.
std::vector<std::vector<Index>> all_tensor_tuples(std::size_t d, std::size_t length);
std::vector<std::vector<Index>> all_wedge_tuples(std::size_t d, std::size_t length);

}  // namespace pcoh
