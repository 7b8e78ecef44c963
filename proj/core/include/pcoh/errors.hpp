#pragma once

#include <stdexcept>
#include <string>

namespace pcoh {

/// Malformed input: out-of-range indices, zero dimensions, non-reduced
/// rationals, shape mismatches. Distinct from an axiom violation, which is
/// reported through a ValidationReport instead of thrown.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that the requested operation does not accept
/// (non-associative product, wrong module flavor, unknown builtin, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical identity the library relies on failed to hold,
/// e.g. a composed coboundary that is not zero.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace pcoh
