#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covercount {

// Matrix/permutation shapes do not line up.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A value fails a documented precondition (non-characteristic matrix,
// violated minor condition, malformed permutation, ...).
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// inverse_gf2 on a matrix with determinant 0.
struct SingularMatrixError : std::domain_error {
    using std::domain_error::domain_error;
};

// matrix_to_dag on a matrix outside M(n).
struct MembershipError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Enumeration request beyond the supported problem size.
struct CapExceededError : std::length_error {
    using std::length_error::length_error;
};

// An internal cross-check failed (exact division with a remainder,
// computed value disagreeing with a stored table). Must never fire.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// topo_order on a cyclic digraph; carries one witness cycle
// (node indices in order, last node has an edge back to the first).
class CycleError : public std::runtime_error {
public:
    CycleError(const std::string& what, std::vector<int> cycle)
        : std::runtime_error(what), cycle_(std::move(cycle)) {}

    const std::vector<int>& cycle() const noexcept { return cycle_; }

private:
    std::vector<int> cycle_;
};

}  // namespace covercount
