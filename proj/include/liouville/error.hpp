#ifndef LIOUVILLE_ERROR_HPP
#define LIOUVILLE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace liouville {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's documented precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Parameters outside a family's admissible domain (lattice dimension, tree depth, ...).
class SpecError : public Error {
public:
    using Error::Error;
};

/// A value outside the mathematical domain of an operation (negative u, non-positive v, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The exponent is at or below the critical value, where no positive
/// supersolution can exist. Reported as a negative verdict, not a failure.
class SubcriticalError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A profile's parameters disagree with the graph it is bound to.
class BindingError : public SpecError {
public:
    using SpecError::SpecError;
};

/// Thrown by a vertex function that has no value at the requested vertex.
class EvaluationError : public Error {
public:
    using Error::Error;
};

class StencilIncompleteError : public Error {
public:
    explicit StencilIncompleteError(std::string vertex)
        : Error("stencil incomplete: function is not evaluable at vertex " + vertex),
          vertex_(std::move(vertex)) {}

    const std::string& vertex() const noexcept { return vertex_; }

private:
    std::string vertex_;
};

class BudgetExceededError : public Error {
public:
    BudgetExceededError(std::size_t explored, std::size_t budget)
        : Error("vertex budget exceeded: explored " + std::to_string(explored) +
                " vertices with budget " + std::to_string(budget)),
          explored_(explored),
          budget_(budget) {}

    std::size_t explored() const noexcept { return explored_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t explored_;
    std::size_t budget_;
};

enum class LoadDiagnostic {
    schema,
    duplicate_vertex,
    unknown_vertex,
    self_loop,
    asymmetric_edge,
    non_positive_weight,
    non_positive_measure,
    metric,
};

const char* to_string(LoadDiagnostic kind) noexcept;

class LoadError : public Error {
public:
    LoadError(LoadDiagnostic kind, const std::string& detail)
        : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    LoadDiagnostic kind() const noexcept { return kind_; }

private:
    LoadDiagnostic kind_;
};

class TuningError : public Error {
public:
    TuningError(const std::string& what, std::string worst_vertex, double worst_residual)
        : Error(what), worst_vertex_(std::move(worst_vertex)), worst_residual_(worst_residual) {}

    const std::string& worst_vertex() const noexcept { return worst_vertex_; }
    double worst_residual() const noexcept { return worst_residual_; }

private:
    std::string worst_vertex_;
    double worst_residual_;
};

class BracketError : public Error {
public:
    using Error::Error;
};

}  // namespace liouville

#endif
