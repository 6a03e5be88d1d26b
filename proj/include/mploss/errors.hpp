#pragma once

#include <stdexcept>
#include <string>

namespace mploss {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A probed parameter value where the LP violates the nondegeneracy assumption.
struct DegenerateAtPoint : Error {
    explicit DegenerateAtPoint(const std::string& what) : Error(what) {}
};

struct InfeasibleAtPoint : Error {
    explicit InfeasibleAtPoint(const std::string& what) : Error(what) {}
};

/// The square active-constraint system could not be inverted; this signals a
/// mis-detected active set rather than a user error.
struct SingularActiveSystem : Error {
    explicit SingularActiveSystem(const std::string& what) : Error(what) {}
};

struct ExplorationStalled : Error {
    explicit ExplorationStalled(const std::string& what) : Error(what) {}
};

struct PointNotCovered : Error {
    explicit PointNotCovered(const std::string& what) : Error(what) {}
};

struct ParameterOutOfDomain : Error {
    explicit ParameterOutOfDomain(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct SpecMismatch : Error {
    explicit SpecMismatch(const std::string& what) : Error(what) {}
};

struct MalformedCsv : Error {
    explicit MalformedCsv(const std::string& what) : Error(what) {}
};

struct SchemaViolation : Error {
    explicit SchemaViolation(const std::string& what) : Error(what) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& what) : Error(what) {}
};

}  // namespace mploss
