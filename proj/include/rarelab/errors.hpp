#pragma once

#include <stdexcept>
#include <string>

namespace rarelab {

struct GaussAtZero : std::domain_error {
    GaussAtZero() : std::domain_error("Gauss map undefined at x = 0") {}
};

struct NoClosedFormMeasure : std::domain_error {
    explicit NoClosedFormMeasure(const std::string& what) : std::domain_error(what) {}
};

struct EmptyCylinder : std::domain_error {
    explicit EmptyCylinder(const std::string& what) : std::domain_error(what) {}
};

struct DegenerateTarget : std::domain_error {
    explicit DegenerateTarget(const std::string& what) : std::domain_error(what) {}
};

struct EmptyApproximation : std::runtime_error {
    explicit EmptyApproximation(const std::string& what) : std::runtime_error(what) {}
};

struct ReturnOverflow : std::runtime_error {
    explicit ReturnOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct TooManyOverflows : std::runtime_error {
    explicit TooManyOverflows(const std::string& what) : std::runtime_error(what) {}
};

struct NoFixedPoint : std::runtime_error {
    explicit NoFixedPoint(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::invalid_argument {
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed config text; position is 1-based.
struct ParseError : ConfigError {
    ParseError(const std::string& what, int line, int column)
        : ConfigError(what + " (line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ")"),
          line(line), column(column) {}
    int line;
    int column;
};

// Structurally valid config with an invalid or unknown field.
struct ValidationError : ConfigError {
    ValidationError(const std::string& field, const std::string& what)
        : ConfigError("field '" + field + "': " + what), field(field) {}
    std::string field;
};

} // namespace rarelab
