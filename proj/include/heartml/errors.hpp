#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace heartml {

/// Root of every exception the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text (ARFF, CSV, schema, model, synthetic spec) could not be read.
class ParseError : public Error {
public:
    enum class Kind {
        UnknownCategory,
        ArityMismatch,
        NonNumericCell,
        MalformedHeader,
        MissingColumn,
        InvalidSchema,
        InvalidDocument,
    };

    ParseError(Kind kind, std::string message, std::optional<std::size_t> line = std::nullopt,
               std::optional<std::string> attribute = std::nullopt);

    Kind kind() const noexcept { return kind_; }
    /// 1-based line (or data-row) number the problem was found on, if known.
    std::optional<std::size_t> line() const noexcept { return line_; }
    const std::optional<std::string>& attribute() const noexcept { return attribute_; }

private:
    Kind kind_;
    std::optional<std::size_t> line_;
    std::optional<std::string> attribute_;
};

/// Invalid user-supplied configuration or preconditions (too few instances, bad flags).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A model could not be trained or applied.
class TrainingError : public Error {
public:
    enum class Kind { NoInstances, EmptyClass, MissingTarget, SchemaMismatch, EmptySubset };

    TrainingError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// A metric was requested whose denominator is zero, or a count was out of range.
class MetricError : public Error {
public:
    enum class Kind { EmptyMatrix, NoPositives, NoNegatives, InvalidCount };

    MetricError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* to_string(ParseError::Kind kind) noexcept;

}  // namespace heartml
