#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heartml {

enum class AttributeKind : std::uint8_t { Nominal, Numeric };
enum class AttributeRole : std::uint8_t { Feature, Target };

/// One column of a table: a name, a kind and, for nominal columns, the ordered label list.
struct AttributeSpec {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    AttributeRole role = AttributeRole::Feature;
    std::vector<std::string> categories;  // nominal only

    static AttributeSpec numeric(std::string name);
    static AttributeSpec nominal(std::string name, std::vector<std::string> categories,
                                 AttributeRole role = AttributeRole::Feature);

    bool is_nominal() const noexcept { return kind == AttributeKind::Nominal; }
    bool is_numeric() const noexcept { return kind == AttributeKind::Numeric; }
    bool is_target() const noexcept { return role == AttributeRole::Target; }
    std::size_t category_count() const noexcept { return categories.size(); }
    std::optional<std::uint32_t> category_index(std::string_view label) const;

    bool operator==(const AttributeSpec&) const = default;
};

/// Ordered attribute list with exactly one nominal target.
///
/// Construction validates the invariants (unique names, non-empty duplicate-free
/// category lists, a single nominal target) and throws ParseError(InvalidSchema)
/// otherwise.
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<AttributeSpec> attributes);

    const std::vector<AttributeSpec>& attributes() const noexcept { return attributes_; }
    const AttributeSpec& operator[](std::size_t i) const { return attributes_.at(i); }
    std::size_t size() const noexcept { return attributes_.size(); }
    std::size_t target_index() const noexcept { return target_; }
    const AttributeSpec& target() const { return attributes_.at(target_); }
    std::size_t class_count() const { return target().category_count(); }

    /// Indices of every non-target attribute, ascending.
    std::vector<std::size_t> feature_indices() const;
    std::size_t feature_count() const noexcept { return attributes_.empty() ? 0 : attributes_.size() - 1; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const Schema&) const = default;

private:
    std::vector<AttributeSpec> attributes_;
    std::size_t target_ = 0;
};

/// The 14-column heart-disease table: 8 nominal columns (target included) and 6 numeric ones.
Schema heart_schema();

/// One cell: a category index, a finite real, or missing.
class Value {
public:
    enum class Kind : std::uint8_t { Missing, Nominal, Numeric };

    constexpr Value() noexcept = default;
    static constexpr Value missing() noexcept { return Value{}; }
    static constexpr Value nominal(std::uint32_t index) noexcept { return Value{Kind::Nominal, 0.0, index}; }
    static Value numeric(double v);  // throws on NaN/inf

    constexpr Kind kind() const noexcept { return kind_; }
    constexpr bool is_missing() const noexcept { return kind_ == Kind::Missing; }
    constexpr bool is_nominal() const noexcept { return kind_ == Kind::Nominal; }
    constexpr bool is_numeric() const noexcept { return kind_ == Kind::Numeric; }
    constexpr std::uint32_t index() const noexcept { return index_; }
    constexpr double number() const noexcept { return number_; }

    constexpr bool operator==(const Value&) const noexcept = default;

private:
    constexpr Value(Kind k, double n, std::uint32_t i) noexcept : kind_(k), number_(n), index_(i) {}

    Kind kind_ = Kind::Missing;
    double number_ = 0.0;
    std::uint32_t index_ = 0;
};

using Row = std::span<const Value>;

/// Immutable table of rows conforming to a Schema. Rows are stored contiguously.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(Schema schema) : schema_(std::move(schema)) {}

    const Schema& schema() const noexcept { return schema_; }
    std::size_t size() const noexcept { return schema_.size() == 0 ? 0 : cells_.size() / schema_.size(); }
    bool empty() const noexcept { return cells_.empty(); }
    std::size_t width() const noexcept { return schema_.size(); }

    Row row(std::size_t i) const { return {cells_.data() + i * width(), width()}; }
    const Value& at(std::size_t row, std::size_t attr) const { return cells_[row * width() + attr]; }

    /// Class index of row i; the target must not be missing.
    std::uint32_t label(std::size_t i) const { return at(i, schema_.target_index()).index(); }

    /// Appends a row after checking arity and per-attribute type compatibility.
    void add_row(std::span<const Value> values);

    /// Rows selected by index, in the given order (duplicates allowed).
    Dataset subset(std::span<const std::size_t> rows) const;

    /// Per-class instance counts; missing targets are not counted.
    std::vector<std::size_t> class_counts() const;

    bool operator==(const Dataset&) const = default;

private:
    Schema schema_;
    std::vector<Value> cells_;
};

/// True when v is an admissible cell for spec (missing always is).
bool compatible(const AttributeSpec& spec, const Value& v) noexcept;

}  // namespace heartml
