#include "heartml/data.hpp"

#include <cmath>
#include <unordered_set>

#include "heartml/errors.hpp"

namespace heartml {

ParseError::ParseError(Kind kind, std::string message, std::optional<std::size_t> line,
                       std::optional<std::string> attribute)
    : Error(std::move(message)), kind_(kind), line_(line), attribute_(std::move(attribute)) {}

const char* to_string(ParseError::Kind kind) noexcept {
    switch (kind) {
        case ParseError::Kind::UnknownCategory: return "UnknownCategory";
        case ParseError::Kind::ArityMismatch: return "ArityMismatch";
        case ParseError::Kind::NonNumericCell: return "NonNumericCell";
        case ParseError::Kind::MalformedHeader: return "MalformedHeader";
        case ParseError::Kind::MissingColumn: return "MissingColumn";
        case ParseError::Kind::InvalidSchema: return "InvalidSchema";
        case ParseError::Kind::InvalidDocument: return "InvalidDocument";
    }
    return "Unknown";
}

AttributeSpec AttributeSpec::numeric(std::string name) {
    return AttributeSpec{std::move(name), AttributeKind::Numeric, AttributeRole::Feature, {}};
}

AttributeSpec AttributeSpec::nominal(std::string name, std::vector<std::string> categories, AttributeRole role) {
    return AttributeSpec{std::move(name), AttributeKind::Nominal, role, std::move(categories)};
}

std::optional<std::uint32_t> AttributeSpec::category_index(std::string_view label) const {
    for (std::size_t i = 0; i < categories.size(); ++i)
        if (categories[i] == label) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

Schema::Schema(std::vector<AttributeSpec> attributes) : attributes_(std::move(attributes)) {
    using K = ParseError::Kind;
    if (attributes_.empty()) throw ParseError(K::InvalidSchema, "schema has no attributes");

    std::unordered_set<std::string> names;
    std::optional<std::size_t> target;
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        const auto& a = attributes_[i];
        if (a.name.empty()) throw ParseError(K::InvalidSchema, "attribute " + std::to_string(i) + " has no name");
        if (!names.insert(a.name).second)
            throw ParseError(K::InvalidSchema, "duplicate attribute name '" + a.name + "'", std::nullopt, a.name);
        if (a.is_nominal()) {
            if (a.categories.empty())
                throw ParseError(K::InvalidSchema, "nominal attribute '" + a.name + "' has no categories",
                                 std::nullopt, a.name);
            std::unordered_set<std::string> labels(a.categories.begin(), a.categories.end());
            if (labels.size() != a.categories.size())
                throw ParseError(K::InvalidSchema, "nominal attribute '" + a.name + "' repeats a category",
                                 std::nullopt, a.name);
        } else if (!a.categories.empty()) {
            throw ParseError(K::InvalidSchema, "numeric attribute '" + a.name + "' lists categories", std::nullopt,
                             a.name);
        }
        if (a.is_target()) {
            if (target) throw ParseError(K::InvalidSchema, "more than one target attribute");
            if (!a.is_nominal())
                throw ParseError(K::InvalidSchema, "target attribute '" + a.name + "' must be nominal", std::nullopt,
                                 a.name);
            target = i;
        }
    }
    if (!target) throw ParseError(K::InvalidSchema, "schema has no target attribute");
    target_ = *target;
}

std::vector<std::size_t> Schema::feature_indices() const {
    std::vector<std::size_t> out;
    out.reserve(feature_count());
    for (std::size_t i = 0; i < attributes_.size(); ++i)
        if (i != target_) out.push_back(i);
    return out;
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i)
        if (attributes_[i].name == name) return i;
    return std::nullopt;
}

Schema heart_schema() {
    using A = AttributeSpec;
    // Column order follows the common export of this table (Age first).
    return Schema({
        A::numeric("Age"),
        A::nominal("Sex", {"0", "1"}),
        A::nominal("Cp", {"1", "2", "3", "4"}),
        A::numeric("Trestbps"),
        A::numeric("Chol"),
        A::nominal("Fbs", {"0", "1"}),
        A::nominal("Restecg", {"0", "1", "2"}),
        A::numeric("Thalach"),
        A::nominal("Exang", {"0", "1"}),
        A::numeric("OldPeak"),
        A::nominal("Slope", {"1", "2", "3"}),
        A::numeric("Ca"),
        A::nominal("Thal", {"3", "6", "7"}),
        A::nominal("Target", {"0", "1"}, AttributeRole::Target),
    });
}

Value Value::numeric(double v) {
    if (!std::isfinite(v)) throw Error("numeric value must be finite");
    return Value{Kind::Numeric, v, 0};
}

bool compatible(const AttributeSpec& spec, const Value& v) noexcept {
    switch (v.kind()) {
        case Value::Kind::Missing: return true;
        case Value::Kind::Nominal: return spec.is_nominal() && v.index() < spec.category_count();
        case Value::Kind::Numeric: return spec.is_numeric() && std::isfinite(v.number());
    }
    return false;
}

void Dataset::add_row(std::span<const Value> values) {
    if (values.size() != width())
        throw ParseError(ParseError::Kind::ArityMismatch, "row has " + std::to_string(values.size()) +
                                                              " values, schema has " + std::to_string(width()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!compatible(schema_[i], values[i]))
            throw ParseError(schema_[i].is_numeric() ? ParseError::Kind::NonNumericCell
                                                     : ParseError::Kind::UnknownCategory,
                             "value incompatible with attribute '" + schema_[i].name + "'", std::nullopt,
                             schema_[i].name);
    }
    cells_.insert(cells_.end(), values.begin(), values.end());
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    Dataset out(schema_);
    out.cells_.reserve(rows.size() * width());
    for (auto r : rows) {
        auto src = row(r);
        out.cells_.insert(out.cells_.end(), src.begin(), src.end());
    }
    return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(schema_.size() ? schema_.class_count() : 0, 0);
    const auto t = schema_.target_index();
    for (std::size_t i = 0; i < size(); ++i) {
        const auto& v = at(i, t);
        if (v.is_nominal()) ++counts[v.index()];
    }
    return counts;
}

}  // namespace heartml
