#include "heartml/transform.hpp"

#include <algorithm>

#include "heartml/errors.hpp"

namespace heartml {

Dataset nominal_to_numeric_view(const Dataset& ds) {
    const Schema& in = ds.schema();
    std::vector<AttributeSpec> attrs = in.attributes();
    std::vector<bool> recode(attrs.size(), false);
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (attrs[a].is_nominal() && !attrs[a].is_target()) {
            attrs[a] = AttributeSpec::numeric(attrs[a].name);
            recode[a] = true;
        }
    }
    Dataset out{Schema(std::move(attrs))};
    std::vector<Value> row(in.size());
    for (std::size_t r = 0; r < ds.size(); ++r) {
        auto src = ds.row(r);
        for (std::size_t a = 0; a < row.size(); ++a) {
            const Value& v = src[a];
            row[a] = (recode[a] && v.is_nominal()) ? Value::numeric(static_cast<double>(v.index())) : v;
        }
        out.add_row(row);
    }
    return out;
}

Dataset project(const Dataset& ds, std::span<const std::size_t> features) {
    const Schema& in = ds.schema();
    std::vector<std::size_t> keep(features.begin(), features.end());
    keep.push_back(in.target_index());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.back() >= in.size()) throw ConfigError("feature index out of range");

    std::vector<AttributeSpec> attrs;
    for (auto a : keep) attrs.push_back(in[a]);
    Dataset out{Schema(std::move(attrs))};
    std::vector<Value> row(keep.size());
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t j = 0; j < keep.size(); ++j) row[j] = ds.at(r, keep[j]);
        out.add_row(row);
    }
    return out;
}

std::vector<std::size_t> resolve_features(const Schema& schema, std::span<const std::string> names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) {
        auto idx = schema.index_of(n);
        if (!idx) throw ConfigError("unknown attribute '" + n + "'");
        if (*idx == schema.target_index()) throw ConfigError("'" + n + "' is the target, not a feature");
        out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace heartml
