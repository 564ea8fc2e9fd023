#pragma once

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "heartml/arff.hpp"
#include "heartml/data.hpp"
#include "heartml/rng.hpp"

namespace heartml::test {

inline std::string data_path(const std::string& name) { return std::string(HEARTML_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline Dataset load_arff(const std::string& name) { return parse_arff(slurp(data_path(name))); }

// One numeric feature "x" and a {0,1} target "y".
inline Dataset numeric_1d(std::initializer_list<double> xs, std::initializer_list<int> ys) {
    Schema s({AttributeSpec::numeric("x"), AttributeSpec::nominal("y", {"0", "1"}, AttributeRole::Target)});
    Dataset ds(s);
    auto y = ys.begin();
    for (double x : xs) {
        const Value row[] = {Value::numeric(x), Value::nominal(static_cast<std::uint32_t>(*y++))};
        ds.add_row(row);
    }
    return ds;
}

// Nominal features with the given arities, binary target; each row lists feature codes then the class.
inline Dataset nominal_table(std::vector<std::size_t> arities, const std::vector<std::vector<int>>& rows,
                             std::size_t classes = 2) {
    std::vector<AttributeSpec> attrs;
    for (std::size_t i = 0; i < arities.size(); ++i) {
        std::vector<std::string> cats;
        for (std::size_t c = 0; c < arities[i]; ++c) cats.push_back(std::to_string(c));
        attrs.push_back(AttributeSpec::nominal("f" + std::to_string(i), cats));
    }
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < classes; ++c) labels.push_back(std::to_string(c));
    attrs.push_back(AttributeSpec::nominal("class", labels, AttributeRole::Target));
    Dataset ds{Schema(attrs)};
    std::vector<Value> row(arities.size() + 1);
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            row[i] = r[i] < 0 ? Value::missing() : Value::nominal(static_cast<std::uint32_t>(r[i]));
        ds.add_row(row);
    }
    return ds;
}

// Random mixed dataset: `numeric` numeric features, `nominal` nominal features of arity 3, binary
// target loosely tied to the first feature; `missing` is the per-cell missing probability.
inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t numeric, std::size_t nominal,
                              double missing = 0.0, std::size_t classes = 2) {
    std::vector<AttributeSpec> attrs;
    for (std::size_t i = 0; i < numeric; ++i) attrs.push_back(AttributeSpec::numeric("n" + std::to_string(i)));
    for (std::size_t i = 0; i < nominal; ++i) attrs.push_back(AttributeSpec::nominal("c" + std::to_string(i), {"a", "b", "c"}));
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < classes; ++c) labels.push_back("k" + std::to_string(c));
    attrs.push_back(AttributeSpec::nominal("class", labels, AttributeRole::Target));
    Dataset ds{Schema(attrs)};
    std::vector<Value> row(attrs.size());
    for (std::size_t r = 0; r < n; ++r) {
        const auto cls = static_cast<std::uint32_t>(rng.below(classes));
        for (std::size_t a = 0; a + 1 < attrs.size(); ++a) {
            if (missing > 0.0 && rng.uniform() < missing) {
                row[a] = Value::missing();
            } else if (a < numeric) {
                row[a] = Value::numeric(std::round((rng.normal() + (a == 0 ? 1.5 * cls : 0.0)) * 100.0) / 100.0);
            } else {
                const bool tied = rng.uniform() < 0.5;
                row[a] = Value::nominal(tied ? cls % 3 : static_cast<std::uint32_t>(rng.below(3)));
            }
        }
        row.back() = Value::nominal(cls);
        ds.add_row(row);
    }
    return ds;
}

}  // namespace heartml::test
