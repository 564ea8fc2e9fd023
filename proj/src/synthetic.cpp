#include "heartml/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "heartml/errors.hpp"
#include "heartml/rng.hpp"

namespace heartml {

namespace {

constexpr double kProbTolerance = 1e-9;

void check_probabilities(const std::vector<double>& p, std::size_t expected, const std::string& what) {
    if (p.size() != expected)
        throw ConfigError("InvalidSpec: " + what + " lists " + std::to_string(p.size()) + " probabilities, expected " +
                          std::to_string(expected));
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw ConfigError("InvalidSpec: " + what + " has a negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) throw ConfigError("InvalidSpec: " + what + " does not sum to 1");
}

void validate(const Schema& schema, const SyntheticSpec& spec) {
    const auto& target = schema.target();
    check_probabilities(spec.class_prior, target.category_count(), "class_prior");
    for (auto a : schema.feature_indices()) {
        const auto& attr = schema[a];
        auto it = spec.attributes.find(attr.name);
        if (it == spec.attributes.end()) throw ConfigError("InvalidSpec: no distribution for '" + attr.name + "'");
        const auto& d = it->second;
        if (d.missing_rate < 0.0 || d.missing_rate > 1.0)
            throw ConfigError("InvalidSpec: missing rate of '" + attr.name + "' outside [0, 1]");
        if (attr.is_nominal()) {
            if (d.category_probs.size() != target.category_count())
                throw ConfigError("InvalidSpec: '" + attr.name + "' needs one category table per class");
            for (std::size_t c = 0; c < d.category_probs.size(); ++c)
                check_probabilities(d.category_probs[c], attr.category_count(),
                                    "'" + attr.name + "' class " + target.categories[c]);
        } else {
            if (d.gaussian.size() != target.category_count())
                throw ConfigError("InvalidSpec: '" + attr.name + "' needs one mean/stddev per class");
            for (const auto& g : d.gaussian)
                if (!(g.stddev >= 0.0) || !std::isfinite(g.mean) || !std::isfinite(g.stddev))
                    throw ConfigError("InvalidSpec: '" + attr.name + "' has stddev < 0 or a non-finite parameter");
            if (d.min && d.max && *d.min > *d.max) throw ConfigError("InvalidSpec: '" + attr.name + "' min > max");
            if (d.decimals && (*d.decimals < 0 || *d.decimals > 12))
                throw ConfigError("InvalidSpec: '" + attr.name + "' decimals outside [0, 12]");
        }
    }
}

std::uint32_t draw_category(Rng& rng, const std::vector<double>& probs) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<std::uint32_t>(i);
    }
    // Rounding left u above the accumulated total: fall back to the last category with mass.
    for (std::size_t i = probs.size(); i-- > 0;)
        if (probs[i] > 0.0) return static_cast<std::uint32_t>(i);
    return 0;
}

}  // namespace

std::vector<std::size_t> largest_remainder_counts(std::size_t n, const std::vector<double>& prior) {
    std::vector<std::size_t> counts(prior.size());
    std::vector<double> rem(prior.size());
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < prior.size(); ++c) {
        const double exact = static_cast<double>(n) * prior[c];
        counts[c] = static_cast<std::size_t>(std::floor(exact));
        rem[c] = exact - std::floor(exact);
        assigned += counts[c];
    }
    std::vector<std::size_t> order(prior.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rem[a] > rem[b]; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % order.size()]];
    return counts;
}

Dataset generate_synthetic(const Schema& schema, std::size_t n, std::uint64_t seed, const SyntheticSpec& spec) {
    if (n < 1) throw ConfigError("InvalidSpec: n must be at least 1");
    validate(schema, spec);

    const auto counts = largest_remainder_counts(n, spec.class_prior);
    std::vector<std::uint32_t> labels;
    labels.reserve(n);
    for (std::size_t c = 0; c < counts.size(); ++c) labels.insert(labels.end(), counts[c], static_cast<std::uint32_t>(c));
    Rng label_rng(derive_seed(seed, 0));
    label_rng.shuffle(std::span(labels));

    std::vector<const AttributeDistribution*> dist(schema.size(), nullptr);
    for (auto a : schema.feature_indices()) dist[a] = &spec.attributes.find(schema[a].name)->second;

    Rng rng(derive_seed(seed, 1));
    Dataset ds(schema);
    std::vector<Value> row(schema.size());
    for (std::size_t r = 0; r < n; ++r) {
        const auto cls = labels[r];
        for (std::size_t a = 0; a < schema.size(); ++a) {
            if (a == schema.target_index()) {
                row[a] = Value::nominal(cls);
                continue;
            }
            const auto& d = *dist[a];
            if (d.missing_rate > 0.0 && rng.uniform() < d.missing_rate) {
                row[a] = Value::missing();
                continue;
            }
            if (schema[a].is_nominal()) {
                row[a] = Value::nominal(draw_category(rng, d.category_probs[cls]));
            } else {
                const auto& g = d.gaussian[cls];
                double v = g.mean + g.stddev * rng.normal();
                if (d.min) v = std::max(v, *d.min);
                if (d.max) v = std::min(v, *d.max);
                if (d.decimals) {
                    const double scale = std::pow(10.0, *d.decimals);
                    v = std::round(v * scale) / scale;
                }
                row[a] = Value::numeric(v);
            }
        }
        ds.add_row(row);
    }
    return ds;
}

SyntheticSpec parse_synthetic_spec(std::string_view json_text, const Schema& schema) {
    using nlohmann::json;
    using K = ParseError::Kind;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(K::InvalidDocument, std::string("synthetic spec is not valid JSON: ") + e.what());
    }
    const auto& target = schema.target();
    auto per_class = [&](const json& obj, const std::string& what) {
        if (!obj.is_object()) throw ParseError(K::InvalidDocument, what + " must be an object keyed by class label");
        std::vector<json> out(target.category_count());
        for (std::size_t c = 0; c < out.size(); ++c) {
            auto it = obj.find(target.categories[c]);
            if (it == obj.end())
                throw ParseError(K::InvalidDocument, what + " lacks class '" + target.categories[c] + "'");
            out[c] = *it;
        }
        return out;
    };

    try {
        SyntheticSpec spec;
        for (const auto& p : per_class(doc.at("class_prior"), "class_prior")) spec.class_prior.push_back(p.get<double>());
        for (const auto& [name, entry] : doc.at("attributes").items()) {
            AttributeDistribution d;
            if (entry.contains("categories")) {
                for (const auto& probs : per_class(entry.at("categories"), "'" + name + "' categories")) {
                    if (probs.is_array()) {
                        d.category_probs.push_back(probs.get<std::vector<double>>());
                    } else {
                        // object keyed by category label
                        auto idx = schema.index_of(name);
                        if (!idx || !schema[*idx].is_nominal())
                            throw ParseError(K::InvalidDocument, "'" + name + "' is not a nominal attribute");
                        std::vector<double> row(schema[*idx].category_count(), 0.0);
                        for (const auto& [label, p] : probs.items()) {
                            auto ci = schema[*idx].category_index(label);
                            if (!ci) throw ParseError(K::InvalidDocument, "'" + name + "' has no category '" + label + "'");
                            row[*ci] = p.get<double>();
                        }
                        d.category_probs.push_back(std::move(row));
                    }
                }
            }
            if (entry.contains("gaussian")) {
                for (const auto& g : per_class(entry.at("gaussian"), "'" + name + "' gaussian"))
                    d.gaussian.push_back({g.at("mean").get<double>(), g.at("stddev").get<double>()});
            }
            if (entry.contains("decimals")) d.decimals = entry.at("decimals").get<int>();
            if (entry.contains("min")) d.min = entry.at("min").get<double>();
            if (entry.contains("max")) d.max = entry.at("max").get<double>();
            if (entry.contains("missing")) d.missing_rate = entry.at("missing").get<double>();
            spec.attributes.emplace(name, std::move(d));
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(K::InvalidDocument, std::string("malformed synthetic spec: ") + e.what());
    }
}

}  // namespace heartml
