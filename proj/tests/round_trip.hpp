#pragma once
// Generators and checks shared by the round-trip property suites.

#include <algorithm>
#include <cmath>
#include <optional>

#include "heartml/arff.hpp"
#include "heartml/model.hpp"
#include "support.hpp"

namespace heartml::test {

inline std::string random_label(Rng& rng) {
    static const std::string alphabet = "abXY09 _-,'\"%{}\\?.";
    std::string s;
    const auto len = rng.below(6);
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
    return s;
}

inline Dataset random_arff_dataset(Rng& rng) {
    const auto width = 1 + rng.below(6);
    std::vector<AttributeSpec> attrs;
    std::size_t target = rng.below(width + 1);
    for (std::size_t a = 0; a <= width; ++a) {
        std::string name = "a" + std::to_string(a) + random_label(rng);
        if (a == target || rng.below(2)) {
            std::vector<std::string> cats;
            const auto k = 1 + rng.below(4);
            for (std::size_t c = 0; c < k; ++c) cats.push_back(std::to_string(c) + random_label(rng));
            attrs.push_back(AttributeSpec::nominal(name, cats, a == target ? AttributeRole::Target : AttributeRole::Feature));
        } else {
            attrs.push_back(AttributeSpec::numeric(name));
        }
    }
    Dataset ds{Schema(attrs)};
    const auto n = rng.below(12);
    std::vector<Value> row(attrs.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t a = 0; a < attrs.size(); ++a) {
            if (rng.below(8) == 0) {
                row[a] = Value::missing();
            } else if (attrs[a].is_nominal()) {
                row[a] = Value::nominal(static_cast<std::uint32_t>(rng.below(attrs[a].category_count())));
            } else {
                switch (rng.below(4)) {
                    case 0: row[a] = Value::numeric(static_cast<double>(rng.below(1000)) - 500.0); break;
                    case 1: row[a] = Value::numeric(rng.normal() * 1e6); break;
                    case 2: row[a] = Value::numeric(rng.uniform() * 1e-8); break;
                    default:
                        row[a] = Value::numeric(std::ldexp(0.5 + rng.uniform() / 2.0,
                                                           static_cast<int>(rng.below(2001)) - 1000) *
                                                (rng.below(2) ? 1.0 : -1.0));
                }
            }
        }
        ds.add_row(row);
    }
    return ds;
}


// Written text parses back to an equal dataset, and rewriting reproduces the text.
inline bool arff_round_trips(const Dataset& ds) {
    const auto text = write_arff(ds);
    const Dataset back = parse_arff(text, ArffOptions{ds.schema().target().name});
    return back == ds && write_arff(back) == text;
}

inline ClassifierSpec random_spec(Rng& rng) {
    ClassifierSpec s;
    s.kind = static_cast<ClassifierKind>(rng.below(3));
    s.naive_bayes.smoothing = 0.5 + rng.uniform();
    s.tree.min_leaf = 1 + rng.below(3);
    s.tree.confidence = 0.05 + 0.45 * rng.uniform();
    s.tree.prune = rng.below(2) == 0;
    s.forest.trees = 1 + rng.below(4);
    s.forest.seed = rng.next();
    s.forest.bootstrap = rng.below(4) != 0;
    s.threads = 1;
    return s;
}


// Trains a random model on random data and checks serialize/deserialize. Returns nullopt when the
// draw cannot be trained (Naive Bayes with an empty class).
inline std::optional<bool> model_round_trip_case(Rng& rng) {
    const Dataset ds = random_dataset(rng, 8 + rng.below(40), rng.below(3), 1 + rng.below(3), 0.1, 2 + rng.below(2));
    const auto counts = ds.class_counts();
    const auto spec = random_spec(rng);
    if (spec.kind == ClassifierKind::NaiveBayes && std::find(counts.begin(), counts.end(), 0) != counts.end())
        return std::nullopt;
    const Model m = train(spec, ds);
    const auto text = serialize(m);
    const Model back = deserialize(text);
    if (!(back == m) || serialize(back) != text) return false;
    for (std::size_t r = 0; r < ds.size(); ++r)
        if (back.predict(ds.row(r)) != m.predict(ds.row(r))) return false;
    std::vector<Value> row(ds.width());
    for (int q = 0; q < 10; ++q) {
        for (std::size_t a = 0; a < ds.width(); ++a) {
            const auto& spec_a = ds.schema()[a];
            if (rng.below(6) == 0) row[a] = Value::missing();
            else if (spec_a.is_nominal()) row[a] = Value::nominal(static_cast<std::uint32_t>(rng.below(spec_a.category_count())));
            else row[a] = Value::numeric(rng.normal() * 3.0);
        }
        if (back.predict(row) != m.predict(row)) return false;
    }
    return true;
}

}  // namespace heartml::test
