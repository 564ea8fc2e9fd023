#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "heartml/forest.hpp"
#include "heartml/naive_bayes.hpp"
#include "heartml/tree.hpp"

namespace heartml {

enum class ClassifierKind { NaiveBayes, J48, RandomForest };

/// "nb", "j48", "rf".
std::string_view to_string(ClassifierKind kind) noexcept;
/// Throws ConfigError for any other name.
ClassifierKind parse_classifier(std::string_view name);

/// Which classifier to train and with what hyperparameters.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::J48;
    NaiveBayesParams naive_bayes;
    TreeParams tree;
    ForestParams forest;
    int threads = 0;  // forest training workers

    /// Hyperparameters of the selected classifier only, as a JSON object.
    nlohmann::ordered_json hyperparameters() const;
};

/// A trained classifier of any supported kind.
class Model {
public:
    using Variant = std::variant<NaiveBayesModel, DecisionTree, RandomForestModel>;

    explicit Model(Variant v) : model_(std::move(v)) {}

    ClassifierKind kind() const noexcept;
    const Schema& schema() const;
    ClassDistribution predict(Row row) const;
    std::size_t predict_class(Row row) const { return predicted_class(predict(row)); }

    const Variant& variant() const noexcept { return model_; }
    bool operator==(const Model&) const = default;

private:
    Variant model_;
};

Model train(const ClassifierSpec& spec, const Dataset& ds);

/// Versioned JSON text (format "heartml-model", version 1); see docs/model-format.md.
std::string serialize(const Model& model);
/// Throws ParseError(InvalidDocument) on malformed or unsupported documents.
Model deserialize(std::string_view text);

nlohmann::ordered_json schema_to_json(const Schema& schema);
Schema schema_from_json(const nlohmann::ordered_json& j);

}  // namespace heartml
