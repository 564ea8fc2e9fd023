#include "heartml/model.hpp"

#include "heartml/errors.hpp"

namespace heartml {

using nlohmann::ordered_json;

namespace {

constexpr int kModelVersion = 1;

ordered_json tree_to_json(const DecisionTree& t) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : t.nodes()) {
        ordered_json j;
        j["attribute"] = n.attribute;
        if (!n.is_leaf()) {
            j["numeric"] = n.numeric;
            if (n.numeric) j["threshold"] = n.threshold;
            j["children"] = n.children;
            j["majority_branch"] = n.majority_branch;
        }
        j["counts"] = n.counts;
        j["size"] = n.size;
        nodes.push_back(std::move(j));
    }
    return nodes;
}

DecisionTree tree_from_json(const Schema& schema, const ordered_json& j) {
    std::vector<DecisionTree::Node> nodes;
    for (const auto& jn : j) {
        DecisionTree::Node n;
        n.attribute = jn.at("attribute").get<std::int32_t>();
        if (!n.is_leaf()) {
            n.numeric = jn.at("numeric").get<bool>();
            if (n.numeric) n.threshold = jn.at("threshold").get<double>();
            n.children = jn.at("children").get<std::vector<std::uint32_t>>();
            n.majority_branch = jn.at("majority_branch").get<std::uint32_t>();
        }
        n.counts = jn.at("counts").get<std::vector<std::uint32_t>>();
        n.size = jn.at("size").get<std::uint32_t>();
        nodes.push_back(std::move(n));
    }
    // Structural checks so that prediction can never index out of range.
    if (nodes.empty()) throw ParseError(ParseError::Kind::InvalidDocument, "tree has no nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.counts.size() != schema.class_count())
            throw ParseError(ParseError::Kind::InvalidDocument, "tree node has wrong class count");
        if (n.is_leaf()) continue;
        const auto a = static_cast<std::size_t>(n.attribute);
        if (a >= schema.size() || a == schema.target_index() || schema[a].is_numeric() != n.numeric)
            throw ParseError(ParseError::Kind::InvalidDocument, "tree node tests an invalid attribute");
        const auto want = n.numeric ? 2 : schema[a].category_count();
        if (n.children.size() != want || n.majority_branch >= want)
            throw ParseError(ParseError::Kind::InvalidDocument, "tree node has wrong branch count");
        for (auto c : n.children)
            if (c <= i || c >= nodes.size())
                throw ParseError(ParseError::Kind::InvalidDocument, "tree node child out of order");
    }
    return DecisionTree(schema, std::move(nodes));
}

}  // namespace

std::string_view to_string(ClassifierKind kind) noexcept {
    switch (kind) {
        case ClassifierKind::NaiveBayes: return "nb";
        case ClassifierKind::J48: return "j48";
        case ClassifierKind::RandomForest: return "rf";
    }
    return "?";
}

ClassifierKind parse_classifier(std::string_view name) {
    if (name == "nb") return ClassifierKind::NaiveBayes;
    if (name == "j48") return ClassifierKind::J48;
    if (name == "rf") return ClassifierKind::RandomForest;
    throw ConfigError("unknown classifier '" + std::string(name) + "' (expected nb, j48 or rf)");
}

ordered_json ClassifierSpec::hyperparameters() const {
    ordered_json j = ordered_json::object();
    switch (kind) {
        case ClassifierKind::NaiveBayes: j["smoothing"] = naive_bayes.smoothing; break;
        case ClassifierKind::J48:
            j["min_leaf"] = tree.min_leaf;
            j["cf"] = tree.confidence;
            j["prune"] = tree.prune;
            j["allow_zero_gain_splits"] = tree.allow_zero_gain_splits;
            break;
        case ClassifierKind::RandomForest:
            j["trees"] = forest.trees;
            if (forest.features_per_split) j["k_per_split"] = *forest.features_per_split;
            else j["k_per_split"] = "default";
            j["seed"] = forest.seed;
            j["bootstrap"] = forest.bootstrap;
            break;
    }
    return j;
}

ClassifierKind Model::kind() const noexcept {
    switch (model_.index()) {
        case 0: return ClassifierKind::NaiveBayes;
        case 1: return ClassifierKind::J48;
        default: return ClassifierKind::RandomForest;
    }
}

const Schema& Model::schema() const {
    return std::visit(
        [](const auto& m) -> const Schema& {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DecisionTree>) return m.schema();
            else return m.schema;
        },
        model_);
}

ClassDistribution Model::predict(Row row) const {
    return std::visit([&](const auto& m) { return m.predict(row); }, model_);
}

Model train(const ClassifierSpec& spec, const Dataset& ds) {
    switch (spec.kind) {
        case ClassifierKind::NaiveBayes: return Model(train_naive_bayes(ds, spec.naive_bayes));
        case ClassifierKind::J48: return Model(train_tree(ds, spec.tree));
        case ClassifierKind::RandomForest: return Model(train_forest(ds, spec.forest, spec.threads));
    }
    throw ConfigError("unsupported classifier");
}

ordered_json schema_to_json(const Schema& schema) {
    ordered_json attrs = ordered_json::array();
    for (const auto& a : schema.attributes()) {
        ordered_json j;
        j["name"] = a.name;
        j["kind"] = a.is_nominal() ? "nominal" : "numeric";
        if (a.is_nominal()) j["categories"] = a.categories;
        if (a.is_target()) j["target"] = true;
        attrs.push_back(std::move(j));
    }
    return attrs;
}

Schema schema_from_json(const ordered_json& j) {
    std::vector<AttributeSpec> attrs;
    for (const auto& ja : j) {
        const auto name = ja.at("name").get<std::string>();
        const auto kind = ja.at("kind").get<std::string>();
        const auto role = ja.value("target", false) ? AttributeRole::Target : AttributeRole::Feature;
        if (kind == "nominal")
            attrs.push_back(AttributeSpec::nominal(name, ja.at("categories").get<std::vector<std::string>>(), role));
        else if (kind == "numeric" && role == AttributeRole::Feature)
            attrs.push_back(AttributeSpec::numeric(name));
        else
            throw ParseError(ParseError::Kind::InvalidDocument, "bad attribute kind for '" + name + "'");
    }
    return Schema(std::move(attrs));
}

std::string serialize(const Model& model) {
    ordered_json doc;
    doc["format"] = "heartml-model";
    doc["version"] = kModelVersion;
    doc["classifier"] = std::string(to_string(model.kind()));
    doc["schema"] = schema_to_json(model.schema());
    ordered_json body;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NaiveBayesModel>) {
                body["smoothing"] = m.smoothing;
                body["priors"] = m.priors;
                ordered_json fs = ordered_json::array();
                for (const auto& f : m.features) {
                    ordered_json jf;
                    jf["attribute"] = f.attribute;
                    jf["usable"] = f.usable;
                    if (f.numeric) {
                        jf["mean"] = f.mean;
                        jf["stddev"] = f.stddev;
                    } else {
                        jf["counts"] = f.counts;
                    }
                    fs.push_back(std::move(jf));
                }
                body["features"] = std::move(fs);
            } else if constexpr (std::is_same_v<T, DecisionTree>) {
                body["nodes"] = tree_to_json(m);
            } else {
                body["features_per_split"] = m.features_per_split;
                body["bootstrap"] = m.bootstrap;
                ordered_json trees = ordered_json::array();
                for (std::size_t t = 0; t < m.trees.size(); ++t) {
                    ordered_json jt;
                    jt["seed"] = m.tree_seeds[t];
                    jt["nodes"] = tree_to_json(m.trees[t]);
                    trees.push_back(std::move(jt));
                }
                body["trees"] = std::move(trees);
            }
        },
        model.variant());
    doc["model"] = std::move(body);
    return doc.dump(1) + "\n";
}

Model deserialize(std::string_view text) {
    using K = ParseError::Kind;
    try {
        const auto doc = ordered_json::parse(text);
        if (doc.at("format").get<std::string>() != "heartml-model")
            throw ParseError(K::InvalidDocument, "not a heartml model document");
        if (doc.at("version").get<int>() != kModelVersion)
            throw ParseError(K::InvalidDocument, "unsupported model version");
        const auto kind = parse_classifier(doc.at("classifier").get<std::string>());
        Schema schema = schema_from_json(doc.at("schema"));
        const auto& body = doc.at("model");
        switch (kind) {
            case ClassifierKind::NaiveBayes: {
                NaiveBayesModel m;
                m.schema = schema;
                m.smoothing = body.at("smoothing").get<double>();
                m.priors = body.at("priors").get<std::vector<double>>();
                if (m.priors.size() != schema.class_count()) throw ParseError(K::InvalidDocument, "prior count");
                for (const auto& jf : body.at("features")) {
                    NaiveBayesModel::Feature f;
                    f.attribute = jf.at("attribute").get<std::size_t>();
                    if (f.attribute >= schema.size() || f.attribute == schema.target_index())
                        throw ParseError(K::InvalidDocument, "feature index out of range");
                    f.numeric = schema[f.attribute].is_numeric();
                    f.usable = jf.at("usable").get<bool>();
                    if (f.numeric) {
                        f.mean = jf.at("mean").get<std::vector<double>>();
                        f.stddev = jf.at("stddev").get<std::vector<double>>();
                        if (f.mean.size() != m.priors.size() || f.stddev.size() != m.priors.size())
                            throw ParseError(K::InvalidDocument, "gaussian table size");
                    } else {
                        f.counts = jf.at("counts").get<std::vector<std::vector<double>>>();
                        if (f.counts.size() != m.priors.size())
                            throw ParseError(K::InvalidDocument, "count table size");
                        for (const auto& row : f.counts)
                            if (row.size() != schema[f.attribute].category_count())
                                throw ParseError(K::InvalidDocument, "count table size");
                    }
                    m.features.push_back(std::move(f));
                }
                return Model(std::move(m));
            }
            case ClassifierKind::J48: return Model(tree_from_json(schema, body.at("nodes")));
            case ClassifierKind::RandomForest: {
                RandomForestModel m;
                m.schema = schema;
                m.features_per_split = body.at("features_per_split").get<std::size_t>();
                m.bootstrap = body.at("bootstrap").get<bool>();
                for (const auto& jt : body.at("trees")) {
                    m.tree_seeds.push_back(jt.at("seed").get<std::uint64_t>());
                    m.trees.push_back(tree_from_json(schema, jt.at("nodes")));
                }
                if (m.trees.empty()) throw ParseError(K::InvalidDocument, "forest has no trees");
                return Model(std::move(m));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(K::InvalidDocument, std::string("malformed model document: ") + e.what());
    } catch (const ConfigError& e) {
        throw ParseError(K::InvalidDocument, e.what());
    }
    throw ParseError(K::InvalidDocument, "unsupported classifier");
}

}  // namespace heartml
