#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "heartml/errors.hpp"
#include "heartml/model.hpp"
#include "round_trip.hpp"
#include "support.hpp"

using namespace heartml;


TEST_CASE("classifier names") {
    CHECK(parse_classifier("nb") == ClassifierKind::NaiveBayes);
    CHECK(parse_classifier("j48") == ClassifierKind::J48);
    CHECK(parse_classifier("rf") == ClassifierKind::RandomForest);
    CHECK(to_string(ClassifierKind::RandomForest) == "rf");
    CHECK_THROWS_AS(parse_classifier("svm"), ConfigError);
}

TEST_CASE("hyperparameters list only the chosen classifier") {
    ClassifierSpec s;
    s.kind = ClassifierKind::RandomForest;
    s.forest.trees = 7;
    const auto h = s.hyperparameters();
    CHECK(h.at("trees") == 7);
    CHECK_FALSE(h.contains("cf"));
    s.kind = ClassifierKind::J48;
    CHECK(s.hyperparameters().at("cf") == 0.25);
}

TEST_CASE("document header") {
    ClassifierSpec s;
    s.kind = ClassifierKind::NaiveBayes;
    const auto text = serialize(train(s, test::load_arff("heart_fixture.arff")));
    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("format") == "heartml-model");
    CHECK(j.at("version") == 1);
    CHECK(j.at("classifier") == "nb");
    CHECK(j.at("schema").size() == 14);
}

TEST_CASE("model round trip property") {
    Rng rng(424242);
    int cases = 0;
    while (cases < 1200) {
        const auto ok = test::model_round_trip_case(rng);
        if (!ok) continue;
        REQUIRE(*ok);
        ++cases;
    }
}

TEST_CASE("malformed model documents") {
    ClassifierSpec s;
    const auto text = serialize(train(s, test::load_arff("heart_synthetic.arff")));
    CHECK_THROWS_AS(deserialize("not json"), ParseError);
    CHECK_THROWS_AS(deserialize("{}"), ParseError);
    auto j = nlohmann::ordered_json::parse(text);
    j["version"] = 99;
    CHECK_THROWS_AS(deserialize(j.dump()), ParseError);
    j = nlohmann::ordered_json::parse(text);
    j["classifier"] = "svm";
    CHECK_THROWS_AS(deserialize(j.dump()), ParseError);
    j = nlohmann::ordered_json::parse(text);
    j["model"]["nodes"][0]["children"] = {999};
    CHECK_THROWS_AS(deserialize(j.dump()), ParseError);

    Rng rng(6);
    for (int i = 0; i < 300; ++i) {
        std::string t = text;
        const auto pos = rng.below(t.size());
        t[pos] = "{}[]\":,0-x"[rng.below(10)];
        try {
            const Model m = deserialize(t);
            (void)m.schema();
        } catch (const ParseError&) {
        }
    }
}
