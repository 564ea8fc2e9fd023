#include <doctest.h>

#include "heartml/errors.hpp"
#include "heartml/forest.hpp"
#include "heartml/model.hpp"
#include "support.hpp"

using namespace heartml;
using doctest::Approx;

namespace {

// A forest whose members are single leaves voting for the given classes.
RandomForestModel fixed_votes(std::vector<std::uint32_t> classes) {
    const Dataset ds = test::numeric_1d({1}, {0});
    RandomForestModel m;
    m.schema = ds.schema();
    for (auto c : classes) {
        DecisionTree::Node leaf;
        leaf.counts = {c == 0 ? 1u : 0u, c == 1 ? 1u : 0u};
        leaf.size = 1;
        m.trees.emplace_back(ds.schema(), std::vector<DecisionTree::Node>{leaf});
        m.tree_seeds.push_back(0);
    }
    return m;
}

const std::vector<Value> kQuery{Value::numeric(0), Value::missing()};

}  // namespace

TEST_CASE("default features per split") {
    CHECK(default_features_per_split(13) == 4);
    CHECK(default_features_per_split(1) == 1);
    CHECK(default_features_per_split(2) == 2);
    CHECK(default_features_per_split(8) == 4);
    CHECK(default_features_per_split(9) == 4);
    CHECK(default_features_per_split(16) == 5);
}

TEST_CASE("vote shares") {
    const auto d = fixed_votes({1, 1, 0}).predict(kQuery);
    CHECK(d[1] == Approx(2.0 / 3.0));
    CHECK(predicted_class(d) == 1);
    CHECK(fixed_votes({1, 1, 1}).predict(kQuery)[1] == 1.0);
    CHECK(predicted_class(fixed_votes({0, 1}).predict(kQuery)) == 0);  // tie: lowest index
    CHECK(predicted_class(fixed_votes({1, 0}).predict(kQuery)) == 0);
}

TEST_CASE("removing a tree moves at most one vote") {
    const Dataset ds = test::load_arff("heart_synthetic.arff");
    ForestParams p;
    p.trees = 15;
    p.seed = 4;
    const auto m = train_forest(ds, p);
    auto smaller = m;
    smaller.trees.pop_back();
    smaller.tree_seeds.pop_back();
    for (std::size_t r = 0; r < ds.size(); r += 7) {
        const auto a = m.votes(ds.row(r)), b = smaller.votes(ds.row(r));
        std::size_t moved = 0;
        for (std::size_t c = 0; c < a.size(); ++c) {
            CHECK(a[c] >= b[c]);
            moved += a[c] - b[c];
        }
        CHECK(moved == 1);
    }
}

TEST_CASE("seeded training is reproducible") {
    const Dataset ds = test::load_arff("heart_synthetic.arff");
    ClassifierSpec spec;
    spec.kind = ClassifierKind::RandomForest;
    spec.forest.trees = 20;
    spec.forest.seed = 99;
    CHECK(serialize(train(spec, ds)) == serialize(train(spec, ds)));
    auto other = spec;
    other.forest.seed = 100;
    CHECK(serialize(train(spec, ds)) != serialize(train(other, ds)));
}

TEST_CASE("degenerate forest is the unpruned tree") {
    const Dataset ds = test::load_arff("heart_synthetic.arff");
    ForestParams p;
    p.trees = 1;
    p.features_per_split = ds.schema().feature_count();
    p.bootstrap = false;
    const auto forest = train_forest(ds, p);
    TreeParams tp;
    tp.prune = false;
    tp.min_leaf = 1;
    const auto tree = train_tree(ds, tp);
    CHECK(forest.trees[0] == tree);
    for (std::size_t r = 0; r < ds.size(); ++r)
        CHECK(predicted_class(forest.predict(ds.row(r))) == predicted_class(tree.predict(ds.row(r))));
}

TEST_CASE("members differ under bagging and feature sampling") {
    const Dataset ds = test::load_arff("heart_synthetic.arff");
    ForestParams p;
    p.trees = 5;
    const auto m = train_forest(ds, p);
    CHECK(m.features_per_split == 4);
    CHECK_FALSE(m.trees[0] == m.trees[1]);
    CHECK(m.tree_seeds[0] != m.tree_seeds[1]);
}

TEST_CASE("invalid forest parameters") {
    const Dataset ds = test::load_arff("heart_fixture.arff");
    ForestParams p;
    p.trees = 0;
    CHECK_THROWS_AS(train_forest(ds, p), ConfigError);
    p.trees = 3;
    p.features_per_split = 14;
    CHECK_THROWS_AS(train_forest(ds, p), ConfigError);
    p.features_per_split = 0;
    CHECK_THROWS_AS(train_forest(ds, p), ConfigError);
    CHECK_THROWS_AS(train_forest(Dataset(heart_schema()), ForestParams{}), TrainingError);
}

TEST_CASE("forest distributions are normalized") {
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        const Dataset ds = test::random_dataset(rng, 20 + rng.below(100), 2, 2, 0.1, 2 + rng.below(2));
        ForestParams p;
        p.trees = 1 + rng.below(12);
        p.seed = rng.next();
        const auto m = train_forest(ds, p);
        for (std::size_t r = 0; r < ds.size(); ++r) {
            double s = 0;
            for (double v : m.predict(ds.row(r))) {
                CHECK(v >= 0.0);
                s += v;
            }
            CHECK(s == Approx(1.0).epsilon(1e-9));
        }
    }
}
