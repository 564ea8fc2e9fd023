// heartml: command-line front end.
//
// Exit codes: 0 success, 2 input not found, 3 parse/validation failure,
// 4 configuration error, 5 training failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heartml/arff.hpp"
#include "heartml/cfs.hpp"
#include "heartml/csv.hpp"
#include "heartml/errors.hpp"
#include "heartml/experiment.hpp"
#include "heartml/model.hpp"
#include "heartml/synthetic.hpp"
#include "heartml/transform.hpp"

namespace fs = std::filesystem;
using namespace heartml;

namespace {

struct NotFound : Error {
    using Error::Error;
};

enum Exit { kOk = 0, kFailure = 1, kNotFound = 2, kParse = 3, kConfig = 4, kTraining = 5 };

std::string read_file(const std::string& path) {
    if (path != "-" && !fs::exists(path)) throw NotFound("no such file: " + path);
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream is(path, std::ios::binary);
    if (!is) throw NotFound("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + path);
    os << content;
}

bool has_extension(const std::string& path, std::string_view ext) {
    auto e = fs::path(path).extension().string();
    for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e == ext;
}

// "heart" names the built-in schema; anything else is an ARFF file whose header is used.
Schema load_schema(const std::string& source, const std::optional<std::string>& target) {
    if (source == "heart") return heart_schema();
    ArffOptions opt;
    opt.target = target;
    return parse_arff_schema(read_file(source), opt);
}

struct InputOptions {
    std::string path;
    std::string schema = "heart";
    std::optional<std::string> target;
    bool nominal_as_numeric = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool with_transform) {
    cmd->add_option("-i,--input", in.path, "ARFF or CSV data file")->required();
    cmd->add_option("--schema", in.schema, "schema for CSV input: 'heart' or an ARFF file")->capture_default_str();
    cmd->add_option("--target", in.target, "target attribute name (default: last ARFF attribute)");
    if (with_transform)
        cmd->add_flag("--nominal-as-numeric", in.nominal_as_numeric, "treat nominal features as category indices");
}

Dataset load_dataset(const InputOptions& in) {
    const auto text = read_file(in.path);
    Dataset ds = has_extension(in.path, ".csv") ? parse_csv(text, load_schema(in.schema, in.target))
                                                : parse_arff(text, ArffOptions{in.target});
    return in.nominal_as_numeric ? nominal_to_numeric_view(ds) : ds;
}

std::string dataset_name(const std::string& path) { return fs::path(path).filename().string(); }

std::string default_out_dir() {
    if (const char* env = std::getenv("HEARTML_OUT_DIR"); env && *env) return env;
    return "heartml-out";
}

struct ClassifierOptions {
    std::string classifier = "j48";
    std::size_t trees = 100;
    std::size_t k_per_split = 0;
    std::string bootstrap = "on";
    double cf = 0.25;
    std::size_t min_leaf = 2;
    std::uint64_t seed = 1;
    double smoothing = 1.0;
    bool allow_zero_gain = false;
    bool no_prune = false;
    int threads = 0;
};

void add_classifier_options(CLI::App* cmd, ClassifierOptions& o, bool with_kind) {
    if (with_kind)
        cmd->add_option("--classifier", o.classifier, "nb, j48 or rf")
            ->check(CLI::IsMember({"nb", "j48", "rf"}))
            ->capture_default_str();
    cmd->add_option("--trees", o.trees, "forest size")->capture_default_str();
    cmd->add_option("--k-per-split", o.k_per_split, "features sampled per forest split (0: floor(log2 M)+1)")
        ->capture_default_str();
    cmd->add_option("--bootstrap", o.bootstrap, "forest bootstrap sampling")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    cmd->add_option("--cf", o.cf, "tree pruning confidence")->capture_default_str();
    cmd->add_option("--min-leaf", o.min_leaf, "minimum instances per tree branch")->capture_default_str();
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    cmd->add_option("--smoothing", o.smoothing, "Naive Bayes Laplace constant")->capture_default_str();
    cmd->add_flag("--allow-zero-gain-splits", o.allow_zero_gain, "let the tree split when no test has positive gain");
    cmd->add_flag("--no-prune", o.no_prune, "skip error-based pruning");
    cmd->add_option("--threads", o.threads, "worker threads (0: all)")->capture_default_str();
}

ClassifierSpec make_spec(const ClassifierOptions& o) {
    ClassifierSpec spec;
    spec.kind = parse_classifier(o.classifier);
    spec.naive_bayes.smoothing = o.smoothing;
    spec.tree.min_leaf = o.min_leaf;
    spec.tree.confidence = o.cf;
    spec.tree.prune = !o.no_prune;
    spec.tree.allow_zero_gain_splits = o.allow_zero_gain;
    spec.forest.trees = o.trees;
    if (o.k_per_split > 0) spec.forest.features_per_split = o.k_per_split;
    spec.forest.seed = o.seed;
    spec.forest.bootstrap = o.bootstrap == "on";
    spec.threads = o.threads;
    if (o.smoothing < 0.0) throw ConfigError("--smoothing must be non-negative");
    if (o.min_leaf < 1) throw ConfigError("--min-leaf must be at least 1");
    if (!(o.cf > 0.0 && o.cf <= 0.5)) throw ConfigError("--cf must lie in (0, 0.5]");
    if (o.trees < 1) throw ConfigError("--trees must be at least 1");
    return spec;
}

std::vector<FeatureSetting> parse_feature_args(const std::vector<std::string>& args) {
    std::vector<FeatureSetting> out;
    for (const auto& a : args) {
        if (a.starts_with("explicit:")) {
            out.push_back(parse_feature_setting(a));
            continue;
        }
        std::stringstream ss(a);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) out.push_back(parse_feature_setting(item));
    }
    return out;
}

std::vector<ReportFormat> parse_formats(const std::string& list) {
    std::vector<ReportFormat> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(parse_report_format(item));
    if (out.empty()) throw ConfigError("no report formats requested");
    return out;
}

// ---------------------------------------------------------------------------

int cmd_inspect(const InputOptions& in) {
    const Dataset ds = load_dataset(in);
    const Schema& s = ds.schema();
    std::vector<std::size_t> missing(s.size(), 0);
    for (std::size_t r = 0; r < ds.size(); ++r)
        for (std::size_t a = 0; a < s.size(); ++a)
            if (ds.at(r, a).is_missing()) ++missing[a];

    std::ostringstream os;
    os << "Dataset: " << dataset_name(in.path) << '\n';
    os << "Instances: " << ds.size() << '\n';
    os << "Attributes: " << s.size() << " (" << s.feature_count() << " features + target)\n\n";
    os << std::left << std::setw(4) << "No." << std::setw(14) << "Attribute" << std::setw(9) << "Type"
       << std::setw(10) << "Missing" << "Values\n";
    for (std::size_t a = 0; a < s.size(); ++a) {
        const auto& spec = s[a];
        std::string values;
        if (spec.is_nominal()) {
            values = "{";
            for (std::size_t c = 0; c < spec.categories.size(); ++c) values += (c ? "," : "") + spec.categories[c];
            values += "}";
        } else {
            std::optional<double> lo, hi;
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const auto& v = ds.at(r, a);
                if (!v.is_numeric()) continue;
                lo = lo ? std::min(*lo, v.number()) : v.number();
                hi = hi ? std::max(*hi, v.number()) : v.number();
            }
            values = lo ? format_number(*lo) + " .. " + format_number(*hi) : "-";
        }
        os << std::setw(4) << (a + 1) << std::setw(14) << (spec.name + (spec.is_target() ? "*" : ""))
           << std::setw(9) << (spec.is_nominal() ? "nominal" : "numeric") << std::setw(10) << missing[a] << values
           << '\n';
    }
    os << "\n* target\n\nClass distribution:\n";
    const auto counts = ds.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c)
        os << "  " << s.target().categories[c] << ": " << counts[c] << '\n';
    std::cout << os.str();
    return kOk;
}

int cmd_convert(const InputOptions& in, const std::string& out, const std::string& relation) {
    const Dataset ds = parse_csv(read_file(in.path), load_schema(in.schema, in.target));
    write_output(out, write_arff(ds, relation));
    return kOk;
}

int cmd_select(const InputOptions& in, const std::string& method, const std::string& search, std::size_t max_stale,
               const std::string& bins, int threads, const std::string& out) {
    if (method != "cfs") throw ConfigError("unknown selection method '" + method + "'");
    if (search != "best-first") throw ConfigError("unknown search '" + search + "'");
    const Dataset ds = load_dataset(in);
    BestFirstOptions opt;
    opt.max_stale = max_stale;
    opt.threads = threads;
    const auto result = select_cfs(ds, parse_binning(bins), opt);

    nlohmann::ordered_json j;
    j["method"] = "cfs";
    j["search"] = "best-first";
    j["max_stale"] = max_stale;
    j["binning"] = bins;
    auto names = nlohmann::ordered_json::array();
    for (auto i : result.features) names.push_back(ds.schema()[i].name);
    j["features"] = names;
    j["merit"] = result.merit;
    j["subsets_evaluated"] = result.evaluated;
    write_output(out, j.dump(2) + "\n");
    return kOk;
}

int cmd_train(const InputOptions& in, const ClassifierOptions& co, const std::vector<std::string>& features,
              const std::string& out) {
    Dataset ds = load_dataset(in);
    if (!features.empty()) ds = project(ds, resolve_features(ds.schema(), features));
    const Model model = train(make_spec(co), ds);
    write_output(out, serialize(model));
    return kOk;
}

int cmd_predict(const std::string& model_path, const InputOptions& in, const std::string& out) {
    const Model model = deserialize(read_file(model_path));
    const Schema& ms = model.schema();
    const auto text = read_file(in.path);
    Dataset ds = has_extension(in.path, ".csv") ? parse_csv(text, ms) : parse_arff(text, ArffOptions{in.target});
    if (!(ds.schema() == ms)) {
        // Accept wider inputs by projecting onto the model's attributes.
        std::vector<std::string> names;
        for (const auto& a : ms.attributes())
            if (!a.is_target()) names.push_back(a.name);
        ds = project(ds, resolve_features(ds.schema(), names));
        if (!(ds.schema() == ms)) throw TrainingError(TrainingError::Kind::SchemaMismatch, "input schema differs from model");
    }
    std::ostringstream os;
    os << "row,predicted";
    for (const auto& c : ms.target().categories) os << ",p_" << c;
    os << '\n';
    os << std::setprecision(6);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        const auto dist = model.predict(ds.row(r));
        os << (r + 1) << ',' << ms.target().categories[predicted_class(dist)];
        for (double p : dist) os << ',' << p;
        os << '\n';
    }
    write_output(out, os.str());
    return kOk;
}

struct GridOptions {
    std::vector<std::string> classifiers{"j48", "nb", "rf"};
    std::vector<std::string> features{"all", "cfs"};
    std::size_t folds = 10;
    bool unstratified = false;
    std::string formats = "text,csv,json";
    std::string bins = "mdl";
    std::size_t max_stale = 5;
    std::size_t positive = 1;
    std::string out;
};

void add_grid_options(CLI::App* cmd, GridOptions& g, bool single) {
    if (!single)
        cmd->add_option("--classifiers", g.classifiers, "classifiers to evaluate")
            ->delimiter(',')
            ->check(CLI::IsMember({"nb", "j48", "rf"}))
            ->capture_default_str();
    cmd->add_option("--features", g.features, "feature modes: all, cfs, explicit:A,B,...")->capture_default_str();
    cmd->add_option("--folds", g.folds, "cross-validation folds")->capture_default_str();
    cmd->add_flag("--unstratified", g.unstratified, "plain shuffled folds");
    cmd->add_option("--formats", g.formats, "report formats: text,csv,json")->capture_default_str();
    cmd->add_option("--bins", g.bins, "CFS discretization: mdl or equal-frequency:k")->capture_default_str();
    cmd->add_option("--max-stale", g.max_stale, "Best First stale-expansion limit")->capture_default_str();
    cmd->add_option("--positive", g.positive, "positive class index")->capture_default_str();
    cmd->add_option("-o,--out", g.out, "output directory (default: $HEARTML_OUT_DIR or heartml-out)");
}

int cmd_grid(const InputOptions& in, const ClassifierOptions& co, const GridOptions& g, bool single) {
    ExperimentConfig cfg;
    cfg.classifiers.clear();
    if (single)
        cfg.classifiers.push_back(parse_classifier(co.classifier));
    else
        for (const auto& c : g.classifiers) cfg.classifiers.push_back(parse_classifier(c));
    cfg.feature_settings = parse_feature_args(g.features);
    cfg.folds = g.folds;
    cfg.seed = co.seed;
    cfg.stratified = !g.unstratified;
    cfg.hyper = make_spec(co);
    cfg.binning = parse_binning(g.bins);
    cfg.max_stale = g.max_stale;
    cfg.positive_class = g.positive;
    cfg.threads = co.threads;
    const auto formats = parse_formats(g.formats);

    const Dataset ds = load_dataset(in);
    const auto cells = run_experiment(ds, dataset_name(in.path), cfg);
    const auto out = g.out.empty() ? default_out_dir() : g.out;
    for (const auto& p : write_reports(cells, out, formats)) std::cout << p.string() << '\n';

    int rc = kOk;
    for (const auto& c : cells)
        if (c.error) {
            std::cerr << "heartml: " << c.title() << " failed: " << *c.error << '\n';
            rc = kTraining;
        }
    return rc;
}

int cmd_generate(const std::string& spec_path, const std::string& schema_src, std::size_t n, std::uint64_t seed,
                 const std::string& relation, const std::string& out) {
    const Schema schema = load_schema(schema_src, std::nullopt);
    const auto spec = parse_synthetic_spec(read_file(spec_path), schema);
    if (n < 1) throw ConfigError("--rows must be at least 1");
    write_output(out, write_arff(generate_synthetic(schema, n, seed, spec), relation));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heartml: heart-disease classification toolkit"};
    app.require_subcommand(1);

    InputOptions in;
    ClassifierOptions co;
    GridOptions grid;
    std::string out, relation = "heart", model_path, method = "cfs", search = "best-first", bins = "mdl";
    std::size_t max_stale = 5, rows = 529;
    std::vector<std::string> train_features;

    auto* inspect = app.add_subcommand("inspect", "print schema, class balance and missing values");
    add_input_options(inspect, in, false);

    auto* convert = app.add_subcommand("convert", "convert CSV to ARFF");
    add_input_options(convert, in, false);
    convert->add_option("-o,--out", out, "output ARFF file (default: stdout)");
    convert->add_option("--relation", relation, "ARFF relation name")->capture_default_str();

    auto* select = app.add_subcommand("select", "CFS feature selection");
    add_input_options(select, in, true);
    select->add_option("--method", method, "selection method")->capture_default_str();
    select->add_option("--search", search, "search strategy")->capture_default_str();
    select->add_option("--max-stale", max_stale, "stale-expansion limit")->capture_default_str();
    select->add_option("--bins", bins, "mdl or equal-frequency:k")->capture_default_str();
    select->add_option("--threads", co.threads, "worker threads (0: all)");
    select->add_option("-o,--out", out, "output JSON (default: stdout)");

    auto* trainc = app.add_subcommand("train", "train a model on the whole dataset");
    add_input_options(trainc, in, true);
    add_classifier_options(trainc, co, true);
    trainc->add_option("--features", train_features, "restrict to these feature names")->delimiter(',');
    trainc->add_option("-o,--out", out, "output model file (default: stdout)");

    auto* predict = app.add_subcommand("predict", "apply a saved model");
    predict->add_option("-m,--model", model_path, "model file")->required();
    predict->add_option("-i,--input", in.path, "ARFF or CSV data file")->required();
    predict->add_option("--target", in.target, "target attribute name");
    predict->add_option("-o,--out", out, "output CSV (default: stdout)");

    auto* evaluate = app.add_subcommand("evaluate", "cross-validate one classifier");
    add_input_options(evaluate, in, true);
    add_classifier_options(evaluate, co, true);
    add_grid_options(evaluate, grid, true);

    auto* experiment = app.add_subcommand("experiment", "run the classifier x feature-set grid");
    add_input_options(experiment, in, true);
    add_classifier_options(experiment, co, false);
    add_grid_options(experiment, grid, false);

    auto* generate = app.add_subcommand("generate", "sample a synthetic dataset");
    generate->add_option("--spec", model_path, "synthetic spec (JSON)")->required();
    generate->add_option("--schema", in.schema, "'heart' or an ARFF file")->capture_default_str();
    generate->add_option("-n,--rows", rows, "instances")->capture_default_str();
    generate->add_option("--seed", co.seed, "random seed")->capture_default_str();
    generate->add_option("--relation", relation, "ARFF relation name")->capture_default_str();
    generate->add_option("-o,--out", out, "output ARFF (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*inspect) return cmd_inspect(in);
        if (*convert) return cmd_convert(in, out, relation);
        if (*select) return cmd_select(in, method, search, max_stale, bins, co.threads, out);
        if (*trainc) return cmd_train(in, co, train_features, out);
        if (*predict) return cmd_predict(model_path, in, out);
        if (*evaluate) return cmd_grid(in, co, grid, true);
        if (*experiment) return cmd_grid(in, co, grid, false);
        if (*generate) return cmd_generate(model_path, in.schema, rows, co.seed, relation, out);
    } catch (const NotFound& e) {
        std::cerr << "heartml: " << e.what() << '\n';
        return kNotFound;
    } catch (const ParseError& e) {
        std::cerr << "heartml: parse error";
        if (e.line()) std::cerr << " at line " << *e.line();
        std::cerr << ": " << e.what() << '\n';
        return kParse;
    } catch (const ConfigError& e) {
        std::cerr << "heartml: configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const TrainingError& e) {
        std::cerr << "heartml: training failed: " << e.what() << '\n';
        return kTraining;
    } catch (const MetricError& e) {
        std::cerr << "heartml: " << e.what() << '\n';
        return kTraining;
    } catch (const std::exception& e) {
        std::cerr << "heartml: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
