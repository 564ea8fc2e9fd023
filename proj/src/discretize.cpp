#include "heartml/discretize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "heartml/errors.hpp"
#include "heartml/info.hpp"

namespace heartml {

namespace {

struct Point {
    double value;
    std::uint32_t cls;
};

std::vector<Point> sorted_points(const Dataset& ds, std::size_t attr) {
    if (attr >= ds.width() || !ds.schema()[attr].is_numeric())
        throw ConfigError("NotNumeric: attribute " + std::to_string(attr) + " is not numeric");
    const auto t = ds.schema().target_index();
    std::vector<Point> pts;
    pts.reserve(ds.size());
    for (std::size_t r = 0; r < ds.size(); ++r) {
        const auto& v = ds.at(r, attr);
        const auto& c = ds.at(r, t);
        if (v.is_numeric() && c.is_nominal()) pts.push_back({v.number(), c.index()});
    }
    std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.value < b.value; });
    return pts;
}

double midpoint(double lo, double hi) {
    const double m = lo + (hi - lo) / 2.0;
    return m < hi ? m : lo;
}

std::size_t classes_present(std::span<const double> counts) {
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0.0; }));
}

void mdl_cuts(std::span<const Point> pts, std::size_t classes, bool mdl_stopping, bool recurse,
              std::vector<double>& out) {
    const std::size_t n = pts.size();
    if (n < 2) return;
    std::vector<double> total(classes, 0.0);
    for (const auto& p : pts) total[p.cls] += 1.0;
    const double h_all = entropy(total);
    if (h_all <= 0.0) return;

    std::vector<double> left(classes, 0.0), right;
    double best_h = INFINITY;
    std::size_t best_i = 0;
    std::vector<double> best_left, best_right;
    for (std::size_t i = 1; i < n; ++i) {
        left[pts[i - 1].cls] += 1.0;
        if (!(pts[i - 1].value < pts[i].value)) continue;
        right = total;
        for (std::size_t c = 0; c < classes; ++c) right[c] -= left[c];
        const double nl = static_cast<double>(i), nr = static_cast<double>(n - i);
        const double h = (nl * entropy(left) + nr * entropy(right)) / static_cast<double>(n);
        if (h < best_h - 1e-12) {
            best_h = h;
            best_i = i;
            best_left = left;
            best_right = right;
        }
    }
    if (best_i == 0) return;

    const double gain = h_all - best_h;
    if (mdl_stopping) {
        const double nn = static_cast<double>(n);
        const double k = static_cast<double>(classes_present(total));
        const double k1 = static_cast<double>(classes_present(best_left));
        const double k2 = static_cast<double>(classes_present(best_right));
        const double delta =
            std::log2(std::pow(3.0, k) - 2.0) - (k * h_all - k1 * entropy(best_left) - k2 * entropy(best_right));
        const double threshold = (std::log2(nn - 1.0) + delta) / nn;
        if (!(gain > threshold)) return;
    } else if (!(gain > 0.0)) {
        return;
    }

    out.push_back(midpoint(pts[best_i - 1].value, pts[best_i].value));
    if (recurse) {
        mdl_cuts(pts.subspan(0, best_i), classes, mdl_stopping, recurse, out);
        mdl_cuts(pts.subspan(best_i), classes, mdl_stopping, recurse, out);
    }
}

}  // namespace

std::size_t DiscretizationMap::levels(const Schema& schema, std::size_t attr) const {
    if (schema[attr].is_nominal()) return schema[attr].category_count();
    return (attr < cuts.size() ? cuts[attr].size() : 0) + 1;
}

std::int32_t DiscretizationMap::code(const Schema& schema, std::size_t attr, const Value& v) const {
    if (v.is_missing()) return -1;
    if (v.is_nominal()) return static_cast<std::int32_t>(v.index());
    if (attr >= cuts.size()) return 0;
    const auto& c = cuts[attr];
    (void)schema;
    return static_cast<std::int32_t>(std::lower_bound(c.begin(), c.end(), v.number()) - c.begin());
}

BinningOptions parse_binning(std::string_view text) {
    BinningOptions opt;
    if (text == "mdl") return opt;
    constexpr std::string_view prefix = "equal-frequency:";
    if (text.starts_with(prefix)) {
        auto num = text.substr(prefix.size());
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
        if (ec == std::errc{} && ptr == num.data() + num.size() && k >= 1) {
            opt.method = BinningMethod::EqualFrequency;
            opt.bins = k;
            return opt;
        }
    }
    throw ConfigError("unknown binning '" + std::string(text) + "' (expected mdl or equal-frequency:k)");
}

std::vector<double> discretize_mdl(const Dataset& ds, std::size_t attr, bool mdl_stopping) {
    auto pts = sorted_points(ds, attr);
    std::vector<double> cuts;
    mdl_cuts(pts, ds.schema().class_count(), mdl_stopping, mdl_stopping, cuts);
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

std::vector<double> discretize_equal_frequency(const Dataset& ds, std::size_t attr, std::size_t bins) {
    auto pts = sorted_points(ds, attr);
    std::vector<double> cuts;
    const std::size_t n = pts.size();
    if (bins < 2 || n < 2) return cuts;
    for (std::size_t b = 1; b < bins; ++b) {
        std::size_t pos = b * n / bins;
        if (pos == 0 || pos >= n) continue;
        // Move to the next value change so equal values share a bin.
        while (pos < n && !(pts[pos - 1].value < pts[pos].value)) ++pos;
        if (pos >= n) break;
        const double cut = midpoint(pts[pos - 1].value, pts[pos].value);
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
    }
    return cuts;
}

DiscretizationMap build_discretization(const Dataset& ds, const BinningOptions& options) {
    DiscretizationMap map;
    map.cuts.resize(ds.width());
    for (auto a : ds.schema().feature_indices()) {
        if (!ds.schema()[a].is_numeric()) continue;
        map.cuts[a] = options.method == BinningMethod::Mdl ? discretize_mdl(ds, a, options.mdl_stopping)
                                                           : discretize_equal_frequency(ds, a, options.bins);
    }
    return map;
}

}  // namespace heartml
