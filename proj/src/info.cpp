#include "heartml/info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace heartml {

double entropy(std::span<const double> counts) {
    double total = 0.0;
    for (double c : counts) total += c;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : counts)
        if (c > 0.0) h -= c / total * std::log2(c / total);
    return h;
}

std::vector<double> ContingencyTable::row_totals() const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c);
    return out;
}

std::vector<double> ContingencyTable::col_totals() const {
    std::vector<double> out(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[c] += at(r, c);
    return out;
}

double ContingencyTable::total() const { return std::accumulate(cells_.begin(), cells_.end(), 0.0); }

double ContingencyTable::mutual_information() const {
    const auto hr = entropy(row_totals());
    const auto hc = entropy(col_totals());
    const auto hj = entropy(cells_);
    return std::max(0.0, hr + hc - hj);
}

double ContingencyTable::symmetric_uncertainty() const {
    const auto hr = entropy(row_totals());
    const auto hc = entropy(col_totals());
    if (hr + hc <= 0.0) return 0.0;
    const auto hj = entropy(cells_);
    const double su = 2.0 * (hr + hc - hj) / (hr + hc);
    return std::clamp(su, 0.0, 1.0);
}

double symmetric_uncertainty(std::span<const std::int32_t> a, std::size_t a_levels, std::span<const std::int32_t> b,
                             std::size_t b_levels) {
    ContingencyTable t(a_levels, b_levels);
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] >= 0 && b[i] >= 0) t.add(static_cast<std::size_t>(a[i]), static_cast<std::size_t>(b[i]));
    return t.symmetric_uncertainty();
}

}  // namespace heartml
