#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace heartml {

/// Shannon entropy in bits of a count vector (zero entries ignored, 0 for an empty vector).
double entropy(std::span<const double> counts);

/// Dense r x c table of joint counts.
class ContingencyTable {
public:
    ContingencyTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0.0) {}

    void add(std::size_t r, std::size_t c, double w = 1.0) { cells_[r * cols_ + c] += w; }
    double at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::vector<double> row_totals() const;
    std::vector<double> col_totals() const;
    double total() const;

    /// H(row variable) + H(col variable) - H(joint).
    double mutual_information() const;
    /// 2 * I / (H(row) + H(col)); 0 when both marginals are degenerate.
    double symmetric_uncertainty() const;

private:
    std::size_t rows_, cols_;
    std::vector<double> cells_;
};

/// Symmetric uncertainty of two discrete code columns; negative codes mark missing and are excluded pairwise.
double symmetric_uncertainty(std::span<const std::int32_t> a, std::size_t a_levels, std::span<const std::int32_t> b,
                             std::size_t b_levels);

}  // namespace heartml
