#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ocd {

// n x p matrix of 1-based ordinal category codes, stored column-major.
// Every code in column j lies in 1..levels[j], levels[j] >= 2, n >= 1.
class OrdinalDataset {
public:
    // Validates the invariants; throws ValidationError / DegenerateColumn.
    OrdinalDataset(std::vector<std::string> names, std::vector<int> levels,
                   std::vector<std::vector<int>> columns);

    std::size_t num_rows() const noexcept { return num_rows_; }
    int num_columns() const noexcept { return static_cast<int>(columns_.size()); }

    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<int>& levels() const noexcept { return levels_; }
    int levels(int j) const { return levels_.at(j); }

    std::span<const int> column(int j) const { return columns_.at(j); }
    int at(std::size_t row, int col) const { return columns_[col][row]; }

    // New dataset with the given columns, in the given order.
    OrdinalDataset select(std::span<const int> cols) const;

    bool operator==(const OrdinalDataset&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<int> levels_;
    std::vector<std::vector<int>> columns_;
    std::size_t num_rows_ = 0;
};

// Either a declared level count per column or inferred from the column max.
struct LevelsSpec {
    std::optional<std::vector<int>> declared;

    static LevelsSpec automatic() { return {}; }
    // Parses "auto" or "l1,l2,...".
    static LevelsSpec parse(const std::string& text);
};

OrdinalDataset parse_ordinal_csv(std::istream& in, const LevelsSpec& levels);
OrdinalDataset read_ordinal_csv(const std::filesystem::path& path, const LevelsSpec& levels);

void write_csv(std::ostream& out, const OrdinalDataset& data);
void write_csv(const std::filesystem::path& path, const OrdinalDataset& data);

// Raw real-valued table, the input to the discretizers.
struct RealTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};

RealTable parse_real_csv(std::istream& in);
RealTable read_real_csv(const std::filesystem::path& path);

// Code l iff q_{(l-1)/L} < v <= q_{l/L}, where q_t is the ceil(t*n)-th order
// statistic. Throws DegenerateColumn if any of the L bins ends up empty.
std::vector<int> quantile_discretize(std::span<const double> raw, int num_levels);

// 1 for zero, 2 for 0 < v <= median of the nonzero values, 3 above. Throws
// DegenerateColumn if a bin is empty, ValidationError on negative input.
std::vector<int> trichotomize_zero_median(std::span<const double> raw);

OrdinalDataset discretize_table(const RealTable& table, int num_levels);
OrdinalDataset trichotomize_table(const RealTable& table);

}  // namespace ocd
