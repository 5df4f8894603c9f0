#include "ocd/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ocd/error.hpp"

namespace ocd {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

// Reads the header and the remaining non-blank rows, checking row lengths.
struct RawCsv {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> rows;
};

RawCsv read_raw_csv(std::istream& in) {
    RawCsv csv;
    std::string line;
    while (std::getline(in, line) && is_blank(line)) {
    }
    if (is_blank(line)) throw Error(ErrorKind::ParseError, "CSV is empty; header row required");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    for (auto field : split_fields(line)) {
        if (field.empty()) throw Error(ErrorKind::ParseError, "empty column name in header");
        csv.names.push_back(unquote(field));
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        auto fields = split_fields(line);
        if (fields.size() != csv.names.size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                   std::to_string(csv.names.size()) +
                                                   " fields, got " + std::to_string(fields.size()));
        }
        std::vector<std::string> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            if (f.empty()) {
                throw Error(ErrorKind::ParseError,
                            "line " + std::to_string(line_no) + ": missing value");
            }
            row.emplace_back(f);
        }
        csv.rows.push_back(std::move(row));
    }
    if (csv.rows.empty()) throw Error(ErrorKind::ParseError, "CSV has no data rows");
    return csv;
}

int parse_int(std::string_view s, std::size_t row, std::size_t col) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorKind::ParseError, "row " + std::to_string(row + 1) + ", column " +
                                               std::to_string(col + 1) + ": '" + std::string(s) +
                                               "' is not an integer");
    }
    return value;
}

double parse_double(std::string_view s, std::size_t row, std::size_t col) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw Error(ErrorKind::ParseError, "row " + std::to_string(row + 1) + ", column " +
                                               std::to_string(col + 1) + ": '" + std::string(s) +
                                               "' is not a finite number");
    }
    return value;
}

}  // namespace

OrdinalDataset::OrdinalDataset(std::vector<std::string> names, std::vector<int> levels,
                               std::vector<std::vector<int>> columns)
    : names_(std::move(names)), levels_(std::move(levels)), columns_(std::move(columns)) {
    if (columns_.empty()) throw Error(ErrorKind::ValidationError, "dataset has no columns");
    if (names_.size() != columns_.size() || levels_.size() != columns_.size()) {
        throw Error(ErrorKind::ValidationError, "names, levels and columns disagree in count");
    }
    num_rows_ = columns_.front().size();
    if (num_rows_ == 0) throw Error(ErrorKind::ValidationError, "dataset has no rows");
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j].size() != num_rows_) {
            throw Error(ErrorKind::ValidationError, "column '" + names_[j] + "' has wrong length");
        }
        if (levels_[j] < 2) {
            throw Error(ErrorKind::DegenerateColumn,
                        "column '" + names_[j] + "' has fewer than 2 levels");
        }
        for (std::size_t i = 0; i < num_rows_; ++i) {
            const int code = columns_[j][i];
            if (code < 1 || code > levels_[j]) {
                throw Error(ErrorKind::ValidationError,
                            "column '" + names_[j] + "', row " + std::to_string(i + 1) +
                                ": code " + std::to_string(code) + " outside 1.." +
                                std::to_string(levels_[j]));
            }
        }
    }
}

OrdinalDataset OrdinalDataset::select(std::span<const int> cols) const {
    std::vector<std::string> names;
    std::vector<int> levels;
    std::vector<std::vector<int>> columns;
    for (int c : cols) {
        names.push_back(names_.at(c));
        levels.push_back(levels_.at(c));
        columns.push_back(columns_.at(c));
    }
    return OrdinalDataset(std::move(names), std::move(levels), std::move(columns));
}

LevelsSpec LevelsSpec::parse(const std::string& text) {
    if (text.empty() || text == "auto") return automatic();
    std::vector<int> levels;
    for (auto field : split_fields(text)) levels.push_back(parse_int(field, 0, levels.size()));
    return LevelsSpec{std::move(levels)};
}

OrdinalDataset parse_ordinal_csv(std::istream& in, const LevelsSpec& spec) {
    RawCsv csv = read_raw_csv(in);
    const std::size_t p = csv.names.size();
    std::vector<std::vector<int>> columns(p, std::vector<int>(csv.rows.size()));
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        for (std::size_t j = 0; j < p; ++j) columns[j][i] = parse_int(csv.rows[i][j], i, j);
    }
    std::vector<int> levels;
    if (spec.declared) {
        if (spec.declared->size() != p) {
            throw Error(ErrorKind::ValidationError,
                        "declared " + std::to_string(spec.declared->size()) +
                            " level counts for " + std::to_string(p) + " columns");
        }
        levels = *spec.declared;
    } else {
        for (std::size_t j = 0; j < p; ++j) {
            const int lo = *std::min_element(columns[j].begin(), columns[j].end());
            const int hi = *std::max_element(columns[j].begin(), columns[j].end());
            if (lo < 1) {
                throw Error(ErrorKind::ValidationError,
                            "column '" + csv.names[j] + "' has code " + std::to_string(lo) +
                                "; codes are 1-based");
            }
            if (lo == hi) {
                throw Error(ErrorKind::DegenerateColumn,
                            "column '" + csv.names[j] + "' is constant");
            }
            levels.push_back(hi);
        }
    }
    return OrdinalDataset(std::move(csv.names), std::move(levels), std::move(columns));
}

OrdinalDataset read_ordinal_csv(const std::filesystem::path& path, const LevelsSpec& levels) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_ordinal_csv(in, levels);
}

void write_csv(std::ostream& out, const OrdinalDataset& data) {
    const int p = data.num_columns();
    for (int j = 0; j < p; ++j) out << (j ? "," : "") << data.names()[j];
    out << '\n';
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
        for (int j = 0; j < p; ++j) out << (j ? "," : "") << data.at(i, j);
        out << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const OrdinalDataset& data) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    write_csv(out, data);
}

RealTable parse_real_csv(std::istream& in) {
    RawCsv csv = read_raw_csv(in);
    RealTable table{std::move(csv.names), {}};
    table.columns.assign(table.names.size(), std::vector<double>(csv.rows.size()));
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        for (std::size_t j = 0; j < table.names.size(); ++j) {
            table.columns[j][i] = parse_double(csv.rows[i][j], i, j);
        }
    }
    return table;
}

RealTable read_real_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_real_csv(in);
}

std::vector<int> quantile_discretize(std::span<const double> raw, int num_levels) {
    if (num_levels < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 levels");
    const std::size_t n = raw.size();
    if (n == 0) throw Error(ErrorKind::DegenerateColumn, "cannot discretize an empty column");
    std::vector<double> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end());
    const auto L = static_cast<std::size_t>(num_levels);
    // upper[l-1] = q_{l/L} = ceil(l*n/L)-th order statistic (1-based).
    std::vector<double> upper(L - 1);
    for (std::size_t l = 1; l < L; ++l) upper[l - 1] = sorted[(l * n + L - 1) / L - 1];

    std::vector<int> codes(n);
    std::vector<std::size_t> counts(L, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto bin = std::lower_bound(upper.begin(), upper.end(), raw[i]) - upper.begin();
        codes[i] = static_cast<int>(bin) + 1;
        ++counts[bin];
    }
    for (std::size_t l = 0; l < L; ++l) {
        if (counts[l] == 0) {
            throw Error(ErrorKind::DegenerateColumn,
                        "quantile bin " + std::to_string(l + 1) + " of " + std::to_string(L) +
                            " is empty (too many ties)");
        }
    }
    return codes;
}

std::vector<int> trichotomize_zero_median(std::span<const double> raw) {
    std::vector<double> nonzero;
    for (double v : raw) {
        if (v < 0) throw Error(ErrorKind::ValidationError, "trichotomization needs nonnegative data");
        if (v != 0) nonzero.push_back(v);
    }
    if (nonzero.size() == raw.size()) {
        throw Error(ErrorKind::DegenerateColumn, "no zeros: the low bin would be empty");
    }
    if (nonzero.empty()) throw Error(ErrorKind::DegenerateColumn, "all values are zero");
    std::sort(nonzero.begin(), nonzero.end());
    const std::size_t m = nonzero.size();
    const double median =
        m % 2 == 1 ? nonzero[m / 2] : 0.5 * (nonzero[m / 2 - 1] + nonzero[m / 2]);

    std::vector<int> codes(raw.size());
    std::array<std::size_t, 3> counts{};
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = raw[i];
        codes[i] = v == 0 ? 1 : (v <= median ? 2 : 3);
        ++counts[codes[i] - 1];
    }
    if (counts[1] == 0 || counts[2] == 0) {
        throw Error(ErrorKind::DegenerateColumn,
                    "nonzero values do not split at their median (need two distinct values)");
    }
    return codes;
}

OrdinalDataset discretize_table(const RealTable& table, int num_levels) {
    std::vector<std::vector<int>> columns;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        try {
            columns.push_back(quantile_discretize(table.columns[j], num_levels));
        } catch (const Error& e) {
            throw Error(e.kind(), "column '" + table.names[j] + "': " + e.what());
        }
    }
    return OrdinalDataset(table.names, std::vector<int>(table.columns.size(), num_levels),
                          std::move(columns));
}

OrdinalDataset trichotomize_table(const RealTable& table) {
    std::vector<std::vector<int>> columns;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        try {
            columns.push_back(trichotomize_zero_median(table.columns[j]));
        } catch (const Error& e) {
            throw Error(e.kind(), "column '" + table.names[j] + "': " + e.what());
        }
    }
    return OrdinalDataset(table.names, std::vector<int>(table.columns.size(), 3),
                          std::move(columns));
}

}  // namespace ocd
