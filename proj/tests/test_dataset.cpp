#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ocd/dataset.hpp"
#include "ocd/error.hpp"
#include "ocd/rng.hpp"
#include "test_support.hpp"

using namespace ocd;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an ocd::Error");
    return ErrorKind::InvalidArgument;
}

OrdinalDataset parse(const std::string& text, const LevelsSpec& spec = LevelsSpec::automatic()) {
    std::istringstream in(text);
    return parse_ordinal_csv(in, spec);
}

}  // namespace

TEST_CASE("from_csv examples") {
    const auto d = parse("a,b\n1,3\n2,2\n3,1\n");
    CHECK(d.levels() == std::vector<int>{3, 3});
    CHECK(d.num_rows() == 3);
    CHECK(d.names() == std::vector<std::string>{"a", "b"});
    CHECK(d.at(0, 1) == 3);

    CHECK(kind_of([] { return parse("a,b\n0,1\n2,2\n"); }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { return parse("a,b\n1,1\n1,2\n"); }) == ErrorKind::DegenerateColumn);
    CHECK(kind_of([] { return parse("a,b\n2,1\n2,2\n"); }) == ErrorKind::DegenerateColumn);
}

TEST_CASE("from_csv parse and declared-level errors") {
    CHECK(kind_of([] { return parse("a,b\n1,x\n2,2\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { return parse("a,b\n1\n2,2\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { return parse("a,b\n1,1.5\n2,2\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { return parse("a,b\n1,3\n2,2\n", LevelsSpec::parse("2,2")); }) ==
          ErrorKind::ValidationError);
    const auto d = parse("a,b\n1,1\n2,2\n", LevelsSpec::parse("4,5"));
    CHECK(d.levels() == std::vector<int>{4, 5});
    CHECK(kind_of([] { return LevelsSpec::parse("2,x"); }) == ErrorKind::ParseError);
}

TEST_CASE("csv round trip") {
    Rng rng(5);
    const auto d = ocd::testing::uniform_dataset(40, {3, 5, 2}, rng);
    std::stringstream buf;
    write_csv(buf, d);
    CHECK(parse_ordinal_csv(buf, LevelsSpec::parse("3,5,2")) == d);
}

TEST_CASE("quantile_discretize examples") {
    const std::vector<double> a{0.1, 0.4, 0.9, 1.6};
    CHECK(quantile_discretize(a, 2) == std::vector<int>{1, 1, 2, 2});
    const std::vector<double> b{1, 2, 3, 4, 5, 6};
    CHECK(quantile_discretize(b, 3) == std::vector<int>{1, 1, 2, 2, 3, 3});
    const std::vector<double> c{5, 5, 5, 5};
    CHECK(kind_of([&] { return quantile_discretize(c, 2); }) == ErrorKind::DegenerateColumn);
}

TEST_CASE("quantile_discretize properties") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 20 + rng.uniform_index(200);
        const int L = 2 + static_cast<int>(rng.uniform_index(6));
        std::vector<double> raw(n);
        for (auto& v : raw) v = rng.normal();
        const auto codes = quantile_discretize(raw, L);

        std::vector<int> counts(L, 0);
        for (int c : codes) ++counts[c - 1];
        CHECK(*std::max_element(counts.begin(), counts.end()) -
                  *std::min_element(counts.begin(), counts.end()) <=
              1);

        std::vector<double> transformed(n);
        for (std::size_t i = 0; i < n; ++i) transformed[i] = std::exp(3 * raw[i]) + 7;
        CHECK(quantile_discretize(transformed, L) == codes);
    }
}

TEST_CASE("trichotomize_zero_median examples") {
    const std::vector<double> a{0, 1, 3, 5};
    CHECK(trichotomize_zero_median(a) == std::vector<int>{1, 2, 2, 3});
    const std::vector<double> b{0, 0, 2, 8};
    CHECK(trichotomize_zero_median(b) == std::vector<int>{1, 1, 2, 3});
    const std::vector<double> c{1, 2, 3};
    CHECK(kind_of([&] { return trichotomize_zero_median(c); }) == ErrorKind::DegenerateColumn);
    const std::vector<double> d{0, 4, 4};
    CHECK(kind_of([&] { return trichotomize_zero_median(d); }) == ErrorKind::DegenerateColumn);
    const std::vector<double> e{0, -1, 3};
    CHECK(kind_of([&] { return trichotomize_zero_median(e); }) == ErrorKind::ValidationError);
}

TEST_CASE("dataset invariants") {
    CHECK(kind_of([] { return ocd::testing::make_dataset({{1, 2, 3}}, {2}); }) ==
          ErrorKind::ValidationError);
    CHECK(kind_of([] { return ocd::testing::make_dataset({{1, 1}}, {1}); }) ==
          ErrorKind::DegenerateColumn);
    const auto d = ocd::testing::make_dataset({{1, 2}, {2, 1}, {1, 1}}, {2, 2, 2});
    const std::vector<int> cols{2, 0};
    const auto s = d.select(cols);
    CHECK(s.num_columns() == 2);
    CHECK(s.names() == std::vector<std::string>{"V3", "V1"});
    CHECK(s.at(1, 1) == 2);
}
