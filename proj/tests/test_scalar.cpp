#include "wcheb/case_file.hpp"
#include "wcheb/error.hpp"
#include "wcheb/scalar.hpp"
#include "wcheb/sequence.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace wcheb;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num) / Rational(den); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ParseError;
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("wcheb_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("decimal strings parse exactly") {
    CHECK(parse_decimal("0.5") == q(1, 2));
    CHECK(parse_decimal("-12.5") == q(-25, 2));
    CHECK(parse_decimal("3e-2") == q(3, 100));
    CHECK(parse_decimal("7") == q(7));
    CHECK(parse_decimal("2/3") == q(2, 3));
    CHECK(parse_decimal("+1.25E1") == q(25, 2));
    CHECK(parse_decimal("0.1") != Rational(0.1));
}

TEST_CASE("leading zeros are decimal, never octal") {
    CHECK(parse_decimal("0.1234567") == q(1234567, 10000000));
    CHECK(parse_decimal("0.851827") == q(851827, 1000000));
    CHECK(parse_decimal("010") == q(10));
    CHECK(parse_decimal("0017") == q(17));
    CHECK(parse_decimal("09") == q(9));
    CHECK(parse_decimal("010/012") == q(10, 12));
    CHECK(parse_decimal("0.000") == q(0));
    CHECK(parse_decimal("-0.0123") == q(-123, 10000));
}

TEST_CASE("malformed numbers are parse errors") {
    for (const char* bad : {"", "abc", "1.2.3", "1/0", "--1", "1e", "nan", "inf"}) {
        INFO(bad);
        CHECK(kind_of([&] { (void)parse_decimal(bad); }) == ErrorKind::ParseError);
    }
}

TEST_CASE("decimal rendering") {
    CHECK(to_decimal_string(q(1, 4)) == "0.25");
    CHECK(to_decimal_string(q(-9, 4)) == "-2.25");
    CHECK(to_decimal_string(q(2, 3)) == "2/3");
    CHECK(to_decimal_string(q(5)) == "5");
    CHECK(parse_decimal(to_decimal_string(q(-22, 225))) == q(-22, 225));
    CHECK(std::stod(to_decimal_string(0.1)) == 0.1);
}

TEST_CASE("tolerance band") {
    const Tolerance tol;
    CHECK(tol.band(1.0) == Catch::Approx(1e-9));
    CHECK(tol.band(0.0) == 1e-12);
    CHECK(weakly_leq(1.0 + 1e-10, 1.0, 1.0, tol));
    CHECK_FALSE(weakly_leq(1.0 + 1e-8, 1.0, 1.0, tol));
    CHECK_FALSE(weakly_leq(q(1) + q(1, 1000000000000LL), q(1), 1.0, tol));
}

TEST_CASE("sequences validate their entries") {
    CHECK(kind_of([] { RealSeq s{1.0}; }) == ErrorKind::TooShort);
    try {
        RealSeq s{1.0, std::numeric_limits<double>::quiet_NaN(), 2.0};
        FAIL("accepted NaN");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFiniteInput);
        CHECK(e.index() == 2u);
    }
    const RealSeq a{-1.0, 2.0, 0.5};
    CHECK(a.positive_part() == RealSeq{0.0, 2.0, 0.5});
    CHECK(a.negative_part() == RealSeq{-1.0, 0.0, 0.0});
    CHECK(a.max_with(1.0) == RealSeq{1.0, 2.0, 1.0});
    CHECK(a.forward_difference() == std::vector<double>{3.0, -1.5});
    CHECK(a.reversed() == RealSeq{0.5, 2.0, -1.0});
}

TEST_CASE("weight regimes") {
    CHECK(WeightSeq<Rational>{q(1), q(2)}.regime() == WeightRegime::AllPositive);
    CHECK(WeightSeq<Rational>{q(1), q(0), q(0)}.regime() == WeightRegime::NonnegativePositiveTotal);
    const WeightSeq<Rational> bounded{q(1), q(-1, 2), q(1)};
    CHECK(bounded.regime() == WeightRegime::PartialSumBounded);
    CHECK(bounded.prefix_sums() == std::vector<Rational>{q(1), q(1, 2), q(3, 2)});
    CHECK(WeightSeq<Rational>{q(-1), q(2)}.regime() == WeightRegime::GeneralReal);
    CHECK(WeightSeq<double>{1.0, -0.5, 1.0}.regime() == WeightRegime::PartialSumBounded);
}

TEST_CASE("case files round-trip through JSON") {
    CaseFile c;
    c.label = "demo";
    c.p = {"1", "0.5"};
    c.a = {"-1", "2"};
    c.b = {"1", "2/3"};
    c.k = "0";
    c.x = std::vector<std::string>{"0.1", "0.2"};
    const CaseFile back = parse_case(serialize(c));
    CHECK(back == c);

    const auto exact = materialize<Rational>(c);
    CHECK(exact.b[1] == q(2, 3));
    CHECK(exact.p.total() == q(3, 2));
    CHECK(*exact.k == 0);
}

TEST_CASE("case file errors name the field") {
    auto message = [](const std::string& text) {
        try {
            (void)materialize<double>(parse_case(text));
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"p":["1","1"],"a":["1","x"],"b":["1","2"]})").find("a") != std::string::npos);
    CHECK(message(R"({"p":["1","1"],"a":["1","2"]})").find("b") != std::string::npos);
    CHECK(kind_of([] { (void)materialize<double>(parse_case(R"({"p":["1"],"a":["1"],"b":["1"]})")); }) ==
          ErrorKind::TooShort);
    CHECK(kind_of([] {
              (void)materialize<double>(parse_case(R"({"p":["1","1","1"],"a":["1","2"],"b":["1","2"]})"));
          }) == ErrorKind::LengthMismatch);
    CHECK(kind_of([] { (void)parse_case("{not json"); }) == ErrorKind::ParseError);
}

TEST_CASE("persisted cases are never overwritten") {
    const auto dir = fresh_dir("persist");
    CaseFile one;
    one.p = {"1", "1"};
    one.a = {"1", "2"};
    one.b = {"1", "2"};
    CaseFile two = one;
    two.b = {"2", "1"};

    const auto first = persist_case(one, dir, "7-0");
    CHECK(first.filename() == "7-0.json");
    CHECK(persist_case(one, dir, "7-0") == first);
    const auto second = persist_case(two, dir, "7-0");
    CHECK(second != first);
    CHECK(load_case(first) == one);
    CHECK(load_case(second) == two);
    CHECK(list_corpus(dir).size() == 2);
    std::filesystem::remove_all(dir);
}
