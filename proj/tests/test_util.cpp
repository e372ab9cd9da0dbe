#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "flarko/util/csv.hpp"
#include "flarko/util/date.hpp"
#include "flarko/util/decimal.hpp"
#include "flarko/util/isin.hpp"

using namespace flarko;

TEST_CASE("date parses ISO and single-digit forms") {
    CHECK(Date::parse("2020-03-27").to_string() == "2020-03-27");
    CHECK(Date::parse("2020-3-27").to_string() == "2020-03-27");
    CHECK(Date::parse("2018-05-27").to_string() == "2018-05-27");
    CHECK(Date::parse("2021-06-05 00:00:00").to_string() == "2021-06-05");
    CHECK(Date::parse("2021-06-05T13:22:01").to_string() == "2021-06-05");
}

TEST_CASE("date rejects bad components") {
    CHECK(!Date::try_parse(""));
    CHECK(!Date::try_parse("20200327"));
    CHECK(!Date::try_parse("2020-13-01"));
    CHECK(!Date::try_parse("2021-02-29"));
    CHECK(Date::try_parse("2020-02-29"));  // leap year
    CHECK(!Date::try_parse("2020-04-31"));
    CHECK(!Date::try_parse("garbage"));
    CHECK_THROWS_AS(Date::parse("2020-00-01"), std::invalid_argument);
}

TEST_CASE("date arithmetic and ordering") {
    const Date a = Date::parse("2021-12-01");
    CHECK(a.add_days(363).to_string() == "2022-11-29");
    CHECK(a.add_days(350).to_string() == "2022-11-16");
    CHECK(Date::parse("2022-11-29") - a == 363);
    CHECK(a < Date::parse("2021-12-02"));
    CHECK(a.add_days(0) == a);
    CHECK(Date::parse("2019-12-31").add_days(1).to_string() == "2020-01-01");
}

TEST_CASE("decimal round trips shortest form") {
    CHECK(format_decimal(11000.0) == "11000");
    CHECK(format_decimal(35.5) == "35.5");
    CHECK(format_decimal(9.1679792) == "9.1679792");
    CHECK(format_decimal(8.54) == "8.54");
    CHECK(parse_decimal("9.1679792") == 9.1679792);
    CHECK(!parse_decimal("abc"));
    CHECK(!parse_decimal("1.2x"));
    CHECK(!parse_decimal(""));
    // round trip is exact
    for (double v : {0.1, 1.0 / 3.0, 123456.789, 1e-9}) {
        CHECK(*parse_decimal(format_decimal(v)) == v);
    }
}

TEST_CASE("csv handles quoting and separators") {
    std::istringstream in(
        "a,b,c\r\n"
        "1,\"two, with comma\",3\n"
        "4,\"line\nbreak\",\"doubled \"\"quote\"\"\"\n"
        " 7 , 8 ,9\n");
    CsvReader reader(in);
    CHECK(reader.header() == std::vector<std::string>{"a", "b", "c"});
    CHECK(reader.column("b") == 1);
    CHECK(reader.column("nope") == -1);

    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    CHECK(row == std::vector<std::string>{"1", "two, with comma", "3"});
    REQUIRE(reader.next(row));
    CHECK(row[1] == "line\nbreak");
    CHECK(row[2] == "doubled \"quote\"");
    REQUIRE(reader.next(row));
    CHECK(row == std::vector<std::string>{"7", "8", "9"});
    CHECK(reader.record_number() == 3);
    CHECK(!reader.next(row));
}

TEST_CASE("csv tolerates blank lines and missing trailing newline") {
    std::istringstream in("h1,h2\n\nx,y");
    CsvReader reader(in);
    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    CHECK(row == std::vector<std::string>{"x", "y"});
    CHECK(!reader.next(row));
}

TEST_CASE("isin validation") {
    CHECK(is_valid_isin("GRS434003000"));
    CHECK(is_valid_isin("US0378331005"));
    CHECK(!is_valid_isin("GRS43400300"));     // 11 chars
    CHECK(!is_valid_isin("GRS4340030001"));   // 13 chars
    CHECK(!is_valid_isin("G1S434003000"));    // digit in prefix
    CHECK(!is_valid_isin("GRS43400300A"));    // letter check digit
    CHECK(!is_valid_isin("grs434003000"));    // lowercase
}

TEST_CASE("isin token extraction respects boundaries") {
    const auto tokens = extract_isin_tokens(
        "1. GRS434003000 then XGRS434003000X embedded, and GRS495003006.");
    CHECK(tokens == std::vector<std::string>{"GRS434003000", "GRS495003006"});
    CHECK(extract_isin_tokens("").empty());
    CHECK(extract_isin_tokens("no isins here").empty());
}
