#include <doctest.h>

#include "syncact/errors.hpp"
#include "syncact/text.hpp"

using namespace syncact;

TEST_SUITE("text") {
  TEST_CASE("display width counts code points") {
    CHECK(display_width("abc") == 3);
    CHECK(display_width("émotion") == 7);
    CHECK(display_width("⟨unlabeled⟩") == 11);
    CHECK(display_width("") == 0);
  }

  TEST_CASE("tables are left aligned with two spaces and no trailing blanks") {
    const std::string t = render_table({{"a", "bb"}, {"ccc", "d"}, {"é", "x"}});
    CHECK(t == "a    bb\nccc  d\né    x\n");
  }

  TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  }

  TEST_CASE("csv records") {
    CHECK(parse_csv_record("a,b,,c", 1) == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(parse_csv_record("\"a,b\",\"c\"\"d\"", 1) == std::vector<std::string>{"a,b", "c\"d"});
    CHECK(parse_csv_record("", 1) == std::vector<std::string>{""});
    CHECK_THROWS_AS(parse_csv_record("\"open", 4), ParseError);
    CHECK_THROWS_AS(parse_csv_record("\"a\"b", 4), ParseError);
    for (const auto& field : {"x", "a,b", "q\"q", "", " spaced "}) {
      CHECK(parse_csv_record(csv_field(field), 1) == std::vector<std::string>{field});
    }
  }
}
