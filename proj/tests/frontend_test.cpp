#include "doctest.h"
#include "support.hpp"

using namespace gosyn;
using namespace gosyn::testing;

TEST_CASE("types print and parse back") {
  for (const char* t : {"com", "exp -> com", "com * com -> com", "(com -> com) -> com",
                        "cell -> exp * (com -> com)"}) {
    TypePtr a = parse_type(t);
    CHECK(type_equal(a, parse_type(to_string(a))));
  }
  CHECK(to_string(parse_type("com -> com -> com")) == "com -> com -> com");
  CHECK(to_string(parse_type("(com -> com) -> com")) == "(com -> com) -> com");
}

TEST_CASE("surface syntax desugars to constants") {
  auto t = typed("new v in v := 1; if !v then skip else skip");
  CHECK(type_equal(t->type, Type::com()));
  CHECK(to_functional(*t).find("newvar") != std::string::npos);
  CHECK(type_equal(typed("<skip, 1>")->type, parse_type("com * exp")));
  CHECK(type_equal(typed("fst <skip, 1>")->type, Type::com()));
  CHECK(type_equal(typed("and")->type, parse_type("exp * exp -> exp")));
}

TEST_CASE("printed source parses to the same term") {
  TermGen gen(1);
  for (int i = 0; i < 100; ++i) {
    TermPtr t = gen.closed(i % 2 ? Type::com() : parse_type("com -> com"), i % 4);
    TermPtr back = parse(to_source(*t));
    CHECK_MESSAGE(term_equal(*t, *back), to_source(*t));
  }
}

TEST_CASE("sharing is allowed in pairs but not in applications") {
  CHECK_NOTHROW(typed("fn (x : com) -> <x, x>"));
  CHECK_NOTHROW(typed("fn (f : com -> com) -> (f skip); (f skip)"));
  try {
    typed("fn (x : com) -> x || x");
    FAIL("accepted");
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeErrorKind::Affinity);
  }
}

TEST_CASE("type errors are classified") {
  auto kind_of = [](const std::string& src) {
    try {
      typed(src);
    } catch (const TypeError& e) {
      return std::string(to_string(e.kind));
    }
    return std::string("none");
  };
  CHECK(kind_of("y") == "unbound");
  CHECK(kind_of("skip skip") == "mismatch");
  CHECK(kind_of("seq <1, skip>") == "mismatch");
  CHECK(kind_of("fn (f : com -> com) -> fn (x : com) -> f (f x)") == "affinity");
}

TEST_CASE("parse errors report position and expectations") {
  try {
    parse("fn (x : com) ->");
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 1);
    CHECK(!e.expected.empty());
  }
  try {
    parse("skip\n  ; )");
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 2);
  }
  CHECK_THROWS_AS(parse("2"), ParseError);
}

TEST_CASE("typechecking records the used context") {
  auto t = typecheck(parse("x; y"), {{"x", Type::com()}, {"y", Type::com()}, {"z", Type::exp()}});
  REQUIRE(t->context.size() == 2);
  CHECK(t->context[0].first == "x");
  CHECK(t->context[1].first == "y");
}
