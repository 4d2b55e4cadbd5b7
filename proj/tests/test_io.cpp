#include "doctest.h"
#include "mmf/errors.hpp"
#include "mmf/format.hpp"
#include "mmf/io.hpp"

#include <clocale>

using namespace mmf;

TEST_CASE("spec json round trip") {
  const auto s = parse_spec_json(R"({"components":[{"sigma":1,"hurst":0.3},{"sigma":0.5,"hurst":0.7}],"lambda":2})");
  CHECK(s.size() == 2);
  CHECK(s.components()[1].sigma == 0.5);
  CHECK(*s.lambda() == 2.0);
  CHECK(parse_spec_json(spec_to_json(s)) == s);
  CHECK_FALSE(parse_spec_json(R"({"components":[{"sigma":1,"hurst":0.3}]})").lambda());
}

TEST_CASE("spec json schema errors") {
  CHECK_THROWS_AS(parse_spec_json("{"), ParameterError);
  CHECK_THROWS_AS(parse_spec_json(R"({"components":3})"), ParameterError);
  CHECK_THROWS_AS(parse_spec_json(R"({"components":[{"sigma":"a","hurst":0.3}]})"), ParameterError);
  try {
    parse_spec_json(R"({"components":[{"sigma":1}]})");
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("components[0]: missing \"hurst\"") != std::string::npos);
  }
}

TEST_CASE("schedule json") {
  const auto f = parse_schedule_json(R"({"kind":"factorial","h_lo":0.2,"h_hi":0.6,"count":5})");
  CHECK(f.kind == ScheduleKind::factorial);
  CHECK(f.count == 5);
  CHECK(f.h_hi == 0.6);
  CHECK_THROWS_AS(parse_schedule_json(R"({"kind":"weird"})"), ParameterError);
  CHECK_THROWS_AS(parse_schedule_json(R"({"kind":"harmonic","count":2.5})"), ParameterError);
}

TEST_CASE("inline or file arguments") {
  CHECK(read_json_argument("  {\"a\":1}") == "  {\"a\":1}");
  CHECK_THROWS_AS(read_json_argument("/definitely/missing.json"), IoError);
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(-2.5e-300) == "-2.5e-300");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  CHECK(format_real(0.5) == "0.5");
  std::setlocale(LC_NUMERIC, "C");
}
