#include "mmf/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mmf/errors.hpp"

namespace mmf {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParameterError(where + ": missing \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParameterError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

MixtureSpec parse_spec_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw ParameterError("spec must be a JSON object");
  if (!j.contains("components") || !j.at("components").is_array())
    throw ParameterError("spec: \"components\" must be an array");
  std::vector<Component> comps;
  std::size_t k = 0;
  for (const auto& c : j.at("components")) {
    const std::string where = "components[" + std::to_string(k++) + "]";
    if (!c.is_object()) throw ParameterError(where + " must be an object");
    comps.push_back({number(c, "sigma", where), number(c, "hurst", where)});
  }
  std::optional<double> lambda;
  if (j.contains("lambda") && !j.at("lambda").is_null()) lambda = number(j, "lambda", "spec");
  return MixtureSpec(std::move(comps), lambda);
}

std::string spec_to_json(const MixtureSpec& spec) {
  nlohmann::ordered_json j;
  j["components"] = nlohmann::ordered_json::array();
  for (const auto& c : spec.components()) j["components"].push_back({{"sigma", c.sigma}, {"hurst", c.hurst}});
  if (spec.lambda()) j["lambda"] = *spec.lambda();
  return j.dump();
}

ScheduleFamily parse_schedule_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw ParameterError("schedule must be a JSON object");
  ScheduleFamily f;
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ParameterError("schedule: \"kind\" must be a string");
  f.kind = parse_schedule_kind(j.at("kind").get<std::string>());
  if (j.contains("h_lo")) f.h_lo = number(j, "h_lo", "schedule");
  if (j.contains("h_hi")) f.h_hi = number(j, "h_hi", "schedule");
  if (j.contains("count")) {
    if (!j.at("count").is_number_integer()) throw ParameterError("schedule: \"count\" must be an integer");
    f.count = j.at("count").get<int>();
  }
  if (j.contains("decay")) f.decay = number(j, "decay", "schedule");
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string read_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return read_text_file(arg);
}

}  // namespace mmf
