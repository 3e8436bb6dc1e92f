#include "addxor/table_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "addxor/errors.hpp"

namespace addxor {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw table_format_error(what); }

}  // namespace

TruthTable parse_table_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top-level JSON value must be an object");
  for (const char* key : {"q", "k", "values"})
    if (!doc.contains(key)) bad(std::string("missing required key \"") + key + "\"");
  for (const auto& [key, value] : doc.items())
    if (key != "q" && key != "k" && key != "values")
      bad("unexpected key \"" + key + "\"");

  if (!doc["q"].is_number_unsigned()) bad("\"q\" must be a non-negative integer");
  const std::uint64_t q = doc["q"].get<std::uint64_t>();
  Modulus m = [&] {
    try {
      return Modulus::from_q(static_cast<std::uint32_t>(q));
    } catch (const std::exception& e) {
      bad("\"q\" is not a supported modulus: " + std::string(e.what()));
    }
  }();

  if (!doc["k"].is_number_unsigned() || doc["k"].get<std::uint64_t>() == 0)
    bad("\"k\" must be a positive integer");
  const std::uint64_t k = doc["k"].get<std::uint64_t>();
  if (k > 64) bad("\"k\" = " + std::to_string(k) + " is far beyond the table guard");
  const std::uint64_t entries = table_size(m, static_cast<int>(k));

  if (!doc["values"].is_array()) bad("\"values\" must be an array");
  const json& values = doc["values"];
  if (values.size() != entries)
    bad("\"values\" has " + std::to_string(values.size()) +
        " entries but q^k = " + std::to_string(entries));

  std::vector<std::uint32_t> table(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number_unsigned())
      bad("values[" + std::to_string(i) + "] is not a non-negative integer");
    const std::uint64_t v = values[i].get<std::uint64_t>();
    if (v >= m.q())
      bad("values[" + std::to_string(i) + "] = " + std::to_string(v) +
          " is out of range for q = " + std::to_string(m.q()));
    table[i] = static_cast<std::uint32_t>(v);
  }
  return TruthTable(m, static_cast<int>(k), std::move(table));
}

TruthTable load_table_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw table_format_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_table_json(buf.str());
  } catch (const table_format_error& e) {
    throw table_format_error(path + ": " + e.what());
  }
}

std::string render_table_values(const TruthTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out;
}

}  // namespace addxor
