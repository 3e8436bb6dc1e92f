// JSON ingestion for truth tables:
//   {"q": <int>, "k": <int>, "values": [<int>, ...]}
// with values in row-major tuple order, first argument most significant.
#pragma once

#include <string>
#include <string_view>

#include "addxor/anf.hpp"

namespace addxor {

// Parses and validates the document. Malformed JSON, wrong types, a bad
// modulus, a wrong value count, or an out-of-range entry throw
// table_format_error naming the offending position.
TruthTable parse_table_json(std::string_view text);

// Reads the file and parses it; the filename is included in errors.
TruthTable load_table_json(const std::string& path);

// Comma-separated values in row-major order, e.g. "0,1,2,7,4,5,6,3".
std::string render_table_values(const TruthTable& t);

}  // namespace addxor
