#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "entropy_gap/inequalities.hpp"
#include "entropy_gap/markov.hpp"
#include "entropy_gap/states.hpp"

namespace entropy_gap::io {

using json = nlohmann::json;

/// { "dims": [..], "labels": [..], "kind": "state"|"substate",
///   "matrix": [[re, im], ...] } with the matrix in row-major order.
json state_to_json(const MultipartiteState& state);
/// Throws ParseError on malformed, non-square or dims-inconsistent payloads.
MultipartiteState state_from_json(const json& j);

void save_state(const MultipartiteState& state, const std::filesystem::path& path);
MultipartiteState load_state(const std::filesystem::path& path);

/// Finite numbers as-is, +∞ as the string "+inf" (JSON has no infinity).
json number_to_json(double x);
json to_json(const ExtendedReal& x);
json to_json(const ChainVerdict& v);
json to_json(const IdentityCheck& c);
json to_json(const MarkovReport& r);
json to_json(const ScanSummary& s);

/// Two-space indented JSON plus trailing newline.
std::string dump(const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// %.17g, or "+inf"/"-inf".
std::string format_number(double x);

}  // namespace entropy_gap::io
