#pragma once

#include <map>
#include <optional>
#include <string>

#include "glv4/catalog.hpp"

namespace glv4 {

// key=value lines; blank lines and lines starting with '#' are skipped.
// Throws FormatError on a malformed line or a repeated key.
std::map<std::string, std::string> parse_kv(const std::string& text);

// Integers are lowercase hex, beta is signed decimal, the generator uses the
// point encoding of serialize(); u is stored as <re>,<im>.
std::string save_twist(const TwistInstance& t);
std::string save_base(const BaseInstance& b);

struct LoadedInstance {
  std::optional<TwistInstance> twist;  // kind=twist
  std::optional<BaseInstance> base;    // kind=base
};

// Rebuilds and re-verifies the stored instance. Throws FormatError for
// missing keys, InvalidCurve when the data is inconsistent.
LoadedInstance load_instance(const std::string& text);
LoadedInstance load_instance_file(const std::string& path);

}  // namespace glv4
