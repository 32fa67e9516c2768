#include "glv4/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace glv4 {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FormatError("instance file lacks '" + key + "'");
  return it->second;
}

Int hex_of(const std::map<std::string, std::string>& kv, const std::string& key) {
  return from_hex(need(kv, key));
}

std::optional<Int> opt_hex(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) return std::nullopt;
  return from_hex(it->second);
}

void common(std::ostringstream& o, const GlvCurve& c) {
  o << "family=" << c.info->name << "\n";
  o << "p=" << to_hex(c.p()) << "\n";
  if (c.info->id == Family::E1 || c.info->id == Family::E2) o << "coeff=" << to_hex(c.coeff) << "\n";
  o << "root=" << to_hex(c.root.value()) << "\n";
}

GlvCurve curve_of(const std::map<std::string, std::string>& kv) {
  return catalog_get(parse_family(need(kv, "family")), hex_of(kv, "p"), opt_hex(kv, "coeff"),
                     opt_hex(kv, "root"));
}

}  // namespace

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("line " + std::to_string(no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw FormatError("line " + std::to_string(no) + ": empty key");
    if (!kv.emplace(key, value).second) throw FormatError("repeated key '" + key + "'");
  }
  return kv;
}

std::string save_twist(const TwistInstance& t) {
  std::ostringstream o;
  o << "kind=twist\n";
  common(o, t.base);
  o << "beta=" << t.ext->beta_int().get_str() << "\n";
  o << "u=" << to_hex(t.u.re().value()) << "," << to_hex(t.u.im().value()) << "\n";
  o << "n=" << to_hex(t.n) << "\n";
  o << "h=" << to_hex(t.h) << "\n";
  o << "lambda=" << to_hex(t.lambda) << "\n";
  o << "mu=" << to_hex(t.mu) << "\n";
  o << "generator=" << serialize(t.P) << "\n";
  return o.str();
}

std::string save_base(const BaseInstance& b) {
  std::ostringstream o;
  o << "kind=base\n";
  common(o, b.base);
  o << "n=" << to_hex(b.n) << "\n";
  o << "h=" << to_hex(b.h) << "\n";
  o << "lambda=" << to_hex(b.lambda) << "\n";
  o << "generator=" << serialize(b.P) << "\n";
  return o.str();
}

LoadedInstance load_instance(const std::string& text) {
  auto kv = parse_kv(text);
  const std::string& kind = need(kv, "kind");
  LoadedInstance li;
  if (kind == "twist") {
    GlvCurve c = curve_of(kv);
    const std::string& u = need(kv, "u");
    auto comma = u.find(',');
    if (comma == std::string::npos) throw FormatError("u must be <re>,<im>");
    li.twist = rebuild_twist(c, from_dec(need(kv, "beta")),
                             {from_hex(trim(u.substr(0, comma))), from_hex(trim(u.substr(comma + 1)))},
                             hex_of(kv, "n"),
                             hex_of(kv, "h"), hex_of(kv, "lambda"), hex_of(kv, "mu"),
                             need(kv, "generator"));
  } else if (kind == "base") {
    GlvCurve c = curve_of(kv);
    li.base = rebuild_base(c, hex_of(kv, "n"), hex_of(kv, "h"), hex_of(kv, "lambda"),
                           need(kv, "generator"));
  } else {
    throw FormatError("unknown kind '" + kind + "'");
  }
  return li;
}

LoadedInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

}  // namespace glv4
