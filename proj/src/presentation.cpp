#include "neq/presentation.hpp"

#include "neq/integer.hpp"

#include <json.hpp>

#include <cctype>
#include <optional>
#include <set>
#include <sstream>

namespace neq {

bool operator==(const CentralElement &a, const CentralElement &b) { return a.c == b.c && a.d == b.d; }

MalcevPresentation::MalcevPresentation(int n, std::vector<std::int64_t> l, std::vector<std::int64_t> k)
    : n_(n), l_(std::move(l)), k_(std::move(k)) {
  if (n_ < 0) throw SchemaError("n must be non-negative");
  for (auto v : l_)
    if (v < 1) throw SchemaError("torsion order " + std::to_string(v) + " is less than 1");
  for (auto v : k_)
    if (v < 1) throw SchemaError("torsion order " + std::to_string(v) + " is less than 1");
  const auto x = static_cast<std::size_t>(x_count());
  table_.assign(x * x, CentralElement{0, std::vector<std::int64_t>(k_.size(), 0)});
  powers_.assign(l_.size(), CentralElement{0, std::vector<std::int64_t>(k_.size(), 0)});
}

CentralElement MalcevPresentation::normalize(CentralElement value) const {
  if (value.d.size() > k_.size()) throw SchemaError("too many d exponents");
  value.d.resize(k_.size(), 0);
  for (std::size_t t = 0; t < k_.size(); ++t) value.d[t] = mod_floor(value.d[t], k_[t]);
  return value;
}

const CentralElement &MalcevPresentation::commutator(int u, int v) const {
  return table_[static_cast<std::size_t>(u) * x_count() + v];
}

void MalcevPresentation::set_commutator(int u, int v, CentralElement value) {
  if (u < 0 || v >= x_count() || u >= v) throw SchemaError("commutator entry requires u < v");
  table_[static_cast<std::size_t>(u) * x_count() + v] = normalize(std::move(value));
}

void MalcevPresentation::set_power(int i, CentralElement value) {
  if (i < 0 || i >= b_count()) throw SchemaError("power entry for unknown b generator");
  powers_[i] = normalize(std::move(value));
}

std::string MalcevPresentation::x_name(int u) const {
  return u < n_ ? generator_name(GenKind::A, u + 1) : generator_name(GenKind::B, u - n_ + 1);
}

MalcevPresentation heisenberg() { return higher_heisenberg(1); }

MalcevPresentation higher_heisenberg(int m) {
  MalcevPresentation p(2 * m, {}, {});
  for (int i = 0; i < m; ++i) p.set_commutator(2 * i, 2 * i + 1, CentralElement{1, {}});
  return p;
}

ValidationReport validate_presentation(const MalcevPresentation &p) {
  ValidationReport report;
  for (int i = 0; i < p.b_count(); ++i)
    if (p.b_orders()[i] < 2)
      report.failures.push_back("b" + std::to_string(i + 1) + " has torsion order " +
                                std::to_string(p.b_orders()[i]) + " < 2");
  for (int t = 0; t < p.d_count(); ++t)
    if (p.d_orders()[t] < 2)
      report.failures.push_back("d" + std::to_string(t + 1) + " has torsion order " +
                                std::to_string(p.d_orders()[t]) + " < 2");

  const int n = p.a_count();
  for (int i = 0; i < p.b_count(); ++i) {
    const int u = n + i;
    const std::int64_t order = p.b_orders()[i];
    for (int g = 0; g < p.x_count(); ++g) {
      if (g == u) continue;
      const CentralElement &z = g < u ? p.commutator(g, u) : p.commutator(u, g);
      const std::string pair = "[" + p.x_name(std::min(g, u)) + "," + p.x_name(std::max(g, u)) + "]";
      if (z.c != 0)
        report.failures.push_back(pair + ": " + std::to_string(order) + " * " + std::to_string(z.c) +
                                  " != 0 in the c exponent, but " + p.x_name(u) + " has order " +
                                  std::to_string(order));
      for (int t = 0; t < p.d_count(); ++t) {
        const std::int64_t kt = p.d_orders()[t];
        if (kt < 1) continue;
        if (mod_floor(checked::mul(order, z.d[t]), kt) != 0)
          report.failures.push_back(pair + ": " + std::to_string(order) + " * " + std::to_string(z.d[t]) +
                                    " is not 0 mod " + std::to_string(kt) + " in the d" +
                                    std::to_string(t + 1) + " exponent");
      }
    }
  }
  return report;
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, const std::string &context) {
  s = strip(s);
  if (s.empty()) throw SchemaError(context + ": expected an integer");
  std::string str(s);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(str, &used);
  } catch (const std::exception &) {
    throw SchemaError(context + ": invalid integer '" + str + "'");
  }
  if (used != str.size()) throw SchemaError(context + ": invalid integer '" + str + "'");
  return value;
}

std::vector<std::int64_t> parse_int_list(std::string_view s, const std::string &context) {
  s = strip(s);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw SchemaError(context + ": unbalanced brackets");
    s = strip(s.substr(1, s.size() - 2));
  }
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find_first_of(", \t", start);
    if (end == std::string_view::npos) end = s.size();
    std::string_view item = s.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_int(item, context));
    start = end + 1;
  }
  return out;
}

struct XGen {
  int position; // x-generator position
};

XGen parse_x_generator(std::string_view name, int n, int r, const std::string &context) {
  name = strip(name);
  if (name.size() < 2 || (name[0] != 'a' && name[0] != 'b'))
    throw SchemaError(context + ": expected an a or b generator, got '" + std::string(name) + "'");
  int index = static_cast<int>(parse_int(name.substr(1), context));
  if (name[0] == 'a') {
    if (index < 1 || index > n) throw SchemaError(context + ": unknown generator '" + std::string(name) + "'");
    return {index - 1};
  }
  if (index < 1 || index > r) throw SchemaError(context + ": unknown generator '" + std::string(name) + "'");
  return {n + index - 1};
}

/// "c^e * d1^f ..." or "1".
CentralElement parse_central(std::string_view s, int s_count, const std::string &context) {
  CentralElement out{0, std::vector<std::int64_t>(s_count, 0)};
  s = strip(s);
  if (s == "1" || s.empty()) return out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*')) ++pos;
    if (pos >= s.size()) break;
    std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string_view name = s.substr(start, pos - start);
    std::int64_t e = 1;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::size_t es = pos;
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      e = parse_int(s.substr(es, pos - es), context);
    }
    if (name == "c") {
      out.c = checked::add(out.c, e);
    } else if (name.size() >= 2 && name[0] == 'd') {
      int t = static_cast<int>(parse_int(name.substr(1), context));
      if (t < 1 || t > s_count) throw SchemaError(context + ": unknown central generator '" + std::string(name) + "'");
      out.d[t - 1] = checked::add(out.d[t - 1], e);
    } else {
      throw SchemaError(context + ": expected c or d generators on the right-hand side, got '" +
                        std::string(name) + "'");
    }
  }
  return out;
}

CentralElement negate(CentralElement z) {
  z.c = checked::neg(z.c);
  for (auto &v : z.d) v = checked::neg(v);
  return z;
}

void add_commutator(MalcevPresentation &p, std::set<std::pair<int, int>> &seen, int u, int v, CentralElement z,
                    const std::string &context) {
  if (u == v) throw SchemaError(context + ": commutator of a generator with itself");
  if (u > v) {
    std::swap(u, v);
    z = negate(std::move(z));
  }
  if (!seen.insert({u, v}).second)
    throw SchemaError(context + ": duplicate commutator entry [" + p.x_name(u) + "," + p.x_name(v) + "]");
  p.set_commutator(u, v, std::move(z));
}

void add_power(MalcevPresentation &p, std::set<int> &seen, int u, std::int64_t exponent, CentralElement z,
               const std::string &context) {
  if (u < p.a_count()) throw SchemaError(context + ": power entries are only allowed for b generators");
  int i = u - p.a_count();
  if (exponent != p.b_orders()[i])
    throw SchemaError(context + ": power entry must be " + p.x_name(u) + "^" + std::to_string(p.b_orders()[i]));
  if (!seen.insert(i).second) throw SchemaError(context + ": duplicate power entry for " + p.x_name(u));
  p.set_power(i, std::move(z));
}

void check_orders(const std::vector<std::int64_t> &orders, const char *field) {
  for (auto v : orders)
    if (v < 1)
      throw SchemaError(std::string("field ") + field + ": torsion order " + std::to_string(v) + " is less than 1");
}

} // namespace

MalcevPresentation parse_presentation(std::string_view text) {
  std::string_view s = strip(text);
  if (!s.empty() && s.front() == '{') return parse_presentation_json(text);
  return parse_presentation_text(text);
}

MalcevPresentation parse_presentation_text(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string_view body;
  };
  std::vector<Line> entries;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> l, k;
  bool have_l = false, have_k = false;

  std::size_t start = 0, number = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const std::string context = "line " + std::to_string(number);
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw SchemaError(context + ": expected '='");
    std::string_view key = strip(line.substr(0, eq));
    std::string_view value = line.substr(eq + 1);
    if (key == "n") {
      if (n) throw SchemaError(context + ": duplicate field n");
      n = parse_int(value, context);
      if (*n < 0) throw SchemaError(context + ": n must be non-negative");
    } else if (key == "l") {
      if (have_l) throw SchemaError(context + ": duplicate field l");
      have_l = true;
      l = parse_int_list(value, context);
      check_orders(l, "l");
    } else if (key == "k") {
      if (have_k) throw SchemaError(context + ": duplicate field k");
      have_k = true;
      k = parse_int_list(value, context);
      check_orders(k, "k");
    } else {
      entries.push_back({number, line});
    }
  }
  if (!n) throw SchemaError("missing field n");

  MalcevPresentation p(static_cast<int>(*n), l, k);
  std::set<std::pair<int, int>> seen_comm;
  std::set<int> seen_pow;
  for (const auto &entry : entries) {
    const std::string context = "line " + std::to_string(entry.number);
    auto eq = entry.body.find('=');
    std::string_view key = strip(entry.body.substr(0, eq));
    std::string_view value = entry.body.substr(eq + 1);
    CentralElement z = parse_central(value, p.d_count(), context);
    if (!key.empty() && key.front() == '[') {
      if (key.back() != ']') throw SchemaError(context + ": malformed commutator entry");
      std::string_view inner = key.substr(1, key.size() - 2);
      auto comma = inner.find(',');
      if (comma == std::string_view::npos) throw SchemaError(context + ": malformed commutator entry");
      XGen g = parse_x_generator(inner.substr(0, comma), p.a_count(), p.b_count(), context);
      XGen h = parse_x_generator(inner.substr(comma + 1), p.a_count(), p.b_count(), context);
      add_commutator(p, seen_comm, g.position, h.position, std::move(z), context);
    } else {
      auto caret = key.find('^');
      if (caret == std::string_view::npos) throw SchemaError(context + ": unknown field '" + std::string(key) + "'");
      XGen g = parse_x_generator(key.substr(0, caret), p.a_count(), p.b_count(), context);
      add_power(p, seen_pow, g.position, parse_int(key.substr(caret + 1), context), std::move(z), context);
    }
  }
  return p;
}

MalcevPresentation parse_presentation_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw SchemaError("presentation must be a JSON object");
    if (!doc.contains("n")) throw SchemaError("missing field n");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const auto &key = it.key();
      if (key != "n" && key != "l" && key != "k" && key != "commutators" && key != "powers")
        throw SchemaError("unknown field '" + key + "'");
    }
    auto n = doc.at("n").get<std::int64_t>();
    if (n < 0) throw SchemaError("n must be non-negative");
    auto l = doc.value("l", std::vector<std::int64_t>{});
    auto k = doc.value("k", std::vector<std::int64_t>{});
    check_orders(l, "l");
    check_orders(k, "k");
    MalcevPresentation p(static_cast<int>(n), l, k);

    auto central_of = [&](const json &entry, const std::string &context) {
      CentralElement z{entry.value("c", std::int64_t{0}), entry.value("d", std::vector<std::int64_t>{})};
      if (z.d.size() > k.size()) throw SchemaError(context + ": too many d exponents");
      return z;
    };
    std::set<std::pair<int, int>> seen_comm;
    std::set<int> seen_pow;
    if (doc.contains("commutators")) {
      std::size_t idx = 0;
      for (const auto &entry : doc.at("commutators")) {
        const std::string context = "commutators[" + std::to_string(idx++) + "]";
        XGen g = parse_x_generator(entry.at("left").get<std::string>(), p.a_count(), p.b_count(), context);
        XGen h = parse_x_generator(entry.at("right").get<std::string>(), p.a_count(), p.b_count(), context);
        add_commutator(p, seen_comm, g.position, h.position, central_of(entry, context), context);
      }
    }
    if (doc.contains("powers")) {
      std::size_t idx = 0;
      for (const auto &entry : doc.at("powers")) {
        const std::string context = "powers[" + std::to_string(idx++) + "]";
        XGen g = parse_x_generator(entry.at("generator").get<std::string>(), p.a_count(), p.b_count(), context);
        if (g.position < p.a_count()) throw SchemaError(context + ": power entries are only allowed for b generators");
        std::int64_t order = p.b_orders()[g.position - p.a_count()];
        add_power(p, seen_pow, g.position, entry.value("exponent", order), central_of(entry, context), context);
      }
    }
    return p;
  } catch (const json::exception &e) {
    throw SchemaError(std::string("presentation schema violation: ") + e.what());
  }
}

namespace {

std::string format_central(const CentralElement &z) {
  std::string out;
  auto append = [&](const std::string &name, std::int64_t e) {
    if (e == 0) return;
    if (!out.empty()) out += " * ";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  };
  append("c", z.c);
  for (std::size_t t = 0; t < z.d.size(); ++t) append("d" + std::to_string(t + 1), z.d[t]);
  return out.empty() ? "1" : out;
}

bool is_identity(const CentralElement &z) {
  if (z.c != 0) return false;
  for (auto v : z.d)
    if (v != 0) return false;
  return true;
}

std::string join(const std::vector<std::int64_t> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

} // namespace

std::string format_presentation_text(const MalcevPresentation &p) {
  std::ostringstream os;
  os << "n = " << p.a_count() << "\n";
  os << "l = " << join(p.b_orders()) << "\n";
  os << "k = " << join(p.d_orders()) << "\n";
  for (int u = 0; u < p.x_count(); ++u)
    for (int v = u + 1; v < p.x_count(); ++v)
      if (!is_identity(p.commutator(u, v)))
        os << "[" << p.x_name(u) << "," << p.x_name(v) << "] = " << format_central(p.commutator(u, v)) << "\n";
  for (int i = 0; i < p.b_count(); ++i)
    if (!is_identity(p.power(i)))
      os << p.x_name(p.a_count() + i) << "^" << p.b_orders()[i] << " = " << format_central(p.power(i)) << "\n";
  return os.str();
}

std::string format_presentation_json(const MalcevPresentation &p) {
  using nlohmann::json;
  json doc;
  doc["n"] = p.a_count();
  doc["l"] = p.b_orders();
  doc["k"] = p.d_orders();
  json comms = json::array();
  for (int u = 0; u < p.x_count(); ++u)
    for (int v = u + 1; v < p.x_count(); ++v)
      if (!is_identity(p.commutator(u, v)))
        comms.push_back({{"left", p.x_name(u)}, {"right", p.x_name(v)}, {"c", p.commutator(u, v).c},
                         {"d", p.commutator(u, v).d}});
  json pows = json::array();
  for (int i = 0; i < p.b_count(); ++i)
    if (!is_identity(p.power(i)))
      pows.push_back({{"generator", p.x_name(p.a_count() + i)}, {"c", p.power(i).c}, {"d", p.power(i).d}});
  doc["commutators"] = comms;
  doc["powers"] = pows;
  return doc.dump(2);
}

} // namespace neq
