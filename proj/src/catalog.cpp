#include "derange/catalog.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "builtin_groups.hpp"  // generated from data/groups/*.grp
#include "derange/errors.hpp"

namespace derange {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::size_t parse_size(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad " + std::string(what) + " '" + t + "'");
  return std::stoull(t);
}

void parse_directive(GroupSpec& spec, const std::string& body) {
  if (starts_with(body, "name:")) {
    spec.name = trim(body.substr(5));
  } else if (body == "transitive") {
    spec.tagged_transitive = true;
  } else if (starts_with(body, "check:")) {
    // "check: order 7920, 4-transitive"
    std::string rest = trim(body.substr(6));
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (starts_with(item, "order ")) {
        spec.expected_order = BigInt(trim(item.substr(6)));
      } else if (const auto dash = item.find("-transitive"); dash != std::string::npos) {
        spec.expected_transitivity = static_cast<unsigned>(parse_size(item.substr(0, dash), "transitivity"));
      }
    }
  } else if (spec.description.empty()) {
    spec.description = body;
  }
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text, std::string name) {
  GroupSpec spec;
  spec.name = std::move(name);
  bool have_degree = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      parse_directive(spec, trim(std::string_view(line).substr(1)));
      continue;
    }
    if (!have_degree) {
      if (!starts_with(line, "degree")) throw ParseError("expected 'degree N'", line_no);
      try {
        spec.degree = parse_size(std::string_view(line).substr(6), "degree");
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
      }
      have_degree = true;
      continue;
    }
    try {
      spec.generators.push_back(Permutation::parse(line, spec.degree));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_degree) throw ParseError("missing 'degree N' line", line_no);
  return spec;
}

GroupSpec load_group(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  GroupSpec spec = parse_group_spec(ss.str());
  if (spec.name.empty()) spec.name = path.stem().string();
  return spec;
}

std::string format_group_spec(const GroupSpec& spec) {
  std::string out;
  if (!spec.name.empty()) out += "# name: " + spec.name + "\n";
  if (!spec.description.empty()) out += "# " + spec.description + "\n";
  if (spec.tagged_transitive) out += "# transitive\n";
  out += "degree " + std::to_string(spec.degree) + "\n";
  for (const auto& g : spec.generators) out += g.to_string() + "\n";
  return out;
}

PermGroup sym(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> cycle(n);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<Point>(i);
    gens.push_back(Permutation::from_cycles(n, {cycle}));
    if (n > 2) gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup alt(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 3) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1, 2}}));
    if (n > 3) {
      std::vector<Point> cycle;
      for (std::size_t i = n % 2 == 1 ? 0 : 1; i < n; ++i) cycle.push_back(static_cast<Point>(i));
      gens.push_back(Permutation::from_cycles(n, {cycle}));
    }
  }
  return PermGroup(n, std::move(gens));
}

PermGroup cyclic(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> cycle(n);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<Point>(i);
    gens.push_back(Permutation::from_cycles(n, {cycle}));
  }
  return PermGroup(n, std::move(gens));
}

std::vector<std::uint32_t> Psl2Model::supported_orders() { return {4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27}; }

Psl2Model::Psl2Model(std::uint32_t q) {
  const auto supported = supported_orders();
  if (std::find(supported.begin(), supported.end(), q) == supported.end())
    throw std::invalid_argument("psl2: unsupported q = " + std::to_string(q));
  field_ = &FiniteField::builtin(q);
  const FiniteField& F = *field_;
  const FieldElement lambda = F.primitive_element();
  std::vector<Permutation> gens{
      mobius(F.one(), F.one(), F.zero(), F.one()),
      mobius(lambda, F.zero(), F.zero(), lambda.inverse()),
      mobius(F.zero(), -F.one(), F.one(), F.zero()),
  };
  group_ = PermGroup(q + 1, std::move(gens));
}

Permutation Psl2Model::mobius(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                              const FieldElement& d) const {
  const FieldElement det = a * d - b * c;
  if (det.is_zero()) throw std::invalid_argument("singular Moebius map");
  bool square = false;
  for (const auto& x : field_->elements())
    if (x * x == det) square = true;
  if (!square) throw std::invalid_argument("Moebius map outside PSL(2,q)");

  const std::uint32_t q = field_->order();
  std::vector<Point> img(q + 1);
  for (std::uint32_t code = 0; code < q; ++code) {
    const FieldElement x = field_->element(code);
    const FieldElement den = c * x + d;
    img[code] = den.is_zero() ? infinity() : point((a * x + b) / den);
  }
  img[q] = c.is_zero() ? infinity() : point(a / c);
  return Permutation(std::move(img));
}

PermGroup psl2(std::uint32_t q) { return Psl2Model(q).group(); }

GroupSpec mathieu_spec(std::string_view name) {
  if (name == "M11") return parse_group_spec(builtin_data::kM11, "M11");
  if (name == "M12") return parse_group_spec(builtin_data::kM12, "M12");
  throw std::invalid_argument("unknown Mathieu group '" + std::string(name) + "'");
}

PermGroup mathieu(std::string_view name) { return mathieu_spec(name).build(); }

GroupSpec builtin_subgroup_spec(std::string_view name) {
  if (name == "M11_L2_11") return parse_group_spec(builtin_data::kM11_L2_11, "M11_L2_11");
  if (name == "L2_7_S4") return parse_group_spec(builtin_data::kL2_7_S4, "L2_7_S4");
  throw std::invalid_argument("unknown built-in subgroup '" + std::string(name) + "'");
}

GroupSpec resolve_group(std::string_view source) {
  const std::string s = trim(source);
  auto make = [&](PermGroup g, std::string name, bool transitive = true) {
    GroupSpec spec;
    spec.name = std::move(name);
    spec.degree = g.degree();
    spec.generators = g.generators();
    spec.tagged_transitive = transitive;
    return spec;
  };
  auto number_after = [&](std::size_t prefix_len) {
    try {
      return parse_size(std::string_view(s).substr(prefix_len), "group size");
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("unrecognised group source '" + s + "'");
    }
  };
  if (starts_with(s, "file:")) return load_group(s.substr(5));
  if (s == "M11" || s == "M12") return mathieu_spec(s);
  if (starts_with(s, "alt:")) return make(alt(number_after(4)), s);
  if (starts_with(s, "sym:")) return make(sym(number_after(4)), s);
  if (starts_with(s, "cyclic:")) return make(cyclic(number_after(7)), s);
  if (starts_with(s, "psl2:")) return make(psl2(static_cast<std::uint32_t>(number_after(5))), s);
  if (starts_with(s, "L2(") && s.back() == ')') {
    const std::string inner = s.substr(3, s.size() - 4);
    return make(psl2(static_cast<std::uint32_t>(parse_size(inner, "field order"))), s);
  }
  if (s.size() >= 2 && (s[0] == 'A' || s[0] == 'S' || s[0] == 'C') &&
      s.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t n = number_after(1);
    if (s[0] == 'A') return make(alt(n), s);
    if (s[0] == 'S') return make(sym(n), s);
    return make(cyclic(n), s);
  }
  throw std::invalid_argument("unrecognised group source '" + s + "'");
}

unsigned transitivity_degree(const PermGroup& g, unsigned k_max) {
  const std::size_t n = g.degree();
  unsigned k = 0;
  for (unsigned t = 1; t <= k_max && t <= n; ++t) {
    // Orbit of the tuple (0, 1, ..., t-1) under the generators.
    std::vector<Point> start(t);
    for (unsigned i = 0; i < t; ++i) start[i] = i;
    std::set<std::vector<Point>> seen{start};
    std::vector<std::vector<Point>> queue{start};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& s : g.generators()) {
        std::vector<Point> img(t);
        for (unsigned j = 0; j < t; ++j) img[j] = s[queue[i][j]];
        if (seen.insert(img).second) queue.push_back(std::move(img));
      }
    }
    std::size_t tuples = 1;
    for (unsigned j = 0; j < t; ++j) tuples *= n - j;
    if (queue.size() != tuples) break;
    k = t;
  }
  return k;
}

}  // namespace derange
