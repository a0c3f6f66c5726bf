#include "derange/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "derange/actions.hpp"
#include "derange/alt_comb.hpp"
#include "derange/catalog.hpp"
#include "derange/chartab.hpp"
#include "derange/classes.hpp"
#include "derange/derangement.hpp"
#include "derange/errors.hpp"
#include "derange/families.hpp"
#include "derange/genpair.hpp"
#include "derange/verify.hpp"

namespace derange {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string group = "";
  std::string action = "natural";
  bool json = false;
  bool show_float = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::uint64_t order_cap = 10'000'000'000ULL;
  std::uint64_t index_cap = kDefaultIndexCap;
  std::uint64_t element_budget = ClassOptions{}.element_budget;
  std::uint64_t budget = kDefaultPairBudget;
  unsigned k_max = kDefaultWidthLimit;
  std::string table;
  std::string strategy = "auto";
  std::string suite;
  std::uint64_t sweep = 0;
  std::string family;
  std::size_t n_min = 5;
  std::size_t n_max = 14;
};

/// A failed verification; maps to exit code 3.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  GroupSpec spec;
  PermGroup group;
  std::optional<ConjClassTable> classes_;
  const ConjClassTable& classes() const { return *classes_; }
};

Loaded load(const RunConfig& cfg, bool with_classes = true) {
  if (cfg.group.empty()) throw std::invalid_argument("--group is required");
  GroupSpec spec = resolve_group(cfg.group);
  PermGroup g = spec.build();
  if (g.order() > from_u64(cfg.order_cap))
    throw ResourceCapExceeded("group order " + g.order().get_str() + " exceeds --order-cap " +
                              std::to_string(cfg.order_cap));
  Loaded l{std::move(spec), std::move(g), std::nullopt};
  if (with_classes) {
    ClassOptions opts;
    opts.element_budget = cfg.element_budget;
    opts.seed = cfg.seed;
    l.classes_ = ConjClassTable::compute_default(l.group, opts);
  }
  return l;
}

GroupAction make_action(const PermGroup& g, const std::string& text, std::uint64_t index_cap) {
  if (text == "natural") return GroupAction::natural(g);
  if (text.rfind("ksubsets:", 0) == 0) {
    const std::string k = text.substr(9);
    if (k.empty() || !std::all_of(k.begin(), k.end(), ::isdigit))
      throw std::invalid_argument("bad subset size in '" + text + "'");
    return GroupAction::ksubsets(g, std::stoul(k), index_cap);
  }
  if (text.rfind("cosets:", 0) == 0) {
    const std::string src = text.substr(7);
    const GroupSpec h =
        src.rfind("builtin:", 0) == 0 ? builtin_subgroup_spec(src.substr(8)) : load_group(std::filesystem::path(src));
    if (h.degree != g.degree()) throw DegreeMismatch(g.degree(), h.degree);
    return GroupAction::cosets(g, h.generators, index_cap);
  }
  throw std::invalid_argument("unknown action '" + text + "' (natural, ksubsets:<k>, cosets:<file.grp>)");
}

std::string group_label(const Loaded& l, const RunConfig& cfg) { return l.spec.name.empty() ? cfg.group : l.spec.name; }

std::string fraction(const Rational& r, const RunConfig& cfg) {
  std::string s = to_fraction_string(r);
  if (cfg.show_float) s += " (" + to_decimal_string(r, 6) + ")";
  return s;
}

void put_rational(Json& j, const std::string& key, const Rational& r, const RunConfig& cfg) {
  j[key] = to_fraction_string(r);
  if (cfg.show_float) j[key + "_float"] = to_decimal_string(r, 6);
}

Json report_json(const Loaded& l, const DerangementReport& r, const RunConfig& cfg, const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["group"] = group_label(l, cfg);
  j["group_order"] = l.group.order().get_str();
  j["action"] = r.action.descriptor();
  j["degree"] = r.action.domain_size();
  Json cls = Json::array();
  for (std::size_t i = 0; i < l.classes().size(); ++i) {
    const auto& c = l.classes()[i];
    cls.push_back({{"name", c.name},
                   {"size", c.size.get_str()},
                   {"element_order", c.element_order},
                   {"fixed_points", r.fixed_points[i]},
                   {"derangement", r.fixed_points[i] == 0}});
  }
  j["classes"] = std::move(cls);
  j["derangement_count"] = r.derangement_count.get_str();
  put_rational(j, "delta", r.delta, cfg);
  j["prime_order_derangement"] = r.prime_order_derangement_exists;
  j["attains_lower_bound"] = r.attains_lower_bound;
  return j;
}

void print_header(std::ostream& out, const Loaded& l, const GroupAction& a, const RunConfig& cfg) {
  out << "group: " << group_label(l, cfg) << " (order " << l.group.order().get_str() << ", degree "
      << l.group.degree() << ")\n";
  out << "action: " << a.descriptor() << " (degree " << a.domain_size() << ")\n";
}

int cmd_delta(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg);
  const GroupAction a = make_action(l.group, cfg.action, cfg.index_cap);
  const auto r = derangement_report(l.classes(), a);
  if (cfg.json) {
    out << report_json(l, r, cfg, "delta").dump(2) << "\n";
    return kExitOk;
  }
  print_header(out, l, a, cfg);
  out << "derangement classes: " << format_normal_set(r.derangements(), l.classes()) << "\n";
  out << "derangements: " << r.derangement_count.get_str() << " of " << l.group.order().get_str() << "\n";
  out << "prime-order derangement: " << (r.prime_order_derangement_exists ? "yes" : "no (elusive)") << "\n";
  out << "delta = " << fraction(r.delta, cfg) << "\n";
  return kExitOk;
}

ProductStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return ProductStrategy::Auto;
  if (s == "representative") return ProductStrategy::Representative;
  if (s == "convolution") return ProductStrategy::Convolution;
  if (s == "characters") return ProductStrategy::Characters;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

int cmd_width(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg);
  const GroupAction a = make_action(l.group, cfg.action, cfg.index_cap);
  const auto r = derangement_report(l.classes(), a);
  ProductOptions opts;
  opts.strategy = parse_strategy(cfg.strategy);
  std::optional<CharacterTable> table;
  BoundCharacters bound;
  if (!cfg.table.empty()) {
    table = cfg.table.rfind("builtin:", 0) == 0 ? builtin_table(cfg.table.substr(8))
                                                : CharacterTable::load(std::filesystem::path(cfg.table));
    bound.table = &*table;
    bound.binding = bind_classes(*table, l.classes());
    opts.characters = &bound;
  }
  const auto w = width(r, cfg.k_max, opts);
  std::vector<std::string> names;
  for (auto c : w.decomposition_classes) names.push_back(l.classes()[c].name);
  if (cfg.json) {
    Json j = report_json(l, r, cfg, "width");
    j["width"] = w.to_string();
    j["k_max"] = w.k_max;
    j["by_half_shortcut"] = w.by_half_shortcut;
    if (!w.decomposition.empty()) {
      j["decomposition"] = w.decomposition;
      j["decomposition_classes"] = names;
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  print_header(out, l, a, cfg);
  out << "derangement classes: " << format_normal_set(r.derangements(), l.classes()) << "\n";
  out << "delta = " << fraction(r.delta, cfg) << "\n";
  out << "width = " << w.to_string() << (w.by_half_shortcut ? " (delta > 1/2)" : "") << "\n";
  if (!w.decomposition.empty()) {
    out << "decomposition: " << w.decomposition << " with";
    for (const auto& n : names) out << " " << n;
    out << "\n";
  }
  return kExitOk;
}

int cmd_classes(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg);
  if (cfg.json) {
    Json j;
    j["schema"] = 1;
    j["command"] = "classes";
    j["group"] = group_label(l, cfg);
    j["group_order"] = l.group.order().get_str();
    Json cls = Json::array();
    for (const auto& c : l.classes().classes())
      cls.push_back({{"name", c.name},
                     {"size", c.size.get_str()},
                     {"centralizer_order", c.centralizer_order.get_str()},
                     {"element_order", c.element_order},
                     {"rep", c.rep.to_string()}});
    j["classes"] = std::move(cls);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "group: " << group_label(l, cfg) << " (order " << l.group.order().get_str() << ", "
      << l.classes().size() << " classes)\n";
  out << "name\tsize\tcentralizer\trep\n";
  for (const auto& c : l.classes().classes())
    out << c.name << "\t" << c.size.get_str() << "\t" << c.centralizer_order.get_str() << "\t" << c.rep.to_string()
        << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opts{cfg.seed, cfg.budget, cfg.jobs};
  const auto results = run_verify_suite(cfg.suite, opts);
  const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& c) { return c.pass; });
  if (cfg.json) {
    Json j;
    j["schema"] = 1;
    j["command"] = "verify";
    j["suite"] = cfg.suite;
    Json arr = Json::array();
    for (const auto& c : results) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = std::move(arr);
    j["passed"] = passed;
    j["total"] = results.size();
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : results) out << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail << "]\n";
    out << passed << "/" << results.size() << " checks passed\n";
  }
  return static_cast<std::size_t>(passed) == results.size() ? kExitOk : kExitVerification;
}

int cmd_alt(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) throw std::invalid_argument("need 2 <= --n-min <= --n-max");
  out << "n\tk\ta\tb\tc\tf\tbound\n";
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n)
    for (std::size_t k = 1; k < n; ++k) {
      const Abc v = abc(n, k);
      out << n << "\t" << k << "\t" << to_fraction_string(v.a) << "\t" << to_fraction_string(v.b) << "\t"
          << to_fraction_string(v.c) << "\t" << to_fraction_string(fnk(n, k)) << "\t"
          << to_fraction_string(cnk_recurrence_bound(n, k)) << "\n";
    }
  return kExitOk;
}

int cmd_families(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sweep < 2) throw std::invalid_argument("--sweep needs a maximum q of at least 2");
  std::vector<Family> families = all_families();
  if (!cfg.family.empty()) families = {parse_family(cfg.family)};
  out << "family\tq\tdelta\tkind" << (cfg.show_float ? "\tfloat" : "") << "\n";
  for (auto f : families)
    for (auto q : admissible_orders(f, cfg.sweep)) {
      const auto v = delta_closed_form({f, q});
      out << family_name(f) << "\t" << q << "\t" << to_fraction_string(v.value) << "\t"
          << (v.lower_bound ? "lower_bound" : "exact");
      if (cfg.show_float) out << "\t" << to_decimal_string(v.value, 6);
      out << "\n";
    }
  return kExitOk;
}

int cmd_genpair(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg, false);
  const GroupAction a = make_action(l.group, cfg.action, cfg.index_cap);
  const auto res = find_conjugate_derangement_pair(a, cfg.budget, cfg.seed, cfg.jobs);
  if (!res.found()) throw VerificationFailure("no generating pair in " + std::to_string(res.trials) + " trials");
  const auto check = verify_certificate(*res.certificate);
  if (!check.ok) throw VerificationFailure("certificate failed to verify: " + check.message);
  if (cfg.json) {
    out << res.certificate->to_json(group_label(l, cfg)) << "\n";
    return kExitOk;
  }
  const auto& c = *res.certificate;
  print_header(out, l, a, cfg);
  out << "x = " << c.x.to_string() << " (order " << c.x.order() << ")\n";
  out << "g = " << c.g.to_string() << "\n";
  out << "y = g^-1 x g = " << c.y.to_string() << "\n";
  out << "<x, y> has order " << c.checked_order.get_str() << " (trial " << c.trial << ", seed " << c.seed << ")\n";
  return kExitOk;
}

int cmd_alpha(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg);
  const auto r = alpha_s_bruteforce(l.classes());
  if (cfg.json) {
    Json j;
    j["schema"] = 1;
    j["command"] = "alpha";
    j["group"] = group_label(l, cfg);
    put_rational(j, "alpha_s", r.alpha, cfg);
    j["subgroup_order"] = r.witness_order;
    Json gens = Json::array();
    for (const auto& p : r.witness_generators) gens.push_back(p.to_string());
    j["subgroup_generators"] = std::move(gens);
    j["soluble_subgroup_classes"] = r.soluble_classes;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "group: " << group_label(l, cfg) << " (order " << l.group.order().get_str() << ")\n";
  out << "soluble subgroup classes: " << r.soluble_classes << "\n";
  out << "alpha_s = " << fraction(r.alpha, cfg) << " at a subgroup of order " << r.witness_order << "\n";
  out << "generators:";
  for (const auto& p : r.witness_generators) out << " " << p.to_string();
  out << "\n";
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_group) {
  if (with_group) {
    sub->add_option("--group", cfg.group, "M11, M12, alt:N, sym:N, cyclic:N, L2(q), psl2:q or file:<path>")
        ->required();
    sub->add_option("--order-cap", cfg.order_cap, "refuse groups larger than this");
    sub->add_option("--element-budget", cfg.element_budget, "element budget for random class search");
  }
  sub->add_flag("--json", cfg.json, "JSON output");
  sub->add_flag("--float", cfg.show_float, "add 6-digit decimal approximations");
  sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "random seed");
}

void add_action(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--action", cfg.action, "natural, ksubsets:<k>, cosets:<file.grp> or cosets:builtin:<name>");
  sub->add_option("--index-cap", cfg.index_cap, "largest domain allowed for an action")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Derangement proportions, widths and generating pairs of permutation groups", "derange"};
  app.require_subcommand(1);

  auto* delta = app.add_subcommand("delta", "proportion of derangements of a transitive action");
  add_common(delta, cfg, true);
  add_action(delta, cfg);

  auto* widthc = app.add_subcommand("width", "least k with every element a product of k derangements");
  add_common(widthc, cfg, true);
  add_action(widthc, cfg);
  widthc->add_option("--kmax", cfg.k_max, "largest k tried")->check(CLI::PositiveNumber);
  widthc->add_option("--table", cfg.table, "character table (.ctbl path or builtin:<name>)");
  widthc->add_option("--strategy", cfg.strategy, "auto, representative, convolution or characters");

  auto* classes = app.add_subcommand("classes", "conjugacy classes");
  add_common(classes, cfg, true);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg, false);
  verify->add_option("suite", cfg.suite, "spor-small, alt, psl2, frobenius or genpair")
      ->required()
      ->check(CLI::IsMember(verify_suite_names()));
  verify->add_option("--budget", cfg.budget, "trials per generating pair search")->check(CLI::PositiveNumber);

  auto* altc = app.add_subcommand("alt", "a, b, c, f and the recurrence bound as TSV");
  altc->add_option("--n-min", cfg.n_min, "smallest n");
  altc->add_option("--n-max", cfg.n_max, "largest n");

  auto* fam = app.add_subcommand("families", "closed-form delta for the rank one families as TSV");
  fam->add_option("--sweep", cfg.sweep, "largest q")->required();
  fam->add_option("--family", cfg.family, "restrict to one family");
  fam->add_flag("--float", cfg.show_float, "add 6-digit decimal approximations");

  auto* gen = app.add_subcommand("genpair", "search for conjugate derangements generating the group");
  add_common(gen, cfg, true);
  add_action(gen, cfg);
  gen->add_option("--budget", cfg.budget, "number of trials")->check(CLI::PositiveNumber);

  auto* alpha = app.add_subcommand("alpha", "minimum delta over soluble core-free subgroups");
  add_common(alpha, cfg, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (delta->parsed()) return cmd_delta(cfg, out);
    if (widthc->parsed()) return cmd_width(cfg, out);
    if (classes->parsed()) return cmd_classes(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (altc->parsed()) return cmd_alt(cfg, out);
    if (fam->parsed()) return cmd_families(cfg, out);
    if (gen->parsed()) return cmd_genpair(cfg, out);
    if (alpha->parsed()) return cmd_alpha(cfg, out);
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace derange
