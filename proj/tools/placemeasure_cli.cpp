// placemeasure: command-line front end for the placemeasure library.
//
// Exit codes: 0 success, 1 domain error, 2 parse or usage error.

#include <cmath>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "placemeasure/io.hpp"
#include "placemeasure/placemeasure.hpp"

namespace pm = placemeasure;

namespace {

struct report {
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::string>> records;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void record(std::string key, std::string value) { records.emplace_back(std::move(key), std::move(value)); }
};

std::string kind_name(pm::value_kind k) {
  switch (k) {
    case pm::value_kind::exact_rational: return "exact_rational";
    case pm::value_kind::rational_over_log: return "rational_over_log";
    case pm::value_kind::log_linear: return "log_linear";
    case pm::value_kind::real: return "float";
  }
  return "?";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void record_value(report& out, const std::string& key, const pm::map_value& v) {
  out.record(key, v.to_string());
  out.record(key + "_kind", kind_name(v.kind()));
}

void record_extended(report& out, const std::string& key, const pm::extended_value& v) {
  out.record(key, v.to_string());
  if (v.is_finite()) out.record(key + "_kind", kind_name(v.value().kind()));
}

std::string join(const std::vector<pm::rational_place>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : ",") + p.to_string();
  return s;
}

report cmd_places(const std::string& lvl_text, const std::string& base_text) {
  auto lvl = pm::text::parse_level(lvl_text);
  auto base = pm::text::parse_rational_place(base_text);
  report out;
  auto places = pm::places_above(lvl, base);
  out.record("count", std::to_string(places.size()));
  for (std::size_t i = 0; i < places.size(); ++i) {
    const auto& v = places[i];
    auto deg = std::to_string(pm::local_degree(v));
    auto [num, den] = pm::lambda_mass(v);
    auto mass = pm::map_value::exact(pm::rational(num, den)).to_string();
    out.line(v.to_string() + " deg=" + deg + " lambda=" + mass);
    auto idx = "[" + std::to_string(i) + "]";
    out.record("place" + idx, v.to_string());
    out.record("deg" + idx, deg);
    out.record("lambda" + idx, mass);
  }
  return out;
}

report cmd_measure(const std::string& map_path, const std::string& set_text) {
  auto c = pm::io::load_map(map_path).map;
  auto v = pm::charge(c, pm::text::parse_ring_set(set_text));
  report out;
  out.line(v.to_string());
  record_value(out, "value", v);
  return out;
}

report cmd_integrate(const std::string& map_path, const std::string& element_text) {
  auto c = pm::io::load_map(map_path).map;
  auto v = pm::phi(c, pm::io::load_element(element_text));
  report out;
  if (v.kind() == pm::value_kind::real && std::abs(v.to_double()) < 1e-9)
    out.line("≈ 0 (|·| < 1e-9)");
  else
    out.line(v.to_string());
  record_value(out, "value", v);
  return out;
}

report cmd_global(const std::string& map_path, const std::string& partition_path) {
  auto c = pm::io::load_map(map_path).map;
  report out;
  bool consistent = pm::is_globally_consistent(c);
  std::string text = "globally-consistent: " + yes_no(consistent);
  out.record("globally_consistent", yes_no(consistent));
  if (consistent) {
    auto i = pm::index(c);
    text += "; index: " + i.to_string();
    record_extended(out, "index", i);
  } else {
    text += "; canonical: conditional";
    out.record("canonical", "conditional");
  }
  if (!partition_path.empty()) {
    auto k = pm::classify_series(c, pm::io::load_partition(partition_path));
    text += "; partition: " + k.to_string();
    out.record("partition", k.to_string());
  }
  out.line(text);
  return out;
}

report cmd_extend(const std::string& map_path, const std::string& set_text, const std::string& r_text) {
  auto c = pm::io::load_map(map_path).map;
  auto a = pm::text::parse_set(set_text);
  report out;
  if (r_text.empty()) {
    auto v = pm::nu(c, a);
    out.line(v.to_string());
    record_extended(out, "value", v);
    return out;
  }
  auto r = pm::text::parse_extended(r_text);
  auto v = pm::r_extension(c, r, a);
  bool countable = pm::countably_additive(c, r);
  out.line(v.to_string() + (countable ? " (countably-additive: yes)"
                                      : " (finitely additive only; countably-additive: no)"));
  record_extended(out, "value", v);
  out.record("countably_additive", yes_no(countable));
  return out;
}

report cmd_partition_validate(const std::string& path) {
  auto p = pm::io::load_partition(path);
  report out;
  std::vector<pm::rational_place> split;
  for (const auto& e : p.exceptional()) split.push_back(e.base);
  out.line("valid; basis: " + yes_no(p.is_basis()) + "; finite: " + yes_no(p.is_finite()) +
           "; exceptional: [" + join(split) + "]");
  out.record("valid", "yes");
  out.record("basis", yes_no(p.is_basis()));
  out.record("finite", yes_no(p.is_finite()));
  out.record("exceptional", join(split));
  return out;
}

report cmd_partition_refine(const std::string& fine_path, const std::string& coarse_path) {
  auto fine = pm::io::load_partition(fine_path);
  auto coarse = pm::io::load_partition(coarse_path);
  auto r = pm::is_refinement(fine, coarse);
  report out;
  out.line("refines: " + yes_no(r.refines));
  out.record("refines", yes_no(r.refines));
  for (const auto& [key, members] : r.groups) {
    std::string ids;
    for (auto i : members) ids += (ids.empty() ? "" : ",") + std::to_string(i);
    auto name = key.first.to_string() + "[" + std::to_string(key.second) + "]";
    out.line("  " + name + " <- {" + ids + "}");
    out.record("group." + name, ids);
  }
  return out;
}

report cmd_prefix_check(const std::string& map_path, const std::string& fine_path,
                        const std::string& coarse_path, std::size_t n,
                        const std::vector<std::string>& order_text) {
  auto c = pm::io::load_map(map_path).map;
  std::vector<pm::rational_place> order;
  for (const auto& s : order_text) order.push_back(pm::text::parse_rational_place(s));
  auto r = pm::refine_prefix_check(c, pm::io::load_partition(fine_path),
                                   pm::io::load_partition(coarse_path), order, n);
  report out;
  out.line("holds: " + yes_no(r.holds) + "; N=" + std::to_string(r.coarse_terms) +
           "; M_N=" + std::to_string(r.fine_terms) + "; coarse: " + r.coarse_sum.to_string() +
           "; fine: " + r.fine_sum.to_string());
  out.record("holds", yes_no(r.holds));
  out.record("N", std::to_string(r.coarse_terms));
  out.record("M_N", std::to_string(r.fine_terms));
  record_value(out, "coarse_sum", r.coarse_sum);
  record_value(out, "fine_sum", r.fine_sum);
  return out;
}

report cmd_map_validate(const std::string& path) {
  auto m = pm::io::load_map(path);
  report out;
  auto special = m.map.special_places();
  std::vector<pm::rational_place> listed(special.begin(), special.end());
  std::string levels;
  for (const auto& lvl : m.map.overrides())
    levels += (levels.empty() ? "" : ",") + std::to_string(lvl.at.conductor());
  out.line("valid" + (m.name.empty() ? std::string() : ": " + m.name) + "; special: [" + join(listed) +
           "]; overrides: [" + levels + "]; infinity-zero: " + yes_no(pm::infinity_zero(m.map)));
  out.record("valid", "yes");
  out.record("name", m.name);
  out.record("special", join(listed));
  out.record("overrides", levels);
  out.record("infinity_zero", yes_no(pm::infinity_zero(m.map)));
  return out;
}

void emit(const report& r, bool records) {
  if (records)
    for (const auto& [k, v] : r.records) std::cout << k << '=' << v << '\n';
  else
    for (const auto& l : r.lines) std::cout << l << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charges and measures on the places of the cyclotomic tower"};
  app.require_subcommand(1);
  std::string format = "plain";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "records"}));

  std::function<report()> run;
  std::string a, b, c, d;
  std::size_t n = 1;
  std::vector<std::string> order;

  auto* places = app.add_subcommand("places", "List the places of a level above a rational place");
  places->add_option("level", a)->required();
  places->add_option("base", b, "Prime or inf")->required();
  places->callback([&] { run = [&] { return cmd_places(a, b); }; });

  auto* measure = app.add_subcommand("measure", "Charge of a compact set");
  measure->add_option("map", a)->required();
  measure->add_option("set", b)->required();
  measure->callback([&] { run = [&] { return cmd_measure(a, b); }; });

  auto* integrate = app.add_subcommand("integrate", "Integrate log|alpha| against a map");
  integrate->add_option("map", a)->required();
  integrate->add_option("element", b, "rat:<q>, cycunit:<p> or file:<path>")->required();
  integrate->callback([&] { run = [&] { return cmd_integrate(a, b); }; });

  auto* global = app.add_subcommand("global", "Global consistency and index");
  global->add_option("map", a)->required();
  global->add_option("partition", b);
  global->callback([&] { run = [&] { return cmd_global(a, b); }; });

  auto* extend = app.add_subcommand("extend", "Extension of a map to complemented sets");
  extend->add_option("map", a)->required();
  extend->add_option("set", b)->required();
  extend->add_option("--r", c, "Value assigned to Y");
  extend->callback([&] { run = [&] { return cmd_extend(a, b, c); }; });

  auto* part = app.add_subcommand("partition", "Partition files");
  part->require_subcommand(1);
  auto* validate = part->add_subcommand("validate", "Validate a partition file");
  validate->add_option("partition", a)->required();
  validate->callback([&] { run = [&] { return cmd_partition_validate(a); }; });
  auto* refine = part->add_subcommand("refine", "Check that the first partition refines the second");
  refine->add_option("fine", a)->required();
  refine->add_option("coarse", b)->required();
  refine->callback([&] { run = [&] { return cmd_partition_refine(a, b); }; });
  auto* prefix = part->add_subcommand("prefix-check", "Compare prefix sums of a refinement");
  prefix->add_option("map", a)->required();
  prefix->add_option("fine", b)->required();
  prefix->add_option("coarse", d)->required();
  prefix->add_option("-n,--terms", n, "Number of coarse terms")->check(CLI::PositiveNumber);
  prefix->add_option("--order", order, "Rational places enumerated first")->delimiter(',');
  prefix->callback([&] { run = [&] { return cmd_prefix_check(a, b, d, n, order); }; });

  auto* map = app.add_subcommand("map", "Map files");
  map->require_subcommand(1);
  auto* map_validate = map->add_subcommand("validate", "Validate a map file");
  map_validate->add_option("map", a)->required();
  map_validate->callback([&] { run = [&] { return cmd_map_validate(a); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    emit(run(), format == "records");
  } catch (const pm::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const pm::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
