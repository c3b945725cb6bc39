#include "invis/profile_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "invis/errors.hpp"
#include "overloaded.hpp"

namespace invis {

namespace {

using json = nlohmann::json;
using detail::Overloaded;

[[noreturn]] void fail(const std::string& what) { throw ProfileFormatError("profile: " + what); }

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail("unknown key '" + key + "' in " + where);
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

cplx complex_value(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(where + " must be a [re, im] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

ModulationTerm parse_term(const json& t, std::size_t index) {
  const std::string where = "terms[" + std::to_string(index) + "]";
  if (!t.is_object()) fail(where + " must be an object");
  const json& type = need(t, "type", where);
  if (!type.is_string()) fail(where + ".type must be a string");
  const std::string kind = type.get<std::string>();

  if (kind == "exp") {
    only_keys(t, {"type", "z", "K_per_um"}, where);
    return Exponential{complex_value(need(t, "z", where), where + ".z"),
                       number(need(t, "K_per_um", where), where + ".K_per_um")};
  }
  if (kind == "const") {
    only_keys(t, {"type", "a", "level"}, where);
    bool potential = false;
    if (auto it = t.find("level"); it != t.end()) {
      if (*it == "potential") potential = true;
      else if (*it != "index") fail(where + ".level must be \"index\" or \"potential\"");
    }
    return ConstantShift{complex_value(need(t, "a", where), where + ".a"), potential};
  }
  if (kind == "poly") {
    only_keys(t, {"type", "coeffs"}, where);
    const json& cs = need(t, "coeffs", where);
    if (!cs.is_array()) fail(where + ".coeffs must be an array");
    Polynomial p;
    for (std::size_t i = 0; i < cs.size(); ++i)
      p.coeffs.push_back(complex_value(cs[i], where + ".coeffs[" + std::to_string(i) + "]"));
    return p;
  }
  if (kind == "sin_pt") {
    only_keys(t, {"type", "nu0", "m", "r"}, where);
    const json& m = need(t, "m", where);
    if (!m.is_number_integer()) fail(where + ".m must be an integer");
    SinusoidPT s;
    s.nu0 = number(need(t, "nu0", where), where + ".nu0");
    s.m = m.get<int>();
    if (auto it = t.find("r"); it != t.end()) s.r = number(*it, where + ".r");
    return s;
  }
  if (kind == "table") {
    only_keys(t, {"type", "xs", "fs"}, where);
    const json& xs = need(t, "xs", where);
    const json& fs = need(t, "fs", where);
    if (!xs.is_array() || !fs.is_array()) fail(where + ".xs and .fs must be arrays");
    Tabulated tab;
    for (std::size_t i = 0; i < xs.size(); ++i)
      tab.xs.push_back(number(xs[i], where + ".xs[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < fs.size(); ++i)
      tab.fs.push_back(complex_value(fs[i], where + ".fs[" + std::to_string(i) + "]"));
    return tab;
  }
  fail(where + ": unknown term type '" + kind + "'");
}

json term_json(const ModulationTerm& term) {
  return std::visit(
      Overloaded{
          [](const Exponential& e) {
            return json{{"type", "exp"}, {"z", complex_json(e.z)}, {"K_per_um", e.K}};
          },
          [](const ConstantShift& c) {
            return json{{"type", "const"},
                        {"a", complex_json(c.a)},
                        {"level", c.potential_level ? "potential" : "index"}};
          },
          [](const Polynomial& p) {
            json cs = json::array();
            for (const auto& c : p.coeffs) cs.push_back(complex_json(c));
            return json{{"type", "poly"}, {"coeffs", cs}};
          },
          [](const SinusoidPT& s) {
            return json{{"type", "sin_pt"}, {"nu0", s.nu0}, {"m", s.m}, {"r", s.r}};
          },
          [](const Tabulated& t) {
            json fs = json::array();
            for (const auto& f : t.fs) fs.push_back(complex_json(f));
            return json{{"type", "table"}, {"xs", t.xs}, {"fs", fs}};
          },
      },
      term);
}

}  // namespace

IndexProfile parse_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  only_keys(doc, {"n0", "L_um", "optical", "terms"}, "profile");
  const cplx n0 = complex_value(need(doc, "n0", "profile"), "n0");
  const double L = number(need(doc, "L_um", "profile"), "L_um");
  bool optical = true;
  if (auto it = doc.find("optical"); it != doc.end()) {
    if (!it->is_boolean()) fail("optical must be a boolean");
    optical = it->get<bool>();
  }
  std::vector<ModulationTerm> terms;
  if (auto it = doc.find("terms"); it != doc.end()) {
    if (!it->is_array()) fail("terms must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) terms.push_back(parse_term((*it)[i], i));
  }
  return IndexProfile(n0, L, std::move(terms), optical);
}

IndexProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

std::string dump_profile(const IndexProfile& profile) {
  json terms = json::array();
  for (const auto& t : profile.terms()) terms.push_back(term_json(t));
  json doc{{"n0", complex_json(profile.n0())},
           {"L_um", profile.length()},
           {"optical", profile.optical()},
           {"terms", terms}};
  return doc.dump(2) + "\n";
}

void save_profile(const IndexProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ProfileFormatError("profile: cannot write " + path);
  out << dump_profile(profile);
}

}  // namespace invis
