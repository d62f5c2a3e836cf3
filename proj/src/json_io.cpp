#include "fricke/json_io.hpp"

#include <charconv>
#include <cmath>

#include "fricke/errors.hpp"

namespace fricke {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ArgumentError("malformed complex number '" + std::string(whole) + "'");
  return v;
}

std::string kind_name(EscapeKind k) {
  switch (k) {
    case EscapeKind::Plain: return "plain";
    case EscapeKind::Fan: return "fan";
    case EscapeKind::None: break;
  }
  return "none";
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ArgumentError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // split at the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = cut == std::string::npos ? s : s.substr(cut);
  if (im.empty() || im == "+") im += "1";
  if (im == "-") im += "1";
  return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

TraceTriple parse_triple(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw ArgumentError("a triple needs three comma separated values, got '" + std::string(text) + "'");
  return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

TraceTriple triple_from_json(const json& j) {
  auto coord = [](const json& v) -> cplx {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_string()) return parse_complex(v.get<std::string>());
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    throw ArgumentError("malformed coordinate " + v.dump());
  };
  if (j.is_string()) return parse_triple(j.get<std::string>());
  if (j.is_array() && j.size() == 3) return {coord(j[0]), coord(j[1]), coord(j[2])};
  if (j.is_object() && j.contains("x") && j.contains("y") && j.contains("z"))
    return {coord(j["x"]), coord(j["y"]), coord(j["z"])};
  throw ArgumentError("malformed triple " + j.dump());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Slope& s) { return s.str(); }

json to_json(const TraceTriple& t) { return {{"x", to_json(t.x)}, {"y", to_json(t.y)}, {"z", to_json(t.z)}}; }

json to_json(const Character& c) {
  return {{"triple", to_json(c.triple())}, {"kappa", to_json(c.kappa())}, {"tags", c.tags().names()}};
}

json to_json(const BqVerdict& v) {
  json j = {{"status", status_name(v.status)},
            {"variant", v.variant == BqVariant::Standard ? "standard" : "extended"},
            {"fuel_spent", v.fuel_spent}};
  if (v.certificate) {
    json tris = json::array();
    for (const auto& t : v.certificate->triangles) tris.push_back({t[0].str(), t[1].str(), t[2].str()});
    json bd = json::array();
    for (const auto& b : v.certificate->boundary)
      bd.push_back({{"edge", {b.left.str(), b.right.str()}}, {"behind", b.behind.str()}, {"kind", kind_name(b.kind)}});
    j["certificate"] = {{"triangles", tris}, {"boundary", bd}};
  }
  if (v.witness) {
    json w = {{"evidence", evidence_name(v.witness->evidence)}, {"trace", to_json(v.witness->trace)}};
    if (v.witness->slope) w["slope"] = v.witness->slope->str();
    if (!v.witness->family.empty()) {
      json fam = json::array();
      for (const auto& s : v.witness->family) fam.push_back(s.str());
      w["family"] = fam;
    }
    j["witness"] = w;
  }
  return j;
}

json to_json(const SeriesReport& r, bool with_layers) {
  json j = {{"variant", variant_name(r.variant)},
            {"nu", to_json(r.nu)},
            {"sum", to_json(r.partial_sum)},
            {"terms", r.term_count},
            {"tail_bound", r.tail_bound},
            {"target", to_json(r.target)},
            {"residual", to_json(r.residual)},
            {"residual_abs", std::abs(r.residual)},
            {"converged", r.converged},
            {"diverged", r.diverged}};
  if (!r.note.empty()) j["note"] = r.note;
  if (with_layers) {
    json ls = json::array();
    for (const auto& l : r.layers)
      ls.push_back({{"depth", l.depth},
                    {"terms", l.terms},
                    {"layer_sum", to_json(l.layer_sum)},
                    {"layer_abs", l.layer_abs},
                    {"layer_max", l.layer_max},
                    {"cumulative", to_json(l.cumulative)}});
    j["layers"] = ls;
  }
  return j;
}

json to_json(const FareyInterval& iv) {
  return {{"interval", {iv.left.str(), iv.right.str()}}, {"excludes", iv.behind.str()}};
}

json to_json(const EndInvariantReport& r, bool with_intervals) {
  json rats = json::array();
  json ivs = json::array();
  std::size_t n_iv = 0;
  for (const auto& c : r.candidates) {
    if (auto* s = std::get_if<Slope>(&c)) {
      rats.push_back({{"rational", s->str()}});
    } else {
      ++n_iv;
      if (with_intervals) ivs.push_back(to_json(std::get<FareyInterval>(c)));
    }
  }
  json layers = json::array();
  for (const auto& l : r.layers) layers.push_back({{"depth", l.depth}, {"survivors", l.count}, {"length", l.length}});
  json j = {{"classification", end_class_name(r.classification)},
            {"theorem_basis", r.theorem_basis},
            {"bound", r.bound},
            {"depth_used", r.depth_used},
            {"rational_candidates", rats},
            {"interval_count", n_iv}};
  if (with_intervals) j["interval_candidates"] = ivs;
  j["layers"] = layers;
  j["notes"] = r.notes;
  return j;
}

json to_json(const ConjugatorReport& r) {
  return {{"A", {to_json(r.A.a), to_json(r.A.b), to_json(r.A.c), to_json(r.A.d)}},
          {"trace", to_json(r.trace_A)},
          {"length", to_json(r.length_A)},
          {"equation_residual", r.equation_residual}};
}

json to_json(const BundleReport& r) {
  json j = {{"full", to_json(r.full)}, {"half", to_json(r.half)}};
  if (r.conjugator) j["conjugator"] = to_json(*r.conjugator);
  j["sign"] = r.sign;
  j["residual_plus"] = to_json(r.residual_plus);
  j["residual_minus"] = to_json(r.residual_minus);
  j["experimental"] = r.experimental;
  return j;
}

}  // namespace fricke
