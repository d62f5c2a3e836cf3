#include "fricke/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "fricke/bq.hpp"
#include "fricke/bundle.hpp"
#include "fricke/ends.hpp"
#include "fricke/errors.hpp"
#include "fricke/identity.hpp"
#include "fricke/json_io.hpp"
#include "fricke/mapping_class.hpp"

namespace fricke {

namespace {

struct Options {
  std::string triple, kappa, word, matrix, variant = "general", out, config;
  std::string task = "bq", vary = "z", u_range, v_range = "0,0", grid = "1,1";
  long fuel = 100000;
  double tol = 1e-8;
  std::size_t max_terms = kDefaultMaxTerms;
  int depth = -1;
  double bound = kDefaultEndBound;
  unsigned jobs = 0;
  bool csv = false;
  bool layers = false;
};

const char* kSweepColumns =
    "CSV columns: i,j,x_re,x_im,y_re,y_im,z_re,z_im,status,payload,fuel\n"
    "  i, j     grid indices; rows are emitted with j outer, i inner\n"
    "  status   bq: Satisfies | Fails/forbidden | Fails/reducible | Fails/periodic | Inconclusive\n"
    "           identity-residual: converged | diverged | budget | unresolved\n"
    "           end-count: ok\n"
    "           any task: error/<kind> when the cell raised an error\n"
    "  payload  bq: certificate triangle count (Satisfies only)\n"
    "           identity-residual: |residual mod 2 pi i|\n"
    "           end-count: number of curves with |trace| < bound up to the given depth\n"
    "  fuel     bq: fuel spent; identity-residual: terms summed; end-count: 0\n"
    "Cell (i, j) sits at u_i = u0 + i (u1 - u0) / (nx - 1) (u0 when nx = 1), likewise v_j.\n"
    "--vary x|y|z varies that coordinate over u + v i; --vary xy|xz|yz sets the two named\n"
    "coordinates to the real values u and v. Other coordinates come from --triple.";

std::string complex_text(const cplx& z) {
  std::string s = format_double(z.real());
  if (z.imag() != 0) s += (z.imag() >= 0 ? "+" : "") + format_double(z.imag()) + "i";
  return s;
}

std::string pair_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
    }
    return s;
  }
  throw ArgumentError("expected a string or an array, got " + v.dump());
}

std::map<std::string, std::function<void(const json&)>> setters(Options& o) {
  auto str = [](std::string& dst) { return [&dst](const json& v) { dst = pair_text(v); }; };
  return {
      {"triple",
       [&o](const json& v) {
         auto t = triple_from_json(v);
         o.triple = complex_text(t.x) + "," + complex_text(t.y) + "," + complex_text(t.z);
       }},
      {"kappa", [&o](const json& v) { o.kappa = v.is_string() ? v.get<std::string>() : complex_text(triple_from_json(json::array({v, 0, 0})).x); }},
      {"word", str(o.word)},
      {"matrix", str(o.matrix)},
      {"variant", str(o.variant)},
      {"out", str(o.out)},
      {"task", str(o.task)},
      {"vary", str(o.vary)},
      {"u-range", str(o.u_range)},
      {"v-range", str(o.v_range)},
      {"grid", str(o.grid)},
      {"fuel", [&o](const json& v) { o.fuel = v.get<long>(); }},
      {"tol", [&o](const json& v) { o.tol = v.get<double>(); }},
      {"max-terms", [&o](const json& v) { o.max_terms = v.get<std::size_t>(); }},
      {"depth", [&o](const json& v) { o.depth = v.get<int>(); }},
      {"bound", [&o](const json& v) { o.bound = v.get<double>(); }},
      {"jobs", [&o](const json& v) { o.jobs = v.get<unsigned>(); }},
      {"csv", [&o](const json& v) { o.csv = v.get<bool>(); }},
      {"layers", [&o](const json& v) { o.layers = v.get<bool>(); }},
  };
}

struct Sub {
  CLI::App* app = nullptr;
  std::map<std::string, CLI::Option*> opts;
};

void add_flags(Sub& s, Options& o, std::initializer_list<std::string> names) {
  auto* a = s.app;
  for (const auto& n : names) {
    CLI::Option* opt = nullptr;
    if (n == "triple") opt = a->add_option("--triple", o.triple, "trace triple x,y,z; complex entries like 3i or 1-2i");
    else if (n == "kappa") opt = a->add_option("--kappa", o.kappa, "commutator trace level");
    else if (n == "word") opt = a->add_option("--word", o.word, "mapping class as a word in L and R");
    else if (n == "matrix") opt = a->add_option("--matrix", o.matrix, "mapping class as a,b,c,d");
    else if (n == "fuel") opt = a->add_option("--fuel", o.fuel, "search budget")->capture_default_str();
    else if (n == "tol") opt = a->add_option("--tol", o.tol, "summation tolerance")->capture_default_str();
    else if (n == "max-terms") opt = a->add_option("--max-terms", o.max_terms, "term budget")->capture_default_str();
    else if (n == "depth") opt = a->add_option("--depth", o.depth, "tree depth");
    else if (n == "bound") opt = a->add_option("--bound", o.bound, "trace bound K")->capture_default_str();
    else if (n == "variant") opt = a->add_option("--variant", o.variant, "general|cusp")->capture_default_str();
    else if (n == "csv") opt = a->add_flag("--csv", o.csv, "tabular output");
    else if (n == "jobs") opt = a->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
    else if (n == "out") opt = a->add_option("--out", o.out, "output path");
    else if (n == "layers") opt = a->add_flag("--layers", o.layers, "include per-depth records");
    else if (n == "task") opt = a->add_option("--task", o.task, "bq|identity-residual|end-count")->capture_default_str();
    else if (n == "vary") opt = a->add_option("--vary", o.vary, "x|y|z or xy|xz|yz")->capture_default_str();
    else if (n == "u-range") opt = a->add_option("--u-range", o.u_range, "u0,u1");
    else if (n == "v-range") opt = a->add_option("--v-range", o.v_range, "v0,v1")->capture_default_str();
    else if (n == "grid") opt = a->add_option("--grid", o.grid, "nx,ny")->capture_default_str();
    s.opts[n] = opt;
  }
  a->add_option("--config", o.config, "JSON file with default values for the flags; flags win");
}

void apply_config(const Sub& s, Options& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw ArgumentError("cannot read config " + o.config);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed config: ") + e.what());
  }
  if (!cfg.is_object()) throw ArgumentError("config must be a JSON object");
  auto set = setters(o);
  for (const auto& [key, value] : cfg.items()) {
    auto it = s.opts.find(key);
    if (it == s.opts.end()) throw ArgumentError("config key '" + key + "' does not apply to " + s.app->get_name());
    if (it->second->count() > 0) continue;
    try {
      set.at(key)(value);
    } catch (const json::exception& e) {
      throw ArgumentError("config key '" + key + "': " + e.what());
    }
  }
}

TraceTriple need_triple(const Options& o) {
  if (o.triple.empty()) throw ArgumentError("--triple is required");
  return parse_triple(o.triple);
}

MappingClass need_theta(const Options& o) {
  if (!o.word.empty() && !o.matrix.empty()) throw ArgumentError("give either --word or --matrix, not both");
  if (!o.word.empty()) return MappingClass::parse(o.word);
  if (!o.matrix.empty()) return MappingClass::parse(o.matrix);
  throw ArgumentError("--word or --matrix is required");
}

SeriesVariant need_variant(const std::string& v) {
  if (v == "general") return SeriesVariant::General;
  if (v == "cusp") return SeriesVariant::Cusp;
  throw ArgumentError("--variant must be general or cusp");
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ArgumentError(std::string(what) + " needs two comma separated numbers");
  cplx a = parse_complex(s.substr(0, comma)), b = parse_complex(s.substr(comma + 1));
  if (a.imag() != 0 || b.imag() != 0) throw ArgumentError(std::string(what) + " must be real");
  return {a.real(), b.real()};
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out << csv_field(prefix) << "," << csv_field(j.is_array() ? j.dump() : scalar_text(j)) << "\n";
}

void emit(const json& j, const Options& o, std::ostream& out) {
  if (o.csv) {
    out << "key,value\n";
    flatten(j, "", out);
  } else {
    out << j.dump(2) << "\n";
  }
}

int series_exit(const SeriesReport& r, std::size_t max_terms) {
  if (r.converged) return kExitDefinite;
  if (!r.diverged && r.term_count >= max_terms) return kExitResourceCap;
  return kExitInconclusive;
}

int cmd_classify(const Options& o, std::ostream& out) {
  Character c(need_triple(o));
  emit(to_json(c), o, out);
  return kExitDefinite;
}

int cmd_bq(const Options& o, std::ostream& out, BqVariant variant) {
  Character c(need_triple(o));
  if (o.fuel <= 0) throw ArgumentError("--fuel must be positive");
  auto v = decide(c, o.fuel, variant);
  auto chk = check_verdict(c, v);
  json j = {{"character", to_json(c)}, {"verdict", to_json(v)}, {"check", {{"ok", chk.ok}, {"reason", chk.reason}}}};
  emit(j, o, out);
  if (v.status == BqStatus::Inconclusive || !chk.ok) return kExitInconclusive;
  return kExitDefinite;
}

int cmd_identity(const Options& o, std::ostream& out, std::optional<SeriesVariant> forced) {
  Character c(need_triple(o));
  auto variant = forced ? *forced : need_variant(o.variant);
  auto r = evaluate_identity(c, variant, o.tol, o.max_terms);
  if (o.csv) {
    out << "depth,terms,layer_sum_re,layer_sum_im,layer_abs,layer_max,cumulative_re,cumulative_im\n";
    for (const auto& l : r.layers)
      out << l.depth << "," << l.terms << "," << format_double(l.layer_sum.real()) << ","
          << format_double(l.layer_sum.imag()) << "," << format_double(l.layer_abs) << "," << format_double(l.layer_max)
          << "," << format_double(l.cumulative.real()) << "," << format_double(l.cumulative.imag()) << "\n";
  } else {
    out << json({{"character", to_json(c)}, {"series", to_json(r, o.layers)}}).dump(2) << "\n";
  }
  return series_exit(r, o.max_terms);
}

int cmd_bundle(const Options& o, std::ostream& out) {
  auto theta = need_theta(o);
  if (!theta.is_anosov()) throw ArgumentError("mapping class " + theta.str() + " is not Anosov");
  if (o.fuel <= 0) throw ArgumentError("--fuel must be positive");
  std::vector<TraceTriple> triples;
  json head = {{"theta", theta.str()}};
  if (theta.word()) head["word"] = theta.word()->str();
  if (!o.triple.empty()) {
    triples.push_back(need_triple(o));
  } else {
    if (o.kappa.empty()) throw ArgumentError("--kappa or --triple is required");
    cplx k = parse_complex(o.kappa);
    head["kappa"] = to_json(k);
    FixedPointOptions fo;
    fo.jobs = o.jobs;
    for (const auto& f : fixed_characters(theta, k, fo)) triples.push_back(f.triple);
  }
  json roots = json::array();
  bool any = false;
  for (const auto& t : triples) {
    Character c(t);
    json r = {{"character", to_json(c)}, {"fixed_point_residual", fixed_point_residual(t, theta)}};
    if (!o.triple.empty() && fixed_point_residual(t, theta) > 1e-6)
      throw PreconditionError("character is not fixed by " + theta.str());
    auto v = relative_bq(c, theta, o.fuel);
    r["relative_bq"] = to_json(v);
    if (v.status == BqStatus::Satisfies) {
      try {
        auto rep = evaluate_bundle_identities(c, theta, o.tol, o.max_terms, false, o.fuel);
        r["identities"] = to_json(rep);
        if (rep.full.converged && rep.half.converged && rep.conjugator) any = true;
      } catch (const std::exception& e) {
        r["error"] = e.what();
      }
    }
    roots.push_back(r);
  }
  head["fixed_characters"] = roots;
  emit(head, o, out);
  return any ? kExitDefinite : kExitInconclusive;
}

int cmd_ends(const Options& o, std::ostream& out) {
  Character c(need_triple(o));
  if (o.fuel <= 0) throw ArgumentError("--fuel must be positive");
  EndInvariantReport r = o.depth >= 0 ? search_end_invariants(c, o.bound, o.depth) : classify_end_set(c, o.fuel);
  std::size_t n_iv = r.intervals().size();
  json j = {{"character", to_json(c)}, {"ends", to_json(r, n_iv <= 256)}};
  emit(j, o, out);
  return r.classification == EndClass::Unknown ? kExitInconclusive : kExitDefinite;
}

struct Cell {
  std::string status, payload;
  long fuel = 0;
};

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ResourceLimitError*>(&e)) return "error/cap";
  if (dynamic_cast<const PreconditionError*>(&e)) return "error/precondition";
  if (dynamic_cast<const SingularTermError*>(&e)) return "error/singular";
  if (dynamic_cast<const OverflowError*>(&e)) return "error/overflow";
  if (dynamic_cast<const ArgumentError*>(&e)) return "error/argument";
  return "error/other";
}

Cell run_cell(const TraceTriple& t, const Options& o) {
  Cell cell;
  try {
    Character c(t);
    if (o.task == "bq") {
      auto v = decide_bq(c, o.fuel);
      cell.fuel = v.fuel_spent;
      if (v.status == BqStatus::Satisfies) {
        cell.status = "Satisfies";
        cell.payload = std::to_string(v.certificate->triangles.size());
      } else if (v.status == BqStatus::Fails) {
        auto ev = v.witness ? v.witness->evidence : Evidence::ForbiddenTrace;
        cell.status = ev == Evidence::ReducibleKappa ? "Fails/reducible"
                      : ev == Evidence::PeriodicBoundedOrbit ? "Fails/periodic"
                                                             : "Fails/forbidden";
      } else {
        cell.status = "Inconclusive";
      }
    } else if (o.task == "identity-residual") {
      auto r = evaluate_identity(c, need_variant(o.variant), o.tol, o.max_terms);
      cell.fuel = static_cast<long>(r.term_count);
      cell.status = r.converged ? "converged" : r.diverged ? "diverged" : r.term_count >= o.max_terms ? "budget" : "unresolved";
      cell.payload = format_double(std::abs(r.residual));
    } else {
      auto g = bounded_subgraph(c, o.bound, o.depth < 0 ? 8 : o.depth);
      cell.status = "ok";
      cell.payload = std::to_string(g.vertices.size());
    }
  } catch (const std::exception& e) {
    cell.status = error_kind(e);
    cell.payload.clear();
  }
  return cell;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.task != "bq" && o.task != "identity-residual" && o.task != "end-count")
    throw ArgumentError("--task must be bq, identity-residual or end-count");
  if (o.fuel <= 0) throw ArgumentError("--fuel must be positive");
  if (o.task == "identity-residual") need_variant(o.variant);
  TraceTriple base = need_triple(o);
  if (o.u_range.empty()) throw ArgumentError("--u-range is required");
  auto [u0, u1] = parse_pair(o.u_range, "--u-range");
  auto [v0, v1] = parse_pair(o.v_range, "--v-range");
  auto [gx, gy] = parse_pair(o.grid, "--grid");
  if (gx != std::floor(gx) || gy != std::floor(gy) || gx < 1 || gy < 1 || gx * gy > 1e7)
    throw ArgumentError("--grid needs positive integers nx,ny");
  const int nx = static_cast<int>(gx), ny = static_cast<int>(gy);
  if (u1 < u0 || v1 < v0) throw ArgumentError("ranges must be increasing");
  if ((nx > 1 && u1 == u0) || (ny > 1 && v1 == v0)) throw ArgumentError("degenerate range for a grid wider than 1");
  static const std::map<std::string, std::pair<int, int>> kVary = {
      {"x", {0, -1}}, {"y", {1, -1}}, {"z", {2, -1}}, {"xy", {0, 1}}, {"xz", {0, 2}}, {"yz", {1, 2}}};
  auto vary = kVary.find(o.vary);
  if (vary == kVary.end()) throw ArgumentError("--vary must be x, y, z, xy, xz or yz");

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw ArgumentError("cannot write " + o.out);
  }
  std::ostream& dst = o.out.empty() ? out : file;

  const std::size_t cells = static_cast<std::size_t>(nx) * ny;
  std::vector<TraceTriple> pts(cells);
  std::vector<std::pair<int, int>> idx(cells);
  for (int j = 0; j < ny; ++j) {
    double v = ny == 1 ? v0 : v0 + (v1 - v0) * j / (ny - 1);
    for (int i = 0; i < nx; ++i) {
      double u = nx == 1 ? u0 : u0 + (u1 - u0) * i / (nx - 1);
      TraceTriple t = base;
      if (vary->second.second < 0) {
        t[vary->second.first] = cplx(u, v);
      } else {
        t[vary->second.first] = u;
        t[vary->second.second] = v;
      }
      std::size_t k = static_cast<std::size_t>(j) * nx + i;
      pts[k] = t;
      idx[k] = {i, j};
    }
  }
  std::vector<Cell> res(cells);
  unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cells));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next++) < cells;) res[k] = run_cell(pts[k], o);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  dst << "i,j,x_re,x_im,y_re,y_im,z_re,z_im,status,payload,fuel\n";
  for (std::size_t k = 0; k < cells; ++k) {
    const auto& t = pts[k];
    dst << idx[k].first << "," << idx[k].second;
    for (int c = 0; c < 3; ++c) dst << "," << format_double(t[c].real()) << "," << format_double(t[c].imag());
    dst << "," << res[k].status << "," << res[k].payload << "," << res[k].fuel << "\n";
  }
  dst.flush();
  if (!dst) throw ArgumentError("write failed");
  return kExitDefinite;
}

int cmd_selftest(std::ostream& out) {
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception&) {
      ok = false;
    }
    all = all && ok;
    checks.push_back({{"name", name}, {"ok", ok}});
  };
  check("bq (3,3,3) satisfies with a checked certificate", [] {
    Character c({3, 3, 3});
    auto v = decide_bq(c, 10000);
    return v.status == BqStatus::Satisfies && check_verdict(c, v).ok;
  });
  check("bq (0,3,3i) fails at 0/1", [] {
    Character c({0, 3, cplx(0, 3)});
    auto v = decide_bq(c, 10000);
    return v.status == BqStatus::Fails && v.witness && v.witness->slope == Slope(0, 1);
  });
  check("cusp sum at (3,3,3) is 1/2", [] {
    auto r = evaluate_identity(Character({3, 3, 3}), SeriesVariant::Cusp, 1e-8);
    return r.converged && std::abs(r.partial_sum - 0.5) < 1e-6;
  });
  check("general sum at (3,3,4) matches nu", [] {
    auto r = evaluate_identity(Character({3, 3, 4}), SeriesVariant::General, 1e-8);
    return r.converged && std::abs(r.residual) < 1e-6;
  });
  check("cyclic word of [[2,1],[1,1]]", [] { return lr_word({2, 1, 1, 1}).str() == "LR"; });
  check("ends of (3,3,3) empty", [] {
    return classify_end_set(Character({3, 3, 3}), 10000).classification == EndClass::Empty;
  });
  out << json({{"checks", checks}, {"ok", all}}).dump(2) << "\n";
  return all ? kExitDefinite : kExitSelftestFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"trace-coordinate tools for characters of the one-holed torus group", "fricke"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, Sub> subs;
  auto sub = [&](const std::string& name, const std::string& desc, std::initializer_list<std::string> flags) {
    Sub s{app.add_subcommand(name, desc), {}};
    add_flags(s, o, flags);
    subs[name] = s;
    return s.app;
  };
  sub("classify", "character class tags and kappa", {"triple", "csv"});
  sub("bq", "decide the BQ conditions with a certificate or witness", {"triple", "fuel", "csv"});
  sub("extended-bq", "decide the extended BQ conditions", {"triple", "fuel", "csv"});
  sub("identity", "sum the generalized identity", {"triple", "tol", "max-terms", "variant", "csv", "layers"});
  sub("mcshane", "sum the cusp identity (kappa = -2)", {"triple", "tol", "max-terms", "csv", "layers"});
  sub("bundle", "fixed characters of a mapping class and their identities",
      {"word", "matrix", "kappa", "triple", "tol", "max-terms", "fuel", "jobs", "csv"});
  sub("ends", "end invariants: classification, or a bounded search with --depth",
      {"triple", "fuel", "depth", "bound", "csv"});
  sub("sweep", "parameter-plane sweep to CSV",
      {"triple", "task", "vary", "u-range", "v-range", "grid", "fuel", "tol", "max-terms", "variant", "depth", "bound",
       "jobs", "out"})
      ->footer(kSweepColumns);
  sub("selftest", "quick internal checks", {});

  std::vector<std::string> argv_store = {"fricke"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitDefinite;
    }
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    apply_config(subs.at(name), o);
    if (name == "classify") return cmd_classify(o, out);
    if (name == "bq") return cmd_bq(o, out, BqVariant::Standard);
    if (name == "extended-bq") return cmd_bq(o, out, BqVariant::Extended);
    if (name == "identity") return cmd_identity(o, out, std::nullopt);
    if (name == "mcshane") return cmd_identity(o, out, SeriesVariant::Cusp);
    if (name == "bundle") return cmd_bundle(o, out);
    if (name == "ends") return cmd_ends(o, out);
    if (name == "sweep") return cmd_sweep(o, out);
    return cmd_selftest(out);
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const OverflowError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidTriangleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  }
}

}  // namespace fricke
