// hallbasis: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 internal error.

#include "hallbasis/error.hpp"
#include "hallbasis/json_io.hpp"
#include "hallbasis/poly_cache.hpp"
#include "hallbasis/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hallbasis;

namespace {

struct Options {
  std::string type = "A2";
  std::string quiver_file;
  std::string dim;
  std::vector<long long> qs;
  std::string format = "table";
  bool latex = false;
  std::string cache;
  int jobs = 1;
  std::string direction = "auto";
  std::string twist = "standard";
  unsigned long long seed = 0;
  std::vector<std::string> args;
  std::string suite = "all";
  std::string cache_cmd;
};

class Session {
 public:
  explicit Session(const Options& o) : o_(o), format_(o.latex ? OutputFormat::Latex : parse_format(o.format)) {
    std::string path = o.cache;
    if (path.empty()) {
      if (const char* env = std::getenv("HALLBASIS_CACHE")) path = env;
    }
    cache_ = std::make_unique<PolyCache>(path);
  }

  OutputFormat format() const { return format_; }
  PolyCache& cache() { return *cache_; }

  std::shared_ptr<const QuiverType> type() {
    if (!type_) {
      if (o_.quiver_file.empty()) {
        type_ = QuiverType::get(o_.type);
      } else {
        std::ifstream in(o_.quiver_file);
        if (!in) throw Error(ErrorKind::ParseError, "cannot read " + o_.quiver_file);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::ParseError, std::string("quiver file: ") + e.what());
        }
        type_ = std::make_shared<const QuiverType>(quiver_from_json(j));
      }
    }
    return type_;
  }

  const HallEngine& engine() {
    if (!engine_) engine_ = std::make_unique<HallEngine>(type(), cache_.get());
    return *engine_;
  }

  DimVector dim() {
    std::string text = o_.dim;
    if (text.empty() && !o_.args.empty()) text = o_.args[0];
    if (text.empty()) throw Error(ErrorKind::ParseError, "a dimension vector is required (--dim 1,1)");
    DimVector nu;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
      try {
        size_t used = 0;
        nu.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad dimension vector '" + text + "'");
      }
      if (nu.back() < 0) throw Error(ErrorKind::ParseError, "negative entry in '" + text + "'");
    }
    if (static_cast<int>(nu.size()) != type()->rank()) {
      throw Error(ErrorKind::DimensionMismatch, "dimension vector '" + text + "' does not match rank " +
                                                    std::to_string(type()->rank()));
    }
    return nu;
  }

  ModuleClass cls(const std::string& s) { return type()->parse(s); }

 private:
  const Options& o_;
  OutputFormat format_;
  std::unique_ptr<PolyCache> cache_;
  std::shared_ptr<const QuiverType> type_;
  std::unique_ptr<HallEngine> engine_;
};

std::string join(const std::vector<long long>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string dim_text(const DimVector& nu) {
  std::string s;
  for (size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + std::to_string(nu[i]);
  return s;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

void cmd_roots(Session& s) {
  const QuiverType& t = *s.type();
  const FoldedCartan& c = t.cartan();
  if (s.format() == OutputFormat::Json) {
    Json j;
    j["type"] = c.type_label;
    j["cartan"] = Json::array();
    for (int i = 0; i < c.rank(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < c.rank(); ++k) row.push_back(c.cartan(i, k));
      j["cartan"].push_back(row);
    }
    j["symmetrizer"] = c.orbit_sizes;
    j["roots"] = Json::array();
    for (const Root& r : t.roots()) j["roots"].push_back({{"name", r.name}, {"dim", r.coords}, {"end_dim", r.end_dim}});
    print(j);
    return;
  }
  std::vector<std::vector<std::string>> rows{{"root", "dim", "end_dim"}};
  for (const Root& r : t.roots()) rows.push_back({r.name, dim_text(r.coords), std::to_string(r.end_dim)});
  std::cout << render_rows(rows, s.format());
}

void cmd_modules(Session& s) {
  const QuiverType& t = *s.type();
  const DimVector nu = s.dim();
  const auto classes = linear_extension(t, t.enumerate_modules(nu));
  if (s.format() == OutputFormat::Json) {
    Json j;
    j["type"] = t.label();
    j["dim"] = nu;
    j["modules"] = Json::array();
    for (const auto& m : classes) {
      j["modules"].push_back({{"class", t.name(m)}, {"orbit_dim", t.orbit_dim(m)}, {"end_dim", t.end_dim(m)},
                              {"aut", t.aut_poly(m).coeffs()}});
    }
    print(j);
    return;
  }
  std::vector<std::vector<std::string>> rows{{"class", "orbit_dim", "end_dim", "|Aut|"}};
  for (const auto& m : classes) {
    rows.push_back({t.name(m), std::to_string(t.orbit_dim(m)), std::to_string(t.end_dim(m)), t.aut_poly(m).str()});
  }
  std::cout << render_rows(rows, s.format());
}

void cmd_hallpoly(Session& s, const std::vector<std::string>& args, const std::vector<long long>& qs) {
  if (args.size() != 3) throw Error(ErrorKind::ParseError, "hallpoly expects three classes: L M N");
  const ModuleClass L = s.cls(args[0]), M = s.cls(args[1]), N = s.cls(args[2]);
  const HallEngine& e = s.engine();
  const HallPolynomial h = e.hall_polynomial(L, M, N);
  std::vector<std::pair<long long, long long>> values;
  for (long long q : qs) values.emplace_back(q, e.hall_number(L, M, N, q));
  if (s.format() == OutputFormat::Json) {
    Json j{{"key", e.cache_key(L, M, N)}, {"poly", h.poly.str()}, {"coeffs", h.poly.coeffs()},
           {"samples", h.samples}, {"heldout", h.heldout}};
    if (!values.empty()) {
      j["values"] = Json::object();
      for (const auto& [q, g] : values) j["values"][std::to_string(q)] = g;
    }
    print(j);
    return;
  }
  std::vector<std::vector<std::string>> rows{{"field", "value"}, {"g", h.poly.str()},
                                             {"samples", join(h.samples)}, {"heldout", join(h.heldout)}};
  for (const auto& [q, g] : values) rows.push_back({"q=" + std::to_string(q), std::to_string(g)});
  if (s.format() == OutputFormat::Table) {
    std::cout << h.poly.str() << "\n";
    rows.erase(rows.begin(), rows.begin() + 2);
  }
  std::cout << render_rows(rows, s.format());
}

Twist parse_twist(const std::string& t) {
  if (t == "standard") return Twist::Standard;
  if (t == "euler") return Twist::Euler;
  if (t == "geometric") return Twist::Geometric;
  throw Error(ErrorKind::ParseError, "unknown twist '" + t + "'");
}

void cmd_product(Session& s, const std::vector<std::string>& args, const std::string& twist) {
  if (args.size() != 2) throw Error(ErrorKind::ParseError, "product expects two classes: x y");
  const QuiverType& t = *s.type();
  HallAlgebra alg(s.engine(), parse_twist(twist));
  const AlgebraElement x = alg.product(s.cls(args[0]), s.cls(args[1]));
  if (s.format() == OutputFormat::Json) {
    Json j = element_to_json(t, x);
    j["twist"] = twist_name(alg.twist());
    print(j);
    return;
  }
  std::vector<std::vector<std::string>> rows{{"class", "coeff"}};
  for (const auto& [m, c] : x.terms()) rows.push_back({t.name(m), c.str()});
  std::cout << render_rows(rows, s.format());
}

DirectionChoice parse_direction(const std::string& d) {
  if (d == "auto") return DirectionChoice::Auto;
  if (d == "top") return DirectionChoice::Top;
  if (d == "bottom") return DirectionChoice::Bottom;
  throw Error(ErrorKind::ParseError, "unknown direction '" + d + "'");
}

void print_report_text(const OracleResult& o, const GsReport& g) {
  std::cout << "twist: " << twist_name(o.twist) << "\n";
  for (const auto& r : o.rejected) std::cout << "rejected: " << r << "\n";
  std::cout << "direction: " << direction_name(g.chosen) << (g.tie ? " (tie)" : "") << "\n";
  for (const auto& t : g.trials) {
    std::cout << "  " << direction_name(t.direction) << ": " << (t.ok ? "agrees" : t.failure) << "\n";
  }
}

void cmd_bar(Session& s, bool canonical, const std::string& direction) {
  const HallEngine& e = s.engine();
  const QuiverType& t = e.type();
  const DimVector nu = s.dim();
  const OracleResult o = bar_matrix_oracle(e, nu);
  const GsReport g = select_direction(e, nu, o.r, parse_direction(direction));
  std::optional<CanonicalBasis> cb;
  if (canonical) cb = canonical_basis(t, o.r);
  if (s.format() == OutputFormat::Json) {
    Json j{{"type", t.label()}, {"dim", nu}, {"twist", twist_name(o.twist)}, {"rejected", o.rejected},
           {"direction", gs_report_to_json(g)}};
    if (canonical) {
      j["P"] = matrix_to_json(t, cb->p);
      j["Q"] = matrix_to_json(t, cb->q);
    } else {
      j["R"] = matrix_to_json(t, o.r);
    }
    print(j);
    return;
  }
  if (s.format() == OutputFormat::Table) print_report_text(o, g);
  if (canonical) {
    std::cout << render_matrix(t, cb->p, s.format());
    std::cout << render_matrix(t, cb->q, s.format());
  } else {
    std::cout << render_matrix(t, o.r, s.format());
  }
}

int cmd_verify(Session& s, const Options& o) {
  Workspace ws(&s.cache(), o.jobs);
  const auto results = run_suite(o.suite, ws);
  bool ok = true;
  if (s.format() == OutputFormat::Json) {
    Json j = Json::array();
    for (const auto& r : results) j.push_back(check_to_json(r));
    print(j);
  }
  for (const auto& r : results) {
    if (s.format() != OutputFormat::Json) std::cout << format_result(r) << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

int cmd_cache(Session& s, const Options& o) {
  PolyCache& cache = s.cache();
  if (o.cache_cmd == "list") {
    std::vector<std::vector<std::string>> rows{{"key", "coeffs", "samples", "heldout"}};
    for (const auto& r : cache.records()) rows.push_back({r.key, join(r.coeffs), join(r.samples), join(r.heldout)});
    if (s.format() == OutputFormat::Json) {
      for (const auto& r : cache.records()) std::cout << to_json_line(r) << "\n";
    } else {
      std::cout << render_rows(rows, s.format());
    }
    return 0;
  }
  if (o.cache_cmd == "compact") {
    if (cache.path().empty()) throw Error(ErrorKind::ParseError, "cache compact needs --cache or HALLBASIS_CACHE");
    cache.compact();
    std::cout << "compacted " << cache.size() << " records\n";
    return 0;
  }
  Workspace ws(&cache, o.jobs);
  try {
    const CacheVerifyReport rep = verify_cache(cache, ws, o.seed);
    for (const auto& k : rep.keys) std::cout << "ok " << k << "\n";
    std::cout << "PASS cache verify: " << rep.checked << " of " << rep.total << " records recounted\n";
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CorruptCache) throw;
    std::cout << "FAIL cache verify: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hall polynomials, bar involution and canonical bases of folded quivers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--type", o.type, "Catalog label (A1..A5, D4, B2, C3, G2)");
  app.add_option("--quiver", o.quiver_file, "JSON quiver file used instead of --type");
  app.add_option("--dim", o.dim, "Folded dimension vector, e.g. 1,1");
  app.add_option("--q", o.qs, "Prime powers at which to evaluate")->delimiter(',');
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table", "latex"}));
  app.add_flag("--latex", o.latex, "Same as --format latex");
  app.add_option("--cache", o.cache, "Polynomial cache file (default: $HALLBASIS_CACHE)");
  app.add_option("--jobs", o.jobs, "Worker threads for counting")->check(CLI::PositiveNumber);
  app.add_option("--direction", o.direction, "Filtration direction for the gs route")
      ->check(CLI::IsMember({"auto", "top", "bottom"}));
  app.add_option("--seed", o.seed, "Seed for cache verify sampling");

  app.add_subcommand("roots", "Positive roots of the folded type");
  auto* modules = app.add_subcommand("modules", "Module classes of a dimension vector");
  modules->add_option("dim", o.args, "Dimension vector");
  auto* hallpoly = app.add_subcommand("hallpoly", "Certified Hall polynomial g^L_{MN}");
  hallpoly->add_option("classes", o.args, "L M N")->expected(3);
  auto* product = app.add_subcommand("product", "Twisted product of two classes");
  product->add_option("classes", o.args, "x y")->expected(2);
  product->add_option("--twist", o.twist, "standard, euler or geometric")
      ->check(CLI::IsMember({"standard", "euler", "geometric"}));
  auto* barmatrix = app.add_subcommand("barmatrix", "Bar involution R on the PBW basis");
  barmatrix->add_option("dim", o.args, "Dimension vector");
  auto* canonical = app.add_subcommand("canonical", "Canonical-basis matrices P and Q");
  canonical->add_option("dim", o.args, "Dimension vector");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite, "hall, slice, bar, corollary or all")
      ->check(CLI::IsMember({"hall", "slice", "bar", "corollary", "all"}));
  auto* cache = app.add_subcommand("cache", "Cache administration");
  cache->add_option("action", o.cache_cmd, "list, compact or verify")
      ->required()
      ->check(CLI::IsMember({"list", "compact", "verify"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Session s(o);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "roots") cmd_roots(s);
    else if (cmd == "modules") cmd_modules(s);
    else if (cmd == "hallpoly") cmd_hallpoly(s, o.args, o.qs);
    else if (cmd == "product") cmd_product(s, o.args, o.twist);
    else if (cmd == "barmatrix") cmd_bar(s, false, o.direction);
    else if (cmd == "canonical") cmd_bar(s, true, o.direction);
    else if (cmd == "verify") return cmd_verify(s, o);
    else if (cmd == "cache") return cmd_cache(s, o);
    return 0;
  } catch (const Error& e) {
    std::cerr << "hallbasis: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::UnknownType:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::NonIntegralCartan:
      case ErrorKind::NotFiniteType:
      case ErrorKind::CycleDetected:
      case ErrorKind::UnsupportedFieldSize:
        return 2;
      case ErrorKind::IdentityFailed:
      case ErrorKind::CorruptCache:
        return 1;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "hallbasis: internal error: " << e.what() << "\n";
    return 3;
  }
}
