#include "hallbasis/json_io.hpp"

#include "hallbasis/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hallbasis {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& ctx) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(ctx + ": expected a string");
}

std::string latex_laurent(const Laurent& x) {
  if (x.is_zero()) return "$0$";
  std::string s;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.str();
    bool negative = c.is_integer() && c.integer_part() < 0;
    if (negative) cs = cs.substr(1);
    if (!first) s += negative ? " - " : " + ";
    else if (negative) s += "-";
    bool unit = c.is_integer() && (c.integer_part() == 1 || c.integer_part() == -1);
    if (e == 0) {
      s += cs;
    } else {
      if (!unit) s += cs;
      s += "v";
      if (e != 1) s += "^{" + std::to_string(e) + "}";
    }
    first = false;
  }
  for (size_t pos; (pos = s.find('w')) != std::string::npos;) s.replace(pos, 1, "\\omega ");
  return "$" + s + "$";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

}  // namespace

QuiverWithAutomorphism quiver_from_json(const Json& j) {
  if (!j.is_object()) bad("quiver: expected an object");
  QuiverWithAutomorphism q;
  q.label = j.contains("label") ? as_string(j["label"], "label") : std::string("custom");
  const Json& vs = field(j, "vertices");
  if (!vs.is_array() || vs.empty()) bad("quiver: 'vertices' must be a nonempty array");
  std::map<std::string, int> vindex;
  for (const auto& v : vs) {
    std::string name = as_string(v, "vertex");
    if (!vindex.emplace(name, static_cast<int>(q.vertex_names.size())).second) bad("duplicate vertex " + name);
    q.vertex_names.push_back(name);
  }
  auto vertex = [&](const Json& v) {
    std::string name = as_string(v, "vertex");
    auto it = vindex.find(name);
    if (it == vindex.end()) bad("unknown vertex " + name);
    return it->second;
  };
  std::map<std::string, int> aindex;
  const Json& as = field(j, "arrows");
  if (!as.is_array()) bad("quiver: 'arrows' must be an array");
  for (const auto& a : as) {
    Arrow h;
    h.id = as_string(field(a, "id"), "arrow id");
    h.src = vertex(field(a, "src"));
    h.tgt = vertex(field(a, "tgt"));
    if (!aindex.emplace(h.id, static_cast<int>(q.arrows.size())).second) bad("duplicate arrow " + h.id);
    q.arrows.push_back(h);
  }
  auto read_perm = [&](const char* key, const std::map<std::string, int>& index, size_t n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    if (!j.contains(key)) return p;
    const Json& m = j[key];
    if (!m.is_object()) bad(std::string("quiver: '") + key + "' must be an object");
    for (const auto& [from, to] : m.items()) {
      auto a = index.find(from);
      auto b = index.find(as_string(to, key));
      if (a == index.end() || b == index.end()) bad(std::string(key) + ": unknown name " + from);
      p[a->second] = b->second;
    }
    return p;
  };
  q.vertex_perm = read_perm("vertex_perm", vindex, q.vertex_names.size());
  q.arrow_perm = read_perm("arrow_perm", aindex, q.arrows.size());
  if (j.contains("period")) q.period = field(j, "period").get<int>();
  return q;
}

Json quiver_to_json(const QuiverWithAutomorphism& q) {
  Json j;
  j["label"] = q.label;
  j["vertices"] = q.vertex_names;
  j["arrows"] = Json::array();
  for (const auto& h : q.arrows) {
    j["arrows"].push_back({{"id", h.id}, {"src", q.vertex_names[h.src]}, {"tgt", q.vertex_names[h.tgt]}});
  }
  Json vp = Json::object();
  for (size_t i = 0; i < q.vertex_perm.size(); ++i) vp[q.vertex_names[i]] = q.vertex_names[q.vertex_perm[i]];
  Json ap = Json::object();
  for (size_t h = 0; h < q.arrow_perm.size(); ++h) ap[q.arrows[h].id] = q.arrows[q.arrow_perm[h]].id;
  j["vertex_perm"] = vp;
  j["arrow_perm"] = ap;
  if (q.period > 0) j["period"] = q.period;
  return j;
}

Json laurent_to_json(const Laurent& x) {
  Json j = Json::object();
  for (const auto& [e, c] : x.terms()) j[std::to_string(e)] = c.coords();
  return j;
}

Laurent laurent_from_json(const Json& j, int omega_order) {
  if (!j.is_object()) bad("Laurent: expected an object");
  Laurent x;
  for (const auto& [key, coords] : j.items()) {
    int e = 0;
    try {
      size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      bad("Laurent: bad exponent '" + key + "'");
    }
    if (!coords.is_array()) bad("Laurent: coefficient must be an array");
    x += Laurent::monomial(e, Cyclotomic(omega_order, coords.get<std::vector<long long>>()));
  }
  return x;
}

int omega_order(const Laurent& x) {
  int o = 1;
  for (const auto& [e, c] : x.terms()) {
    if (!c.is_integer()) o = std::lcm(o, c.order());
  }
  return o;
}

Json element_to_json(const QuiverType& type, const AlgebraElement& x) {
  Json j;
  j["terms"] = Json::array();
  int o = 1;
  std::vector<std::pair<std::string, const Laurent*>> named;
  for (const auto& [m, c] : x.terms()) named.emplace_back(type.name(m), &c);
  for (const auto& [m, c] : named) {
    j["terms"].push_back({{"class", m}, {"coeff", laurent_to_json(*c)}});
    o = std::lcm(o, omega_order(*c));
  }
  if (o > 1) j["omega_order"] = o;
  return j;
}

AlgebraElement element_from_json(const QuiverType& type, const Json& j) {
  int o = j.contains("omega_order") ? j["omega_order"].get<int>() : 1;
  AlgebraElement x;
  for (const auto& t : field(j, "terms")) {
    x.add(type.parse(as_string(field(t, "class"), "class")), laurent_from_json(field(t, "coeff"), o));
  }
  return x;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "table") return OutputFormat::Table;
  if (s == "latex") return OutputFormat::Latex;
  bad("unknown format '" + s + "'");
}

Json matrix_to_json(const QuiverType& type, const TransitionMatrix& m) {
  Json j;
  j["role"] = std::string(1, m.role);
  j["classes"] = Json::array();
  for (const auto& c : m.classes) j["classes"].push_back(type.name(c));
  j["entries"] = Json::array();
  for (Eigen::Index r = 0; r < m.m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.m.cols(); ++c) row.push_back(laurent_to_json(m.m(r, c)));
    j["entries"].push_back(row);
  }
  return j;
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows, OutputFormat f) {
  std::ostringstream os;
  if (f == OutputFormat::Csv) {
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(row[c]);
      os << "\n";
    }
    return os.str();
  }
  size_t ncols = 0;
  for (const auto& row : rows) ncols = std::max(ncols, row.size());
  if (f == OutputFormat::Latex) {
    os << "\\begin{tabular}{" << std::string(ncols, 'c') << "}\n";
    for (size_t r = 0; r < rows.size(); ++r) {
      for (size_t c = 0; c < rows[r].size(); ++c) os << (c ? " & " : "") << rows[r][c];
      os << " \\\\\n";
      if (r == 0) os << "\\hline\n";
    }
    os << "\\end{tabular}\n";
    return os.str();
  }
  std::vector<size_t> width(ncols, 0);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

std::string render_matrix(const QuiverType& type, const TransitionMatrix& m, OutputFormat f) {
  if (f == OutputFormat::Json) return matrix_to_json(type, m).dump(2) + "\n";
  bool latex = f == OutputFormat::Latex;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{std::string(1, m.role)};
  for (const auto& c : m.classes) header.push_back(latex ? "$" + type.name(c) + "$" : type.name(c));
  rows.push_back(header);
  for (Eigen::Index r = 0; r < m.m.rows(); ++r) {
    std::vector<std::string> row{header[r + 1]};
    for (Eigen::Index c = 0; c < m.m.cols(); ++c) row.push_back(latex ? latex_laurent(m.m(r, c)) : m.m(r, c).str());
    rows.push_back(row);
  }
  return render_rows(rows, f);
}

Json gs_report_to_json(const GsReport& g) {
  Json j;
  j["chosen"] = direction_name(g.chosen);
  j["tie"] = g.tie;
  j["trials"] = Json::array();
  for (const auto& t : g.trials) {
    Json tj{{"direction", direction_name(t.direction)}, {"ok", t.ok}};
    if (!t.ok) tj["failure"] = t.failure;
    j["trials"].push_back(tj);
  }
  return j;
}

Json check_to_json(const CheckResult& r) {
  return Json{{"criterion", r.criterion}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
}

}  // namespace hallbasis
