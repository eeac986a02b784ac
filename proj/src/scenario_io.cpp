#include "chainscreen/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "chainscreen/errors.hpp"
#include "json.hpp"

namespace chainscreen {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing field \"" + key + "\"");
  return *it;
}

std::vector<Vertex> points(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where + ": expected a nonempty array of [u, v] pairs");
  std::vector<Vertex> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) bad(w + ": expected [u, v]");
    out.push_back({number(j[k][0], w), number(j[k][1], w)});
  }
  return out;
}

Frontier quadratic(const json& j, const std::string& where) {
  return Frontier::quadratic(number(field(j, "height", where), where + ".height"),
                             number(field(j, "peak", where), where + ".peak"),
                             number(field(j, "curvature", where), where + ".curvature"),
                             number(field(j, "lo", where), where + ".lo"), number(field(j, "hi", where), where + ".hi"));
}

Frontier pwl(const json& j, const std::string& where) {
  auto pts = points(j, where);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (!(pts[k].u > pts[k - 1].u)) bad(where + ": breakpoints must have increasing u");
  }
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const double left = (pts[k].v - pts[k - 1].v) / (pts[k].u - pts[k - 1].u);
    const double right = (pts[k + 1].v - pts[k].v) / (pts[k + 1].u - pts[k].u);
    if (right > left + kHullTol) bad(where + ": breakpoints are not concave");
  }
  return Frontier::from_points(pts, FrontierKind::Pwl);
}

json frontier_json(const Frontier& f) {
  if (f.kind() == FrontierKind::Quadratic) {
    const auto& q = f.quadratic_params();
    return {{"height", q.height}, {"peak", q.peak}, {"curvature", q.curvature}, {"lo", f.lo()}, {"hi", f.hi()}};
  }
  json arr = json::array();
  for (const auto& p : f.vertices()) arr.push_back({p.u, p.v});
  return arr;
}

std::string kind_name(FrontierKind k) {
  switch (k) {
    case FrontierKind::Points: return "points";
    case FrontierKind::Quadratic: return "quadratic";
    case FrontierKind::Pwl: return "pwl";
  }
  return "points";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string detail = e.what();
    if (auto at = detail.find("column"); at != std::string::npos) {
      if (auto colon = detail.find(": ", at); colon != std::string::npos) detail = detail.substr(colon + 2);
    }
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << col << ": " << detail;
    bad(os.str());
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) bad("scenario: expected a JSON object");

  auto labels = numbers(field(doc, "types", "scenario"), "types");
  auto weights = numbers(field(doc, "weights", "scenario"), "weights");

  std::vector<double> grid;
  const json& g = field(doc, "u_grid", "scenario");
  if (g.is_array()) {
    grid = numbers(g, "u_grid");
  } else if (g.is_object()) {
    const json& steps = field(g, "steps", "u_grid");
    if (!steps.is_number_integer()) bad("u_grid.steps: expected an integer");
    grid = uniform_grid(number(field(g, "min", "u_grid"), "u_grid.min"), number(field(g, "max", "u_grid"), "u_grid.max"),
                        steps.get<int>());
  } else {
    bad("u_grid: expected an array or {min, max, steps}");
  }

  const json& surf = field(doc, "surface", "scenario");
  const json& kind_j = field(surf, "kind", "surface");
  if (!kind_j.is_string()) bad("surface.kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  const json& per_type = field(surf, "types", "surface");
  if (!per_type.is_array()) bad("surface.types: expected an array");

  const json& def_j = field(doc, "default", "scenario");
  auto def_frontier = [&]() -> Frontier {
    if (def_j.is_object()) return quadratic(def_j, "default");
    return Frontier::from_points(points(def_j, "default"));
  };

  ValueSurface surface;
  if (kind == "points") {
    std::vector<std::vector<Vertex>> pts;
    for (std::size_t i = 0; i < per_type.size(); ++i) {
      pts.push_back(points(per_type[i], "surface.types[" + std::to_string(i) + "]"));
    }
    if (!def_j.is_array()) bad("default: points surfaces need a point list default");
    surface = build_surface(pts, points(def_j, "default"));
  } else if (kind == "quadratic" || kind == "pwl") {
    std::vector<Frontier> fs;
    for (std::size_t i = 0; i < per_type.size(); ++i) {
      const std::string w = "surface.types[" + std::to_string(i) + "]";
      fs.push_back(kind == "quadratic" ? quadratic(per_type[i], w) : pwl(per_type[i], w));
    }
    surface = ValueSurface(std::move(fs), def_frontier());
  } else {
    bad("surface.kind: expected \"points\", \"quadratic\" or \"pwl\"");
  }

  Scenario sc{TypeChain(std::move(labels), std::move(weights)), std::move(surface), std::move(grid), {}};
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) bad("metadata: expected an object");
    for (const auto& [k, v] : it->items()) sc.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  validate_scenario(sc);
  return sc;
}

CandidateFile parse_candidate(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) bad("candidate: expected a JSON object");
  CandidateFile c;
  c.u_c = numbers(field(doc, "u_c", "candidate file"), "u_c");
  c.candidate = numbers(field(doc, "candidate", "candidate file"), "candidate");
  if (c.u_c.empty() || c.u_c.size() != c.candidate.size()) bad("u_c and candidate must be nonempty and equally long");
  if (auto it = doc.find("weights"); it != doc.end()) c.weights = numbers(*it, "weights");
  return c;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
  if (!out) bad("cannot write " + path);
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_text(path)); }

std::string scenario_to_json(const Scenario& sc, const std::optional<std::vector<double>>& reference_u_c) {
  json doc;
  doc["types"] = sc.chain.labels();
  doc["weights"] = sc.chain.weights();
  doc["u_grid"] = sc.u_grid;
  FrontierKind kind = sc.surface.frontier(0).kind();
  for (const auto& f : sc.surface.frontiers()) {
    if (f.kind() != kind) bad("cannot serialize a surface mixing frontier kinds");
  }
  json types = json::array();
  for (const auto& f : sc.surface.frontiers()) types.push_back(frontier_json(f));
  doc["surface"] = {{"kind", kind_name(kind)}, {"types", types}};
  doc["default"] = frontier_json(sc.surface.default_frontier());
  if (!sc.metadata.empty()) doc["metadata"] = sc.metadata;
  if (reference_u_c) doc["reference_u_c"] = *reference_u_c;
  return dump(doc);
}

std::string profile_to_json(const CompleteInfoProfile& p) {
  json doc{{"ubar", p.ubar},
           {"u_c", p.u_c},
           {"upper_closure", p.upper_closure},
           {"lower_closure", p.lower_closure},
           {"lower_closure_textual", p.lower_closure_textual},
           {"K", p.K}};
  return dump(doc);
}

std::string solution_to_json(const Solution& s, const CompleteInfoProfile& p) {
  json segs = json::array();
  for (const auto& seg : s.segments) {
    json e{{"from", seg.first + 1},
           {"to", seg.last + 1},
           {"label", seg.label == SegmentLabel::Constant ? "CONSTANT" : "FOLLOW_CURVE"}};
    e["level"] = seg.label == SegmentLabel::Constant ? json(seg.level) : json(nullptr);
    segs.push_back(std::move(e));
  }
  json doc{{"promise", s.promise.values()},
           {"value", s.value},
           {"segments", segs},
           {"K", p.K},
           {"K_used", s.constant_segments},
           {"J1", s.curve_segments}};
  return dump(doc);
}

std::string plot_csv(const Scenario& sc, const Solution& s, const CompleteInfoProfile& p) {
  std::string out = "type,u_c,upper_closure,lower_closure,U\n";
  for (std::size_t i = 0; i < sc.size(); ++i) {
    out += format_double(sc.chain.labels()[i]) + "," + format_double(p.u_c[i]) + "," +
           format_double(p.upper_closure[i]) + "," + format_double(p.lower_closure_textual[i]) + "," +
           format_double(s.promise[i]) + "\n";
  }
  return out;
}

}  // namespace chainscreen
