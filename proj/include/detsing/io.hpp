#ifndef DETSING_IO_HPP
#define DETSING_IO_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "detsing/catalog.hpp"
#include "detsing/invariants.hpp"
#include "detsing/matgerm.hpp"
#include "detsing/parse.hpp"

namespace detsing {

/// Matrix input file:
///   {"variables": [...], "entries": [[...], ...], "params": {"k": 2},
///    "deformation": {"parameters": [...], "entries": [[...]], "assignment": {"lambda": "1"}}}
/// "deformation" may also be a bare grid; its parameters are then the
/// identifiers that are neither variables nor params, each assigned 1.
struct MatrixFile {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> entries;
  ParamMap params;
  std::vector<std::string> deformation_parameters;
  std::vector<std::vector<std::string>> deformation;
  std::map<std::string, std::string> deformation_assignment;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Re-anchors an error inside a string value at the value's position in the
// document (first occurrence after `from`).
inline ParseError locate(const std::string& text, const std::string& value, const ParseError& e, std::size_t& from) {
  std::string quoted = nlohmann::json(value).dump();
  std::size_t pos = text.find(quoted, from);
  if (pos == std::string::npos) return e;
  from = pos + quoted.size();
  auto [line, col] = line_column(text, pos + 1);
  return ParseError(e.message(), line, col + e.column() - 1);
}

inline std::vector<std::vector<std::string>> read_grid(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError("'" + field + "' must be a non-empty array of rows", 1, 1);
  std::vector<std::vector<std::string>> grid;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw ParseError("'" + field + "' rows must be non-empty arrays", 1, 1);
    grid.emplace_back();
    for (const auto& cell : row) {
      if (cell.is_string()) grid.back().push_back(cell.get<std::string>());
      else if (cell.is_number_integer()) grid.back().push_back(std::to_string(cell.get<long>()));
      else throw ParseError("'" + field + "' cells must be polynomial strings", 1, 1);
    }
    if (grid.back().size() != grid.front().size()) throw ParseError("'" + field + "' rows differ in length", 1, 1);
  }
  return grid;
}

inline std::vector<std::string> identifiers(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back(s.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

inline Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("invalid rational '" + s + "'", 1, 1);
  }
}

inline void read_deformation(const nlohmann::json& d, MatrixFile& f) {
  f.deformation_parameters.clear();
  f.deformation_assignment.clear();
  if (d.is_object()) {
    f.deformation = read_grid(d.value("entries", nlohmann::json()), "deformation.entries");
    if (d.contains("parameters"))
      for (const auto& p : d["parameters"]) {
        if (!p.is_string()) throw ParseError("deformation parameters must be strings", 1, 1);
        f.deformation_parameters.push_back(p.get<std::string>());
      }
    if (d.contains("assignment"))
      for (const auto& [k, v] : d["assignment"].items())
        f.deformation_assignment[k] = v.is_string() ? v.get<std::string>() : v.dump();
  } else {
    f.deformation = read_grid(d, "deformation");
  }
  if (!f.entries.empty()) {
    bool same = f.deformation.size() == f.entries.size();
    for (std::size_t i = 0; same && i < f.entries.size(); ++i) same = f.deformation[i].size() == f.entries[i].size();
    if (!same) throw ParseError("deformation grid shape differs from the matrix", 1, 1);
  }
  if (f.deformation_parameters.empty()) {
    std::set<std::string> known(f.variables.begin(), f.variables.end());
    for (const auto& [k, v] : f.params) known.insert(k);
    for (const auto& row : f.deformation)
      for (const auto& cell : row)
        for (const auto& id : identifiers(cell))
          if (!known.count(id) && std::find(f.deformation_parameters.begin(), f.deformation_parameters.end(), id) ==
                                      f.deformation_parameters.end())
            f.deformation_parameters.push_back(id);
  }
  for (const auto& p : f.deformation_parameters)
    if (!f.deformation_assignment.count(p)) f.deformation_assignment[p] = "1";
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    auto p = msg.find("syntax error");
    throw ParseError(p == std::string::npos ? msg : msg.substr(p), line, col);
  }
}

}  // namespace detail

/// Attaches a deformation read from its own document (object or bare grid)
/// to a matrix file.
inline void attach_deformation(MatrixFile& f, const std::string& text) {
  detail::read_deformation(detail::parse_json(text), f);
}

inline MatrixFile parse_matrix_file(const std::string& text) {
  nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw ParseError("matrix file must be an object", 1, 1);
  MatrixFile f;
  if (!j.contains("variables") || !j["variables"].is_array()) throw ParseError("missing 'variables' list", 1, 1);
  for (const auto& v : j["variables"]) {
    if (!v.is_string()) throw ParseError("variable names must be strings", 1, 1);
    f.variables.push_back(v.get<std::string>());
  }
  if (!j.contains("entries")) throw ParseError("missing 'entries' grid", 1, 1);
  f.entries = detail::read_grid(j["entries"], "entries");
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ParseError("'params' must map names to integers", 1, 1);
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number_integer()) throw ParseError("parameter '" + k + "' must be an integer", 1, 1);
      f.params[k] = v.get<long>();
    }
  }
  if (j.contains("deformation")) detail::read_deformation(j["deformation"], f);
  // Surface polynomial errors at their place in the document.
  RingPtr ring;
  try {
    ring = make_ring(f.variables);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
  std::size_t from = 0;
  for (const auto& row : f.entries)
    for (const auto& cell : row) {
      try {
        parse_polynomial(cell, ring, f.params);
      } catch (const ParseError& e) {
        throw detail::locate(text, cell, e, from);
      }
    }
  return f;
}

/// Generators file: one polynomial per line; blank lines and '#' comments
/// are skipped. A line "vars: x, y, z" fixes the ring, otherwise the
/// variables are taken in order of first appearance.
inline IdealGens parse_generators(const std::string& text, std::vector<std::string> vars = {}) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::istringstream in(text);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find("vars:");
    if (colon != std::string::npos && line.find_first_not_of(" \t") == colon) {
      if (!lines.empty()) throw ParseError("'vars:' must precede the generators", no, 1);
      vars.clear();
      for (const auto& id : detail::identifiers(line.substr(colon + 5))) vars.push_back(id);
      continue;
    }
    lines.emplace_back(no, line);
  }
  if (vars.empty())
    for (const auto& [no, l] : lines)
      for (const auto& id : detail::identifiers(l))
        if (std::find(vars.begin(), vars.end(), id) == vars.end()) vars.push_back(id);
  if (vars.empty()) vars.push_back("x");
  RingPtr ring;
  try {
    ring = make_ring(vars);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
  IdealGens I(ring);
  for (const auto& [no, l] : lines) {
    try {
      I.add(parse_polynomial(l, ring));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), no, e.column());
    }
  }
  return I;
}

struct LoadedMatrix {
  PresentationMatrix matrix;
  std::optional<DeformationTemplate> deformation;
};

inline LoadedMatrix load_matrix(const MatrixFile& f) {
  PresentationMatrix M = PresentationMatrix::parse(make_ring(f.variables), f.entries, f.params);
  std::optional<DeformationTemplate> d;
  if (!f.deformation.empty()) {
    std::map<std::string, Rational> a;
    for (const auto& [k, v] : f.deformation_assignment) a[k] = detail::parse_rational(v);
    d = DeformationTemplate(M, f.deformation_parameters, f.deformation, a, f.params);
  }
  return {M, d};
}

inline nlohmann::ordered_json matrix_file_json(const MatrixFile& f) {
  nlohmann::ordered_json j;
  j["variables"] = f.variables;
  j["entries"] = f.entries;
  if (!f.params.empty()) {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : f.params) p[k] = v;
    j["params"] = p;
  }
  if (!f.deformation.empty()) {
    nlohmann::ordered_json d;
    d["parameters"] = f.deformation_parameters;
    d["entries"] = f.deformation;
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (const auto& [k, v] : f.deformation_assignment) a[k] = v;
    d["assignment"] = a;
    j["deformation"] = d;
  }
  return j;
}

/// Catalog entry as a matrix file; parametric entries keep `k` symbolic.
inline MatrixFile export_entry(const CatalogEntry& e, std::optional<long> k) {
  MatrixFile f;
  f.variables = e.variables;
  f.entries = e.matrix;
  f.params = entry_params(e, k);
  f.deformation_parameters = e.deformation_parameters;
  f.deformation = e.deformation;
  for (const auto& [p, v] : e.deformation_assignment) f.deformation_assignment[p] = v.get_str();
  return f;
}

inline nlohmann::ordered_json report_json(const InvariantReport& r) {
  nlohmann::ordered_json j;
  j["dimension"] = r.dimension;
  if (r.dimension == 3) {
    j["combined_mu_plus_b2"] = *r.combined;
  } else {
    j["mu"] = r.mu;
  }
  if (r.mu_section) j["mu_section"] = *r.mu_section;
  j["m_d"] = r.m_d;
  j["ind_ph"] = r.ind_ph;
  if (r.m0) j["m0"] = *r.m0;
  if (r.m1) j["m1"] = *r.m1;
  if (r.dimension != 3) j["euler_characteristic_smoothing"] = r.euler_characteristic;
  j["projection"] = r.projection;
  j["projection_route"] = r.projection_route;
  j["count_scope"] = r.projection_route == "weighted" ? "global, weighted homogeneous" : "local";
  j["seed"] = r.seed;
  j["smoothing_seed"] = r.smoothing_seed;
  j["retries_used"] = r.retries_used;
  nlohmann::ordered_json cert;
  cert["smoothing"] = r.smooth_certificate;
  cert["fibre_nondegenerate"] = r.fibre_nondegenerate;
  cert["fibre_critical_points"] = r.fibre_count;
  cert["section_isolated"] = r.section_isolated;
  cert["consistency_identity"] = r.consistency;
  j["certificates"] = cert;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.sub.empty()) j["section"] = report_json(r.sub.front());
  return j;
}

inline std::string report_text(const InvariantReport& r, const std::string& indent = "") {
  std::ostringstream os;
  const char* what = r.dimension == 1 ? "curve" : r.dimension == 2 ? "surface" : "threefold";
  os << indent << what << "\n";
  if (r.dimension == 3) os << indent << "  combined    " << *r.combined << "\n";
  else os << indent << "  mu          " << r.mu << "\n";
  if (r.mu_section) os << indent << "  mu(section) " << *r.mu_section << "\n";
  os << indent << "  m_" << r.dimension << "         " << r.m_d << "  (ind_PH)\n";
  if (r.m0) os << indent << "  m_0         " << *r.m0 << "\n";
  os << indent << "  projection  " << r.projection << " (" << r.projection_route << ")\n";
  os << indent << "  seed        " << r.seed << " (smoothing " << r.smoothing_seed << ", retries " << r.retries_used
     << ")\n";
  os << indent << "  certificates: smoothing=" << (r.smooth_certificate ? "yes" : "no")
     << " nondegenerate=" << (r.fibre_nondegenerate ? "yes" : "no") << " (" << r.fibre_count
     << " points on the fibre) consistency=" << (r.consistency ? "yes" : "no") << "\n";
  for (const auto& n : r.notes) os << indent << "  note: " << n << "\n";
  for (const auto& s : r.sub) os << report_text(s, indent + "  ");
  return os.str();
}

}  // namespace detsing

#endif  // DETSING_IO_HPP
