#ifndef DETSING_CATALOG_HPP
#define DETSING_CATALOG_HPP

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detsing/invariants.hpp"
#include "detsing/matgerm.hpp"
#include "detsing/parse.hpp"

namespace detsing {

/// Expected invariants; empty fields are not recorded.
struct Expected {
  std::optional<long> mu, tau, mu_section, ind_ph;
};

struct CatalogEntry {
  std::string id;
  std::string kind;  // "surface" or "curve"
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> matrix;  // may use the parameter k
  bool parametric = false;
  long k_min = 1;
  /// Values for a generic projection, as computed by the automatic pipeline.
  std::function<Expected(long)> expected;
  /// The worked projection and the values it produces.
  std::optional<std::string> reference_projection;
  std::function<Expected(long)> reference;
  /// Explicit smoothing: perturbation grid in the variables plus parameters.
  std::vector<std::string> deformation_parameters;
  std::vector<std::vector<std::string>> deformation;
  std::map<std::string, Rational> deformation_assignment;
  std::optional<std::string> section_of;
  std::string provenance;
  bool tau_conjectural = false;
  /// Generic mu_section and ind_ph are frozen from the first certified run.
  bool frozen_for_k_above_1 = false;
  /// Largest k run by default in regression sweeps; 0 means no cap.
  long sweep_k_max = 0;
};

namespace detail {

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  const std::vector<std::string> xyzw{"x", "y", "z", "w"};
  const std::vector<std::string> xyz{"x", "y", "z"};

  CatalogEntry e1;
  e1.id = "ex1";
  e1.kind = "surface";
  e1.variables = xyzw;
  e1.matrix = {{"z", "y", "x"}, {"w", "z", "y"}};
  e1.expected = [](long) { return Expected{1, 2, 2, 3}; };
  e1.reference_projection = "w";
  e1.reference = [](long) { return Expected{1, 2, 2, 3}; };
  e1.provenance = "cone over the twisted cubic; tau from mu = tau - 1";
  e1.tau_conjectural = true;
  c.push_back(e1);

  CatalogEntry v1;
  v1.id = "ex1-variant";
  v1.kind = "surface";
  v1.variables = xyzw;
  v1.matrix = {{"z", "y+w", "x"}, {"w", "x", "y"}};
  v1.expected = [](long) { return Expected{1, 2, 2, 3}; };
  v1.reference_projection = "w";
  v1.reference = [](long) { return Expected{1, 2, 2, 3}; };
  v1.deformation_parameters = {"lambda"};
  v1.deformation = {{"0", "0", "lambda"}, {"0", "0", "0"}};
  v1.deformation_assignment = {{"lambda", Rational(1)}};
  v1.section_of = std::nullopt;
  v1.provenance =
      "ex1 germ realised as the a = b = w member of the versal family of its w = 0 section; smoothing c = lambda";
  v1.tau_conjectural = true;
  c.push_back(v1);

  CatalogEntry e2;
  e2.id = "ex2";
  e2.kind = "surface";
  e2.variables = xyzw;
  e2.matrix = {{"z", "w+x", "y^k"}, {"w", "y", "x"}};
  e2.parametric = true;
  e2.expected = [](long k) { return Expected{k, k + 1, 2, k + 2}; };
  e2.reference_projection = "w";
  e2.reference = [](long k) { return Expected{k, k + 1, k + 1, 2 * k + 1}; };
  e2.deformation_parameters = {"lambda"};
  e2.deformation = {{"0", "0", "lambda"}, {"0", "0", "0"}};
  e2.deformation_assignment = {{"lambda", Rational(1)}};
  e2.provenance = "family in k >= 1; smoothing c_0 = lambda, a = b = w; tau from mu = tau - 1";
  e2.tau_conjectural = true;
  c.push_back(e2);

  CatalogEntry e3;
  e3.id = "ex3";
  e3.kind = "surface";
  e3.variables = xyzw;
  e3.matrix = {{"z", "y", "x"}, {"x", "w", "y*z+y^k*w"}};
  e3.parametric = true;
  e3.expected = [](long k) {
    Expected x{2 * k + 3, 2 * k + 4, std::nullopt, std::nullopt};
    if (k == 1) {
      x.mu_section = 3;
      x.ind_ph = 8;
    }
    return x;
  };
  e3.reference_projection = "y-z";
  e3.reference = [](long k) {
    Expected x{2 * k + 3, 2 * k + 4, std::nullopt, std::nullopt};
    if (k == 1) {
      x.mu_section = 3;
      x.ind_ph = 8;
    }
    return x;
  };
  e3.deformation_parameters = {"lambda", "t"};
  e3.deformation = {{"0", "0", "0"}, {"lambda", "0", "t*z^2"}};
  e3.deformation_assignment = {{"lambda", Rational(1)}, {"t", Rational(1)}};
  e3.provenance = "family in k >= 1; tau = 6 at k = 1, mu = 2k + 3 by induction on k";
  e3.tau_conjectural = false;
  e3.frozen_for_k_above_1 = true;
  e3.sweep_k_max = 3;  // k = 4 runs past 20 min
  c.push_back(e3);

  CatalogEntry s1;
  s1.id = "ex1-section";
  s1.kind = "curve";
  s1.variables = xyz;
  s1.matrix = {{"z", "y", "x"}, {"0", "x", "y"}};
  s1.expected = [](long) { return Expected{2, std::nullopt, std::nullopt, std::nullopt}; };
  s1.section_of = "ex1-variant";
  s1.provenance = "w = 0 section of ex1-variant: three lines";
  c.push_back(s1);

  CatalogEntry s2;
  s2.id = "ex2-section";
  s2.kind = "curve";
  s2.variables = xyz;
  s2.matrix = {{"z", "x", "y^k"}, {"0", "y", "x"}};
  s2.parametric = true;
  s2.expected = [](long k) { return Expected{k + 1, std::nullopt, std::nullopt, std::nullopt}; };
  s2.section_of = "ex2";
  s2.provenance = "w = 0 section of ex2, k >= 1";
  c.push_back(s2);

  CatalogEntry s3;
  s3.id = "ex3-section";
  s3.kind = "curve";
  s3.variables = {"x", "z", "w"};
  s3.matrix = {{"w", "x", "z^2"}, {"0", "z", "x"}};
  s3.expected = [](long) { return Expected{3, std::nullopt, std::nullopt, std::nullopt}; };
  s3.section_of = "ex3";
  s3.provenance = "y = z section of ex3 at k = 1; simple space curve";
  c.push_back(s3);

  return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline const CatalogEntry& find_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown catalog entry '" + id + "'");
}

inline long resolve_k(const CatalogEntry& e, std::optional<long> k) {
  if (!e.parametric) {
    if (k) throw std::invalid_argument("entry '" + e.id + "' takes no parameter k");
    return 1;
  }
  long v = k.value_or(e.k_min);
  if (v < e.k_min) throw std::invalid_argument("k = " + std::to_string(v) + " is outside the domain of '" + e.id + "'");
  if (v > 64) throw std::invalid_argument("k = " + std::to_string(v) + " is too large");
  return v;
}

inline ParamMap entry_params(const CatalogEntry& e, std::optional<long> k) {
  ParamMap p;
  if (e.parametric) p["k"] = resolve_k(e, k);
  else resolve_k(e, k);
  return p;
}

inline PresentationMatrix instantiate(const CatalogEntry& e, std::optional<long> k = std::nullopt) {
  return PresentationMatrix::parse(make_ring(e.variables), e.matrix, entry_params(e, k));
}

inline PresentationMatrix instantiate(const std::string& id, std::optional<long> k = std::nullopt) {
  return instantiate(find_entry(id), k);
}

inline Expected expected(const std::string& id, std::optional<long> k = std::nullopt) {
  const auto& e = find_entry(id);
  return e.expected(resolve_k(e, k));
}

/// The entry's explicit smoothing, if it records one.
inline std::optional<DeformationTemplate> entry_deformation(const CatalogEntry& e, const PresentationMatrix& M,
                                                            std::optional<long> k = std::nullopt) {
  if (e.deformation.empty()) return std::nullopt;
  return DeformationTemplate(M, e.deformation_parameters, e.deformation, e.deformation_assignment,
                             entry_params(e, k));
}

inline std::optional<ProjectionData> entry_projection(const CatalogEntry& e, const PresentationMatrix& M) {
  if (!e.reference_projection) return std::nullopt;
  return ProjectionData::from_polynomial(parse_polynomial(*e.reference_projection, M.ring()));
}

inline ConjectureVerdict conjecture_check(const std::string& id, std::optional<long> k,
                                          const PipelineOptions& opt = {}) {
  const auto& e = find_entry(id);
  auto tau = e.expected(resolve_k(e, k)).tau;
  if (!tau) throw std::invalid_argument("entry '" + id + "' has no recorded tau");
  return conjecture_check(instantiate(e, k), *tau, opt);
}

}  // namespace detsing

#endif  // DETSING_CATALOG_HPP
