#ifndef DETSING_INVARIANTS_HPP
#define DETSING_INVARIANTS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detsing/gbasis.hpp"
#include "detsing/matgerm.hpp"
#include "detsing/univariate.hpp"

namespace detsing {

/// A certification stage ran out of retries.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Independent stream for (seed, stage, attempt).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t attempt) {
  SeededRng rng(seed ^ (stage * 0xbf58476d1ce4e5b9ULL) ^ (attempt * 0x94d049bb133111ebULL));
  return rng.next();
}

namespace stage {
constexpr std::uint64_t kSmoothing = 1, kProjection = 2, kSeparator = 3, kSection = 4, kCurveProjection = 5,
                        kPipeline = 6;
}

inline ProjectionData random_projection(const RingPtr& ring, std::uint64_t seed, long bound = 5) {
  SeededRng rng(seed);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < ring->size(); ++i) c.emplace_back(rng.nonzero(bound));
  return ProjectionData(ring, std::move(c));
}

/// Codimension of the generic determinantal variety of M.
inline std::size_t expected_codimension(const PresentationMatrix& M) {
  std::size_t t = M.minor_size();
  return (M.rows() - t + 1) * (M.cols() - t + 1);
}

/// Jacobian of the generators with respect to the first `nvars` variables.
inline PolyMatrix jacobian_in(const IdealGens& f, std::size_t nvars) {
  PolyMatrix J(f.ring(), f.size(), nvars);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t v = 0; v < nvars; ++v) J(i, v) = f[i].differentiate(v);
  return J;
}

/// Minors of M together with the rank-deficiency locus of their Jacobian.
inline IdealGens singular_locus_ideal(const PresentationMatrix& M, std::size_t space_vars) {
  IdealGens f = maximal_minors(M);
  return f + kxk_minors(jacobian_in(f, space_vars), expected_codimension(M));
}

struct InputCheck {
  bool shape_ok = false;
  bool codim2 = false;
  bool isolated = false;
  bool bound_ok = false;
  bool germ_at_origin = false;
  int ideal_dimension = -1;
  int singular_dimension = -1;
  std::string message;
  bool ok() const { return shape_ok && codim2 && isolated; }
};

inline InputCheck check_input(const PresentationMatrix& M) {
  InputCheck c;
  const std::size_t r = M.ambient_dimension();
  c.shape_ok = M.codim2_shape();
  c.germ_at_origin = M.deformed() || M.vanishes_at_origin();
  if (!c.shape_ok) {
    c.message = "matrix must be (n+1) x n or n x (n+1) with maximal minors";
    return c;
  }
  if (!c.germ_at_origin) {
    c.message = "entries do not vanish at the origin";
    return c;
  }
  const std::size_t t = M.minor_size();
  c.bound_ok = r <= (M.rows() - t + 2) * (M.cols() - t + 2);
  GroebnerBasis G = groebner(maximal_minors(M));
  c.ideal_dimension = ideal_dimension(G);
  c.codim2 = c.ideal_dimension == static_cast<int>(r) - 2;
  if (!c.codim2) {
    c.message = "ideal of minors has dimension " + std::to_string(c.ideal_dimension) + ", expected " +
                std::to_string(static_cast<int>(r) - 2);
    return c;
  }
  c.singular_dimension = ideal_dimension(groebner(singular_locus_ideal(M, r)));
  c.isolated = c.singular_dimension <= 0;
  if (!c.isolated) c.message = "singular locus has dimension " + std::to_string(c.singular_dimension);
  return c;
}

struct SingularLocusReport {
  std::vector<Polynomial> generators;
  int dimension = -1;
  std::optional<std::size_t> degree;
};

inline SingularLocusReport singular_locus_report(const PresentationMatrix& M) {
  SingularLocusReport rep;
  IdealGens S = singular_locus_ideal(M, M.ambient_dimension());
  rep.generators = S.generators();
  GroebnerBasis G = groebner(S);
  rep.dimension = ideal_dimension(G);
  if (rep.dimension == 0) rep.degree = quotient_dimension(G).dimension;
  return rep;
}

/// One-parameter family M + lambda * (perturbation) and its member at the
/// chosen parameter value.
struct SmoothingFamily {
  PresentationMatrix base;
  PresentationMatrix deformed;
  PolyMatrix family;  // over the base variables followed by the parameter
  std::string parameter;
  std::map<std::string, Rational> parameters;
  std::uint64_t seed = 0;
  bool from_template = false;
  bool smooth_certificate = false;
  std::size_t retries_used = 0;
};

inline bool is_smooth(const PresentationMatrix& M) {
  return is_unit_ideal(groebner(singular_locus_ideal(M, M.ambient_dimension())));
}

namespace detail {

inline std::string fresh_name(const RingPtr& ring, std::string name) {
  while (ring->index_of(name)) name += "_";
  return name;
}

inline SmoothingFamily family_from_template(const PresentationMatrix& M, const DeformationTemplate& tmpl) {
  if (!same_ring(tmpl.base().ring(), M.ring()) || !(tmpl.base() == M))
    throw std::invalid_argument("deformation template does not match the matrix");
  const auto& params = tmpl.parameters();
  if (params.empty()) throw std::invalid_argument("deformation template has no parameters");
  std::string lam = params.front();
  for (const auto& p : params)
    if (p == "lambda") lam = p;
  std::vector<std::string> names = M.ring()->names();
  names.push_back(lam);
  RingPtr fam_ring = make_ring(names);
  const std::size_t r = M.ring()->size();
  std::map<std::size_t, Polynomial> assign;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k] == lam) continue;
    auto it = tmpl.assignment().find(params[k]);
    if (it == tmpl.assignment().end())
      throw std::invalid_argument("deformation: parameter '" + params[k] + "' has no assignment");
    assign.emplace(r + k, Polynomial(fam_ring, it->second));
  }
  PolyMatrix fam(fam_ring, M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      fam(i, j) = embed(M(i, j), fam_ring) + substitute(tmpl.perturbation()(i, j), assign, fam_ring);
  auto full = tmpl.assignment();
  if (!full.count(lam)) full[lam] = 1;
  PresentationMatrix deformed = tmpl.with_assignment(full).instantiate();
  return SmoothingFamily{M, deformed, fam, lam, full, 0, true, false, 0};
}

}  // namespace detail

/// Certified smoothing. A template is used as given (its certificate may be
/// false); automatic mode adds lambda * c_ij with seeded constants and
/// re-draws until the member at lambda = 1 is nonsingular.
inline SmoothingFamily make_smoothing(const PresentationMatrix& M, const std::optional<DeformationTemplate>& tmpl,
                                      std::uint64_t seed, std::size_t retries = 8, long bound = 5) {
  if (tmpl) {
    SmoothingFamily s = detail::family_from_template(M, *tmpl);
    s.seed = seed;
    s.smooth_certificate = is_smooth(s.deformed);
    return s;
  }
  std::string lam = detail::fresh_name(M.ring(), "lambda");
  std::vector<std::string> names = M.ring()->names();
  names.push_back(lam);
  RingPtr fam_ring = make_ring(names);
  Polynomial lv = Polynomial::variable(fam_ring, names.size() - 1);
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    std::uint64_t s = derive_seed(seed, stage::kSmoothing, attempt);
    PresentationMatrix deformed = perturb(M, s, PerturbOptions{bound, 1});
    PolyMatrix fam(fam_ring, M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        fam(i, j) = embed(M(i, j), fam_ring) + (deformed(i, j).constant_term() - M(i, j).constant_term()) * lv;
    if (is_smooth(deformed))
      return SmoothingFamily{M, deformed, fam, lam, {{lam, Rational(1)}}, s, false, true, attempt};
  }
  throw CertificationError("smoothing", "no nonsingular member found within the retry budget");
}

/// Maximal minors of M together with the (codim+1)-minors of [Jf; omega],
/// the Jacobian taken in the variables of p (the leading variables of M's
/// ring; any further variables are parameters).
inline IdealGens critical_ideal(const PresentationMatrix& M, const ProjectionData& p) {
  const std::size_t r = p.ring()->size();
  if (M.ring()->size() < r) throw std::invalid_argument("critical_ideal: projection has too many variables");
  for (std::size_t v = 0; v < r; ++v)
    if (M.ring()->name(v) != p.ring()->name(v))
      throw std::invalid_argument("critical_ideal: projection variables do not match the matrix");
  IdealGens f = maximal_minors(M);
  PolyMatrix J = jacobian_in(f, r);
  PolyMatrix B(M.ring(), J.rows() + 1, r);
  for (std::size_t i = 0; i < J.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) B(i, j) = J(i, j);
  for (std::size_t j = 0; j < r; ++j) B(J.rows(), j) = Polynomial(M.ring(), p.coefficients()[j]);
  return f + kxk_minors(B, expected_codimension(M) + 1);
}

struct CriticalCount {
  std::size_t count = 0;
  bool zero_dimensional = false;
  bool certified_nondegenerate = false;
  std::string projection;
  std::uint64_t seed = 0;
  std::size_t retries_used = 0;
  std::string separator;
};

/// Global count of critical points of p on a fixed nonsingular member,
/// certified nondegenerate when a separating form has a squarefree minimal
/// polynomial of full degree.
inline CriticalCount count_critical_points(const PresentationMatrix& member, const ProjectionData& p,
                                           std::uint64_t seed, std::size_t retries = 8) {
  CriticalCount c;
  c.projection = p.to_string();
  c.seed = seed;
  GroebnerBasis G = groebner(critical_ideal(member, p));
  QuotientInfo qi = quotient_dimension(G);
  c.zero_dimensional = qi.zero_dimensional;
  if (!qi.zero_dimensional) return c;
  c.count = qi.dimension;
  if (c.count == 0) {
    c.certified_nondegenerate = true;
    return c;
  }
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    c.retries_used = attempt;
    ProjectionData ell = random_projection(member.ring(), derive_seed(seed, stage::kSeparator, attempt), 50);
    Polynomial m = minimal_polynomial(ell.form(), G);
    const bool sqf = squarefree(m);
    if (static_cast<std::size_t>(m.total_degree()) == c.count && sqf) {
      c.certified_nondegenerate = true;
      c.separator = ell.to_string();
      return c;
    }
    if (!sqf && static_cast<std::size_t>(m.total_degree()) == c.count) return c;
  }
  return c;
}

/// Number of critical points of p on the members near lambda = 0 that tend
/// to the origin: the length at the origin of the polar curve (critical
/// ideal saturated by lambda) cut with lambda = 0. Empty when that fibre is
/// not finite, which signals a non-generic projection.
inline std::optional<std::size_t> local_critical_count(const SmoothingFamily& fam, const ProjectionData& p,
                                                       std::size_t max_work = 0) {
  PresentationMatrix F(fam.family, fam.base.minor_size(), true);
  IdealGens crit = critical_ideal(F, p);
  const std::size_t lam = fam.family.ring()->size() - 1;
  IdealGens polar = saturate(crit, lam, max_work);
  polar.add(Polynomial::variable(fam.family.ring(), lam));
  GroebnerBasis G = buchberger(polar, Ordering::degrevlex(), nullptr, max_work);
  if (!quotient_dimension(G).zero_dimensional) return std::nullopt;
  return origin_multiplicity(G);
}

/// Generic: projections with random coefficients on every variable, counted
/// locally. Weighted: M must be weighted homogeneous; the projection lies in
/// one weight class and the family is equivariant, so every critical point on
/// the fibre tends to the origin and the fibre count is the local count.
/// Auto runs the generic route under `work_budget` (terms written by
/// reduction steps, per Groebner basis) and falls back when it runs out.
enum class ProjectionMode { Auto, Generic, Weighted };

inline const char* to_string(ProjectionMode m) {
  switch (m) {
    case ProjectionMode::Generic: return "generic";
    case ProjectionMode::Weighted: return "weighted";
    default: return "auto";
  }
}

struct PipelineOptions {
  std::uint64_t seed = 0;
  std::size_t retries = 8;
  std::optional<ProjectionData> projection;
  std::optional<DeformationTemplate> deformation;
  long bound = 5;
  bool certify_fibre = true;
  ProjectionMode mode = ProjectionMode::Auto;
  std::size_t work_budget = 20000000;
};

struct PolarIndex {
  std::size_t value = 0;
  ProjectionData projection;
  SmoothingFamily smoothing;
  CriticalCount fibre;
  std::size_t retries_used = 0;
  std::string route = "generic";  // generic | given | weighted | binomial
};

/// Smoothing M + (c_ij lambda^{d_ij}) over the entries of positive degree,
/// equivariant for the grading with lambda of weight 1.
inline SmoothingFamily make_weighted_smoothing(const PresentationMatrix& M, const Grading& gr, std::uint64_t seed,
                                               std::size_t retries = 8, long bound = 5) {
  std::string lam = detail::fresh_name(M.ring(), "lambda");
  std::vector<std::string> names = M.ring()->names();
  names.push_back(lam);
  RingPtr fam_ring = make_ring(names);
  Polynomial lv = Polynomial::variable(fam_ring, names.size() - 1);
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    std::uint64_t s = derive_seed(seed, stage::kSmoothing, attempt);
    SeededRng rng(s);
    PolyMatrix fam(fam_ring, M.rows(), M.cols());
    std::vector<std::vector<Polynomial>> grid(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) {
        long d = gr.entry_degree(i, j);
        Rational c = d > 0 ? Rational(rng.nonzero(bound)) : Rational(0);
        fam(i, j) = embed(M(i, j), fam_ring) + c * lv.pow(static_cast<unsigned>(std::max(d, 0L)));
        grid[i].push_back(M(i, j) + Polynomial(M.ring(), c));
      }
    PresentationMatrix deformed(PolyMatrix(M.ring(), grid), M.minor_size(), true);
    if (is_smooth(deformed))
      return SmoothingFamily{M, deformed, fam, lam, {{lam, Rational(1)}}, s, false, true, attempt};
  }
  throw CertificationError("smoothing", "no nonsingular weighted member found within the retry budget");
}

/// True when the family is homogeneous for the grading with some positive
/// weight on its parameter.
inline bool family_is_equivariant(const SmoothingFamily& fam, const Grading& gr) {
  const std::size_t r = gr.weights.size();
  std::optional<Rational> wl;
  for (std::size_t i = 0; i < fam.family.rows(); ++i)
    for (std::size_t j = 0; j < fam.family.cols(); ++j)
      for (const auto& t : fam.family(i, j).terms()) {
        long d = 0;
        for (std::size_t v = 0; v < r; ++v) d += gr.weights[v] * static_cast<long>(t.mono[v]);
        long e = static_cast<long>(t.mono[r]);
        long target = gr.entry_degree(i, j);
        if (e == 0) {
          if (d != target) return false;
          continue;
        }
        Rational w(target - d, e);
        w.canonicalize();
        if (w <= 0 || (wl && *wl != w)) return false;
        wl = w;
      }
  return true;
}

/// Weight classes ordered by weight, smallest first.
inline std::vector<std::vector<std::size_t>> weight_classes(const Grading& gr) {
  std::map<long, std::vector<std::size_t>> by;
  for (std::size_t v = 0; v < gr.weights.size(); ++v) by[gr.weights[v]].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [w, vs] : by) out.push_back(vs);
  return out;
}

inline ProjectionData weighted_projection(const RingPtr& ring, const std::vector<std::size_t>& cls,
                                          std::uint64_t seed, long bound = 5) {
  SeededRng rng(seed);
  std::vector<Rational> c(ring->size());
  for (std::size_t v : cls) c[v] = rng.nonzero(bound);
  return ProjectionData(ring, std::move(c));
}

namespace detail {

inline PolarIndex generic_polar_index(const PresentationMatrix& M, const PipelineOptions& opt, std::size_t budget) {
  SmoothingFamily fam = make_smoothing(M, opt.deformation, opt.seed, opt.retries, opt.bound);
  if (!fam.smooth_certificate) throw CertificationError("smoothing", "deformation is not a smoothing");
  for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
    ProjectionData p = opt.projection
                           ? *opt.projection
                           : random_projection(M.ring(), derive_seed(opt.seed, stage::kProjection, attempt), opt.bound);
    auto local = local_critical_count(fam, p, budget);
    if (!local) {
      if (opt.projection) break;
      continue;
    }
    CriticalCount fibre;
    fibre.projection = p.to_string();
    if (opt.certify_fibre) {
      fibre = count_critical_points(fam.deformed, p, derive_seed(opt.seed, stage::kSeparator, attempt), opt.retries);
      if (!fibre.certified_nondegenerate && !opt.projection) continue;
    }
    return PolarIndex{*local, p, fam, fibre, attempt, opt.projection ? "given" : "generic"};
  }
  throw CertificationError("critical points", "no projection with a finite, nondegenerate critical locus");
}

inline PolarIndex weighted_polar_index(const PresentationMatrix& M, const PipelineOptions& opt) {
  auto gr = detect_grading(M);
  if (!gr) throw CertificationError("critical points", "matrix is not weighted homogeneous");
  SmoothingFamily fam = opt.deformation ? make_smoothing(M, opt.deformation, opt.seed, opt.retries, opt.bound)
                                         : make_weighted_smoothing(M, *gr, opt.seed, opt.retries, opt.bound);
  if (!fam.smooth_certificate) throw CertificationError("smoothing", "deformation is not a smoothing");
  if (opt.deformation && !family_is_equivariant(fam, *gr))
    throw CertificationError("critical points", "deformation is not weighted homogeneous");
  if (opt.projection && !gr->homogeneous(opt.projection->form()))
    throw CertificationError("critical points", "projection is not weighted homogeneous");
  const auto classes = weight_classes(*gr);
  for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
    ProjectionData p = opt.projection ? *opt.projection
                                      : weighted_projection(M.ring(), classes[attempt % classes.size()],
                                                            derive_seed(opt.seed, stage::kProjection, attempt),
                                                            opt.bound);
    CriticalCount fibre =
        count_critical_points(fam.deformed, p, derive_seed(opt.seed, stage::kSeparator, attempt), opt.retries);
    bool ok = fibre.zero_dimensional && (!opt.certify_fibre || fibre.certified_nondegenerate);
    if (ok && !opt.projection) {
      // The section must be an isolated curve singularity for the count to
      // split through the section.
      InputCheck cc = check_input(hyperplane_section(M, p));
      ok = cc.ok();
    }
    if (ok) return PolarIndex{fibre.count, p, fam, fibre, attempt, "weighted"};
    if (opt.projection) break;
  }
  throw CertificationError("critical points", "no weighted projection with a finite, nondegenerate critical locus");
}

// Projections x_i - x_j in a fixed order, kept when the section is isolated.
inline PolarIndex binomial_polar_index(const PresentationMatrix& M, const PipelineOptions& opt) {
  SmoothingFamily fam = make_smoothing(M, opt.deformation, opt.seed, opt.retries, opt.bound);
  if (!fam.smooth_certificate) throw CertificationError("smoothing", "deformation is not a smoothing");
  const std::size_t r = M.ring()->size();
  std::size_t tried = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      std::vector<Rational> c(r);
      c[i] = 1;
      c[j] = -1;
      ProjectionData p(M.ring(), c);
      if (!check_input(hyperplane_section(M, p)).ok()) continue;
      if (tried++ > opt.retries) break;
      auto local = local_critical_count(fam, p);
      if (!local) continue;
      CriticalCount fibre;
      fibre.projection = p.to_string();
      if (opt.certify_fibre) {
        fibre = count_critical_points(fam.deformed, p, derive_seed(opt.seed, stage::kSeparator, tried), opt.retries);
        if (!fibre.certified_nondegenerate) continue;
      }
      return PolarIndex{*local, p, fam, fibre, tried - 1, "binomial"};
    }
  throw CertificationError("critical points", "no binomial projection with a finite, nondegenerate critical locus");
}

}  // namespace detail

/// m_d = ind_PH for the projection selected by `opt.mode` (or the given one).
/// Auto falls back from the budgeted generic count to a weight-class
/// projection, then to binomial projections x_i - x_j.
inline PolarIndex polar_index(const PresentationMatrix& M, const PipelineOptions& opt) {
  if (opt.mode == ProjectionMode::Weighted) return detail::weighted_polar_index(M, opt);
  const std::size_t budget = opt.mode == ProjectionMode::Auto ? opt.work_budget : 0;
  try {
    return detail::generic_polar_index(M, opt, budget);
  } catch (const WorkBudgetExceeded&) {
    if (opt.projection) throw CertificationError("critical points", "local count exceeded the work budget");
  }
  if (detect_grading(M)) {
    try {
      return detail::weighted_polar_index(M, opt);
    } catch (const CertificationError&) {
    }
  }
  return detail::binomial_polar_index(M, opt);
}

inline std::size_t ph_index(const PresentationMatrix& M, std::uint64_t seed, std::size_t retries = 8) {
  PipelineOptions opt;
  opt.seed = seed;
  opt.retries = retries;
  return polar_index(M, opt).value;
}

/// Multiplicity of the curve: local length of minors + <l> for generic l.
inline std::size_t multiplicity_m0(const IdealGens& curve, std::uint64_t seed, std::size_t retries = 8,
                                   const std::optional<ProjectionData>& ell = std::nullopt) {
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    ProjectionData l = ell ? *ell : random_projection(curve.ring(), derive_seed(seed, stage::kCurveProjection, attempt));
    IdealGens I = curve;
    I.add(l.form());
    QuotientInfo qi = quotient_dimension(buchberger(I, Ordering::negdegrevlex()));
    if (qi.zero_dimensional) return qi.dimension;
    if (ell) break;
  }
  throw CertificationError("multiplicity", "hyperplane section is not finite at the origin");
}

inline std::size_t multiplicity_m0(const PresentationMatrix& C, std::uint64_t seed, std::size_t retries = 8) {
  return multiplicity_m0(maximal_minors(C), seed, retries);
}

struct InvariantReport {
  int dimension = 0;
  long mu = 0;
  std::optional<long> mu_section;
  std::size_t m_d = 0;
  std::size_t ind_ph = 0;
  std::optional<std::size_t> m0, m1;
  std::optional<long> combined;  // threefolds: mu + b_2
  long euler_characteristic = 0;
  std::string projection;
  std::string projection_route = "generic";
  std::string section_projection;
  std::uint64_t seed = 0;
  std::uint64_t smoothing_seed = 0;
  std::size_t retries_used = 0;
  bool smooth_certificate = false;
  bool fibre_nondegenerate = false;
  std::size_t fibre_count = 0;
  bool section_isolated = true;
  bool consistency = false;
  std::vector<std::string> notes;
  std::vector<InvariantReport> sub;  // the section's report
};

namespace detail {

inline void set_route(InvariantReport& rep, const PolarIndex& pi) {
  rep.projection_route = pi.route;
  if (pi.route == "weighted" || pi.route == "binomial")
    rep.notes.push_back("generic count exceeded the work budget; m_d is the index of a " + pi.route + " projection");
}

}  // namespace detail

/// mu(C) = m_1 - m_0 + 1 for a curve with isolated singularity.
inline InvariantReport milnor_curve(const PresentationMatrix& C, const PipelineOptions& opt = {}) {
  if (C.ambient_dimension() < 2 || !C.codim2_shape()) throw std::invalid_argument("milnor_curve: not a codimension-2 curve");
  InputCheck chk = check_input(C);
  if (!chk.ok() || chk.ideal_dimension != 1) throw std::invalid_argument("milnor_curve: " + (chk.message.empty() ? "not a curve" : chk.message));
  for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
    PipelineOptions o = opt;
    o.seed = derive_seed(opt.seed, stage::kPipeline, attempt);
    PolarIndex pi = polar_index(C, o);
    std::size_t m0 = 0;
    try {
      m0 = multiplicity_m0(maximal_minors(C), o.seed, o.retries, pi.projection);
    } catch (const CertificationError&) {
      if (opt.projection) throw;
      continue;
    }
    long mu = static_cast<long>(pi.value) - static_cast<long>(m0) + 1;
    if (mu < 0) {
      if (opt.projection) break;
      continue;
    }
    InvariantReport rep;
    rep.dimension = 1;
    rep.mu = mu;
    rep.m_d = rep.ind_ph = pi.value;
    rep.m1 = pi.value;
    rep.m0 = m0;
    rep.euler_characteristic = 1 - mu;
    rep.projection = pi.projection.to_string();
    detail::set_route(rep, pi);
    rep.seed = opt.seed;
    rep.smoothing_seed = pi.smoothing.seed;
    rep.retries_used = attempt + pi.retries_used + pi.smoothing.retries_used;
    rep.smooth_certificate = pi.smoothing.smooth_certificate;
    rep.fibre_nondegenerate = pi.fibre.certified_nondegenerate;
    rep.fibre_count = pi.fibre.count;
    rep.consistency = rep.euler_characteristic == static_cast<long>(m0) - static_cast<long>(pi.value);
    return rep;
  }
  throw CertificationError("curve", "negative Milnor number under every sampled projection");
}

inline InvariantReport milnor_surface(const PresentationMatrix& M, const PipelineOptions& opt = {}) {
  if (M.ambient_dimension() != 4) throw std::invalid_argument("milnor_surface: expected a surface in 4-space");
  InputCheck chk = check_input(M);
  if (!chk.ok()) throw std::invalid_argument("milnor_surface: " + chk.message);
  for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
    PipelineOptions o = opt;
    o.seed = attempt == 0 ? opt.seed : derive_seed(opt.seed, stage::kPipeline, attempt);
    PolarIndex pi = polar_index(M, o);
    PresentationMatrix C = hyperplane_section(M, pi.projection);
    InputCheck cc = check_input(C);
    if (!cc.ok() || cc.ideal_dimension != 1) {
      if (opt.projection) throw CertificationError("section", "section curve is not an isolated singularity");
      continue;
    }
    PipelineOptions co;
    co.seed = derive_seed(o.seed, stage::kSection, 0);
    co.retries = opt.retries;
    co.bound = opt.bound;
    co.certify_fibre = opt.certify_fibre;
    InvariantReport curve = milnor_curve(C, co);
    long mu = static_cast<long>(pi.value) - curve.mu;
    if (mu < 0) {
      if (opt.projection) throw CertificationError("surface", "negative Milnor number");
      continue;
    }
    InvariantReport rep;
    rep.dimension = 2;
    rep.mu = mu;
    rep.mu_section = curve.mu;
    rep.m_d = rep.ind_ph = pi.value;
    rep.euler_characteristic = 1 + mu;
    rep.projection = pi.projection.to_string();
    detail::set_route(rep, pi);
    rep.section_projection = curve.projection;
    rep.seed = opt.seed;
    rep.smoothing_seed = pi.smoothing.seed;
    rep.retries_used = attempt + pi.retries_used + pi.smoothing.retries_used;
    rep.smooth_certificate = pi.smoothing.smooth_certificate;
    rep.fibre_nondegenerate = pi.fibre.certified_nondegenerate;
    rep.fibre_count = pi.fibre.count;
    rep.section_isolated = true;
    rep.consistency = 1 + rep.mu == (1 - curve.mu) + static_cast<long>(pi.value);
    rep.sub.push_back(std::move(curve));
    return rep;
  }
  throw CertificationError("surface", "no admissible projection within the retry budget");
}

/// combined = m_3 - mu(section surface). Counting Euler characteristics of
/// the fibre gives mu(X) - b_2(X_t) for this difference, so it can be negative.
inline InvariantReport threefold_combined(const PresentationMatrix& M, const PipelineOptions& opt = {}) {
  if (M.ambient_dimension() != 5) throw std::invalid_argument("threefold_combined: expected a threefold in 5-space");
  InputCheck chk = check_input(M);
  if (!chk.ok()) throw std::invalid_argument("threefold_combined: " + chk.message);
  for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
    PipelineOptions o = opt;
    o.seed = attempt == 0 ? opt.seed : derive_seed(opt.seed, stage::kPipeline, attempt);
    PolarIndex pi = polar_index(M, o);
    PresentationMatrix S = hyperplane_section(M, pi.projection);
    InputCheck sc = check_input(S);
    if (!sc.ok()) {
      if (opt.projection) throw CertificationError("section", "section surface is not an isolated singularity");
      continue;
    }
    PipelineOptions so;
    so.seed = derive_seed(o.seed, stage::kSection, 0);
    so.retries = opt.retries;
    so.bound = opt.bound;
    so.certify_fibre = opt.certify_fibre;
    InvariantReport surf = milnor_surface(S, so);
    InvariantReport rep;
    rep.dimension = 3;
    rep.m_d = rep.ind_ph = pi.value;
    rep.mu_section = surf.mu;
    rep.combined = static_cast<long>(pi.value) - surf.mu;
    rep.projection = pi.projection.to_string();
    detail::set_route(rep, pi);
    rep.seed = opt.seed;
    rep.smoothing_seed = pi.smoothing.seed;
    rep.retries_used = attempt + pi.retries_used + pi.smoothing.retries_used;
    rep.smooth_certificate = pi.smoothing.smooth_certificate;
    rep.fibre_nondegenerate = pi.fibre.certified_nondegenerate;
    rep.fibre_count = pi.fibre.count;
    rep.euler_characteristic = 1 + surf.mu - static_cast<long>(pi.value);
    rep.consistency = rep.euler_characteristic == 1 - *rep.combined;
    rep.notes.push_back("combined = m_3 - mu(section); the fibre Euler characteristic makes it mu - b_2");
    rep.sub.push_back(std::move(surf));
    return rep;
  }
  throw CertificationError("threefold", "no admissible projection within the retry budget");
}

/// Dispatches on the dimension of X.
inline InvariantReport milnor(const PresentationMatrix& M, const PipelineOptions& opt = {}) {
  switch (M.ambient_dimension()) {
    case 3: return milnor_curve(M, opt);
    case 4: return milnor_surface(M, opt);
    case 5: return threefold_combined(M, opt);
    default: throw std::invalid_argument("milnor: unsupported ambient dimension " + std::to_string(M.ambient_dimension()));
  }
}

struct ConjectureVerdict {
  long mu = 0;
  long tau = 0;
  bool equal_to_tau_minus_1 = false;
};

inline ConjectureVerdict conjecture_check(const PresentationMatrix& M, long tau, const PipelineOptions& opt = {}) {
  InvariantReport rep = milnor_surface(M, opt);
  return ConjectureVerdict{rep.mu, tau, rep.mu == tau - 1};
}

}  // namespace detsing

#endif  // DETSING_INVARIANTS_HPP
