#include "freedim/runner.hpp"

#include "freedim/cocycle.hpp"
#include "freedim/derivation.hpp"
#include "freedim/errors.hpp"
#include "freedim/fraction.hpp"
#include "freedim/group.hpp"
#include "freedim/tracial.hpp"
#include "freedim/vn_dimension.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace freedim {

using nlohmann::json;

namespace {

constexpr std::string_view kScenarioNames[] = {"delta",       "dual_system", "cutoff",
                                               "group_finite", "group_free",  "counterexample"};

struct KeyRule {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

KeyRule top_level_keys(Scenario s) {
  const std::vector<std::string> common{"scenario", "seed", "tolerances", "description"};
  KeyRule rule{{}, common};
  switch (s) {
    case Scenario::Delta:
      rule.required = {"algebra"};
      break;
    case Scenario::DualSystem:
      rule.required = {"algebra"};
      rule.optional.push_back("instances");
      break;
    case Scenario::Cutoff:
      rule.required = {"cutoff"};
      break;
    case Scenario::GroupFinite:
      rule.required = {"group"};
      rule.optional.push_back("generating_set");
      rule.optional.push_back("max_order");
      break;
    case Scenario::GroupFree:
      rule.required = {"homomorphism"};
      rule.optional.push_back("betti");
      break;
    case Scenario::Counterexample:
      break;
  }
  return rule;
}

void check_keys(const json& object, const KeyRule& rule, const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& key : rule.required)
    if (!object.contains(key)) throw ConfigError(where + " is missing required key '" + key + "'");
  for (const auto& [key, value] : object.items()) {
    bool known = std::find(rule.required.begin(), rule.required.end(), key) != rule.required.end() ||
                 std::find(rule.optional.begin(), rule.optional.end(), key) != rule.optional.end();
    if (!known) throw ConfigError(where + " has unknown key '" + key + "'");
  }
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <typename T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + " has the wrong type");
  }
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
  return j.get<int>();
}

// A number, or a string "p/q" for an exact rational.
double get_real(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      double p = std::stod(s.substr(0, slash)), q = std::stod(s.substr(slash + 1));
      if (q == 0.0) throw ConfigError(where + " divides by zero");
      return p / q;
    } catch (const std::logic_error&) {
      throw ConfigError(where + " is not a number or fraction: '" + s + "'");
    }
  }
  throw ConfigError(where + " must be a number or a \"p/q\" string");
}

cplx get_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix get_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + " must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ConfigError(where + " rows must be arrays of [re, im] pairs");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError(where + " has rows of unequal length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                            where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

json fraction_json(const std::optional<Fraction>& f) { return f ? json(f->str()) : json(nullptr); }

json fraction_of(double x) { return fraction_json(to_fraction(x)); }

TracialAlgebra parse_algebra(const json& spec) {
  check_keys(spec, {{"blocks", "weights", "generators"}, {"labels", "subalgebra"}}, "algebra");
  std::vector<int> blocks;
  if (!spec["blocks"].is_array()) throw ConfigError("algebra.blocks must be an array");
  for (const auto& b : spec["blocks"]) blocks.push_back(get_int(b, "algebra.blocks entry"));
  std::vector<double> weights;
  if (!spec["weights"].is_array()) throw ConfigError("algebra.weights must be an array");
  for (const auto& w : spec["weights"]) weights.push_back(get_real(w, "algebra.weights entry"));
  std::vector<Matrix> generators;
  if (!spec["generators"].is_array()) throw ConfigError("algebra.generators must be an array");
  for (std::size_t k = 0; k < spec["generators"].size(); ++k)
    generators.push_back(get_matrix(spec["generators"][k], "algebra.generators[" + std::to_string(k) + "]"));
  BuildOptions options;
  if (spec.contains("labels")) options.labels = get_as<std::vector<std::string>>(spec["labels"], "algebra.labels");
  if (spec.contains("subalgebra")) options.subalgebra_mode = get_as<bool>(spec["subalgebra"], "algebra.subalgebra");
  return build_algebra(std::move(blocks), std::move(weights), std::move(generators), options);
}

Tolerances parse_tolerances(const json& spec, Tolerances tol) {
  static const std::vector<std::string> names{"operator_residual", "scalar_residual", "rank",
                                              "invariance",        "well_defined",    "dual_residual",
                                              "integrality_slack", "chain"};
  check_keys(spec, {{}, names}, "tolerances");
  double* fields[] = {&tol.operator_residual, &tol.scalar_residual, &tol.rank,  &tol.invariance,
                      &tol.well_defined,      &tol.dual_residual,   &tol.integrality_slack, &tol.chain};
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (!spec.contains(names[k])) continue;
    double v = get_real(spec[names[k]], "tolerances." + names[k]);
    if (!(v > 0.0)) throw ConfigError("tolerances." + names[k] + " must be positive");
    *fields[k] = v;
  }
  return tol;
}

FiniteGroupTable parse_group(const json& spec, const std::filesystem::path& base_dir) {
  if (!spec.is_object() || !spec.contains("kind")) throw ConfigError("group needs a 'kind'");
  const std::string kind = get_as<std::string>(spec["kind"], "group.kind");
  if (kind == "cyclic") {
    check_keys(spec, {{"kind", "order"}, {}}, "group");
    return FiniteGroupTable::cyclic(get_int(spec["order"], "group.order"));
  }
  if (kind == "symmetric") {
    check_keys(spec, {{"kind", "degree"}, {}}, "group");
    return FiniteGroupTable::symmetric(get_int(spec["degree"], "group.degree"));
  }
  if (kind == "product") {
    check_keys(spec, {{"kind", "factors"}, {}}, "group");
    if (!spec["factors"].is_array() || spec["factors"].empty()) throw ConfigError("group.factors must be nonempty");
    FiniteGroupTable g = parse_group(spec["factors"][0], base_dir);
    for (std::size_t k = 1; k < spec["factors"].size(); ++k)
      g = FiniteGroupTable::direct_product(g, parse_group(spec["factors"][k], base_dir));
    return g;
  }
  if (kind == "table") {
    check_keys(spec, {{"kind", "table"}, {}}, "group");
    return FiniteGroupTable::from_table(get_as<std::vector<std::vector<int>>>(spec["table"], "group.table"));
  }
  if (kind == "table_file") {
    // Whitespace-separated rows of element indices, one row per line.
    check_keys(spec, {{"kind", "path"}, {}}, "group");
    const std::filesystem::path path = base_dir / get_as<std::string>(spec["path"], "group.path");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read group table file " + path.string());
    std::vector<std::vector<int>> table;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream row(line);
      std::vector<int> entries;
      std::string token;
      while (row >> token) {
        try {
          entries.push_back(std::stoi(token));
        } catch (const std::logic_error&) {
          throw ConfigError("bad entry '" + token + "' in " + path.string());
        }
      }
      if (!entries.empty()) table.push_back(std::move(entries));
    }
    return FiniteGroupTable::from_table(std::move(table));
  }
  if (kind == "permutations") {
    check_keys(spec, {{"kind", "generators"}, {}}, "group");
    std::vector<Permutation> gens;
    for (const auto& g : get_as<std::vector<std::string>>(spec["generators"], "group.generators")) {
      try {
        gens.push_back(Permutation::parse_cycles(g));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    return FiniteGroupTable::from_permutations(gens);
  }
  throw ConfigError("unknown group kind '" + kind + "'");
}

std::vector<Permutation> parse_images(const json& spec, const std::filesystem::path& base_dir, int& rank) {
  check_keys(spec, {{"rank"}, {"images", "images_file"}}, "homomorphism");
  rank = get_int(spec["rank"], "homomorphism.rank");
  if (rank < 1) throw ConfigError("homomorphism.rank must be at least 1");
  if (spec.contains("images") == spec.contains("images_file"))
    throw ConfigError("homomorphism needs exactly one of 'images' and 'images_file'");
  std::vector<std::string> lines;
  if (spec.contains("images")) {
    lines = get_as<std::vector<std::string>>(spec["images"], "homomorphism.images");
  } else {
    // One generator image per line, in cycle notation.
    const std::filesystem::path path = base_dir / get_as<std::string>(spec["images_file"], "homomorphism.images_file");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read images file " + path.string());
    std::string line;
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (static_cast<int>(lines.size()) != rank)
    throw ConfigError("homomorphism needs one image per generator (" + std::to_string(rank) + ")");
  std::vector<Permutation> images;
  for (const auto& line : lines) {
    try {
      images.push_back(Permutation::parse_cycles(line));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return images;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------

json blocks_json(const std::vector<BlockInfo>& blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back({{"size", b.size}, {"weight", b.weight}, {"weight_fraction", fraction_of(b.weight)}});
  return out;
}

void run_delta(const ScenarioConfig& config, RunReport& report) {
  const TracialAlgebra algebra = parse_algebra(config.body["algebra"]);
  const DeltaReport d = delta_report(algebra, config.tolerances);
  json& r = report.results;
  r["Delta"] = d.Delta;
  r["Delta_fraction"] = fraction_json(d.Delta_exact);
  r["beta0"] = d.beta0;
  r["beta0_fraction"] = fraction_json(d.beta0_exact);
  r["closed_form_beta0"] = d.closed_form_beta0;
  r["dim_H0"] = d.dim_H0;
  r["dim_H1"] = d.dim_H1;
  r["dim_H2"] = d.dim_H2;
  r["complex_dims"] = {{"H0", d.complex_dim_H0}, {"H1", d.complex_dim_H1}, {"H2", d.complex_dim_H2}};
  r["pinned"] = {{"delta_star", d.delta_star}, {"delta_blackstar", d.delta_blackstar}};
  r["blocks"] = blocks_json(d.blocks);
  r["multiplicities"] = d.multiplicities;
  r["commutant_dim"] = d.commutant_dim;
  r["hilbert_dim"] = d.hilbert_dim;
  r["generators"] = algebra.num_generators();
  r["residuals"] = {{"distance_H0_H1", d.distance_H0_H1},
                    {"distance_H0_H2", d.distance_H0_H2},
                    {"distance_H1_H2", d.distance_H1_H2},
                    {"invariance", d.invariance_residual}};
  r["checks"] = {{"spaces_agree", d.spaces_agree},
                 {"closed_form_agrees", d.closed_form_agrees},
                 {"rank_nullity_holds", d.rank_nullity_holds}};
  report.provenance = {"Delta, beta0, dim_H0, dim_H1, dim_H2: computed",
                       "pinned.delta_star, pinned.delta_blackstar: pinned to dim_H0 (the chain collapses)",
                       "closed_form_beta0: sum of alpha_i^2 / n_i^2 over the computed blocks"};
  std::ostringstream os;
  os << "Delta = " << fmt(d.Delta) << " (" << (d.Delta_exact ? d.Delta_exact->str() : "no exact form") << ")\n"
     << "beta0 = " << fmt(d.beta0) << ", closed form " << fmt(d.closed_form_beta0) << "\n"
     << "dim H0 = " << fmt(d.dim_H0) << ", dim H1 = " << fmt(d.dim_H1) << ", dim H2 = " << fmt(d.dim_H2) << "\n"
     << "blocks:";
  for (const auto& b : d.blocks) os << " (n=" << b.size << ", alpha=" << fmt(b.weight) << ")";
  os << "\nH0 = H1 = H2: " << (d.spaces_agree ? "yes" : "no") << "\n";
  report.summary = os.str();
}

void run_dual_system(const ScenarioConfig& config, RunReport& report) {
  const TracialAlgebra algebra = parse_algebra(config.body["algebra"]);
  int instances = 5;
  if (config.body.contains("instances")) instances = get_int(config.body["instances"], "instances");
  if (instances < 1 || instances > 1000) throw ConfigError("instances must be in 1..1000");
  const GnsStructure gns = gns_structure(algebra);
  Rng rng(config.seed);
  json rows = json::array();
  double worst = 0.0, worst_xi = 0.0;
  for (int k = 0; k < instances; ++k) {
    const Matrix b = random_matrix(gns.dim(), rng);
    const DualOperatorReport d = construct_dual_operator(gns, DerivationSpec::inner(gns, b), config.tolerances);
    const double xi_gap = (d.xi - inner_conjugate_variable(gns, b)).norm();
    worst = std::max(worst, d.max_residual());
    worst_xi = std::max(worst_xi, xi_gap);
    rows.push_back({{"instance", k},
                    {"residual_Y1", d.residual_Y1},
                    {"residual_commutators", d.residual_commutators},
                    {"residual_adjoint", d.residual_adjoint},
                    {"residual_adjoint_formula", d.residual_adjoint_formula},
                    {"residual_bilinear", d.residual_bilinear},
                    {"xi_inner_formula_gap", xi_gap}});
  }
  const PhiStar phi = phi_star(gns, config.tolerances);
  const auto zero_xi = conjugate_variable(gns, DerivationSpec::zero(gns), config.tolerances);
  json& r = report.results;
  r["instances"] = rows;
  r["max_residual"] = worst;
  r["max_xi_inner_formula_gap"] = worst_xi;
  r["phi_star"] = phi.finite() ? json(phi.value) : json("+inf");
  r["difference_quotient_defects"] = phi.defects;
  r["zero_derivation_xi_norm"] = zero_xi ? json(zero_xi->norm()) : json(nullptr);
  r["hilbert_dim"] = gns.dim();
  report.provenance = {"residuals: computed for seeded random inner derivations T_j = [B, L_{X_j}]",
                       "xi_inner_formula_gap: distance of xi from (B* - J B J) 1",
                       "phi_star: +inf when some free difference quotient does not descend to M"};
  std::ostringstream os;
  os << instances << " inner derivations, max dual residual " << fmt(worst) << ", max gap to (B* - JBJ)1 "
     << fmt(worst_xi) << "\nphi* = " << (phi.finite() ? fmt(phi.value) : std::string("+inf")) << "\n";
  report.summary = os.str();
}

void run_cutoff(const ScenarioConfig& config, RunReport& report) {
  const json& spec = config.body["cutoff"];
  check_keys(spec, {{"radii"}, {"size", "num_x", "shape", "matrix", "x"}}, "cutoff");
  std::vector<double> radii;
  if (!spec["radii"].is_array() || spec["radii"].empty()) throw ConfigError("cutoff.radii must be a nonempty array");
  for (const auto& v : spec["radii"]) {
    radii.push_back(get_real(v, "cutoff.radii entry"));
    if (!(radii.back() > 0.0)) throw ConfigError("cutoff radii must be positive");
  }
  CutoffShape shape = CutoffShape::ExponentialClamp;
  if (spec.contains("shape")) {
    const std::string s = get_as<std::string>(spec["shape"], "cutoff.shape");
    if (s == "smooth")
      shape = CutoffShape::Smooth;
    else if (s != "exponential")
      throw ConfigError("cutoff.shape must be 'exponential' or 'smooth'");
  }
  Rng rng(config.seed);
  Matrix a;
  if (spec.contains("matrix")) {
    if (spec.contains("size")) throw ConfigError("cutoff takes either 'matrix' or 'size', not both");
    a = get_matrix(spec["matrix"], "cutoff.matrix");
    if (a.rows() != a.cols()) throw ConfigError("cutoff.matrix must be square");
  } else {
    int size = spec.contains("size") ? get_int(spec["size"], "cutoff.size") : 8;
    if (size < 1 || size > 256) throw ConfigError("cutoff.size must be in 1..256");
    a = random_hermitian(size, rng);
  }
  std::vector<Matrix> xs;
  if (spec.contains("x")) {
    if (spec.contains("num_x")) throw ConfigError("cutoff takes either 'x' or 'num_x', not both");
    for (std::size_t k = 0; k < spec["x"].size(); ++k) {
      xs.push_back(get_matrix(spec["x"][k], "cutoff.x[" + std::to_string(k) + "]"));
      if (xs.back().rows() != a.rows() || xs.back().cols() != a.cols()) throw ConfigError("cutoff.x shape mismatch");
    }
  } else {
    int num_x = spec.contains("num_x") ? get_int(spec["num_x"], "cutoff.num_x") : 1;
    if (num_x < 1 || num_x > 64) throw ConfigError("cutoff.num_x must be in 1..64");
    for (int k = 0; k < num_x; ++k) xs.push_back(random_hermitian(a.rows(), rng));
  }
  if (hermitian_defect(a) > 1e-10) throw NotSelfAdjoint("cutoff.matrix must be self-adjoint");

  const std::vector<SweepPoint> sweep = convergence_sweep(a, xs, radii, shape);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const double rho = eig.eigenvalues().cwiseAbs().maxCoeff();
  double identity_residual = 0.0;
  for (double r : radii)
    for (const auto& x : xs) identity_residual = std::max(identity_residual, commutator_identity_check(a, x, r, shape));
  bool monotone = true, zero_beyond = true;
  json rows = json::array();
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    rows.push_back({{"R", sweep[k].radius}, {"hs_error", sweep[k].hs_error}});
    if (k > 0 && sweep[k].radius >= sweep[k - 1].radius && sweep[k].hs_error > sweep[k - 1].hs_error + 1e-12)
      monotone = false;
    if (sweep[k].radius >= rho && sweep[k].hs_error > 1e-10) zero_beyond = false;
  }
  json& r = report.results;
  r["sweep"] = rows;
  r["spectral_radius"] = rho;
  r["size"] = a.rows();
  r["num_x"] = xs.size();
  r["shape"] = shape == CutoffShape::Smooth ? "smooth" : "exponential";
  r["commutator_identity_residual"] = identity_residual;
  r["checks"] = {{"monotone", monotone}, {"zero_beyond_spectral_radius", zero_beyond}};
  report.sweep = sweep;
  report.provenance = {"hs_error: sqrt(sum_j ||[f_R(A), X_j] - [A, X_j]||_HS^2), computed",
                       "commutator_identity_residual: max entrywise gap of [f(A), X] = g(A, A) o [A, X]"};
  std::ostringstream os;
  os << "rho(A) = " << fmt(rho) << "\n";
  for (const auto& p : sweep) os << "R = " << fmt(p.radius) << ": ||T^(R) - T||_HS = " << fmt(p.hs_error) << "\n";
  os << "monotone: " << (monotone ? "yes" : "no") << ", zero for R >= rho(A): " << (zero_beyond ? "yes" : "no")
     << "\n";
  report.summary = os.str();
}

void run_group_finite(const ScenarioConfig& config, RunReport& report) {
  const FiniteGroupTable group = parse_group(config.body["group"], config.base_dir);
  std::optional<std::vector<int>> gens;
  if (config.body.contains("generating_set"))
    gens = get_as<std::vector<int>>(config.body["generating_set"], "generating_set");
  int max_order = 24;
  if (config.body.contains("max_order")) max_order = get_int(config.body["max_order"], "max_order");
  const GroupAlgebra ga = regular_rep_algebra(group, gens, max_order);
  const DeltaReport d = delta_report(ga.algebra, config.tolerances);
  const BettiInput betti = BettiInput::finite_group(group.order());
  const double formula = betti_delta_formula(betti);
  json& r = report.results;
  r["order"] = group.order();
  r["generating_set"] = ga.generating_set;
  r["blocks"] = blocks_json(d.blocks);
  r["Delta"] = d.Delta;
  r["Delta_fraction"] = fraction_json(d.Delta_exact);
  r["beta0"] = d.beta0;
  r["betti"] = {{"beta0", betti.beta0}, {"beta1", betti.beta1}, {"provenance", betti.provenance_label()}};
  r["betti_delta"] = formula;
  r["betti_delta_fraction"] = fraction_of(formula);
  r["formula_gap"] = std::abs(formula - d.Delta);
  r["pipelines_agree"] = std::abs(formula - d.Delta) <= 1e-9;
  report.provenance = {"Delta: computed from the regular representation",
                       "betti_delta: beta1 - beta0 + 1 with built-in values for a finite group"};
  std::ostringstream os;
  os << "|G| = " << group.order() << ", blocks:";
  for (const auto& b : d.blocks) os << " (n=" << b.size << ", alpha=" << fmt(b.weight) << ")";
  os << "\nDelta = " << fmt(d.Delta) << ", beta1 - beta0 + 1 = " << fmt(formula) << "\n";
  report.summary = os.str();
}

void run_group_free(const ScenarioConfig& config, RunReport& report) {
  int rank = 0;
  const std::vector<Permutation> images = parse_images(config.body["homomorphism"], config.base_dir, rank);
  const SchreierGraph g = schreier_rank(rank, images);
  bool verified = std::all_of(g.subgroup_generators.begin(), g.subgroup_generators.end(),
                              [&](const FreeWord& w) { return in_kernel(w, images); });
  json gens = json::array(), transversal = json::array(), imgs = json::array();
  for (const auto& w : g.subgroup_generators) gens.push_back(to_string(w, rank));
  for (const auto& w : g.transversal) transversal.push_back(to_string(w, rank));
  for (const auto& p : images) imgs.push_back(p.cycles());
  json& r = report.results;
  r["free_rank"] = rank;
  r["images"] = imgs;
  r["index"] = g.index;
  r["rank"] = g.rank();
  r["tree_edges"] = g.tree_edges;
  r["non_tree_edges"] = g.non_tree_edges;
  r["transversal"] = transversal;
  r["subgroup_generators"] = gens;
  r["edges"] = g.edges;
  r["generators_in_kernel"] = verified;
  r["nielsen_schreier_consistent"] = g.rank() == g.non_tree_edges;
  r["betti_delta_kernel"] = betti_delta_formula(BettiInput::free_group(g.rank()));
  r["betti_delta_ambient"] = betti_delta_formula(BettiInput::free_group(rank));
  report.provenance = {"index, rank, subgroup_generators: computed by Reidemeister-Schreier",
                       "betti_delta_*: beta1 - beta0 + 1 with built-in free group values"};
  if (config.body.contains("betti")) {
    const json& b = config.body["betti"];
    check_keys(b, {{"beta0", "beta1"}, {}}, "betti");
    const BettiInput input = BettiInput::user_supplied(get_real(b["beta0"], "betti.beta0"), get_real(b["beta1"], "betti.beta1"));
    r["betti_user"] = {{"beta0", input.beta0},
                       {"beta1", input.beta1},
                       {"provenance", input.provenance_label()},
                       {"delta", betti_delta_formula(input)}};
    report.provenance.push_back("betti_user: user-supplied values, not validated");
  }
  std::ostringstream os;
  os << "kernel of F_" << rank << " -> image of order " << g.index << ": index " << g.index << ", rank " << g.rank()
     << "\nSchreier generators: {";
  for (std::size_t k = 0; k < g.subgroup_generators.size(); ++k)
    os << (k ? ", " : "") << to_string(g.subgroup_generators[k], rank);
  os << "}\nall in kernel: " << (verified ? "yes" : "no") << "\n";
  report.summary = os.str();
}

void run_counterexample(const ScenarioConfig&, RunReport& report) {
  const CounterexampleReport c = counterexample_report();
  json vars = json::array();
  for (const auto& v : c.variables)
    vars.push_back({{"name", v.name}, {"definition", v.definition}, {"element", to_string(v.element, 2)},
                    {"scaled", v.scaled}});
  auto words = [](const std::vector<FreeWord>& ws) {
    json out = json::array();
    for (const auto& w : ws) out.push_back(to_string(w, 2));
    return out;
  };
  json bounds = json::array();
  for (const auto& [k, b] : c.norm_bounds) bounds.push_back({{"k", k}, {"bound", b}});
  json& r = report.results;
  r["variables"] = vars;
  r["sequence"] = {{"elements", words(c.sequence_elements)},
                   {"index", c.sequence_subgroup.index()},
                   {"rank", c.sequence_subgroup.rank()},
                   {"delta", c.delta_sequence}};
  r["limit"] = {{"elements", words(c.limit_elements)},
                {"index", c.limit_subgroup.index()},
                {"rank", c.limit_subgroup.rank()},
                {"equals_kernel", c.limit_equals_kernel},
                {"delta", c.delta_limit}};
  r["kernel"] = {{"index", c.kernel.index},
                 {"rank", c.kernel.rank()},
                 {"generators", words(c.kernel.subgroup_generators)},
                 {"generators_in_kernel", c.kernel_generators_verified},
                 {"u2_v2_uv_in_kernel", c.named_generators_in_kernel}};
  r["norm_bounds"] = bounds;
  r["liminf_delta"] = c.liminf_delta;
  r["delta_limit"] = c.delta_limit;
  r["verdict"] = c.verdict_line();
  r["counterexample_holds"] = c.counterexample_holds;
  r["notes"] = c.notes;
  report.provenance = {"delta values: free group rank through beta1 - beta0 + 1",
                       "ranks and indices: computed by folding and Reidemeister-Schreier",
                       "norm bounds: ||Re u|| = ||Im v|| = 1 scaled by 1/k"};
  report.summary = c.summary();
}

}  // namespace

std::string_view scenario_name(Scenario scenario) { return kScenarioNames[static_cast<int>(scenario)]; }

Scenario parse_scenario(std::string_view name) {
  for (int k = 0; k < 6; ++k)
    if (kScenarioNames[k] == name) return static_cast<Scenario>(k);
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw UnsupportedFormat("unknown format '" + std::string(name) + "'");
}

ScenarioConfig ScenarioConfig::parse(const json& config, std::optional<Scenario> expected,
                                     std::optional<std::uint64_t> seed_override) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig out;
  if (config.contains("scenario")) {
    out.scenario = parse_scenario(get_as<std::string>(config["scenario"], "scenario"));
    if (expected && *expected != out.scenario)
      throw ConfigError("config is for scenario '" + std::string(scenario_name(out.scenario)) +
                        "' but '" + std::string(scenario_name(*expected)) + "' was requested");
  } else if (expected) {
    out.scenario = *expected;
  } else {
    throw ConfigError("no scenario given");
  }
  check_keys(config, top_level_keys(out.scenario), "config");
  out.body = config;
  if (config.contains("seed")) {
    if (!config["seed"].is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
    out.seed = config["seed"].get<std::uint64_t>();
  }
  if (seed_override) out.seed = *seed_override;
  out.tolerances = Tolerances::from_env();
  if (config.contains("tolerances")) out.tolerances = parse_tolerances(config["tolerances"], out.tolerances);
  out.hash = fnv1a_hex(config.dump());
  return out;
}

ScenarioConfig ScenarioConfig::from_file(const std::filesystem::path& path, std::optional<Scenario> expected,
                                         std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in ") + path.string() + ": " + e.what());
  }
  ScenarioConfig out = parse(config, expected, seed_override);
  out.base_dir = path.parent_path();
  return out;
}

RunReport run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario = config.scenario;
  report.seed = config.seed;
  report.config_hash = config.hash;
  switch (config.scenario) {
    case Scenario::Delta:
      run_delta(config, report);
      break;
    case Scenario::DualSystem:
      run_dual_system(config, report);
      break;
    case Scenario::Cutoff:
      run_cutoff(config, report);
      break;
    case Scenario::GroupFinite:
      run_group_finite(config, report);
      break;
    case Scenario::GroupFree:
      run_group_free(config, report);
      break;
    case Scenario::Counterexample:
      run_counterexample(config, report);
      break;
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: {
      json out = report.results;
      out["schema"] = kReportSchema;
      out["tool_version"] = std::string(kToolVersion);
      out["scenario"] = std::string(scenario_name(report.scenario));
      out["seed"] = report.seed;
      out["config_hash"] = report.config_hash;
      out["provenance"] = report.provenance;
      return out.dump(2) + "\n";
    }
    case ReportFormat::Csv:
      if (!report.sweep) throw UnsupportedFormat("csv output is only available for sweeps");
      return sweep_csv(*report.sweep);
    case ReportFormat::Text: {
      std::ostringstream os;
      os << "freedim " << kToolVersion << " / " << scenario_name(report.scenario) << " (seed " << report.seed
         << ", config " << report.config_hash << ")\n"
         << report.summary << "wall time: " << fmt(report.wall_time_seconds) << " s\n";
      return os.str();
    }
  }
  throw UnsupportedFormat("unknown format");
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace freedim
