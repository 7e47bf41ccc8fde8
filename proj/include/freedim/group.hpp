#pragma once

#include "freedim/tracial.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freedim {

/// A permutation of {0, ..., degree-1}. Products compose left to right:
/// p.then(q) applies p first, matching the right action used for cosets.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);
  /// Cycle notation on 1-based points, e.g. "(1 2)(3 4 5)"; "()" is the identity.
  static Permutation parse_cycles(std::string_view text, int degree = 0);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return point < degree() ? images_[static_cast<std::size_t>(point)] : point; }
  Permutation then(const Permutation& q) const;
  Permutation inverse() const;
  Permutation extended(int degree) const;
  bool is_identity() const;
  std::string cycles() const;
  const std::vector<int>& images() const { return images_; }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Multiplication table of a finite group on elements 0..order-1.
class FiniteGroupTable {
 public:
  /// Checks closure, the Latin-square property, the identity and inverse
  /// laws, and associativity on all triples when the order is at most 24
  /// (on a fixed random sample above that). Throws GroupTableError.
  static FiniteGroupTable from_table(std::vector<std::vector<int>> mult);
  static FiniteGroupTable cyclic(int n);
  static FiniteGroupTable symmetric(int n);
  static FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);
  static FiniteGroupTable from_permutations(std::span<const Permutation> generators, int max_order = 40320);

  int order() const { return static_cast<int>(mult_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return mult_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<int>>& table() const { return mult_; }

  std::vector<int> generated_subgroup(std::span<const int> elements) const;
  bool generates(std::span<const int> elements) const;
  /// Right translation h -> h g, so that as_permutation(a).then(as_permutation(b)) = as_permutation(ab).
  Permutation as_permutation(int g) const;

 private:
  std::vector<std::vector<int>> mult_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

/// Smallest generating set, found by exhaustive search over subsets of increasing size.
std::vector<int> minimal_generating_set(const FiniteGroupTable& group);

struct GroupAlgebra {
  TracialAlgebra algebra;
  std::vector<int> generating_set;
};

/// CG acting on l^2(G) by left translation, with tau(x) = <x delta_e, delta_e>,
/// generated by Re g = (g + g^-1)/2 and Im g = (g - g^-1)/(2i) for g in the
/// generating set (a minimal one when none is given). Built in subalgebra
/// mode of M_{|G|}; the block structure is recovered by central_decomposition.
/// Throws TooLarge or NotGeneratingSet.
GroupAlgebra regular_rep_algebra(const FiniteGroupTable& group, std::optional<std::vector<int>> generating_set = {},
                                 int max_order = 24);

/// Reduced word in a free group: letter +k is x_k, -k its inverse (k >= 1).
using FreeWord = std::vector<int>;

FreeWord reduce(FreeWord word);
FreeWord inverse(const FreeWord& word);
FreeWord concat(const FreeWord& a, const FreeWord& b);
/// Letters named u, v for rank <= 2 and x1, x2, ... otherwise; runs are
/// written as powers, e.g. "u^2 v^-1".
std::string to_string(const FreeWord& word, int rank);

/// Coset graph of the kernel of a homomorphism F_n -> G: one vertex per
/// element of the image, an edge h -> h phi(x_i) per generator.
struct SchreierGraph {
  int free_rank = 0;
  int index = 0;
  std::vector<std::vector<int>> edges;  // edges[coset][letter - 1]
  std::vector<FreeWord> transversal;    // breadth-first, prefix closed
  std::vector<FreeWord> subgroup_generators;
  int tree_edges = 0;
  int non_tree_edges = 0;

  int rank() const { return 1 + index * (free_rank - 1); }
};

/// Reidemeister-Schreier for ker(phi), phi(x_i) = images[i].
SchreierGraph schreier_rank(int free_rank, std::span<const Permutation> images);

Permutation evaluate(const FreeWord& word, std::span<const Permutation> images);
bool in_kernel(const FreeWord& word, std::span<const Permutation> images);

/// Folded (Stallings) graph of the subgroup generated by a set of words.
struct SubgroupGraph {
  int free_rank = 0;
  std::vector<std::vector<int>> out;  // out[vertex][letter - 1], -1 when absent; vertex 0 is the base
  int vertices() const { return static_cast<int>(out.size()); }
  int edge_count() const;
  bool finite_index() const;
  int index() const { return finite_index() ? vertices() : -1; }
  int rank() const { return edge_count() - vertices() + 1; }
};

SubgroupGraph fold_subgroup(int free_rank, std::span<const FreeWord> words);

/// True when the two based, labelled graphs are isomorphic; for finite-index
/// subgroups that means the subgroups coincide.
bool same_subgroup(const SubgroupGraph& folded, const SchreierGraph& schreier);

enum class BettiProvenance { FreeGroup, FiniteGroup, UserSupplied };

struct BettiInput {
  double beta0 = 0.0;
  double beta1 = 0.0;
  BettiProvenance provenance = BettiProvenance::UserSupplied;
  long parameter = 0;  // k for F_k, |G| for a finite group

  /// beta0 = 0, beta1 = k - 1 (k >= 1); F_0 is the trivial group.
  static BettiInput free_group(int k);
  /// beta0 = 1/|G|, beta1 = 0.
  static BettiInput finite_group(long order);
  static BettiInput user_supplied(double beta0, double beta1);
  std::string provenance_label() const;
};

/// beta1 - beta0 + 1.
double betti_delta_formula(const BettiInput& input);

struct CounterexampleVariable {
  std::string name;
  std::string definition;
  FreeWord element;       // group element whose real or imaginary part is taken
  bool scaled = false;    // carries the 1/k factor and vanishes in the limit
};

/// The sequence in CF_2 whose free entropy dimension jumps up in the limit.
struct CounterexampleReport {
  std::vector<CounterexampleVariable> variables;
  std::vector<FreeWord> sequence_elements;
  std::vector<FreeWord> limit_elements;
  SubgroupGraph sequence_subgroup;
  SubgroupGraph limit_subgroup;
  SchreierGraph kernel;
  bool kernel_generators_verified = false;
  bool named_generators_in_kernel = false;
  bool limit_equals_kernel = false;
  double delta_sequence = 0.0;
  double delta_limit = 0.0;
  double liminf_delta = 0.0;
  std::vector<std::pair<int, double>> norm_bounds;  // (k, bound on ||W_j^(k)||)
  bool counterexample_holds = false;
  std::vector<std::string> notes;

  std::string verdict_line() const;
  std::string summary() const;
};

CounterexampleReport counterexample_report();

}  // namespace freedim
