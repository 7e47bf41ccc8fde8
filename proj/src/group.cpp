#include "freedim/group.hpp"

#include "freedim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace freedim {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int p : images_) {
    if (p < 0 || p >= degree() || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(p)] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(std::string_view text, int degree) {
  std::vector<std::vector<int>> cycles;
  int max_point = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad cycle notation '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') fail("expected '('");
    ++i;
    std::vector<int> cycle;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point");
      int value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 1000000) fail("point too large");
        ++i;
      }
      if (value < 1) fail("points are 1-based");
      cycle.push_back(value - 1);
      max_point = std::max(max_point, value);
    }
    cycles.push_back(std::move(cycle));
  }
  int n = std::max(degree, max_point);
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const auto& cycle : cycles) {
    for (int p : cycle) {
      if (used[static_cast<std::size_t>(p)]) fail("point repeated");
      used[static_cast<std::size_t>(p)] = 1;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

Permutation Permutation::then(const Permutation& q) const {
  int n = std::max(degree(), q.degree());
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) images[static_cast<std::size_t>(p)] = q((*this)(p));
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(images_.size());
  for (int p = 0; p < degree(); ++p) images[static_cast<std::size_t>(images_[static_cast<std::size_t>(p)])] = p;
  return Permutation(std::move(images));
}

Permutation Permutation::extended(int n) const {
  if (n <= degree()) return *this;
  std::vector<int> images = images_;
  for (int p = degree(); p < n; ++p) images.push_back(p);
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (int p = 0; p < degree(); ++p)
    if (images_[static_cast<std::size_t>(p)] != p) return false;
  return true;
}

std::string Permutation::cycles() const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (int p = 0; p < degree(); ++p) {
    if (seen[static_cast<std::size_t>(p)] || (*this)(p) == p) continue;
    out += '(';
    int q = p;
    bool first = true;
    while (!seen[static_cast<std::size_t>(q)]) {
      seen[static_cast<std::size_t>(q)] = 1;
      if (!first) out += ' ';
      out += std::to_string(q + 1);
      first = false;
      q = (*this)(q);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------------------

FiniteGroupTable FiniteGroupTable::from_table(std::vector<std::vector<int>> mult) {
  const int n = static_cast<int>(mult.size());
  if (n == 0) throw GroupTableError("empty table");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != n) throw GroupTableError("table is not square");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int x : row) {
      if (x < 0 || x >= n) throw GroupTableError("entry out of range");
      if (seen[static_cast<std::size_t>(x)]) throw GroupTableError("row is not a permutation");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
      int x = mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(x)]) throw GroupTableError("column is not a permutation");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  }
  FiniteGroupTable g;
  g.mult_ = std::move(mult);
  auto m = [&](int a, int b) { return g.mult_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };

  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = m(e, a) == a && m(a, e) == a;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) throw GroupTableError("no identity element");

  g.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (m(a, b) == g.identity_) g.inverse_[static_cast<std::size_t>(a)] = b;
    int b = g.inverse_[static_cast<std::size_t>(a)];
    if (b < 0 || m(b, a) != g.identity_) throw GroupTableError("inverse law fails");
  }

  auto assoc = [&](int a, int b, int c) {
    if (m(m(a, b), c) != m(a, m(b, c)))
      throw GroupTableError("associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                            std::to_string(c) + ")");
  };
  if (n <= 24) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }
  return g;
}

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
  if (n < 1) throw GroupTableError("cyclic group order must be positive");
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return from_table(std::move(mult));
}

FiniteGroupTable FiniteGroupTable::symmetric(int n) {
  if (n < 1 || n > 8) throw GroupTableError("symmetric group degree must be in 1..8");
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(Permutation::parse_cycles("(1 2)", n));
  if (n >= 3) {
    std::string cycle = "(";
    for (int p = 1; p <= n; ++p) cycle += std::to_string(p) + (p < n ? " " : ")");
    gens.push_back(Permutation::parse_cycles(cycle, n));
  }
  if (gens.empty()) gens.push_back(Permutation::identity(1));
  return from_permutations(gens);
}

FiniteGroupTable FiniteGroupTable::direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.multiply(x / nb, y / nb) * nb + b.multiply(x % nb, y % nb);
  return from_table(std::move(mult));
}

FiniteGroupTable FiniteGroupTable::from_permutations(std::span<const Permutation> generators, int max_order) {
  int degree = 1;
  for (const auto& g : generators) degree = std::max(degree, g.degree());
  std::vector<Permutation> gens;
  for (const auto& g : generators) gens.push_back(g.extended(degree));

  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::map<Permutation, int> index{{elements[0], 0}};
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& g : gens) {
      Permutation next = elements[k].then(g);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(next);
        if (static_cast<int>(elements.size()) > max_order)
          throw TooLarge("generated group exceeds order " + std::to_string(max_order));
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mult[a][b] = index.at(elements[a].then(elements[b]));
  return from_table(std::move(mult));
}

std::vector<int> FiniteGroupTable::generated_subgroup(std::span<const int> elements) const {
  std::vector<char> in(static_cast<std::size_t>(order()), 0);
  std::vector<int> members{identity_};
  in[static_cast<std::size_t>(identity_)] = 1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (int g : elements) {
      int next = multiply(members[k], g);
      if (!in[static_cast<std::size_t>(next)]) {
        in[static_cast<std::size_t>(next)] = 1;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool FiniteGroupTable::generates(std::span<const int> elements) const {
  return static_cast<int>(generated_subgroup(elements).size()) == order();
}

Permutation FiniteGroupTable::as_permutation(int g) const {
  std::vector<int> images(static_cast<std::size_t>(order()));
  for (int h = 0; h < order(); ++h) images[static_cast<std::size_t>(h)] = multiply(h, g);
  return Permutation(std::move(images));
}

std::vector<int> minimal_generating_set(const FiniteGroupTable& group) {
  const int n = group.order();
  std::vector<int> candidates;
  for (int g = 0; g < n; ++g)
    if (g != group.identity()) candidates.push_back(g);
  if (candidates.empty()) return {};
  for (std::size_t k = 1; k <= candidates.size(); ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<int> chosen;
      for (std::size_t i : pick) chosen.push_back(candidates[i]);
      if (group.generates(chosen)) return chosen;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == candidates.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return candidates;
}

GroupAlgebra regular_rep_algebra(const FiniteGroupTable& group, std::optional<std::vector<int>> generating_set,
                                 int max_order) {
  const int n = group.order();
  if (n > max_order)
    throw TooLarge("group of order " + std::to_string(n) + " exceeds the cap " + std::to_string(max_order));
  std::vector<int> gens = generating_set ? *generating_set : minimal_generating_set(group);
  for (int g : gens)
    if (g < 0 || g >= n) throw NotGeneratingSet("element " + std::to_string(g) + " is not in the group");
  if (!group.generates(gens)) throw NotGeneratingSet("chosen elements generate a proper subgroup");

  auto lambda = [&](int g) {
    Matrix m = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) m(group.multiply(g, h), h) = 1.0;
    return m;
  };
  std::vector<Matrix> generators;
  std::vector<std::string> labels;
  const cplx i(0.0, 1.0);
  for (int g : gens) {
    Matrix lg = lambda(g);
    Matrix lginv = lambda(group.inverse(g));
    generators.push_back((lg + lginv) / 2.0);
    generators.push_back((lg - lginv) / (2.0 * i));
    labels.push_back("Re g" + std::to_string(g));
    labels.push_back("Im g" + std::to_string(g));
  }
  BuildOptions options;
  options.subalgebra_mode = true;
  options.labels = labels;
  GroupAlgebra out{build_algebra({n}, {1.0}, std::move(generators), options), gens};
  return out;
}

// ---------------------------------------------------------------------------

FreeWord reduce(FreeWord word) {
  FreeWord out;
  for (int letter : word) {
    if (letter == 0) throw std::invalid_argument("free word letters are nonzero");
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

FreeWord inverse(const FreeWord& word) {
  FreeWord out(word.rbegin(), word.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(std::move(out));
}

std::string to_string(const FreeWord& word, int rank) {
  if (word.empty()) return "1";
  auto name = [&](int letter) {
    int k = std::abs(letter);
    if (rank <= 2) return std::string(k == 1 ? "u" : "v");
    return "x" + std::to_string(k);
  };
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    int power = static_cast<int>(j - i) * (word[i] > 0 ? 1 : -1);
    if (!out.empty()) out += ' ';
    out += name(word[i]);
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

Permutation evaluate(const FreeWord& word, std::span<const Permutation> images) {
  int degree = 1;
  for (const auto& p : images) degree = std::max(degree, p.degree());
  Permutation out = Permutation::identity(degree);
  for (int letter : word) {
    int k = std::abs(letter) - 1;
    if (k >= static_cast<int>(images.size())) throw std::invalid_argument("letter beyond free rank");
    const Permutation& g = images[static_cast<std::size_t>(k)];
    out = out.then(letter > 0 ? g : g.inverse());
  }
  return out;
}

bool in_kernel(const FreeWord& word, std::span<const Permutation> images) {
  return evaluate(word, images).is_identity();
}

SchreierGraph schreier_rank(int free_rank, std::span<const Permutation> images) {
  if (free_rank < 0 || static_cast<int>(images.size()) != free_rank)
    throw std::invalid_argument("one image per free generator is required");
  int degree = 1;
  for (const auto& p : images) degree = std::max(degree, p.degree());
  std::vector<Permutation> gens;
  for (const auto& p : images) gens.push_back(p.extended(degree));

  SchreierGraph graph;
  graph.free_rank = free_rank;
  std::vector<Permutation> cosets{Permutation::identity(degree)};
  std::map<Permutation, int> index{{cosets[0], 0}};
  graph.transversal.push_back({});
  std::vector<std::vector<char>> tree;
  for (std::size_t h = 0; h < cosets.size(); ++h) {
    graph.edges.emplace_back(static_cast<std::size_t>(free_rank));
    tree.emplace_back(static_cast<std::size_t>(free_rank), 0);
    for (int i = 0; i < free_rank; ++i) {
      Permutation next = cosets[h].then(gens[static_cast<std::size_t>(i)]);
      auto [it, fresh] = index.emplace(next, static_cast<int>(cosets.size()));
      if (fresh) {
        cosets.push_back(next);
        FreeWord t = graph.transversal[h];
        t.push_back(i + 1);
        graph.transversal.push_back(std::move(t));
        tree[h][static_cast<std::size_t>(i)] = 1;
      }
      graph.edges[h][static_cast<std::size_t>(i)] = it->second;
    }
  }
  graph.index = static_cast<int>(cosets.size());
  for (int h = 0; h < graph.index; ++h) {
    for (int i = 0; i < free_rank; ++i) {
      if (tree[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)]) {
        ++graph.tree_edges;
        continue;
      }
      ++graph.non_tree_edges;
      int target = graph.edges[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)];
      FreeWord w = graph.transversal[static_cast<std::size_t>(h)];
      w.push_back(i + 1);
      graph.subgroup_generators.push_back(
          concat(w, inverse(graph.transversal[static_cast<std::size_t>(target)])));
    }
  }
  return graph;
}

// ---------------------------------------------------------------------------

int SubgroupGraph::edge_count() const {
  int count = 0;
  for (const auto& row : out)
    for (int t : row) count += t >= 0;
  return count;
}

bool SubgroupGraph::finite_index() const {
  for (const auto& row : out)
    for (int t : row)
      if (t < 0) return false;
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // Keeps the smaller representative so the base stays at 0.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

struct Edge {
  int from, letter, to;
};

}  // namespace

SubgroupGraph fold_subgroup(int free_rank, std::span<const FreeWord> words) {
  UnionFind uf;
  const int base = uf.add();
  std::vector<Edge> edges;
  for (const FreeWord& raw : words) {
    FreeWord w = reduce(raw);
    if (w.empty()) continue;
    int current = base;
    for (std::size_t k = 0; k < w.size(); ++k) {
      int next = k + 1 == w.size() ? base : uf.add();
      int letter = std::abs(w[k]);
      if (letter > free_rank) throw std::invalid_argument("letter beyond free rank");
      if (w[k] > 0)
        edges.push_back({current, letter, next});
      else
        edges.push_back({next, letter, current});
      current = next;
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out_edge, in_edge;
    for (const Edge& e : edges) {
      int s = uf.find(e.from), t = uf.find(e.to);
      auto [oi, ofresh] = out_edge.emplace(std::make_pair(s, e.letter), t);
      if (!ofresh && uf.find(oi->second) != t) {
        uf.unite(oi->second, t);
        changed = true;
        break;
      }
      auto [ii, ifresh] = in_edge.emplace(std::make_pair(t, e.letter), s);
      if (!ifresh && uf.find(ii->second) != s) {
        uf.unite(ii->second, s);
        changed = true;
        break;
      }
    }
  }

  // Renumber breadth-first from the base through both edge directions.
  std::map<std::pair<int, int>, int> out_edge, in_edge;
  for (const Edge& e : edges) {
    out_edge[{uf.find(e.from), e.letter}] = uf.find(e.to);
    in_edge[{uf.find(e.to), e.letter}] = uf.find(e.from);
  }
  std::map<int, int> label{{uf.find(base), 0}};
  std::vector<int> order{uf.find(base)};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int letter = 1; letter <= free_rank; ++letter) {
      for (auto* table : {&out_edge, &in_edge}) {
        auto it = table->find({order[k], letter});
        if (it != table->end() && label.emplace(it->second, static_cast<int>(order.size())).second)
          order.push_back(it->second);
      }
    }
  }
  SubgroupGraph graph;
  graph.free_rank = free_rank;
  graph.out.assign(order.size(), std::vector<int>(static_cast<std::size_t>(free_rank), -1));
  for (const auto& [key, target] : out_edge)
    graph.out[static_cast<std::size_t>(label.at(key.first))][static_cast<std::size_t>(key.second - 1)] =
        label.at(target);
  return graph;
}

bool same_subgroup(const SubgroupGraph& folded, const SchreierGraph& schreier) {
  if (folded.free_rank != schreier.free_rank) return false;
  if (folded.vertices() != schreier.index) return false;
  if (!folded.finite_index()) return false;
  // Both graphs are complete and connected, so following out-edges from the
  // base determines the unique based isomorphism if one exists.
  std::vector<int> map(static_cast<std::size_t>(folded.vertices()), -1);
  map[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int v = queue[k];
    int w = map[static_cast<std::size_t>(v)];
    for (int i = 0; i < folded.free_rank; ++i) {
      int vt = folded.out[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
      int wt = schreier.edges[static_cast<std::size_t>(w)][static_cast<std::size_t>(i)];
      int& m = map[static_cast<std::size_t>(vt)];
      if (m < 0) {
        m = wt;
        queue.push_back(vt);
      } else if (m != wt) {
        return false;
      }
    }
  }
  std::set<int> image(map.begin(), map.end());
  return !image.count(-1) && static_cast<int>(image.size()) == schreier.index;
}

// ---------------------------------------------------------------------------

BettiInput BettiInput::free_group(int k) {
  if (k < 0) throw std::invalid_argument("free group rank must be nonnegative");
  if (k == 0) {
    BettiInput trivial = finite_group(1);
    trivial.provenance = BettiProvenance::FreeGroup;
    trivial.parameter = 0;
    return trivial;
  }
  return {0.0, static_cast<double>(k - 1), BettiProvenance::FreeGroup, k};
}

BettiInput BettiInput::finite_group(long order) {
  if (order < 1) throw std::invalid_argument("group order must be positive");
  return {1.0 / static_cast<double>(order), 0.0, BettiProvenance::FiniteGroup, order};
}

BettiInput BettiInput::user_supplied(double beta0, double beta1) {
  return {beta0, beta1, BettiProvenance::UserSupplied, 0};
}

std::string BettiInput::provenance_label() const {
  switch (provenance) {
    case BettiProvenance::FreeGroup:
      return "free_group(" + std::to_string(parameter) + ")";
    case BettiProvenance::FiniteGroup:
      return "finite_group(" + std::to_string(parameter) + ")";
    case BettiProvenance::UserSupplied:
      break;
  }
  return "user_supplied (unvalidated)";
}

double betti_delta_formula(const BettiInput& input) { return input.beta1 - input.beta0 + 1.0; }

// ---------------------------------------------------------------------------

std::string CounterexampleReport::verdict_line() const {
  std::ostringstream os;
  os << "liminf delta = " << liminf_delta << (liminf_delta < delta_limit ? " < " : " >= ") << delta_limit
     << " = delta(limit)";
  return os.str();
}

CounterexampleReport counterexample_report() {
  const FreeWord u{1}, v{2}, u2{1, 1}, v2{2, 2}, uv{1, 2};
  CounterexampleReport r;
  r.variables = {
      {"X1", "Re u^2", u2, false}, {"X2", "Im u^2", u2, false}, {"Y1", "Re v^2", v2, false},
      {"Y2", "Im v^2", v2, false}, {"Z1", "Re uv", uv, false},  {"Z2", "Im uv", uv, false},
      {"W1", "(1/k) Re u", u, true}, {"W2", "(1/k) Im v", v, true},
  };
  // Re g and Im g generate the same algebra as g and g^-1, so each tuple
  // generates the group algebra of the subgroup spanned by its elements.
  for (const auto& var : r.variables) {
    auto& target = var.scaled ? r.sequence_elements : r.limit_elements;
    if (std::find(target.begin(), target.end(), var.element) == target.end()) target.push_back(var.element);
  }
  r.sequence_elements.insert(r.sequence_elements.begin(), r.limit_elements.begin(), r.limit_elements.end());

  r.sequence_subgroup = fold_subgroup(2, r.sequence_elements);
  r.limit_subgroup = fold_subgroup(2, r.limit_elements);

  const Permutation swap = Permutation::parse_cycles("(1 2)");
  const std::vector<Permutation> phi{swap, swap};
  r.kernel = schreier_rank(2, phi);
  r.kernel_generators_verified = std::all_of(r.kernel.subgroup_generators.begin(), r.kernel.subgroup_generators.end(),
                                             [&](const FreeWord& w) { return in_kernel(w, phi); });
  r.named_generators_in_kernel = in_kernel(u2, phi) && in_kernel(v2, phi) && in_kernel(uv, phi);
  r.limit_equals_kernel = same_subgroup(r.limit_subgroup, r.kernel);

  // The sequence subgroup is all of F_2 (index 1, rank 2); the limit one is
  // ker phi, free of rank 3. Free groups have delta equal to their rank.
  r.delta_sequence = r.sequence_subgroup.finite_index()
                         ? betti_delta_formula(BettiInput::free_group(r.sequence_subgroup.rank()))
                         : std::numeric_limits<double>::quiet_NaN();
  r.delta_limit = r.limit_equals_kernel ? betti_delta_formula(BettiInput::free_group(r.kernel.rank()))
                                        : std::numeric_limits<double>::quiet_NaN();
  r.liminf_delta = r.delta_sequence;

  // ||Re u|| = ||Im v|| = 1 (u, v unitaries with full circle spectrum), so ||W_j^(k)|| <= 1/k.
  for (int k : {1, 2, 10, 100, 1000}) r.norm_bounds.emplace_back(k, 1.0 / k);

  r.counterexample_holds = r.kernel_generators_verified && r.named_generators_in_kernel && r.limit_equals_kernel &&
                           r.sequence_subgroup.index() == 1 && r.liminf_delta < r.delta_limit;
  r.notes.push_back(
      "W2 is defined as (1/k) Im v, while the generated algebra is described as that of u^2, v^2, uv, (1/k) v; "
      "both readings give the same group elements, so the arithmetic is unaffected.");
  r.notes.push_back("The common value holds for delta, delta_0, delta^* and the star variant alike.");
  return r;
}

std::string CounterexampleReport::summary() const {
  std::ostringstream os;
  os << "Sequence in CF_2 (u, v free generators), k = 1, 2, ...\n";
  for (const auto& var : variables) os << "  " << var.name << " = " << var.definition << "\n";
  os << "Per k: elements {";
  for (std::size_t i = 0; i < sequence_elements.size(); ++i)
    os << (i ? ", " : "") << to_string(sequence_elements[i], 2);
  os << "} generate F_2 (index " << sequence_subgroup.index() << ", rank " << sequence_subgroup.rank()
     << "), delta = " << delta_sequence << "\n";
  os << "Limit: elements {";
  for (std::size_t i = 0; i < limit_elements.size(); ++i) os << (i ? ", " : "") << to_string(limit_elements[i], 2);
  os << "} generate ker(phi), phi(u) = phi(v) = 1 in Z/2: index " << kernel.index << ", rank " << kernel.rank()
     << ", delta = " << delta_limit << "\n";
  os << "Schreier generators: {";
  for (std::size_t i = 0; i < kernel.subgroup_generators.size(); ++i)
    os << (i ? ", " : "") << to_string(kernel.subgroup_generators[i], 2);
  os << "} all in kernel: " << (kernel_generators_verified ? "yes" : "no") << "\n";
  os << "Limit subgroup equals kernel: " << (limit_equals_kernel ? "yes" : "no") << "\n";
  os << "Norm bound ||W_j^(k)|| <= 1/k:";
  for (const auto& [k, bound] : norm_bounds) os << " k=" << k << ": " << bound << ";";
  os << "\n" << verdict_line() << "\n";
  for (const auto& note : notes) os << "Note: " << note << "\n";
  return os.str();
}

}  // namespace freedim
