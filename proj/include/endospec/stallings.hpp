#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/word.hpp"

namespace endospec {

struct IndexResult {
  bool finite = false;
  long long count = 0;  // subgroup index when finite, unused otherwise

  static IndexResult finite_index(long long m) { return {true, m}; }
  static IndexResult infinite() { return {false, 0}; }
  friend bool operator==(const IndexResult&, const IndexResult&) = default;
};

// A word over a subgroup basis alphabet (h1, h2, ...). Deliberately a
// distinct type from Word: it lives over a different alphabet, and mixing
// the two is always a bug.
class BasisWord {
 public:
  BasisWord() = default;
  explicit BasisWord(Word w) : word_(std::move(w)) {}
  static BasisWord identity(int basis_size) { return BasisWord(Word::identity(basis_size)); }

  const Word& as_word() const noexcept { return word_; }
  bool empty() const noexcept { return word_.empty(); }
  std::size_t length() const noexcept { return word_.length(); }

  std::vector<long long> exponent_vector() const { return word_.exponent_vector(); }

  std::string str() const {
    if (word_.empty()) return "1";
    std::string out;
    auto ls = word_.letters();
    std::size_t i = 0;
    while (i < ls.size()) {
      std::size_t j = i;
      while (j < ls.size() && ls[j] == ls[i]) ++j;
      long long run = static_cast<long long>(j - i) * ls[i].sign();
      if (!out.empty()) out += ' ';
      out += "h" + std::to_string(ls[i].generator() + 1);
      if (run != 1) out += "^" + std::to_string(run);
      i = j;
    }
    return out;
  }

  friend bool operator==(const BasisWord&, const BasisWord&) = default;

 private:
  Word word_;
};

namespace detail {

// Reduced concatenation helpers over plain letter vectors (basis alphabet).
inline std::vector<Letter> lbl_mul(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  std::vector<Letter> out = a;
  append_reduced(out, b);
  return out;
}

inline std::vector<Letter> lbl_inv(const std::vector<Letter>& a) {
  std::vector<Letter> out;
  out.reserve(a.size());
  for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(it->inverse());
  return out;
}

// Stallings folding over a union-find of vertices, processed as a FIFO
// worklist so the result is deterministic. Optionally tracks, on every edge,
// a word over the input-generator alphabet such that the label product along
// any loop at the base equals that loop's expression in the input
// generators. Tracking stays valid exactly as long as every fold preserves
// the first Betti number, i.e. as long as the input tuple is a free basis of
// the subgroup it generates.
struct LabeledFold {
  int rank;
  bool track;
  bool labels_valid = true;

  struct E {
    int src, dst, gen;
    std::vector<Letter> label;
    bool alive = true;
  };
  std::vector<E> edges;
  std::vector<int> uf;
  std::vector<std::vector<int>> out_ids, in_ids;
  std::deque<int> queue;

  explicit LabeledFold(int r, bool track_labels) : rank(r), track(track_labels) {
    add_vertex();  // base = 0
  }

  int add_vertex() {
    uf.push_back(static_cast<int>(uf.size()));
    out_ids.emplace_back();
    in_ids.emplace_back();
    return static_cast<int>(uf.size()) - 1;
  }

  int find(int v) {
    while (uf[static_cast<std::size_t>(v)] != v) {
      uf[static_cast<std::size_t>(v)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(v)])];
      v = uf[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void enqueue(int c) { queue.push_back(c); }

  void add_edge(int s, int d, int gen, std::vector<Letter> label) {
    int id = static_cast<int>(edges.size());
    edges.push_back(E{s, d, gen, std::move(label), true});
    out_ids[static_cast<std::size_t>(find(s))].push_back(id);
    in_ids[static_cast<std::size_t>(find(d))].push_back(id);
    enqueue(find(s));
    enqueue(find(d));
  }

  // Adds the loop at the base spelling `w`, labelled by input generator
  // `gen_index` on its first edge.
  void add_generator_loop(const Word& w, int gen_index) {
    int prev = 0;
    auto ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int next = (i + 1 == ls.size()) ? 0 : add_vertex();
      std::vector<Letter> label;
      if (track && i == 0) label.push_back(Letter(gen_index, ls[i].sign()));
      if (ls[i].sign() > 0)
        add_edge(prev, next, ls[i].generator(), std::move(label));
      else
        add_edge(next, prev, ls[i].generator(), std::move(label));
      prev = next;
    }
  }

  // Multiplies labels around class z so that all path products through z are
  // preserved: entering labels pick up c on the right, leaving labels pick up
  // c^-1 on the left, loops are conjugated.
  void gauge(int z, const std::vector<Letter>& c) {
    std::vector<Letter> cinv = lbl_inv(c);
    for (int id : out_ids[static_cast<std::size_t>(z)]) {
      E& e = edges[static_cast<std::size_t>(id)];
      if (!e.alive) continue;
      if (find(e.dst) == z)
        e.label = lbl_mul(lbl_mul(cinv, e.label), c);  // loop
      else
        e.label = lbl_mul(cinv, e.label);
    }
    for (int id : in_ids[static_cast<std::size_t>(z)]) {
      E& e = edges[static_cast<std::size_t>(id)];
      if (!e.alive || find(e.src) == z) continue;  // loops already handled
      e.label = lbl_mul(e.label, c);
    }
  }

  void splice(int into, int from) {
    auto& o1 = out_ids[static_cast<std::size_t>(into)];
    auto& o2 = out_ids[static_cast<std::size_t>(from)];
    o1.insert(o1.end(), o2.begin(), o2.end());
    o2.clear();
    auto& i1 = in_ids[static_cast<std::size_t>(into)];
    auto& i2 = in_ids[static_cast<std::size_t>(from)];
    i1.insert(i1.end(), i2.begin(), i2.end());
    i2.clear();
  }

  // Merges the classes of a and b; returns the surviving class.
  int merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    // Keep the base class (0) alive; otherwise keep the smaller id.
    if (b == find(0) || (a != find(0) && b < a)) std::swap(a, b);
    uf[static_cast<std::size_t>(b)] = a;
    splice(a, b);
    enqueue(a);
    for (int id : out_ids[static_cast<std::size_t>(a)]) {
      const E& e = edges[static_cast<std::size_t>(id)];
      if (e.alive) enqueue(find(e.dst));
    }
    for (int id : in_ids[static_cast<std::size_t>(a)]) {
      const E& e = edges[static_cast<std::size_t>(id)];
      if (e.alive) enqueue(find(e.src));
    }
    return a;
  }

  // Resolves one duplicate pair of parallel-direction edges at class c.
  // e1 and e2 share the direction (out/in) and generator. Returns true if a
  // merge happened (class structure changed).
  bool resolve(int e1_id, int e2_id, bool outgoing) {
    E& e1 = edges[static_cast<std::size_t>(e1_id)];
    E& e2 = edges[static_cast<std::size_t>(e2_id)];
    int a = outgoing ? find(e1.dst) : find(e1.src);
    int b = outgoing ? find(e2.dst) : find(e2.src);
    if (a == b) {
      // Parallel edges: identifying them drops the rank; any label conflict
      // means the input tuple was not a free basis.
      if (track && labels_valid && e1.label != e2.label) labels_valid = false;
      e2.alive = false;
      return false;
    }
    if (track && labels_valid) {
      int base_class = find(0);
      if (outgoing) {
        if (b != base_class)
          gauge(b, lbl_mul(lbl_inv(e2.label), e1.label));
        else
          gauge(a, lbl_mul(lbl_inv(e1.label), e2.label));
      } else {
        if (b != base_class)
          gauge(b, lbl_mul(e2.label, lbl_inv(e1.label)));
        else
          gauge(a, lbl_mul(e1.label, lbl_inv(e2.label)));
      }
      if (e1.label != e2.label) throw InternalError("fold: gauge failed to equalize labels");
    }
    e2.alive = false;
    merge(a, b);
    return true;
  }

  // Scans class c for duplicate (generator, direction) pairs until stable.
  void scan(int c) {
    for (;;) {
      c = find(c);
      bool changed = false;
      for (int pass = 0; pass < 2 && !changed; ++pass) {
        bool outgoing = pass == 0;
        auto& ids = outgoing ? out_ids[static_cast<std::size_t>(c)] : in_ids[static_cast<std::size_t>(c)];
        // Compact dead edges on the way through.
        std::vector<int> first(static_cast<std::size_t>(rank), -1);
        std::vector<int> keep;
        keep.reserve(ids.size());
        for (int id : ids) {
          const E& e = edges[static_cast<std::size_t>(id)];
          if (!e.alive) continue;
          keep.push_back(id);
          int& slot = first[static_cast<std::size_t>(e.gen)];
          if (slot == -1) {
            slot = id;
            continue;
          }
          resolve(slot, id, outgoing);
          changed = true;
          break;
        }
        if (!changed) ids = std::move(keep);
      }
      if (!changed) return;
    }
  }

  void fold_all() {
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      if (find(c) != c) continue;
      scan(c);
    }
  }
};

}  // namespace detail

// Folded, based, edge-labelled graph of a finitely generated subgroup
// H <= F_r: base-to-base reduced paths spell exactly the elements of H.
// Immutable after construction; vertices are canonically numbered by BFS
// from the base (vertex 0), so equal subgroups built in any way compare
// equal.
class SubgroupGraph {
 public:
  // Stallings construction: wedge of generator loops, folded to completion,
  // trimmed to the based core. When the (nonempty) generators happen to form
  // a free basis of the subgroup they generate, they become the graph's
  // preferred basis, in the given order; otherwise the deterministic Schreier
  // basis of the BFS spanning tree is used.
  static SubgroupGraph from_generators(int rank, const std::vector<Word>& generators,
                                       bool track_user_basis = true) {
    std::vector<Word> gens;
    for (const Word& w : generators) {
      if (w.rank() != rank) throw RankMismatchError("subgroup generator over wrong alphabet");
      if (!w.empty()) gens.push_back(w);
    }
    detail::LabeledFold fold(rank, track_user_basis && !gens.empty());
    for (std::size_t i = 0; i < gens.size(); ++i)
      fold.add_generator_loop(gens[i], static_cast<int>(i));
    fold.fold_all();

    // Extract the folded quotient.
    std::vector<int> class_index(fold.uf.size(), -1);
    int v_count = 0;
    for (std::size_t v = 0; v < fold.uf.size(); ++v)
      if (fold.find(static_cast<int>(v)) == static_cast<int>(v))
        class_index[v] = v_count++;
    std::vector<int> out(static_cast<std::size_t>(v_count) * static_cast<std::size_t>(rank), -1);
    std::vector<int> in(out.size(), -1);
    std::vector<std::vector<Letter>> labels(out.size());
    for (const auto& e : fold.edges) {
      if (!e.alive) continue;
      int s = class_index[static_cast<std::size_t>(fold.find(e.src))];
      int d = class_index[static_cast<std::size_t>(fold.find(e.dst))];
      std::size_t slot = static_cast<std::size_t>(s) * static_cast<std::size_t>(rank) +
                         static_cast<std::size_t>(e.gen);
      if (out[slot] != -1 || in[static_cast<std::size_t>(d) * static_cast<std::size_t>(rank) +
                               static_cast<std::size_t>(e.gen)] != -1)
        throw InternalError("fold: result not folded");
      out[slot] = d;
      in[static_cast<std::size_t>(d) * static_cast<std::size_t>(rank) +
         static_cast<std::size_t>(e.gen)] = s;
      labels[slot] = e.label;
    }
    int base = class_index[static_cast<std::size_t>(fold.find(0))];
    return SubgroupGraph(rank, v_count, base, std::move(out), std::move(in), std::move(labels),
                         fold.track && fold.labels_valid, gens);
  }

  // Direct construction from an explicit folded covering/core graph given by
  // its positive-edge map (vertex, generator) -> vertex, -1 for absent.
  static SubgroupGraph from_adjacency(int rank, int vertices, int base, std::vector<int> out) {
    std::vector<int> in(out.size(), -1);
    for (int v = 0; v < vertices; ++v)
      for (int g = 0; g < rank; ++g) {
        int w = out[static_cast<std::size_t>(v) * static_cast<std::size_t>(rank) +
                    static_cast<std::size_t>(g)];
        if (w == -1) continue;
        std::size_t slot = static_cast<std::size_t>(w) * static_cast<std::size_t>(rank) +
                           static_cast<std::size_t>(g);
        if (in[slot] != -1) throw InternalError("from_adjacency: not folded");
        in[slot] = v;
      }
    std::vector<std::vector<Letter>> labels(out.size());
    return SubgroupGraph(rank, vertices, base, std::move(out), std::move(in), std::move(labels),
                         false, {});
  }

  int rank() const noexcept { return rank_; }
  int vertex_count() const noexcept { return vertices_; }
  static constexpr int base_vertex = 0;

  // Number of positive edges.
  int edge_count() const noexcept { return edge_count_; }

  // Rank of H: first Betti number E - V + 1 of the core graph.
  int group_rank() const noexcept { return static_cast<int>(basis_.size()); }

  int step(int v, Letter l) const {
    std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(rank_) +
                       static_cast<std::size_t>(l.generator());
    return l.sign() > 0 ? out_[slot] : in_[slot];
  }

  bool contains(const Word& w) const {
    if (w.rank() != rank_) throw RankMismatchError("contains: word over wrong alphabet");
    int v = base_vertex;
    for (Letter l : w.letters()) {
      v = step(v, l);
      if (v == -1) return false;
    }
    return v == base_vertex;
  }

  IndexResult index() const {
    for (int slot : out_)
      if (slot == -1) return IndexResult::infinite();
    // Folded and fully outgoing implies fully incoming as well.
    return IndexResult::finite_index(vertices_);
  }

  // The effective ordered basis: the caller-supplied generators when they
  // were recognized as a free basis, else the Schreier basis.
  const std::vector<Word>& basis() const noexcept { return basis_; }
  bool has_user_basis() const noexcept { return user_basis_; }

  // Basis read off the BFS spanning tree, one word per non-tree edge.
  std::vector<Word> schreier_basis() const {
    std::vector<Word> words;
    for (int v = 0; v < vertices_; ++v)
      for (int g = 0; g < rank_; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(rank_) +
                           static_cast<std::size_t>(g);
        if (out_[slot] == -1 || tree_edge_[slot]) continue;
        words.push_back(schreier_word(v, g, out_[slot]));
      }
    return words;
  }

  // Coset representatives (tree path per vertex); identity first.
  std::vector<Word> transversal() const {
    if (!index().finite)
      throw InfiniteIndexError("transversal: subgroup has infinite index");
    std::vector<Word> reps;
    reps.reserve(static_cast<std::size_t>(vertices_));
    for (int v = 0; v < vertices_; ++v) reps.push_back(tree_path(v));
    return reps;
  }

  // Reidemeister-Schreier rewriting of a member of H over the effective
  // basis: substituting the basis words back in recovers w exactly.
  BasisWord rewrite(const Word& w) const {
    if (w.rank() != rank_) throw RankMismatchError("rewrite: word over wrong alphabet");
    std::vector<Letter> acc;
    int v = base_vertex;
    for (Letter l : w.letters()) {
      int next = step(v, l);
      if (next == -1) throw NotInSubgroupError("rewrite: word leaves the subgroup graph");
      std::size_t slot = l.sign() > 0
                             ? static_cast<std::size_t>(v) * static_cast<std::size_t>(rank_) +
                                   static_cast<std::size_t>(l.generator())
                             : static_cast<std::size_t>(next) * static_cast<std::size_t>(rank_) +
                                   static_cast<std::size_t>(l.generator());
      const std::vector<Letter>& lbl = labels_[slot];
      if (!lbl.empty()) {
        if (l.sign() > 0) {
          detail::append_reduced(acc, lbl);
        } else {
          for (std::size_t i = lbl.size(); i-- > 0;) {
            Letter inv = lbl[i].inverse();
            if (!acc.empty() && acc.back().cancels(inv))
              acc.pop_back();
            else
              acc.push_back(inv);
          }
        }
      }
      v = next;
    }
    if (v != base_vertex) throw NotInSubgroupError("rewrite: word ends off the base vertex");
    return BasisWord(Word::reduced(group_rank(), acc));
  }

  // Substitutes the effective basis into a basis word.
  Word expand(const BasisWord& bw) const {
    Word acc = Word::identity(rank_);
    for (Letter l : bw.as_word().letters()) {
      const Word& b = basis_[static_cast<std::size_t>(l.generator())];
      acc = multiply(acc, l.sign() > 0 ? b : b.inverse());
    }
    return acc;
  }

  // Graphs compare equal iff they are identical as based labelled graphs
  // (canonical numbering makes this decide based isomorphism).
  friend bool operator==(const SubgroupGraph& a, const SubgroupGraph& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_ && a.out_ == b.out_;
  }

 private:
  SubgroupGraph(int rank, int vertices, int base, std::vector<int> out, std::vector<int> in,
                std::vector<std::vector<Letter>> labels, bool user_labels,
                std::vector<Word> user_words)
      : rank_(rank) {
    trim(vertices, base, out, in, labels);
    canonicalize(vertices, base, out, in, labels);
    vertices_ = vertices;
    out_ = std::move(out);
    in_ = std::move(in);
    edge_count_ = 0;
    for (int slot : out_)
      if (slot != -1) ++edge_count_;
    build_tree();
    int betti = edge_count_ - vertices_ + 1;
    user_basis_ = user_labels && static_cast<int>(user_words.size()) == betti;
    if (user_basis_) {
      labels_ = std::move(labels);
      basis_ = std::move(user_words);
    } else {
      assign_schreier_labels();
    }
  }

  // Iteratively removes non-base vertices of total degree <= 1: what remains
  // is the union of reduced base-to-base paths.
  void trim(int& vertices, int& base, std::vector<int>& out, std::vector<int>& in,
            std::vector<std::vector<Letter>>& labels) const {
    const int r = rank_;
    std::vector<int> degree(static_cast<std::size_t>(vertices), 0);
    for (int v = 0; v < vertices; ++v)
      for (int g = 0; g < r; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(r) +
                           static_cast<std::size_t>(g);
        if (out[slot] != -1) {
          ++degree[static_cast<std::size_t>(v)];
          ++degree[static_cast<std::size_t>(out[slot])];
        }
      }
    std::deque<int> dead;
    std::vector<char> removed(static_cast<std::size_t>(vertices), 0);
    for (int v = 0; v < vertices; ++v)
      if (v != base && degree[static_cast<std::size_t>(v)] <= 1) dead.push_back(v);
    while (!dead.empty()) {
      int v = dead.front();
      dead.pop_front();
      if (removed[static_cast<std::size_t>(v)]) continue;
      removed[static_cast<std::size_t>(v)] = 1;
      for (int g = 0; g < r; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(r) +
                           static_cast<std::size_t>(g);
        if (out[slot] != -1) {
          int w = out[slot];
          in[static_cast<std::size_t>(w) * static_cast<std::size_t>(r) +
             static_cast<std::size_t>(g)] = -1;
          out[slot] = -1;
          labels[slot].clear();
          if (w != base && --degree[static_cast<std::size_t>(w)] <= 1) dead.push_back(w);
        }
        if (in[slot] != -1) {
          int u = in[slot];
          std::size_t uslot = static_cast<std::size_t>(u) * static_cast<std::size_t>(r) +
                              static_cast<std::size_t>(g);
          out[uslot] = -1;
          labels[uslot].clear();
          in[slot] = -1;
          if (u != base && --degree[static_cast<std::size_t>(u)] <= 1) dead.push_back(u);
        }
      }
    }
    // Compact the vertex numbering.
    std::vector<int> remap(static_cast<std::size_t>(vertices), -1);
    int next = 0;
    for (int v = 0; v < vertices; ++v)
      if (!removed[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = next++;
    if (next == vertices) return;
    std::vector<int> new_out(static_cast<std::size_t>(next) * static_cast<std::size_t>(r), -1);
    std::vector<int> new_in(new_out.size(), -1);
    std::vector<std::vector<Letter>> new_labels(new_out.size());
    for (int v = 0; v < vertices; ++v) {
      if (removed[static_cast<std::size_t>(v)]) continue;
      for (int g = 0; g < r; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(r) +
                           static_cast<std::size_t>(g);
        std::size_t nslot = static_cast<std::size_t>(remap[static_cast<std::size_t>(v)]) *
                                static_cast<std::size_t>(r) +
                            static_cast<std::size_t>(g);
        if (out[slot] != -1) {
          new_out[nslot] = remap[static_cast<std::size_t>(out[slot])];
          new_labels[nslot] = std::move(labels[slot]);
        }
        if (in[slot] != -1) new_in[nslot] = remap[static_cast<std::size_t>(in[slot])];
      }
    }
    vertices = next;
    base = remap[static_cast<std::size_t>(base)];
    out = std::move(new_out);
    in = std::move(new_in);
    labels = std::move(new_labels);
  }

  // Renumbers vertices by BFS from the base, edges visited in order
  // (generator index, + before -). The base becomes vertex 0.
  void canonicalize(int vertices, int base, std::vector<int>& out, std::vector<int>& in,
                    std::vector<std::vector<Letter>>& labels) const {
    const int r = rank_;
    std::vector<int> order(static_cast<std::size_t>(vertices), -1);
    std::deque<int> bfs{base};
    order[static_cast<std::size_t>(base)] = 0;
    int next = 1;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      for (int g = 0; g < r; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(r) +
                           static_cast<std::size_t>(g);
        int w = out[slot];
        if (w != -1 && order[static_cast<std::size_t>(w)] == -1) {
          order[static_cast<std::size_t>(w)] = next++;
          bfs.push_back(w);
        }
        int u = in[slot];
        if (u != -1 && order[static_cast<std::size_t>(u)] == -1) {
          order[static_cast<std::size_t>(u)] = next++;
          bfs.push_back(u);
        }
      }
    }
    if (next != vertices) throw InternalError("canonicalize: graph not connected");
    std::vector<int> new_out(out.size(), -1);
    std::vector<int> new_in(in.size(), -1);
    std::vector<std::vector<Letter>> new_labels(labels.size());
    for (int v = 0; v < vertices; ++v)
      for (int g = 0; g < r; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(r) +
                           static_cast<std::size_t>(g);
        std::size_t nslot = static_cast<std::size_t>(order[static_cast<std::size_t>(v)]) *
                                static_cast<std::size_t>(r) +
                            static_cast<std::size_t>(g);
        if (out[slot] != -1) {
          new_out[nslot] = order[static_cast<std::size_t>(out[slot])];
          new_labels[nslot] = std::move(labels[slot]);
        }
        if (in[slot] != -1) new_in[nslot] = order[static_cast<std::size_t>(in[slot])];
      }
    out = std::move(new_out);
    in = std::move(new_in);
    labels = std::move(new_labels);
  }

  void build_tree() {
    tree_edge_.assign(out_.size(), 0);
    tree_parent_.assign(static_cast<std::size_t>(vertices_), {-1, Letter(0, 1)});
    std::vector<char> seen(static_cast<std::size_t>(vertices_), 0);
    seen[0] = 1;
    std::deque<int> bfs{0};
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      for (int g = 0; g < rank_; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(rank_) +
                           static_cast<std::size_t>(g);
        int w = out_[slot];
        if (w != -1 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          tree_edge_[slot] = 1;
          tree_parent_[static_cast<std::size_t>(w)] = {v, Letter(g, +1)};
          bfs.push_back(w);
        }
        int u = in_[slot];
        if (u != -1 && !seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          tree_edge_[static_cast<std::size_t>(u) * static_cast<std::size_t>(rank_) +
                     static_cast<std::size_t>(g)] = 1;
          tree_parent_[static_cast<std::size_t>(u)] = {v, Letter(g, -1)};
          bfs.push_back(u);
        }
      }
    }
    // Basis slots: non-tree positive edges in canonical scan order.
    basis_index_.assign(out_.size(), -1);
    int idx = 0;
    for (int v = 0; v < vertices_; ++v)
      for (int g = 0; g < rank_; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(rank_) +
                           static_cast<std::size_t>(g);
        if (out_[slot] != -1 && !tree_edge_[slot]) basis_index_[slot] = idx++;
      }
    basis_count_ = idx;
  }

  Word tree_path(int v) const {
    std::vector<Letter> letters;
    while (v != 0) {
      auto [parent, l] = tree_parent_[static_cast<std::size_t>(v)];
      letters.push_back(l);
      v = parent;
    }
    std::reverse(letters.begin(), letters.end());
    return Word::reduced(rank_, letters);
  }

  Word schreier_word(int v, int g, int w) const {
    Word head = tree_path(v);
    Word tail = tree_path(w);
    return multiply(multiply(head, Word::generator(rank_, g)), tail.inverse());
  }

  void assign_schreier_labels() {
    labels_.assign(out_.size(), {});
    basis_.clear();
    basis_.reserve(static_cast<std::size_t>(basis_count_));
    for (int v = 0; v < vertices_; ++v)
      for (int g = 0; g < rank_; ++g) {
        std::size_t slot = static_cast<std::size_t>(v) * static_cast<std::size_t>(rank_) +
                           static_cast<std::size_t>(g);
        if (basis_index_[slot] == -1) continue;
        labels_[slot] = {Letter(basis_index_[slot], +1)};
        basis_.push_back(schreier_word(v, g, out_[slot]));
      }
    user_basis_ = false;
  }

  int rank_ = 0;
  int vertices_ = 0;
  int edge_count_ = 0;
  int basis_count_ = 0;
  std::vector<int> out_, in_;
  std::vector<char> tree_edge_;
  std::vector<std::pair<int, Letter>> tree_parent_;
  std::vector<int> basis_index_;
  std::vector<std::vector<Letter>> labels_;
  std::vector<Word> basis_;
  bool user_basis_ = false;
};

inline SubgroupGraph build_graph(int rank, const std::vector<Word>& generators) {
  return SubgroupGraph::from_generators(rank, generators);
}

// True iff phi(H) <= H; correct because phi(H) is generated by the images of
// any generating set of H.
inline bool is_invariant(const SubgroupGraph& g, const Endomorphism& phi) {
  if (phi.rank() != g.rank())
    throw RankMismatchError("is_invariant: rank mismatch");
  for (const Word& h : g.basis())
    if (!g.contains(apply(phi, h))) return false;
  return true;
}

// phi restricted to H, expressed over H's effective basis alphabet.
inline Endomorphism restriction_endomorphism(const Endomorphism& phi, const SubgroupGraph& g) {
  if (phi.rank() != g.rank())
    throw RankMismatchError("restriction_endomorphism: rank mismatch");
  std::vector<Word> images;
  images.reserve(g.basis().size());
  for (const Word& h : g.basis()) {
    try {
      images.push_back(g.rewrite(apply(phi, h)).as_word());
    } catch (const NotInSubgroupError&) {
      throw NotInvariantError("restriction: subgroup is not invariant under the endomorphism");
    }
  }
  return Endomorphism(g.group_rank(), std::move(images));
}

}  // namespace endospec
