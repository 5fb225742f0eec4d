#include "orbdiam/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace orbdiam {

namespace {

constexpr int kMaxN = 16;

struct Packing {
  int bits;
  int per;
  std::uint64_t mask;
  explicit Packing(std::uint32_t q) : bits(element_bits(q)), per(64 / element_bits(q)) {
    mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
  }
  std::uint32_t get(const std::uint64_t* words, std::size_t idx) const {
    return static_cast<std::uint32_t>((words[idx / per] >> (64 - bits * (static_cast<int>(idx % per) + 1))) & mask);
  }
  void put(std::uint64_t* words, std::size_t idx, std::uint32_t v) const {
    words[idx / per] |= static_cast<std::uint64_t>(v) << (64 - bits * (static_cast<int>(idx % per) + 1));
  }
};

// RREF of a rows x n array in place; returns the rank (nonzero rows first).
int rref_raw(const Field& F, std::uint32_t* a, int rows, int n) {
  int r = 0;
  for (int c = 0; c < n && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i * n + c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[r * n + j]);
    Elem inv = F.inv(Elem{a[r * n + c]});
    if (inv != F.one())
      for (int j = c; j < n; ++j) a[r * n + j] = F.mul(Elem{a[r * n + j]}, inv).value;
    for (int i = 0; i < rows; ++i) {
      if (i == r || !a[i * n + c]) continue;
      Elem f = F.neg(Elem{a[i * n + c]});
      for (int j = c; j < n; ++j)
        if (a[r * n + j]) a[i * n + j] = F.add(Elem{a[i * n + j]}, F.mul(f, Elem{a[r * n + j]})).value;
    }
    ++r;
  }
  return r;
}

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::uint64_t hash_words(const std::uint64_t* w, std::size_t n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < n; ++i) h = mix(h ^ w[i]) + i;
  return h;
}

}  // namespace

// ---------------------------------------------------------------- SubspaceModel

SubspaceModel::SubspaceModel(const VectorSpaceSpec& V, int k, std::vector<GroupElement> gens, bool both_dims)
    : V_(V), gens_(std::move(gens)) {
  if (k < 0 || k > V.n) throw std::invalid_argument("SubspaceModel: bad dimension");
  bool flips = std::any_of(gens_.begin(), gens_.end(), [](const GroupElement& g) { return g.flip; });
  width_ = code_words(k, V.n, V.field.order());
  if (flips || both_dims) width_ = std::max(width_, code_words(V.n - k, V.n, V.field.order()));
  for (auto& g : gens_)
    if (g.mat.rows() != V.n || g.mat.cols() != V.n) throw std::invalid_argument("SubspaceModel: generator size");
}

std::vector<std::uint64_t> SubspaceModel::encode(const Subspace& A) const {
  auto c = A.encode().words;
  if (c.size() > width_) throw std::invalid_argument("SubspaceModel: subspace dimension not in this model");
  c.resize(width_, 0);
  return c;
}

Subspace SubspaceModel::decode(const std::uint64_t* code) const {
  int k = static_cast<int>(code[0]);
  std::size_t w = code_words(k, V_.n, V_.field.order());
  return Subspace::decode(V_, SubspaceCode{std::vector<std::uint64_t>(code, code + w)});
}

std::string SubspaceModel::describe(const std::uint64_t* code) const { return decode(code).str(); }

void SubspaceModel::apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const {
  apply_element(in, gens_[gen], out);
}

void SubspaceModel::apply_element(const std::uint64_t* in, const GroupElement& g, std::uint64_t* out) const {
  const Field& F = V_.field;
  const int n = V_.n;
  Packing pk(F.order());
  std::uint32_t a[kMaxN * kMaxN];
  std::uint32_t b[kMaxN * kMaxN];
  int k = static_cast<int>(in[0]);
  for (int i = 0; i < k * n; ++i) a[i] = pk.get(in + 1, static_cast<std::size_t>(i));
  if (g.flip) {
    Matrix m(k, n);
    for (int i = 0; i < k * n; ++i) m.at(i / n, i % n) = Elem{a[i]};
    Matrix ns = k ? nullspace(F, m) : Matrix::identity(n);
    k = ns.rows();
    for (int i = 0; i < k * n; ++i) a[i] = ns.at(i / n, i % n).value;
  }
  if (g.frob)
    for (int i = 0; i < k * n; ++i) a[i] = F.frobenius(Elem{a[i]}, g.frob).value;
  const auto& M = g.mat.data();
  for (int r = 0; r < k; ++r) {
    std::uint32_t* br = b + r * n;
    std::fill(br, br + n, 0u);
    for (int j = 0; j < n; ++j) {
      Elem c{a[r * n + j]};
      if (!c.value) continue;
      const Elem* mj = M.data() + static_cast<std::size_t>(j) * n;
      if (c == F.one()) {
        for (int col = 0; col < n; ++col)
          if (mj[col].value) br[col] = F.add(Elem{br[col]}, mj[col]).value;
      } else {
        for (int col = 0; col < n; ++col)
          if (mj[col].value) br[col] = F.add(Elem{br[col]}, F.mul(c, mj[col])).value;
      }
    }
  }
  rref_raw(F, b, k, n);
  std::fill(out, out + width_, 0ULL);
  out[0] = static_cast<std::uint64_t>(k);
  for (int i = 0; i < k * n; ++i)
    if (b[i]) pk.put(out + 1, static_cast<std::size_t>(i), b[i]);
}

// ---------------------------------------------------------------- PairModel

PairModel::PairModel(const VectorSpaceSpec& V, int t, std::vector<GroupElement> gens)
    : inner_(V, t, std::move(gens), true) {
  half_ = inner_.width();
}

std::vector<std::uint64_t> PairModel::encode(const Subspace& U, const Subspace& W) const {
  auto a = U.encode().words, b = W.encode().words;
  a.resize(half_, 0);
  b.resize(half_, 0);
  if (b < a) std::swap(a, b);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::pair<Subspace, Subspace> PairModel::decode(const std::uint64_t* code) const {
  const VectorSpaceSpec& V = inner_.space();
  auto dec = [&](const std::uint64_t* c) {
    std::size_t w = code_words(static_cast<int>(c[0]), V.n, V.field.order());
    return Subspace::decode(V, SubspaceCode{std::vector<std::uint64_t>(c, c + w)});
  };
  return {dec(code), dec(code + half_)};
}

std::string PairModel::describe(const std::uint64_t* code) const {
  auto [u, w] = decode(code);
  return "{" + u.str() + ", " + w.str() + "}";
}

void PairModel::apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const {
  std::uint64_t a[64], b[64];
  inner_.apply(in, gen, a);
  inner_.apply(in + half_, gen, b);
  if (std::lexicographical_compare(b, b + half_, a, a + half_)) std::swap(a, b);
  std::copy(a, a + half_, out);
  std::copy(b, b + half_, out + half_);
}

// ---------------------------------------------------------------- FormModel

FormModel::FormModel(const ClassicalSpace& symplectic, std::vector<GroupElement> gens) : S_(symplectic) {
  if (S_.kind != FormKind::symplectic) throw std::invalid_argument("FormModel: needs a symplectic space");
  Packing pk(S_.field().order());
  width_ = (static_cast<std::size_t>(S_.n()) + pk.per - 1) / pk.per;
  for (auto& g : gens) {
    if (g.flip) throw std::invalid_argument("FormModel: graph flip does not act on forms");
    GroupElement gi = inverse(S_.field(), g);
    gi.frob = g.frob;  // keep φ for the outer twist
    inv_.push_back(std::move(gi));
  }
}

std::vector<std::uint64_t> FormModel::encode(const Vec& diag) const {
  Packing pk(S_.field().order());
  std::vector<std::uint64_t> c(width_, 0);
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i].value) pk.put(c.data(), i, diag[i].value);
  return c;
}

Vec FormModel::decode(const std::uint64_t* code) const {
  Packing pk(S_.field().order());
  Vec d(S_.n());
  for (int i = 0; i < S_.n(); ++i) d[i] = Elem{pk.get(code, static_cast<std::size_t>(i))};
  return d;
}

std::string FormModel::describe(const std::uint64_t* code) const {
  std::ostringstream os;
  os << "Q[";
  Vec d = decode(code);
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? " " : "") << d[i].value;
  os << "]";
  return os.str();
}

void FormModel::apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const {
  const Field& F = S_.field();
  const int n = S_.n();
  Vec a = decode(in);
  const GroupElement& gi = inv_[gen];
  Packing pk(F.order());
  std::fill(out, out + width_, 0ULL);
  for (int i = 0; i < n; ++i) {
    auto w = gi.mat.row(i);
    Elem val = F.zero();
    for (int j = 0; j < n; ++j) {
      if (!w[j].value) continue;
      val = F.add(val, F.mul(a[j], F.mul(w[j], w[j])));
      for (int l = j + 1; l < n; ++l)
        if (w[l].value && S_.gram.at(j, l).value) val = F.add(val, F.mul(S_.gram.at(j, l), F.mul(w[j], w[l])));
    }
    if (gi.frob) val = F.frobenius(val, gi.frob);
    if (val.value) pk.put(out, static_cast<std::size_t>(i), val.value);
  }
}

// ---------------------------------------------------------------- Orbit

std::optional<std::uint32_t> Orbit::find(const std::uint64_t* code) const {
  if (slots_.empty()) return std::nullopt;
  std::size_t mask = slots_.size() - 1;
  for (std::size_t h = hash_words(code, width_) & mask;; h = (h + 1) & mask) {
    std::uint32_t s = slots_[h];
    if (s == none) return std::nullopt;
    if (std::equal(code, code + width_, this->code(s))) return s;
  }
}

void Orbit::build_index() {
  std::size_t cap = 16;
  while (cap < 2 * size() + 2) cap <<= 1;
  slots_.assign(cap, none);
  for (std::uint32_t i = 0; i < size(); ++i) {
    std::size_t h = hash_words(code(i), width_) & (cap - 1);
    while (slots_[h] != none) h = (h + 1) & (cap - 1);
    slots_[h] = i;
  }
}

void Orbit::build_tree() {
  std::size_t N = codes_.size() / width_;
  parent_.assign(N, none);
  parent_gen_.assign(N, none);
  depth_.assign(N, 0);
  if (!N) return;
  parent_[0] = 0;
  std::vector<std::uint32_t> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint32_t x = queue[qi];
    for (std::size_t s = 0; s < perm_.size(); ++s) {
      std::uint32_t y = perm_[s][x];
      if (parent_[y] != none) continue;
      parent_[y] = x;
      parent_gen_[y] = static_cast<std::uint32_t>(s);
      depth_[y] = depth_[x] + 1;
      queue.push_back(y);
    }
  }
  if (queue.size() != N) throw std::logic_error("orbit: permutations do not form a single orbit");
  inv_perm_.assign(perm_.size(), std::vector<std::uint32_t>(N));
  for (std::size_t s = 0; s < perm_.size(); ++s)
    for (std::uint32_t i = 0; i < N; ++i) inv_perm_[s][perm_[s][i]] = i;
}

std::vector<std::uint32_t> Orbit::word(std::uint32_t i) const {
  std::vector<std::uint32_t> w;
  for (std::uint32_t j = i; j != 0; j = parent_[j]) w.push_back(parent_gen_[j]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::uint32_t Orbit::apply_transversal(std::uint32_t x, std::uint32_t i) const {
  for (std::uint32_t s : word(i)) x = perm_[s][x];
  return x;
}

std::uint32_t Orbit::apply_transversal_inverse(std::uint32_t x, std::uint32_t i) const {
  for (std::uint32_t j = i; j != 0; j = parent_[j]) x = inv_perm_[parent_gen_[j]][x];
  return x;
}

std::vector<std::uint32_t> Orbit::schreier_perm(std::uint32_t x, std::uint32_t s) const {
  std::vector<std::uint32_t> img(size());
  std::iota(img.begin(), img.end(), 0u);
  auto step = [&](const std::vector<std::uint32_t>& p) {
    for (auto& v : img) v = p[v];
  };
  for (std::uint32_t g : word(x)) step(perm_[g]);
  step(perm_[s]);
  for (std::uint32_t j = perm_[s][x]; j != 0; j = parent_[j]) step(inv_perm_[parent_gen_[j]]);
  return img;
}

Orbit orbit_bfs(const PointModel& model, const std::vector<std::uint64_t>& base, std::uint64_t budget) {
  Orbit o;
  o.width_ = model.width();
  if (base.size() != o.width_) throw std::invalid_argument("orbit_bfs: base code width mismatch");
  std::size_t G = model.num_gens();
  o.perm_.assign(G, {});
  o.codes_ = base;
  o.slots_.assign(1024, Orbit::none);
  auto insert_slot = [&](std::uint32_t idx) {
    std::size_t mask = o.slots_.size() - 1;
    std::size_t h = hash_words(o.code(idx), o.width_) & mask;
    while (o.slots_[h] != Orbit::none) h = (h + 1) & mask;
    o.slots_[h] = idx;
  };
  insert_slot(0);
  std::vector<std::uint64_t> buf(o.width_);
  std::size_t count = 1;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t s = 0; s < G; ++s) {
      model.apply(o.codes_.data() + i * o.width_, s, buf.data());
      std::uint32_t j;
      if (auto f = o.find(buf.data())) {
        j = *f;
      } else {
        if (count >= budget) throw BudgetExceeded("orbit exceeds point budget", count + 1);
        j = static_cast<std::uint32_t>(count++);
        o.codes_.insert(o.codes_.end(), buf.begin(), buf.end());
        if (2 * count > o.slots_.size()) {
          o.parent_.resize(count);  // size() is used by build_index
          o.build_index();
        } else {
          insert_slot(j);
        }
      }
      o.perm_[s].push_back(j);
    }
  }
  o.build_tree();
  o.build_index();
  return o;
}

Orbit orbit_from_parts(std::size_t width, std::vector<std::uint64_t> codes, std::vector<std::vector<std::uint32_t>> perms) {
  Orbit o;
  o.width_ = width;
  o.codes_ = std::move(codes);
  o.perm_ = std::move(perms);
  std::size_t N = o.codes_.size() / width;
  for (auto& p : o.perm_)
    if (p.size() != N) throw std::invalid_argument("orbit_from_parts: permutation length mismatch");
  o.build_tree();
  o.build_index();
  return o;
}

// ---------------------------------------------------------------- cells

namespace {

struct UnionFind {
  std::vector<std::uint32_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (p[x] != x) {
      p[x] = p[p[x]];
      x = p[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    p[a] = b;
    return true;
  }
};

}  // namespace

Cells cells_from_labels(const std::vector<std::uint32_t>& labels) {
  Cells c;
  c.cell_of.assign(labels.size(), 0);
  std::unordered_map<std::uint32_t, std::uint32_t> id;
  for (std::uint32_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = id.emplace(labels[i], static_cast<std::uint32_t>(c.rep.size()));
    if (fresh) {
      c.rep.push_back(i);
      c.size.push_back(0);
    }
    c.cell_of[i] = it->second;
    c.size[it->second]++;
  }
  return c;
}

Cells stabilizer_cells(const Orbit& orbit, const SamplingOptions& opt) {
  std::size_t N = orbit.size();
  UnionFind uf(N);
  std::size_t used = 0;
  auto absorb = [&](std::uint32_t x, std::uint32_t s) {
    std::uint32_t xs = orbit.perm(s)[x];
    if (orbit.parent(xs) == x && orbit.parent_gen(xs) == s && xs != 0) return std::optional<bool>{};
    auto h = orbit.schreier_perm(x, s);
    ++used;
    bool merged = false;
    for (std::uint32_t y = 0; y < N; ++y) merged |= uf.unite(y, h[y]);
    return std::optional<bool>{merged};
  };
  if (opt.exhaustive) {
    for (std::uint32_t x = 0; x < N; ++x)
      for (std::uint32_t s = 0; s < orbit.num_gens(); ++s) absorb(x, s);
  } else if (orbit.num_gens() > 0 && N > 1) {
    std::mt19937_64 rng(opt.seed);
    int quiet = 0;
    std::size_t attempts = 0;
    while (quiet < opt.stop_rounds && used < opt.max_generators && attempts < 50 * opt.max_generators) {
      ++attempts;
      auto x = static_cast<std::uint32_t>(rng() % N);
      auto s = static_cast<std::uint32_t>(rng() % orbit.num_gens());
      auto r = absorb(x, s);
      if (!r) continue;
      quiet = *r ? 0 : quiet + 1;
    }
  }
  std::vector<std::uint32_t> labels(N);
  for (std::uint32_t y = 0; y < N; ++y) labels[y] = uf.find(y);
  Cells c = cells_from_labels(labels);
  c.schreier_used = used;
  c.exhaustive = opt.exhaustive;
  return c;
}

// ---------------------------------------------------------------- pair orbitals

namespace {

struct BitMatrix {
  std::size_t n = 0, stride = 0;
  std::vector<std::uint64_t> w;
  explicit BitMatrix(std::size_t n_) : n(n_), stride((n_ + 63) / 64), w(n_ * ((n_ + 63) / 64), 0) {}
  bool test(std::size_t r, std::size_t c) const { return (w[r * stride + c / 64] >> (c % 64)) & 1; }
  void set(std::size_t r, std::size_t c) { w[r * stride + c / 64] |= 1ULL << (c % 64); }
  std::uint64_t* row(std::size_t r) { return w.data() + r * stride; }
};

}  // namespace

PairOrbitals pair_orbitals(const Orbit& orbit, std::uint64_t max_points) {
  std::size_t N = orbit.size();
  if (N > max_points) throw BudgetExceeded("pair BFS needs 2|X|^2 bits", N);
  PairOrbitals out;
  out.label.assign(N, Orbit::none);
  if (N < 2) return out;
  BitMatrix visited(N), frontier(N);
  std::vector<char> dirty(N, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint64_t> tmp(visited.stride);
  std::size_t G = orbit.num_gens();
  for (std::uint32_t y0 = 1; y0 < N; ++y0) {
    if (visited.test(0, y0)) continue;
    std::uint32_t id = static_cast<std::uint32_t>(out.edges.size());
    std::uint64_t count = 1;
    visited.set(0, y0);
    frontier.set(0, y0);
    stack.push_back(0);
    dirty[0] = 1;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      dirty[x] = 0;
      std::uint64_t* fr = frontier.row(x);
      std::copy(fr, fr + frontier.stride, tmp.begin());
      std::fill(fr, fr + frontier.stride, 0ULL);
      for (std::size_t wi = 0; wi < tmp.size(); ++wi) {
        std::uint64_t bits = tmp[wi];
        while (bits) {
          auto z = static_cast<std::uint32_t>(wi * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
          bits &= bits - 1;
          for (std::size_t s = 0; s < G; ++s) {
            const auto& p = orbit.perm(s);
            std::uint32_t a = p[x], b = p[z];
            if (a > b) std::swap(a, b);
            if (visited.test(a, b)) continue;
            visited.set(a, b);
            frontier.set(a, b);
            ++count;
            if (!dirty[a]) {
              dirty[a] = 1;
              stack.push_back(a);
            }
          }
        }
      }
    }
    out.edges.push_back(count);
    for (std::uint32_t y = 1; y < N; ++y)
      if (out.label[y] == Orbit::none && visited.test(0, y)) out.label[y] = id;
  }
  return out;
}

// ---------------------------------------------------------------- distances

std::vector<int> base_distances(const Orbit& orbit, const std::vector<std::uint32_t>& nbrs, const Cells& cells) {
  std::size_t N = orbit.size();
  std::vector<int> cd(cells.count(), -1);
  std::vector<std::uint32_t> layer{cells.cell_of[0]};
  cd[cells.cell_of[0]] = 0;
  for (int d = 0; !layer.empty(); ++d) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t K : layer) {
      auto w = orbit.word(cells.rep[K]);
      for (std::uint32_t c : nbrs) {
        std::uint32_t v = c;
        for (std::uint32_t s : w) v = orbit.perm(s)[v];
        std::uint32_t K2 = cells.cell_of[v];
        if (cd[K2] < 0) {
          cd[K2] = d + 1;
          next.push_back(K2);
        }
      }
    }
    layer = std::move(next);
  }
  std::vector<int> dist(N);
  for (std::size_t v = 0; v < N; ++v) dist[v] = cd[cells.cell_of[v]];
  return dist;
}

std::optional<int> eccentricity(const Orbit& orbit, const std::vector<std::uint32_t>& nbrs, std::uint32_t source,
                                std::uint64_t budget) {
  std::size_t N = orbit.size();
  std::vector<std::vector<std::uint32_t>> children(N);
  for (std::uint32_t v = 1; v < N; ++v) children[orbit.parent(v)].push_back(v);
  std::vector<char> seen(N, 0), cur(N, 0);
  seen[source] = cur[source] = 1;
  std::size_t reached = 1;
  std::uint64_t spent = 0;
  int level = 0;
  for (;;) {
    std::vector<char> next(N, 0);
    bool any = false;
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> stack;
    stack.emplace_back(0, nbrs);
    while (!stack.empty()) {
      auto [v, nv] = std::move(stack.back());
      stack.pop_back();
      spent += nv.size();
      if (spent > budget) return std::nullopt;
      if (cur[v])
        for (std::uint32_t w : nv)
          if (!seen[w]) {
            seen[w] = next[w] = 1;
            ++reached;
            any = true;
          }
      for (std::uint32_t ch : children[v]) {
        const auto& p = orbit.perm(orbit.parent_gen(ch));
        std::vector<std::uint32_t> nc(nv.size());
        for (std::size_t i = 0; i < nv.size(); ++i) nc[i] = p[nv[i]];
        stack.emplace_back(ch, std::move(nc));
      }
    }
    if (!any) break;
    cur = std::move(next);
    ++level;
  }
  return reached == N ? level : -1;
}

}  // namespace orbdiam
