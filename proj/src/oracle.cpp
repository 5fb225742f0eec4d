#include "orbdiam/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace orbdiam {

namespace {

std::vector<std::uint32_t> element_key(const GroupElement& g) {
  std::vector<std::uint32_t> k;
  k.reserve(g.mat.data().size() + 2);
  for (Elem x : g.mat.data()) k.push_back(x.value);
  k.push_back(g.frob);
  k.push_back(g.flip);
  return k;
}

std::vector<Vec> all_vectors(const Field& F, int n) {
  std::vector<Vec> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.order();
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec v(n);
    std::uint64_t r = idx;
    for (int i = n - 1; i >= 0; --i) {
      v[i] = Elem{static_cast<std::uint32_t>(r % F.order())};
      r /= F.order();
    }
    out.push_back(std::move(v));
  }
  return out;
}

// All g with f(b_i g, b_j g) = f(b_i, b_j) and Q(b_i g) = Q(b_i); invertible for linear spaces.
std::vector<GroupElement> isometries(const ClassicalSpace& S, std::size_t cap) {
  const Field& F = S.field();
  const int n = S.n();
  auto vecs = all_vectors(F, n);
  std::vector<Vec> basis;
  for (int i = 0; i < n; ++i) {
    Vec b(n);
    b[i] = F.one();
    basis.push_back(b);
  }
  std::vector<GroupElement> out;
  std::vector<Vec> rows;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (out.size() >= cap) throw BudgetExceeded("oracle group exceeds cap", cap + 1);
      out.push_back({Matrix::from_rows(rows, n), 0, false});
      return;
    }
    for (const Vec& v : vecs) {
      if (is_zero(v)) continue;
      bool ok = true;
      if (S.kind == FormKind::quadratic && eval_q(S, v) != eval_q(S, basis[i])) ok = false;
      for (int j = 0; ok && S.kind != FormKind::linear && j <= i; ++j) {
        const Vec& w = j == i ? v : rows[j];
        if (eval_form(S, v, w) != eval_form(S, basis[i], basis[j])) ok = false;
        if (eval_form(S, w, v) != eval_form(S, basis[j], basis[i])) ok = false;
      }
      if (!ok) continue;
      rows.push_back(v);
      if (S.kind == FormKind::linear && rank(F, Matrix::from_rows(rows, n)) != i + 1) {
        rows.pop_back();
        continue;
      }
      self(self, i + 1);
      rows.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

GroupElement reflection_of(const ClassicalSpace& S, const Vec& v) {
  const Field& F = S.field();
  int n = S.n();
  Elem qv = eval_q(S, v);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    Vec x(n);
    x[i] = F.one();
    Vec r = vec_add(F, x, vec_scale(F, F.neg(F.div(eval_form(S, x, v), qv)), v));
    for (int j = 0; j < n; ++j) m.at(i, j) = r[j];
  }
  return {m, 0, false};
}

}  // namespace

std::vector<GroupElement> group_closure(const Field& F, const std::vector<GroupElement>& gens, std::size_t cap) {
  if (gens.empty()) throw std::invalid_argument("group_closure: no generators");
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<GroupElement> out{GroupElement::identity(gens[0].mat.rows())};
  seen.insert(element_key(out[0]));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      GroupElement h = compose(F, out[i], g);
      if (seen.insert(element_key(h)).second) {
        if (out.size() >= cap) throw BudgetExceeded("group closure exceeds cap", cap + 1);
        out.push_back(std::move(h));
      }
    }
  return out;
}

std::vector<GroupElement> oracle_group(Family family, const ClassicalSpace& S, std::size_t cap) {
  const Field& F = S.field();
  auto det_one = [&](std::vector<GroupElement> all) {
    std::vector<GroupElement> out;
    for (auto& g : all)
      if (determinant(F, g.mat) == F.one()) out.push_back(std::move(g));
    return out;
  };
  switch (family) {
    case Family::SL: return det_one(isometries(S, cap));
    case Family::Sp:
    case Family::GU:
    case Family::GO: return isometries(S, cap);
    case Family::SU: return det_one(isometries(S, cap));
    case Family::Omega: {
      if (S.kind != FormKind::quadratic) throw std::invalid_argument("oracle_group: Omega needs a quadratic space");
      if (F.characteristic() == 2) {
        std::vector<GroupElement> out;
        for (auto& g : isometries(S, cap)) {
          Matrix d = g.mat;
          for (int i = 0; i < S.n(); ++i) d.at(i, i) = F.add(d.at(i, i), F.one());
          if (rank(F, d) % 2 == 0) out.push_back(std::move(g));
        }
        return out;
      }
      std::vector<Vec> ns_sq, ns_nsq;
      for (const Vec& v : all_vectors(F, S.n())) {
        Elem q = eval_q(S, v);
        if (!q.value) continue;
        (F.is_square(q) ? ns_sq : ns_nsq).push_back(v);
      }
      std::vector<GroupElement> gens;
      for (auto* cls : {&ns_sq, &ns_nsq}) {
        if (cls->empty()) continue;
        GroupElement r0 = reflection_of(S, cls->front());
        for (const Vec& v : *cls) gens.push_back(compose(F, r0, reflection_of(S, v)));
      }
      return group_closure(F, gens, cap);
    }
  }
  throw std::invalid_argument("oracle_group: unknown family");
}

namespace {

// Orbitals of `group` on the orbit of a point, given as a list of keys and an action on keys.
// Labels are filled orbital by orbital, applying each element on the fly.
template <class Key, class Act>
void brute_core(const std::vector<GroupElement>& group, const Key& base, Act act, std::vector<Key>& points,
                std::vector<std::uint64_t>& edges, std::vector<int>& diameters, std::vector<std::vector<int>>& label) {
  std::set<Key> pts;
  for (const auto& g : group) pts.insert(act(base, g));
  points.assign(pts.begin(), pts.end());
  std::map<Key, int> index;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) index[points[i]] = i;
  const int N = static_cast<int>(points.size());
  label.assign(N, std::vector<int>(N, -1));
  int next = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      if (label[i][j] >= 0) continue;
      std::uint64_t cnt = 0;
      for (const auto& g : group) {
        int a = index.at(act(points[i], g)), b = index.at(act(points[j], g));
        if (label[a][b] < 0) {
          label[a][b] = label[b][a] = next;
          ++cnt;
        }
      }
      edges.push_back(cnt);
      ++next;
    }
  for (int o = 0; o < next; ++o) {
    int diam = 0;
    for (int s = 0; s < N && diam >= 0; ++s) {
      std::vector<int> d(N, -1);
      std::deque<int> q{s};
      d[s] = 0;
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y = 0; y < N; ++y)
          if (label[x][y] == o && d[y] < 0) {
            d[y] = d[x] + 1;
            q.push_back(y);
          }
      }
      if (std::find(d.begin(), d.end(), -1) != d.end())
        diam = -1;
      else
        diam = std::max(diam, *std::max_element(d.begin(), d.end()));
    }
    diameters.push_back(diam);
  }
}

}  // namespace

BruteOrbitals brute_orbitals(const std::vector<GroupElement>& group, const Subspace& base) {
  BruteOrbitals out;
  std::map<SubspaceCode, Subspace> by_code;
  auto act = [&](const SubspaceCode& c, const GroupElement& g) {
    Subspace img = apply_element(by_code.at(c), g);
    SubspaceCode k = img.encode();
    by_code.emplace(k, std::move(img));
    return k;
  };
  by_code.emplace(base.encode(), base);
  std::vector<SubspaceCode> codes;
  brute_core(group, base.encode(), act, codes, out.edges, out.diameters, out.label);
  for (const auto& c : codes) out.points.push_back(by_code.at(c));
  return out;
}

BruteOrbitals brute_pair_orbitals(const std::vector<GroupElement>& group, const Subspace& U, const Subspace& W) {
  using Key = std::pair<SubspaceCode, SubspaceCode>;
  BruteOrbitals out;
  std::map<SubspaceCode, Subspace> by_code;
  auto keep = [&](Subspace s) {
    SubspaceCode k = s.encode();
    by_code.emplace(k, std::move(s));
    return k;
  };
  auto make = [](SubspaceCode a, SubspaceCode b) { return a < b ? Key{a, b} : Key{b, a}; };
  auto act = [&](const Key& k, const GroupElement& g) {
    return make(keep(apply_element(by_code.at(k.first), g)), keep(apply_element(by_code.at(k.second), g)));
  };
  Key base = make(keep(U), keep(W));
  std::vector<Key> keys;
  brute_core(group, base, act, keys, out.edges, out.diameters, out.label);
  for (const auto& [a, b] : keys) out.pairs.emplace_back(by_code.at(a), by_code.at(b));
  return out;
}

}  // namespace orbdiam
