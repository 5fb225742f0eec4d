#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbdiam/forms.hpp"
#include "orbdiam/group.hpp"
#include "orbdiam/linalg.hpp"

namespace orbdiam {

/// A G-set whose points are fixed-width word codes. Models are bound to a list
/// of generators at construction; apply() is the hot path of every BFS.
class PointModel {
 public:
  virtual ~PointModel() = default;
  virtual std::size_t width() const = 0;
  virtual std::size_t num_gens() const = 0;
  virtual void apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const = 0;
  virtual std::string describe(const std::uint64_t* code) const = 0;
};

/// Subspaces of dimension k, and of dimension n-k when a generator flips or
/// `both_dims` is set. Codes are SubspaceCode words zero-padded to a common width.
class SubspaceModel : public PointModel {
 public:
  SubspaceModel(const VectorSpaceSpec& V, int k, std::vector<GroupElement> gens, bool both_dims = false);
  std::size_t width() const override { return width_; }
  std::size_t num_gens() const override { return gens_.size(); }
  void apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const override;
  std::string describe(const std::uint64_t* code) const override;

  std::vector<std::uint64_t> encode(const Subspace& A) const;
  Subspace decode(const std::uint64_t* code) const;
  const VectorSpaceSpec& space() const { return V_; }

  /// Image of the code under g without a generator index.
  void apply_element(const std::uint64_t* in, const GroupElement& g, std::uint64_t* out) const;

 private:
  VectorSpaceSpec V_;
  std::size_t width_;
  std::vector<GroupElement> gens_;
};

/// Unordered pairs {U, W} of subspaces, stored smaller code first.
class PairModel : public PointModel {
 public:
  PairModel(const VectorSpaceSpec& V, int t, std::vector<GroupElement> gens);
  std::size_t width() const override { return 2 * half_; }
  std::size_t num_gens() const override { return inner_.num_gens(); }
  void apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const override;
  std::string describe(const std::uint64_t* code) const override;

  std::vector<std::uint64_t> encode(const Subspace& U, const Subspace& W) const;
  std::pair<Subspace, Subspace> decode(const std::uint64_t* code) const;

 private:
  SubspaceModel inner_;
  std::size_t half_;
};

/// Quadratic forms polarizing to a fixed symplectic form, coded by their values
/// on the standard basis. g acts by (Q.g)(v) = Q(v g^-1)^φ.
class FormModel : public PointModel {
 public:
  FormModel(const ClassicalSpace& symplectic, std::vector<GroupElement> gens);
  std::size_t width() const override { return width_; }
  std::size_t num_gens() const override { return inv_.size(); }
  void apply(const std::uint64_t* in, std::size_t gen, std::uint64_t* out) const override;
  std::string describe(const std::uint64_t* code) const override;

  std::vector<std::uint64_t> encode(const Vec& diag) const;
  Vec decode(const std::uint64_t* code) const;

 private:
  ClassicalSpace S_;
  std::size_t width_;
  std::vector<GroupElement> inv_;
};

/// Orbit of a base point with a Schreier vector and the generator permutations.
/// Point 0 is the base; points are numbered in BFS discovery order.
class Orbit {
 public:
  static constexpr std::uint32_t none = 0xffffffffu;

  std::size_t size() const { return parent_.size(); }
  std::size_t width() const { return width_; }
  std::size_t num_gens() const { return perm_.size(); }
  const std::uint64_t* code(std::uint32_t i) const { return codes_.data() + static_cast<std::size_t>(i) * width_; }
  std::optional<std::uint32_t> find(const std::uint64_t* code) const;

  std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }
  std::uint32_t parent_gen(std::uint32_t i) const { return parent_gen_[i]; }
  std::uint32_t depth(std::uint32_t i) const { return depth_[i]; }
  const std::vector<std::uint32_t>& perm(std::size_t s) const { return perm_[s]; }
  const std::vector<std::uint32_t>& inv_perm(std::size_t s) const { return inv_perm_[s]; }

  /// Generator indices of the transversal element u_i (base . u_i = i).
  std::vector<std::uint32_t> word(std::uint32_t i) const;
  /// x . u_i and x . u_i^-1.
  std::uint32_t apply_transversal(std::uint32_t x, std::uint32_t i) const;
  std::uint32_t apply_transversal_inverse(std::uint32_t x, std::uint32_t i) const;
  /// Images of every point under u_x s u_{xs}^-1.
  std::vector<std::uint32_t> schreier_perm(std::uint32_t x, std::uint32_t s) const;

  friend Orbit orbit_bfs(const PointModel& model, const std::vector<std::uint64_t>& base, std::uint64_t budget);
  friend Orbit orbit_from_parts(std::size_t width, std::vector<std::uint64_t> codes,
                                std::vector<std::vector<std::uint32_t>> perms);

 private:
  void build_index();
  void build_tree();

  std::size_t width_ = 0;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint32_t> parent_, parent_gen_, depth_;
  std::vector<std::vector<std::uint32_t>> perm_, inv_perm_;
  std::vector<std::uint32_t> slots_;  // open addressing, none = empty
};

/// Throws BudgetExceeded when the orbit outgrows `budget` points.
Orbit orbit_bfs(const PointModel& model, const std::vector<std::uint64_t>& base, std::uint64_t budget = 5'000'000);
/// Rebuilds an orbit from stored codes and generator permutations (cache loading).
Orbit orbit_from_parts(std::size_t width, std::vector<std::uint64_t> codes, std::vector<std::vector<std::uint32_t>> perms);

/// Partition of the orbit into orbits of a subgroup H of the base stabilizer.
struct Cells {
  std::vector<std::uint32_t> cell_of;
  std::vector<std::uint32_t> rep;  // smallest point of each cell
  std::vector<std::uint32_t> size;
  std::size_t schreier_used = 0;
  bool exhaustive = false;  // H generated by every Schreier generator, so H is the full stabilizer
  std::size_t count() const { return rep.size(); }
};

struct SamplingOptions {
  std::uint64_t seed = 1;
  int stop_rounds = 20;          // consecutive non-merging generators before stopping
  std::size_t max_generators = 4000;
  bool exhaustive = false;       // use every (x, s) instead of sampling
};

Cells stabilizer_cells(const Orbit& orbit, const SamplingOptions& opt = {});
/// Cells from an explicit labelling (e.g. an invariant), canonicalized.
Cells cells_from_labels(const std::vector<std::uint32_t>& labels);

/// Exact orbitals by BFS on unordered pairs. label[y] is the orbital of {base, y}
/// (label of the base itself is none). Needs 2 * |X|^2 bits.
struct PairOrbitals {
  std::vector<std::uint32_t> label;
  std::vector<std::uint64_t> edges;  // unordered pairs in each orbital
  std::size_t count() const { return edges.size(); }
};
PairOrbitals pair_orbitals(const Orbit& orbit, std::uint64_t max_points = 70'000);

/// Distances from the base in the orbital graph whose base neighbourhood is `nbrs`.
/// `cells` must be orbits of a subgroup of the base stabilizer; -1 marks unreachable.
std::vector<int> base_distances(const Orbit& orbit, const std::vector<std::uint32_t>& nbrs, const Cells& cells);

/// Eccentricity of an arbitrary vertex by plain BFS, neighbourhoods translated
/// along the Schreier tree. nullopt when |X| * |nbrs| * levels would pass `budget`,
/// or -1 when the graph is disconnected.
std::optional<int> eccentricity(const Orbit& orbit, const std::vector<std::uint32_t>& nbrs, std::uint32_t source,
                                std::uint64_t budget = 400'000'000);

}  // namespace orbdiam
