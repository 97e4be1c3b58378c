#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brwsim/random.hpp"

namespace brwsim::trees {

enum class TreeKind { Bst, Rrt };

std::string to_string(TreeKind kind);
TreeKind parse_tree_kind(const std::string& name);

/// Words are kept only up to this many nodes.
inline constexpr std::size_t kMaxWordSetNodes = 1024;

/// Binary search tree grown by uniform choice of an external node.
class BstState {
 public:
  /// `keep_words` retains every node as a 0/1 word (needs n <= 1024).
  explicit BstState(bool keep_words = false);

  void insert(Stream& rng);
  void insert_at(std::size_t external_index);

  [[nodiscard]] std::size_t size() const noexcept { return external_depths_.size() - 1; }
  [[nodiscard]] std::uint64_t epl() const noexcept { return epl_; }
  [[nodiscard]] const std::vector<std::uint32_t>& external_depths() const noexcept {
    return external_depths_;
  }
  [[nodiscard]] bool has_words() const noexcept { return words_.has_value(); }
  /// Internal nodes as 0/1 words, root = "".
  [[nodiscard]] const std::vector<std::string>& words() const { return words_->internal; }
  /// EPL recomputed from the word set (or the depth list when words are off).
  [[nodiscard]] std::uint64_t recompute_epl() const;

 private:
  struct Words {
    std::vector<std::string> internal;
    std::vector<std::string> external;  // parallel to external_depths_
  };
  std::vector<std::uint32_t> external_depths_;
  std::uint64_t epl_ = 0;
  std::optional<Words> words_;
};

/// Random recursive tree: each new node attaches to a uniformly chosen node.
class RrtState {
 public:
  RrtState();

  void insert(Stream& rng);
  void insert_under(std::size_t parent);

  [[nodiscard]] std::size_t size() const noexcept { return depths_.size(); }
  [[nodiscard]] std::uint64_t ipl() const noexcept { return ipl_; }
  /// parents()[k] is the parent of node k (0-based); the root's entry is 0.
  [[nodiscard]] const std::vector<std::uint32_t>& parents() const noexcept { return parents_; }
  [[nodiscard]] const std::vector<std::uint32_t>& depths() const noexcept { return depths_; }
  [[nodiscard]] std::uint64_t recompute_ipl() const;

 private:
  std::vector<std::uint32_t> parents_;
  std::vector<std::uint32_t> depths_;
  std::uint64_t ipl_ = 0;
};

/// Path length after each insertion: values[k] belongs to n = k + 1.
struct PathLengthTrace {
  TreeKind kind = TreeKind::Bst;
  std::vector<std::uint64_t> path_length;

  [[nodiscard]] std::size_t size() const noexcept { return path_length.size(); }
  [[nodiscard]] std::uint64_t at(std::size_t n) const { return path_length.at(n - 1); }
};

struct BstRun {
  BstState state;
  PathLengthTrace trace;
};

struct RrtRun {
  RrtState state;
  PathLengthTrace trace;
};

BstRun grow_bst(std::size_t n, Stream& rng, bool keep_words = false);
RrtRun grow_rrt(std::size_t n, Stream& rng);

/// Path length only, without storing the trace; returns the values at the
/// requested checkpoints (ascending, each <= n).
std::vector<std::uint64_t> path_lengths_at(TreeKind kind, const std::vector<std::size_t>& checkpoints,
                                           Stream& rng);

/// E EPL_n (BST) or E IPL_n (RRT).
double expected_path_length(std::size_t n, TreeKind kind);
/// Same for every n in 1..n_max; element k belongs to n = k + 1.
std::vector<double> expected_path_lengths(std::size_t n_max, TreeKind kind);

/// Exact centering E K_n of the Quicksort comparison count, n = 0..n_max.
std::vector<double> expected_comparisons(std::size_t n_max);

/// Exact martingale normalization of a single path length value:
/// BST (K_n - E K_n)/(n+1) with K_n = EPL_n - 2n; RRT (IPL_n - E IPL_n)/n.
double regnier_value(std::uint64_t path_length, std::size_t n, TreeKind kind, double expected);

/// Log-centered normalization (L_n - tau2 n ln n)/n, tau2 = 2 (BST) or 1 (RRT).
double brw_value(std::uint64_t path_length, std::size_t n, TreeKind kind);

struct NormalizedMartingales {
  std::vector<double> regnier;
  std::vector<double> brw;
};

NormalizedMartingales normalized_martingales(const PathLengthTrace& trace);

struct LimitEstimate {
  double value = 0;       // brw value at the last n
  double regnier = 0;     // exact-martingale value at the last n
  double dispersion = 0;  // sd of the brw values over the last decade
};

/// Needs a trace of at least 1e4 insertions.
LimitEstimate estimate_limit(const PathLengthTrace& trace);

struct PredictionInterval {
  double lower = 0;
  double upper = 0;
  double center = 0;
  double half_width = 0;
};

/// center +- z_{1-alpha/2} sqrt(tau2 ln n / n) for the path-length limit.
PredictionInterval prediction_interval(double path_length, std::size_t n, double alpha,
                                       TreeKind kind);

/// tau2 of the embedded branching random walk.
double tree_tau2(TreeKind kind);

}  // namespace brwsim::trees
