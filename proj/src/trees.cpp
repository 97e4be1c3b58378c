#include "brwsim/trees.hpp"

#include <cmath>
#include <unordered_set>

#include "brwsim/error.hpp"
#include "brwsim/numeric.hpp"
#include "brwsim/stats.hpp"

namespace brwsim::trees {

std::string to_string(TreeKind kind) { return kind == TreeKind::Bst ? "bst" : "rrt"; }

TreeKind parse_tree_kind(const std::string& name) {
  if (name == "bst") return TreeKind::Bst;
  if (name == "rrt") return TreeKind::Rrt;
  throw InvalidArgument("unknown tree kind '" + name + "' (expected bst or rrt)");
}

double tree_tau2(TreeKind kind) { return kind == TreeKind::Bst ? 2.0 : 1.0; }

BstState::BstState(bool keep_words) : external_depths_{0} {
  if (keep_words) words_ = Words{{}, {""}};
}

void BstState::insert(Stream& rng) { insert_at(rng.below(external_depths_.size())); }

void BstState::insert_at(std::size_t i) {
  if (i >= external_depths_.size()) throw InvalidArgument("external node index out of range");
  const std::uint32_t depth = external_depths_[i];
  external_depths_[i] = depth + 1;
  external_depths_.push_back(depth + 1);
  epl_ += depth + 2;
  if (words_) {
    if (words_->internal.size() >= kMaxWordSetNodes) {
      throw BudgetExceeded(words_->internal.size() + 1, kMaxWordSetNodes);
    }
    std::string w = words_->external[i];
    words_->internal.push_back(w);
    words_->external[i] = w + "0";
    words_->external.push_back(w + "1");
  }
}

std::uint64_t BstState::recompute_epl() const {
  std::uint64_t total = 0;
  if (!words_) {
    for (std::uint32_t d : external_depths_) total += d;
    return total;
  }
  if (words_->internal.empty()) return 0;
  const std::unordered_set<std::string> nodes(words_->internal.begin(), words_->internal.end());
  for (const auto& w : words_->internal) {
    for (const char bit : {'0', '1'}) {
      if (nodes.count(w + bit) == 0) total += w.size() + 1;
    }
  }
  return total;
}

RrtState::RrtState() : parents_{0}, depths_{0} {}

void RrtState::insert(Stream& rng) { insert_under(rng.below(depths_.size())); }

void RrtState::insert_under(std::size_t parent) {
  if (parent >= depths_.size()) throw InvalidArgument("parent index out of range");
  const std::uint32_t depth = depths_[parent] + 1;
  parents_.push_back(static_cast<std::uint32_t>(parent));
  depths_.push_back(depth);
  ipl_ += depth;
}

std::uint64_t RrtState::recompute_ipl() const {
  std::vector<std::uint64_t> depth(parents_.size(), 0);
  std::uint64_t total = 0;
  for (std::size_t k = 1; k < parents_.size(); ++k) {
    depth[k] = depth[parents_[k]] + 1;
    total += depth[k];
  }
  return total;
}

BstRun grow_bst(std::size_t n, Stream& rng, bool keep_words) {
  if (n < 1) throw InvalidArgument("tree size must be at least 1");
  BstRun run{BstState(keep_words), {TreeKind::Bst, {}}};
  run.trace.path_length.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    run.state.insert(rng);
    run.trace.path_length.push_back(run.state.epl());
  }
  return run;
}

RrtRun grow_rrt(std::size_t n, Stream& rng) {
  if (n < 1) throw InvalidArgument("tree size must be at least 1");
  RrtRun run{RrtState(), {TreeKind::Rrt, {0}}};
  run.trace.path_length.reserve(n);
  for (std::size_t k = 1; k < n; ++k) {
    run.state.insert(rng);
    run.trace.path_length.push_back(run.state.ipl());
  }
  return run;
}

std::vector<std::uint64_t> path_lengths_at(TreeKind kind, const std::vector<std::size_t>& checkpoints,
                                           Stream& rng) {
  std::vector<std::uint64_t> out;
  out.reserve(checkpoints.size());
  std::size_t next = 0;
  if (kind == TreeKind::Bst) {
    BstState state;
    for (std::size_t n = 1; next < checkpoints.size(); ++n) {
      state.insert(rng);
      while (next < checkpoints.size() && checkpoints[next] == n) {
        out.push_back(state.epl());
        ++next;
      }
      if (next < checkpoints.size() && checkpoints[next] < n) {
        throw InvalidArgument("checkpoints must be ascending and >= 1");
      }
    }
  } else {
    RrtState state;
    for (std::size_t n = 1; next < checkpoints.size(); ++n) {
      if (n > 1) state.insert(rng);
      while (next < checkpoints.size() && checkpoints[next] == n) {
        out.push_back(state.ipl());
        ++next;
      }
      if (next < checkpoints.size() && checkpoints[next] < n) {
        throw InvalidArgument("checkpoints must be ascending and >= 1");
      }
    }
  }
  return out;
}

std::vector<double> expected_comparisons(std::size_t n_max) {
  // E K_n = (n - 1) + (2/n) sum_{j<n} E K_j, E K_0 = 0.
  std::vector<double> ek(n_max + 1, 0.0);
  CompensatedSum running;
  for (std::size_t n = 1; n <= n_max; ++n) {
    running.add(ek[n - 1]);
    ek[n] = static_cast<double>(n - 1) + 2.0 * running.value() / static_cast<double>(n);
  }
  return ek;
}

std::vector<double> expected_path_lengths(std::size_t n_max, TreeKind kind) {
  if (n_max > 10'000'000) throw InvalidArgument("expected path length limited to n <= 1e7");
  std::vector<double> out(n_max);
  if (kind == TreeKind::Bst) {
    const auto ek = expected_comparisons(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = ek[n] + 2.0 * static_cast<double>(n);
  } else {
    // E IPL_n = sum_{k<=n} H_{k-1}
    CompensatedSum harmonic, total;
    for (std::size_t k = 1; k <= n_max; ++k) {
      if (k > 1) harmonic.add(1.0 / static_cast<double>(k - 1));
      total.add(harmonic.value());
      out[k - 1] = total.value();
    }
  }
  return out;
}

double expected_path_length(std::size_t n, TreeKind kind) {
  if (n < 1) throw InvalidArgument("tree size must be at least 1");
  return expected_path_lengths(n, kind).back();
}

double regnier_value(std::uint64_t path_length, std::size_t n, TreeKind kind, double expected) {
  const double centered = static_cast<double>(path_length) - expected;
  return kind == TreeKind::Bst ? centered / static_cast<double>(n + 1)
                               : centered / static_cast<double>(n);
}

double brw_value(std::uint64_t path_length, std::size_t n, TreeKind kind) {
  const double nd = static_cast<double>(n);
  return (static_cast<double>(path_length) - tree_tau2(kind) * nd * std::log(nd)) / nd;
}

NormalizedMartingales normalized_martingales(const PathLengthTrace& trace) {
  if (trace.size() == 0) throw InvalidArgument("empty path length trace");
  const auto expected = expected_path_lengths(trace.size(), trace.kind);
  NormalizedMartingales out;
  out.regnier.resize(trace.size());
  out.brw.resize(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const std::size_t n = k + 1;
    // EPL_n - E EPL_n = K_n - E K_n, so the BST centering can use either.
    out.regnier[k] = regnier_value(trace.path_length[k], n, trace.kind, expected[k]);
    out.brw[k] = brw_value(trace.path_length[k], n, trace.kind);
  }
  return out;
}

LimitEstimate estimate_limit(const PathLengthTrace& trace) {
  if (trace.size() < 10000) throw InvalidArgument("limit estimate needs at least 1e4 insertions");
  const auto norm = normalized_martingales(trace);
  LimitEstimate est;
  est.value = norm.brw.back();
  est.regnier = norm.regnier.back();
  const std::size_t from = trace.size() / 10;
  est.dispersion = std::sqrt(stats::sample_variance(
      std::span<const double>(norm.brw.data() + from - 1, norm.brw.size() - from + 1)));
  return est;
}

PredictionInterval prediction_interval(double path_length, std::size_t n, double alpha,
                                       TreeKind kind) {
  if (n < 2) throw InvalidArgument("prediction interval needs n >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  const double tau2 = tree_tau2(kind);
  PredictionInterval pi;
  pi.center = (path_length - tau2 * nd * std::log(nd)) / nd;
  pi.half_width = stats::normal_quantile(1.0 - alpha / 2.0) * std::sqrt(tau2 * std::log(nd) / nd);
  pi.lower = pi.center - pi.half_width;
  pi.upper = pi.center + pi.half_width;
  return pi;
}

}  // namespace brwsim::trees
