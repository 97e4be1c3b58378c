#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "brwsim/biggins.hpp"
#include "brwsim/brw.hpp"
#include "brwsim/error.hpp"
#include "brwsim/gaf.hpp"
#include "brwsim/harness.hpp"
#include "brwsim/io.hpp"
#include "brwsim/polya.hpp"
#include "brwsim/stats.hpp"
#include "brwsim/trees.hpp"
#include "brwsim/yule.hpp"

#ifndef BRWSIM_VERSION
#define BRWSIM_VERSION "0.0.0"
#endif

namespace py = pybind11;
using namespace brwsim;
using namespace py::literals;

namespace {

FinitePmf pmf_from(const std::vector<std::pair<double, double>>& pairs) {
  return FinitePmf::from_pairs(pairs);
}

std::vector<std::pair<double, double>> pmf_pairs(const FinitePmf& pmf) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < pmf.size(); ++i) out.emplace_back(pmf.values()[i], pmf.probs()[i]);
  return out;
}

py::dict ks_dict(const stats::KsReport& r) {
  return py::dict("statistic"_a = r.statistic, "p_value"_a = r.p_value, "n"_a = r.n,
                  "target"_a = r.target);
}

py::dict trajectory_dict(const BrwTrajectory& traj) {
  py::list clouds, counts, sums;
  for (const auto& c : traj.clouds) clouds.append(c.positions);
  for (const auto& s : traj.summaries) {
    counts.append(s.count);
    sums.append(s.position_sum);
  }
  return py::dict("positions"_a = clouds, "counts"_a = counts, "position_sums"_a = sums,
                  "parents"_a = traj.parents);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Branching random walk simulation and limit-theorem checks.";
  m.attr("__version__") = BRWSIM_VERSION;

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_MemoryError);
  py::register_exception<InvalidLaw>(m, "InvalidLaw", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<Overflow>(m, "Overflow", PyExc_OverflowError);
  py::register_exception<NumericalInconsistency>(m, "NumericalInconsistency", PyExc_ArithmeticError);

  py::class_<ClusterLaw>(m, "ClusterLaw", "Offspring displacement law of one particle.")
      .def_static("deterministic", &ClusterLaw::deterministic, "displacements"_a,
                  "Fixed cluster: one child at each displacement.")
      .def_static(
          "count_and_shift",
          [](const std::vector<std::pair<double, double>>& count,
             const std::vector<std::pair<double, double>>& shift) {
            return ClusterLaw::count_and_shift(pmf_from(count), pmf_from(shift));
          },
          "count"_a, "shift"_a = std::vector<std::pair<double, double>>{{0.0, 1.0}},
          "Random cluster size with independent child shifts, both as [(value, prob), ...].")
      .def_static("bst", &ClusterLaw::bst_split, "delta_x -> 2 delta_{x+1}")
      .def_static("rrt", &ClusterLaw::rrt_split, "delta_x -> delta_x + delta_{x+1}")
      .def_static(
          "from_json", [](const std::string& text) { return io::law_from_json(io::Json::parse(text)); },
          "text"_a, "Law from its JSON document.")
      .def("to_json", [](const ClusterLaw& law) { return io::law_to_json(law).dump(); })
      .def_property_readonly("name", &ClusterLaw::name)
      .def_property_readonly("mean_count", &ClusterLaw::mean_count)
      .def("mgf", &ClusterLaw::mgf, "beta"_a, "m(beta) = E sum_z exp(beta z).")
      .def("size_pmf", [](const ClusterLaw& law) { return pmf_pairs(law.size_pmf()); })
      .def("__repr__", [](const ClusterLaw& law) { return "<ClusterLaw " + law.name() + ">"; });

  m.def(
      "model_params",
      [](const ClusterLaw& law) {
        const auto p = model_params(law);
        return py::dict("m"_a = p.m, "d"_a = p.d, "tau2"_a = p.tau2, "sigma2"_a = p.sigma2);
      },
      "law"_a, "m, d = phi'(0), tau2 = phi''(0) and sigma2 = Var N_infinity.");

  m.def(
      "simulate",
      [](const ClusterLaw& law, std::size_t n, std::uint64_t seed, bool genealogy,
         std::uint64_t budget) {
        Stream rng(seed);
        return trajectory_dict(simulate(law, n, rng, {budget, genealogy}));
      },
      "law"_a, "n"_a, "seed"_a = 1, "genealogy"_a = false, "budget"_a = kDefaultParticleBudget,
      "Particle clouds of generations 0..n.");

  m.def(
      "eval_W",
      [](const ClusterLaw& law, const std::vector<double>& positions, std::size_t n, Complex beta,
         double disk_radius) {
        ParticleCloud cloud{n, positions};
        return biggins::eval_W(PositionHistogram(cloud), n, law, beta, disk_radius).value;
      },
      "law"_a, "positions"_a, "n"_a, "beta"_a, "disk_radius"_a = biggins::kDefaultDiskRadius,
      "W_n(beta) = m(beta)^-n sum_j exp(beta z_j) for a generation-n cloud.");

  m.def(
      "derivative_check",
      [](const ClusterLaw& law, std::size_t n, std::uint64_t seed) {
        Stream rng(seed);
        const auto traj = simulate(law, n, rng);
        const auto c = biggins::check_derivative(traj, law, model_params(law));
        return py::dict("cauchy"_a = c.cauchy, "direct"_a = c.direct, "error"_a = c.error,
                        "consistent"_a = c.consistent);
      },
      "law"_a, "n"_a, "seed"_a = 1, "Contour-integral W_n'(0) against the direct L_n.");

  m.def(
      "decomposition_check",
      [](const ClusterLaw& law, std::size_t n, std::size_t l, Complex beta, std::uint64_t seed) {
        Stream rng = derive_stream(seed, {0});
        const auto traj = simulate(law, n, rng, {kDefaultParticleBudget, true});
        Stream cont = derive_stream(seed, {1});
        const auto r = biggins::decomposition_check(traj, law, l, beta, cont);
        return py::dict("lhs"_a = r.lhs, "rhs"_a = r.rhs, "relative_error"_a = r.relative_error,
                        "genealogy_consistent"_a = r.genealogy_consistent);
      },
      "law"_a, "n"_a, "l"_a, "beta"_a, "seed"_a = 1, "Branching decomposition identity, path by path.");

  m.def("truncation_order", &gaf::truncation_order, "radius"_a, "tolerance"_a = gaf::kTailTolerance,
        "Smallest K with sum_{k>=K} R^{2k}/k! <= tolerance.");
  m.def(
      "sample_gaf",
      [](const std::vector<Complex>& points, double radius, std::uint64_t seed) {
        Stream rng(seed);
        const auto g = gaf::sample_gaf(radius, rng);
        std::vector<Complex> out;
        for (Complex u : points) out.push_back(g(u));
        return out;
      },
      "points"_a, "radius"_a = 1.0, "seed"_a = 1, "One GAF realization evaluated at the points.");
  m.def(
      "gaf_covariance",
      [](Complex u, Complex v, std::size_t replicates, std::uint64_t seed) {
        Stream rng(seed);
        const auto c = gaf::covariance_check(u, v, replicates, rng);
        return py::dict("estimate"_a = c.product.estimate,
                        "standard_error"_a = c.product.standard_error, "target"_a = c.product.target,
                        "conjugate_estimate"_a = c.conjugate.estimate,
                        "conjugate_target"_a = c.conjugate.target);
      },
      "u"_a, "v"_a, "replicates"_a = 10000, "seed"_a = 1, "Monte Carlo E xi(u) xi(v) against e^{uv}.");

  m.def(
      "yule_times",
      [](std::size_t n, double lambda, std::uint64_t seed) {
        Stream rng(seed);
        return yule::sample_times(n, lambda, rng).times();
      },
      "n"_a, "lam"_a = 1.0, "seed"_a = 1, "Birth times T_1..T_n of a Yule process.");
  m.def(
      "moment_product",
      [](std::size_t n, double r) {
        const auto p = yule::moment_product(n, r);
        return py::make_tuple(p.exact, p.limit);
      },
      "n"_a, "r"_a, "(E (n e^{-lambda T_n})^r, Gamma(r + 1)).");

  m.def(
      "path_lengths",
      [](const std::string& kind, std::size_t n, std::uint64_t seed) {
        Stream rng(seed);
        const auto k = trees::parse_tree_kind(kind);
        return k == trees::TreeKind::Bst ? trees::grow_bst(n, rng).trace.path_length
                                         : trees::grow_rrt(n, rng).trace.path_length;
      },
      "kind"_a, "n"_a, "seed"_a = 1, "EPL (bst) or IPL (rrt) after each of n insertions.");
  m.def(
      "expected_path_length",
      [](const std::string& kind, std::size_t n) {
        return trees::expected_path_length(n, trees::parse_tree_kind(kind));
      },
      "kind"_a, "n"_a);
  m.def(
      "prediction_interval",
      [](const std::string& kind, double path_length, std::size_t n, double alpha) {
        const auto pi = trees::prediction_interval(path_length, n, alpha, trees::parse_tree_kind(kind));
        return py::make_tuple(pi.lower, pi.upper);
      },
      "kind"_a, "path_length"_a, "n"_a, "alpha"_a = 0.05,
      "(theta_minus, theta_plus) for the path-length limit.");

  m.def(
      "polya_limit",
      [](std::uint64_t b, std::uint64_t r, std::uint64_t c) {
        const auto p = polya::limit_law(b, r, c);
        return py::make_tuple(p.alpha, p.beta);
      },
      "b"_a, "r"_a, "c"_a, "Beta parameters of the limiting black proportion.");
  m.def(
      "polya_proportions",
      [](std::uint64_t b, std::uint64_t r, std::uint64_t c, std::uint64_t n, std::size_t replicates,
         std::uint64_t seed) {
        std::vector<double> out(replicates);
        for (std::size_t i = 0; i < replicates; ++i) {
          Stream rng = derive_stream(seed, {i});
          out[i] = polya::draw_n(polya::UrnState::initial(b, r, c), n, rng).proportion();
        }
        return out;
      },
      "b"_a, "r"_a, "c"_a, "n"_a, "replicates"_a, "seed"_a = 1, "Z_n over independent urns.");
  m.def("exact_black_law", &polya::exact_black_law, "b"_a, "r"_a, "c"_a, "n"_a,
        "P(B_n = b + k c) for k = 0..n.");

  m.def(
      "ks_normal",
      [](const std::vector<double>& sample, double mean, double variance) {
        return ks_dict(stats::ks_statistic(sample, stats::normal(mean, variance)));
      },
      "sample"_a, "mean"_a = 0.0, "variance"_a = 1.0, "KS distance to N(mean, variance).");
  m.def(
      "ks_cdf",
      [](const std::vector<double>& sample, const std::function<double(double)>& cdf) {
        return ks_dict(stats::ks_statistic(sample, cdf));
      },
      "sample"_a, "cdf"_a, "KS distance to an arbitrary continuous cdf.");
  m.def("kolmogorov_pvalue", &stats::kolmogorov_pvalue, "statistic"_a, "n"_a);

  m.def(
      "gw_panel",
      [](const ClusterLaw& law, std::size_t n, std::size_t h, std::size_t M, std::size_t frozen,
         bool self_normalized, std::size_t sigma_replicates, double threshold, std::uint64_t seed) {
        py::gil_scoped_release release;
        const unsigned w = harness::default_workers();
        const auto sigma2 = harness::estimate_sigma2(law, n + h, sigma_replicates, seed, w);
        const harness::ConditionalExperiment ex{
            law, n, h, M,
            self_normalized ? harness::Statistic::GwSelfNormalized : harness::Statistic::GwResidual,
            0.0};
        const auto panel = harness::run_panel(ex, frozen, sigma2.value, seed, threshold, w);
        std::vector<double> ks;
        for (const auto& e : panel.entries) ks.push_back(e.ks.statistic);
        py::gil_scoped_acquire acquire;
        return py::dict("sigma2_hat"_a = sigma2.value, "ks"_a = ks,
                        "pass_fraction"_a = panel.pass_fraction);
      },
      "law"_a, "n"_a = 16, "h"_a = 8, "M"_a = 10000, "frozen"_a = 50, "self_normalized"_a = false,
      "sigma_replicates"_a = 100000, "threshold"_a = harness::kDefaultKsThreshold, "seed"_a = 1,
      "Conditional Galton-Watson CLT over a panel of frozen paths.");

  m.def(
      "verdict",
      [](const std::string& model, const std::string& statistic, std::optional<double> ks,
         std::optional<double> p_value, const std::string& target, bool pass,
         std::optional<std::size_t> n, std::optional<std::size_t> M, std::optional<std::size_t> h,
         std::optional<std::size_t> frozen_path_id) {
        io::Verdict v{model, n, M, h, frozen_path_id, statistic, ks, p_value, target, pass};
        return io::to_json(v).dump();
      },
      "model"_a, "statistic"_a, "ks"_a, "p_value"_a, "target"_a, "pass_"_a, "n"_a = py::none(),
      "M"_a = py::none(), "h"_a = py::none(), "frozen_path_id"_a = py::none(),
      "Verdict document as JSON text, in the format the CLI writes.");
}
