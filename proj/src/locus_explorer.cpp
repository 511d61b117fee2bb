#include "oddsgeom/locus_explorer.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "oddsgeom/rng.hpp"

namespace oddsgeom {

namespace {

QuadraticRatioEquation make_equation(const RatioConstraint& c) {
  const int a = c.deleted_col == 0 ? 1 : 0;
  const int b = c.deleted_col == 2 ? 1 : 2;
  QuadraticRatioEquation eq{};
  eq.value = c.value;
  eq.kind = c.kind;
  eq.deleted_col = c.deleted_col;
  switch (c.kind) {
    case RatioKind::cross:  // p0a*p1b / (p0b*p1a)
      eq.num0 = a, eq.num1 = 3 + b, eq.den0 = b, eq.den1 = 3 + a;
      break;
    case RatioKind::parallel:  // p0a*p1a / (p0b*p1b)
      eq.num0 = a, eq.num1 = 3 + a, eq.den0 = b, eq.den1 = 3 + b;
      break;
    case RatioKind::equal:  // p0a*p0b / (p1a*p1b)
      eq.num0 = a, eq.num1 = b, eq.den0 = 3 + a, eq.den1 = 3 + b;
      break;
  }
  return eq;
}

Vec6 random_simplex_point(SeededRng& rng) {
  const auto e = rng.simplex_point<6>();
  Vec6 x;
  for (int i = 0; i < 6; ++i) x[i] = e[i];
  return x;
}

double min_abs_entry(const Vec6& x) { return x.cwiseAbs().minCoeff(); }

}  // namespace

PolySystem PolySystem::from_constraints(const std::vector<RatioConstraint>& cs) {
  PolySystem sys;
  sys.ratio_eqs_.reserve(cs.size());
  for (const auto& c : cs) sys.ratio_eqs_.push_back(make_equation(c));
  return sys;
}

void PolySystem::set_slices(const Eigen::MatrixXd& coeffs,
                            const Eigen::VectorXd& offsets) {
  if (coeffs.cols() != 6 || coeffs.rows() != offsets.size()) {
    throw Error("slice stack must be k x 6 coefficients with k offsets");
  }
  slice_coeffs_ = coeffs;
  slice_offsets_ = offsets;
}

void PolySystem::clear_slices() {
  slice_coeffs_.resize(0, 6);
  slice_offsets_.resize(0);
}

Eigen::VectorXd PolySystem::evaluate_core(const Vec6& x) const {
  const int m = num_ratio_equations();
  Eigen::VectorXd f(m + 1);
  for (int r = 0; r < m; ++r) {
    const auto& eq = ratio_eqs_[r];
    f[r] = eq.value * x[eq.den0] * x[eq.den1] - x[eq.num0] * x[eq.num1];
  }
  f[m] = x.sum() - 1.0;
  return f;
}

Eigen::MatrixXd PolySystem::jacobian_core(const Vec6& x) const {
  const int m = num_ratio_equations();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m + 1, 6);
  for (int r = 0; r < m; ++r) {
    const auto& eq = ratio_eqs_[r];
    J(r, eq.den0) += eq.value * x[eq.den1];
    J(r, eq.den1) += eq.value * x[eq.den0];
    J(r, eq.num0) -= x[eq.num1];
    J(r, eq.num1) -= x[eq.num0];
  }
  J.row(m).setOnes();
  return J;
}

Eigen::VectorXd PolySystem::evaluate(const Vec6& x) const {
  const int core = num_ratio_equations() + 1;
  Eigen::VectorXd f(num_equations());
  f.head(core) = evaluate_core(x);
  if (num_slices() > 0) {
    f.tail(num_slices()) = slice_coeffs_ * x - slice_offsets_;
  }
  return f;
}

Eigen::MatrixXd PolySystem::jacobian(const Vec6& x) const {
  const int core = num_ratio_equations() + 1;
  Eigen::MatrixXd J(num_equations(), 6);
  J.topRows(core) = jacobian_core(x);
  if (num_slices() > 0) J.bottomRows(num_slices()) = slice_coeffs_;
  return J;
}

PolySystem build_system(const RatioAssignment& a) {
  const ConsistencyReport report = closure(a);
  if (!report.consistent()) {
    throw InconsistentAssignment("assignment violates " +
                                 report.violations.front().relation);
  }
  return PolySystem::from_constraints(a.constraints());
}

DimensionEstimate local_dimension(const PolySystem& sys, const Vec6& x,
                                  double svd_threshold) {
  const Eigen::MatrixXd J = sys.jacobian_core(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const Eigen::VectorXd& s = svd.singularValues();

  DimensionEstimate est;
  est.singular_values.assign(s.data(), s.data() + s.size());
  const double cutoff = svd_threshold * s[0];
  int rank = 0;
  while (rank < s.size() && s[rank] > cutoff) ++rank;
  est.dimension = 6 - rank;
  if (rank == s.size()) {
    est.gap_ratio = std::numeric_limits<double>::infinity();
  } else if (rank == 0) {
    est.gap_ratio = 0.0;  // nothing retained; degenerate input
  } else {
    est.gap_ratio = s[rank - 1] / s[rank];
  }
  est.clear_gap = est.gap_ratio >= 10.0;
  return est;
}

NewtonResult newton_refine(const PolySystem& sys, const Vec6& start,
                           int max_iterations, double target_residual) {
  NewtonResult out{start, 0.0, false, 0};
  Vec6 x = start;
  Eigen::VectorXd f = sys.evaluate(x);
  double res = f.lpNorm<Eigen::Infinity>();

  for (int it = 0; it < max_iterations; ++it) {
    if (res <= target_residual) break;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        sys.jacobian(x), Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    const Eigen::VectorXd step = svd.solve(-f);
    if (step.norm() > 10.0) break;  // diverging; give up on this start

    // Backtrack on the Euclidean residual norm.
    const double fnorm = f.norm();
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 0x1.0p-20) {
      const Vec6 xn = x + lambda * step;
      const Eigen::VectorXd fn = sys.evaluate(xn);
      if (fn.norm() < fnorm) {
        x = xn;
        f = fn;
        res = f.lpNorm<Eigen::Infinity>();
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    out.iterations = it + 1;
    if (!accepted) break;  // stalled
  }

  out.x = x;
  out.residual = res;
  out.converged = res <= target_residual;
  return out;
}

LocusSample explore(const RatioAssignment& a, const ExploreOptions& options) {
  PolySystem sys = build_system(a);

  LocusSample sample;
  sample.seed = options.seed;
  sample.n_starts = options.n_starts;

  // Bootstrap the slice dimension from the rank at one unsliced solution.
  int slice_dim = -1;
  {
    SeededRng boot(substream_seed(options.seed, 0));
    for (int attempt = 0; attempt < 50; ++attempt) {
      const Vec6 x0 = random_simplex_point(boot);
      const NewtonResult r =
          newton_refine(sys, x0, options.max_newton_iterations);
      if (r.converged && min_abs_entry(r.x) >= options.entry_floor) {
        slice_dim =
            local_dimension(sys, r.x, options.svd_threshold).dimension;
        break;
      }
    }
    if (slice_dim < 0) {
      slice_dim = std::max(0, 5 - sys.num_ratio_equations());
    }
  }
  sample.slice_dimension = slice_dim;

  // Batched sampling: fresh slices per batch so that distinct batches can
  // land on distinct isolated intersection points.
  const int batches =
      (options.n_starts + options.batch_size - 1) / options.batch_size;
  for (int b = 0; b < batches; ++b) {
    SeededRng rng(substream_seed(options.seed, static_cast<std::uint64_t>(b) + 1));
    Eigen::MatrixXd coeffs(slice_dim, 6);
    Eigen::VectorXd offsets(slice_dim);
    for (int s = 0; s < slice_dim; ++s) {
      for (int j = 0; j < 6; ++j) coeffs(s, j) = rng.normal();
      offsets[s] = rng.normal();
    }
    sys.set_slices(coeffs, offsets);

    const int starts =
        std::min(options.batch_size, options.n_starts - b * options.batch_size);
    for (int k = 0; k < starts; ++k) {
      const Vec6 x0 = random_simplex_point(rng);
      const NewtonResult r =
          newton_refine(sys, x0, options.max_newton_iterations);
      if (!r.converged || r.residual > options.residual_keep_tol) {
        ++sample.failures;
      } else if (min_abs_entry(r.x) < options.entry_floor) {
        ++sample.filtered;
      } else {
        sample.points.push_back({r.x, r.residual, b});
      }
    }
  }
  sys.clear_slices();

  if (sample.points.empty()) {
    throw NoSolutionsFound("no Newton start converged to an interior point");
  }

  // Single-linkage-free greedy clustering: each point joins the first
  // cluster whose anchor (first member) is within cluster_radius.
  std::vector<int> anchors;  // index of each cluster's first point
  std::vector<int> best;     // index of each cluster's lowest-residual point
  std::vector<int> sizes;
  for (int i = 0; i < static_cast<int>(sample.points.size()); ++i) {
    const Vec6& x = sample.points[i].x;
    bool placed = false;
    for (std::size_t c = 0; c < anchors.size(); ++c) {
      const Vec6 diff = sample.points[anchors[c]].x - x;
      if (diff.lpNorm<Eigen::Infinity>() <= options.cluster_radius) {
        ++sizes[c];
        if (sample.points[i].residual < sample.points[best[c]].residual) {
          best[c] = i;
        }
        placed = true;
        break;
      }
    }
    if (!placed) {
      anchors.push_back(i);
      best.push_back(i);
      sizes.push_back(1);
    }
  }

  sample.clusters.reserve(anchors.size());
  for (std::size_t c = 0; c < anchors.size(); ++c) {
    LocusCluster cluster;
    cluster.representative = best[c];
    cluster.size = sizes[c];
    cluster.dimension = local_dimension(sys, sample.points[best[c]].x,
                                        options.svd_threshold);
    sample.clusters.push_back(std::move(cluster));
  }
  return sample;
}

LocusSample explore(const RatioAssignment& a, int n_starts,
                    std::uint64_t seed) {
  ExploreOptions options;
  options.seed = seed;
  options.n_starts = n_starts;
  return explore(a, options);
}

bool membership(const Vec6& x, const RatioAssignment& a, double tol,
                double entry_floor) {
  if (min_abs_entry(x) < entry_floor) return false;
  if (std::abs(x.sum() - 1.0) > tol) return false;
  for (const auto& c : a.constraints()) {
    const QuadraticRatioEquation eq = make_equation(c);
    const double ratio =
        (x[eq.num0] * x[eq.num1]) / (x[eq.den0] * x[eq.den1]);
    if (std::abs(ratio - c.value) >
        tol * std::fmax(std::abs(ratio), std::abs(c.value))) {
      return false;
    }
  }
  return true;
}

}  // namespace oddsgeom
