#include "cme/app/selftest.hpp"

#include "cme/measures.hpp"
#include "cme/random.hpp"
#include "cme/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace cme::app {

namespace {

PointSet random_points(NormalStream& rng, Eigen::Index n, Eigen::Index d) {
  RowMatrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  return PointSet(std::move(m));
}

Kernel random_kernel(NormalStream& rng) {
  const double bw = 0.2 + 1.8 * rng.uniform();
  return rng.uniform() < 0.5 ? Kernel::gaussian(bw) : Kernel::laplacian(bw);
}

Eigen::Index random_size(NormalStream& rng, Eigen::Index lo, Eigen::Index hi) {
  return lo + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

class Reporter {
 public:
  explicit Reporter(std::ostream& out) : out_(out) {}

  void report(const std::string& name, double worst, double tol) {
    const bool pass = worst <= tol;
    all_ &= pass;
    out_ << (pass ? "PASS " : "FAIL ") << name << " worst=" << worst << " tol=" << tol << "\n";
  }

  bool all() const { return all_; }

 private:
  std::ostream& out_;
  bool all_ = true;
};

}  // namespace

bool run_selftest(const SelftestConfig& cfg, std::ostream& out) {
  NormalStream rng(cfg.seed);
  Reporter rep(out);

  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index d_z = random_size(rng, 1, 3);
    const Eigen::Index d_x = random_size(rng, 1, 3);
    const Kernel k_z = random_kernel(rng);
    const Kernel k_x = random_kernel(rng);
    const double lambda = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
    const Eigen::Index n1 = random_size(rng, 1, 12);
    const Eigen::Index n2 = random_size(rng, 1, 12);
    const CmeModel m1 = fit(random_points(rng, n1, d_z), random_points(rng, n1, d_x), k_z, k_x, lambda);
    const CmeModel m2 = fit(random_points(rng, n2, d_z), random_points(rng, n2, d_x), k_z, k_x, lambda);
    const PointSet z = random_points(rng, 1, d_z);
    worst = std::max(worst, relative_gap(mcmd_squared(m1, m2, z.point(0)),
                                         mcmd_squared_bruteforce(m1, m2, z.point(0))));
  }
  rep.report("mcmd closed form vs brute force (50 instances)", worst, 1e-10);

  worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = random_size(rng, 1, 8);
    const HscicData data(random_points(rng, n, 1), random_points(rng, n, random_size(rng, 1, 2)),
                         random_points(rng, n, random_size(rng, 1, 2)), random_kernel(rng),
                         random_kernel(rng), random_kernel(rng),
                         std::pow(10.0, -3.0 + 3.0 * rng.uniform()));
    const HscicModel model(data);
    const PointSet z = random_points(rng, 1, 1);
    worst = std::max(worst, relative_gap(hscic_squared(model, z.point(0)),
                                         hscic_squared_bruteforce(model, z.point(0))));
  }
  rep.report("hscic closed form vs brute force (20 instances)", worst, 1e-10);

  // The witness at (z, .) is the difference of the two embeddings, so its
  // RKHS norm must reproduce the MCMD at z.
  {
    const Kernel k = Kernel::gaussian(0.5);
    const CmeModel m1 = fit(random_points(rng, 10, 1), random_points(rng, 10, 1), k, k, 0.05);
    const CmeModel m2 = fit(random_points(rng, 7, 1), random_points(rng, 7, 1), k, k, 0.05);
    const PointSet zg = random_points(rng, 5, 1);
    const WitnessField w = witness(m1, m2, zg, m1.x_train());
    worst = 0.0;
    for (Eigen::Index i = 0; i < zg.size(); ++i) {
      const EmbeddingWeights b1 = embedding_weights(m1, zg.point(i));
      const EmbeddingWeights b2 = embedding_weights(m2, zg.point(i));
      // <mu_1(z), witness(z, .)> through the field sampled on x_train(m1),
      // and through the kernel expansion.
      const double via_field = b1.beta.dot(w.values.row(i).transpose());
      const double direct = embedding_sq_norm(m1, zg.point(i)) -
                            inner_product(m1, zg.point(i), SpanFunction(m2.x_train(), b2.beta));
      worst = std::max(worst, relative_gap(via_field, direct));
    }
    rep.report("witness field consistent with embedding inner products", worst, 1e-10);
  }

  {
    const Kernel k_x = Kernel::gaussian(0.1);
    worst = 0.0;
    for (const Scenario s : {Scenario::ConsA, Scenario::ConsB, Scenario::ConsC}) {
      SimulationSpec spec = SimulationSpec::make(s, 1, 0);
      const double q = eta_oracle(spec, k_x);
      const MonteCarloEstimate mc = eta_monte_carlo(spec, k_x, 200000, derive_seed(cfg.seed, 11));
      worst = std::max(worst, std::abs(q - mc.mean) / std::max(mc.std_error, 1e-300));
    }
    rep.report("eta quadrature vs Monte Carlo (standard errors)", worst, 5.0);
  }

  {
    const Kernel k_x = Kernel::gaussian(0.7);
    worst = 0.0;
    for (const double z : {-1.5, 0.0, 0.8}) {
      for (const double x : {-0.5, 0.3}) {
        const double exact = true_embedding(Scenario::ConsA, 0.3, z, x, k_x);
        const MonteCarloEstimate mc =
            true_embedding_monte_carlo(Scenario::ConsA, 0.3, z, x, k_x, 100000, derive_seed(cfg.seed, 12));
        worst = std::max(worst, std::abs(exact - mc.mean) / std::max(mc.std_error, 1e-300));
      }
    }
    rep.report("true embedding closed form vs Monte Carlo (standard errors)", worst, 5.0);
  }

  out << (rep.all() ? "selftest: all checks passed\n" : "selftest: FAILED\n");
  return rep.all();
}

}  // namespace cme::app
