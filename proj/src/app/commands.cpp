#include "cme/app/commands.hpp"

#include "cme/app/selftest.hpp"
#include "cme/bounds.hpp"
#include "cme/measures.hpp"
#include "cme/random.hpp"

#include <ostream>

namespace cme::app {

namespace {

std::vector<double> concat(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p += ".config";
  return p;
}

}  // namespace

CsvTable run_consistency(const ConsistencyConfig& cfg) {
  const Kernel k_x = Kernel::gaussian(cfg.bandwidth_x);
  const Kernel k_z = Kernel::gaussian(cfg.bandwidth_z);
  SimulationSpec base = SimulationSpec::make(cfg.scenario, 1, 0);
  base.noise_scale = cfg.noise_scale;
  const double eta = eta_oracle(base, k_x);

  CsvTable table({"scenario", "n", "seed", "lambda_n", "surrogate_loss_fitted", "eta_oracle"});
  for (const std::int64_t n : cfg.n_list) {
    const double lambda = cfg.lambda.at(static_cast<double>(n));
    for (const std::uint64_t seed : cfg.seeds) {
      SimulationSpec train = base;
      train.n = n;
      train.seed = seed;
      SimulationSpec test = base;
      test.n = cfg.test_size;
      test.seed = derive_seed(seed, kTestSetStream);
      const TriVariateSample tr = generate(train);
      const TriVariateSample te = generate(test);
      const CmeModel model = fit(tr.z, tr.x, k_z, k_x, lambda);
      const double loss = surrogate_loss(model, te.z, te.x);
      if (loss < -kNegativeTolerance) {
        throw ConsistencyError("surrogate loss " + std::to_string(loss) + " is negative");
      }
      table.add_row({std::string(to_string(cfg.scenario)), n, static_cast<std::int64_t>(seed), lambda,
                     loss, eta});
    }
  }
  return table;
}

McmdResult run_mcmd(const McmdConfig& cfg, bool with_witness) {
  const Kernel k_x = Kernel::gaussian(cfg.bandwidth_x);
  const Kernel k_z = Kernel::gaussian(cfg.bandwidth_z);
  const double lambda = cfg.lambda.at(static_cast<double>(cfg.n));
  const auto spec = [&](Scenario s, std::uint64_t seed) {
    SimulationSpec sp = SimulationSpec::make(s, cfg.n, seed);
    sp.noise_scale = cfg.noise_scale;
    return sp;
  };

  McmdResult result{CsvTable({"seed", "z", "mcmd_same", "mcmd_diff"}), std::nullopt};
  if (with_witness) result.witness = CsvTable({"seed", "z", "x", "witness_same", "witness_diff"});

  for (const std::uint64_t seed : cfg.seeds) {
    const TriVariateSample base = generate(spec(Scenario::ConsA, seed));
    const TriVariateSample same = generate(spec(Scenario::McmdSame, seed));
    const TriVariateSample diff = generate(spec(Scenario::McmdDiff, seed));
    const CmeModel m_base = fit(base.z, base.x, k_z, k_x, lambda);
    const CmeModel m_same = fit(same.z, same.x, k_z, k_x, lambda);
    const CmeModel m_diff = fit(diff.z, diff.x, k_z, k_x, lambda);

    // Z' is shared by the same/diff samples, so pooling base and same covers both.
    const std::vector<double> pooled_z = concat(base.z.column(), same.z.column());
    const PointSet grid = percentile_grid(pooled_z, cfg.grid_size);
    const DiscrepancyCurve c_same = mcmd_curve(m_base, m_same, grid);
    const DiscrepancyCurve c_diff = mcmd_curve(m_base, m_diff, grid);
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
      result.curves.add_row({static_cast<std::int64_t>(seed), grid.point(g)[0], c_same.values(g),
                             c_diff.values(g)});
    }

    if (with_witness) {
      const PointSet wz = percentile_grid(pooled_z, cfg.witness_grid_size);
      const PointSet wx = percentile_grid(
          concat(concat(base.x.column(), same.x.column()), diff.x.column()), cfg.witness_grid_size);
      const WitnessField w_same = witness(m_base, m_same, wz, wx);
      const WitnessField w_diff = witness(m_base, m_diff, wz, wx);
      for (Eigen::Index i = 0; i < wz.size(); ++i) {
        for (Eigen::Index j = 0; j < wx.size(); ++j) {
          result.witness->add_row({static_cast<std::int64_t>(seed), wz.point(i)[0], wx.point(j)[0],
                                   w_same.values(i, j), w_diff.values(i, j)});
        }
      }
    }
  }
  return result;
}

CsvTable run_hscic(const HscicConfig& cfg) {
  const Kernel k_x = Kernel::gaussian(cfg.bandwidth_x);
  const Kernel k_y = Kernel::gaussian(cfg.bandwidth_y);
  const Kernel k_z = Kernel::gaussian(cfg.bandwidth_z);
  const double lambda = cfg.lambda.at(static_cast<double>(cfg.n));

  CsvTable table({"mode", "seed", "z", "hscic_noise_or_ind", "hscic_dep", "hscic_dep_strong"});
  for (const NoiseMode mode : cfg.modes) {
    const Scenario scenario = mode == NoiseMode::Additive ? Scenario::HscicAdd : Scenario::HscicMult;
    for (const std::uint64_t seed : cfg.seeds) {
      std::vector<DiscrepancyCurve> curves;
      std::optional<PointSet> grid;
      for (const double strength : {0.0, cfg.dep_strength, cfg.dep_strength_strong}) {
        SimulationSpec sp = SimulationSpec::make(scenario, cfg.n, seed, strength);
        sp.noise_scale = cfg.noise_scale;
        const TriVariateSample s = generate(sp);
        // Z does not depend on the dependence strength, so one grid serves all three.
        if (!grid) grid = percentile_grid(s.z.column(), cfg.grid_size);
        const HscicModel model(HscicData(s.z, s.x, *s.y, k_x, k_y, k_z, lambda));
        curves.push_back(hscic_curve(model, *grid));
      }
      for (Eigen::Index g = 0; g < grid->size(); ++g) {
        table.add_row({std::string(to_string(mode)), static_cast<std::int64_t>(seed),
                       grid->point(g)[0], curves[0].values(g), curves[1].values(g),
                       curves[2].values(g)});
      }
    }
  }
  return table;
}

CsvTable run_bounds(const BoundsConfig& cfg) {
  CsvTable table({"n", "lambda_n", "beta_stability", "kappa2", "generalization_gap", "rate_bound"});
  for (const std::int64_t n : cfg.n_list) {
    BoundInputs in;
    in.n = n;
    in.lambda = cfg.lambda.at(static_cast<double>(n));
    in.b_x = cfg.b_x;
    in.kappa1 = cfg.kappa1;
    in.norm_f = cfg.norm_f;
    in.delta = cfg.delta;
    const StabilityBound sb = stability_bound(in);
    table.add_row({n, in.lambda, sb.beta_stability, sb.kappa2, sb.generalization_gap,
                   rate_bound(in, cfg.b_z)});
  }
  return table;
}

int execute(Command command, const ConfigMap& resolved, bool dry_run, std::ostream& out,
            std::ostream& err) {
  try {
    if (dry_run) {
      out << "# " << to_string(command) << " (resolved configuration)\n" << resolved.render();
      return 0;
    }
    const auto write = [&](const CsvTable& table, const std::filesystem::path& path) {
      table.write_atomic(path);
      write_text_atomic(sidecar_path(path), resolved.render());
      out << "wrote " << path.string() << " (" << table.rows().size() << " rows)\n";
    };
    switch (command) {
      case Command::Consistency: {
        const ConsistencyConfig cfg = consistency_config(resolved);
        write(run_consistency(cfg), cfg.out);
        return 0;
      }
      case Command::Mcmd: {
        const McmdConfig cfg = mcmd_config(resolved);
        const McmdResult r = run_mcmd(cfg, cfg.witness_out.has_value());
        write(r.curves, cfg.out);
        if (r.witness) write(*r.witness, *cfg.witness_out);
        return 0;
      }
      case Command::Hscic: {
        const HscicConfig cfg = hscic_config(resolved);
        write(run_hscic(cfg), cfg.out);
        return 0;
      }
      case Command::Bounds: {
        const BoundsConfig cfg = bounds_config(resolved);
        write(run_bounds(cfg), cfg.out);
        return 0;
      }
      case Command::Selftest:
        return run_selftest(selftest_config(resolved), out) ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cme::app
