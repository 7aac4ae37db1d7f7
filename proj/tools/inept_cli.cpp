// Command-line front end: state, fig2, fig3, simulate, bounds.
//
// Exit codes: 0 success, 2 validation/usage error, 3 numeric failure,
// 4 simulation self-test failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inept/cli.hpp"

namespace {

using inept::cli::json;

struct Output {
  std::string path;
  std::string format = "csv";
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw inept::InvalidArgument("cannot open output file '" + path + "'");
  f << text;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

void require_json(const std::string& format, const char* command) {
  if (format != "json") {
    throw inept::InvalidArgument(std::string(command) + " only supports --format json");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement delivered through an unreliable delivery service"};
  app.set_version_flag("--version", inept::kVersion);
  app.require_subcommand(1);

  // state
  double st_a = 0.0, st_s = 0.0;
  std::string st_out, st_format = "json";
  auto* state = app.add_subcommand("state", "Mapped state, concurrence, fidelity, CHSH and LHV data as JSON");
  state->add_option("--a", st_a, "preparation amplitude in [0, 1]")->required();
  state->add_option("--s", st_s, "success probability in [0, 1]")->required();
  state->add_option("--out", st_out, "output file (default stdout)");
  state->add_option("--format", st_format, "json")->check(CLI::IsMember({"json"}));

  // fig2
  inept::cli::Fig2Config f2;
  std::vector<std::string> f2_curves;
  Output f2_out;
  auto* fig2 = app.add_subcommand("fig2", "Maximal entanglement of formation against S");
  fig2->add_option("--s-points", f2.s_points, "grid points, S = k/N for k = 1..N")->capture_default_str();
  fig2->add_option("--curves", f2_curves, "subset of numeric, eq7, bell, a0.1 (default all)");
  fig2->add_option("--optimizer-grid", f2.optimizer_grid, "coarse grid of the optimizer")->capture_default_str();
  fig2->add_option("--out", f2_out.path, "output file (default stdout)");
  fig2->add_option("--format", f2_out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // fig3
  inept::GridSpec f3;
  Output f3_out;
  auto* fig3 = app.add_subcommand("fig3", "Entanglement, CHSH and LHV region map over (a, S)");
  fig3->add_option("--a-points", f3.a_points, "cells along a")->capture_default_str();
  fig3->add_option("--s-points", f3.s_points, "cells along S")->capture_default_str();
  fig3->add_option("--out", f3_out.path, "output file (default stdout)");
  fig3->add_option("--format", f3_out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // simulate
  std::string sim_model;
  double sim_s = -1.0, sim_a = 0.0;
  long long sim_n = 0;
  std::uint64_t sim_trials = inept::kDefaultTrials, sim_seed = 0;
  bool sim_self_test = false;
  std::string sim_out, sim_format = "json";
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the mixing map");
  simulate->add_option("--model", sim_model, "bernoulli or permutation")
      ->required()
      ->check(CLI::IsMember({"bernoulli", "permutation"}));
  auto* sim_s_opt = simulate->add_option("--s", sim_s, "success probability (bernoulli)");
  auto* sim_n_opt = simulate->add_option("--n", sim_n, "customer pairs (permutation)");
  sim_s_opt->excludes(sim_n_opt);
  simulate->add_option("--a", sim_a, "preparation amplitude")->required();
  simulate->add_option("--trials", sim_trials, "trials per measurement setting")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "PRNG seed")->required();
  simulate->add_flag("--self-test", sim_self_test, "exit 4 if max_sigma exceeds the threshold");
  simulate->add_option("--out", sim_out, "output file (default stdout)");
  simulate->add_option("--format", sim_format, "json")->check(CLI::IsMember({"json"}));

  // bounds
  bool b_survival = false, b_chsh = false, b_eisert = false;
  double b_a = 0.0;
  long long b_n = 0;
  std::string b_out, b_format = "json";
  auto* bounds = app.add_subcommand("bounds", "Survival threshold, CHSH boundary, Eisert lower bound");
  bounds->add_flag("--survival", b_survival, "entanglement survival threshold at --a");
  bounds->add_flag("--chsh", b_chsh, "CHSH violation boundary at --a");
  bounds->add_flag("--eisert", b_eisert, "n * E_F^max(1/n) at --n");
  auto* b_a_opt = bounds->add_option("--a", b_a, "preparation amplitude");
  auto* b_n_opt = bounds->add_option("--n", b_n, "number of customer pairs");
  bounds->add_option("--out", b_out, "output file (default stdout)");
  bounds->add_option("--format", b_format, "json")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return inept::cli::kExitValidation;
  }

  try {
    if (*state) {
      require_json(st_format, "state");
      emit(render(inept::cli::state_report(st_a, st_s)), st_out);
    } else if (*fig2) {
      if (!f2_curves.empty()) {
        f2.curves.clear();
        for (const auto& c : f2_curves) f2.curves.push_back(inept::cli::parse_fig2_curve(c));
      }
      const auto table = inept::cli::fig2_table(f2);
      emit(f2_out.format == "csv" ? inept::cli::to_csv(table)
                                  : render(inept::cli::to_json(table, "fig2", inept::cli::fig2_config_json(f2))),
           f2_out.path);
    } else if (*fig3) {
      const auto table = inept::cli::fig3_table(f3);
      emit(f3_out.format == "csv" ? inept::cli::to_csv(table)
                                  : render(inept::cli::to_json(table, "fig3", inept::cli::fig3_config_json(f3))),
           f3_out.path);
    } else if (*simulate) {
      require_json(sim_format, "simulate");
      std::optional<inept::DeliveryModel> model;
      if (sim_model == "bernoulli") {
        if (sim_s_opt->count() == 0) throw inept::InvalidArgument("simulate: bernoulli model requires --s");
        model = inept::DeliveryModel::bernoulli(sim_s);
      } else {
        if (sim_n_opt->count() == 0) throw inept::InvalidArgument("simulate: permutation model requires --n");
        model = inept::DeliveryModel::permutation(sim_n);
      }
      const auto rep = inept::simulate_pair_state(*model, sim_a, sim_trials, sim_seed);
      emit(render(inept::cli::simulation_report(rep)), sim_out);
      if (sim_self_test && !rep.passes()) {
        std::cerr << "self-test failed: max_sigma " << rep.max_sigma << " exceeds " << inept::kSigmaThreshold
                  << "\n";
        return inept::cli::kExitSelfTest;
      }
    } else if (*bounds) {
      require_json(b_format, "bounds");
      inept::cli::BoundsQuery q;
      if ((b_survival || b_chsh) && b_a_opt->count() == 0) {
        throw inept::InvalidArgument("bounds: --survival and --chsh require --a");
      }
      if (b_eisert && b_n_opt->count() == 0) throw inept::InvalidArgument("bounds: --eisert requires --n");
      if (b_survival) q.survival_a = b_a;
      if (b_chsh) q.chsh_a = b_a;
      if (b_eisert) q.eisert_n = b_n;
      emit(render(inept::cli::bounds_report(q)), b_out);
    }
  } catch (const inept::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return inept::cli::kExitValidation;
  } catch (const inept::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return inept::cli::kExitValidation;
  } catch (const inept::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return inept::cli::kExitNumeric;
  }
  return inept::cli::kExitOk;
}
